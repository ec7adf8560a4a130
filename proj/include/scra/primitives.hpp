#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "scra/modmath.hpp"

namespace scra {

struct TestVectorMissing : std::out_of_range {
  TestVectorMissing() : std::out_of_range("owf: test-injected handle has no vector for this input") {}
};

// Public one-way function h/f. The standard variant is SHA-256; the
// test-injected variant is a fixed lookup table so worked examples can
// pin t exactly.
class OwfHandle {
 public:
  using Table = std::map<std::vector<std::uint8_t>, std::vector<std::uint8_t>>;

  static OwfHandle standard();
  static OwfHandle injected(Table table);

  bool is_injected() const { return injected_; }
  std::vector<std::uint8_t> operator()(std::span<const std::uint8_t> input) const;

 private:
  OwfHandle(bool injected, Table table) : injected_(injected), table_(std::move(table)) {}
  bool injected_;
  Table table_;
};

inline std::vector<std::uint8_t> owf(const OwfHandle& h, std::span<const std::uint8_t> input) {
  return h(input);
}

// Server-held secrets: x_s plus the keys of Red(.) and C_K(.).
// Never serialized into any LoginMessage or Credential.
struct ServerSecret {
  std::vector<std::uint8_t> shadow_key;
  std::vector<std::uint8_t> checkdigit_key;
  Int x_s;
};

ServerSecret make_server_secret(const Int& p, Rng& rng);

// d-decimal-digit keyed digest. value < 10^d; d <= 18.
struct CheckDigit {
  std::uint64_t value = 0;
  unsigned digits = 0;
  bool operator==(const CheckDigit&) const = default;
};

// Digest interpreted as a big-endian integer, reduced mod (p-1).
Int reduce_to_exponent(std::span<const std::uint8_t> digest, const Int& p);

// Bitwise XOR with implicit zero-padding of the shorter operand.
Int xor_align(const Int& a, const Int& b);

// SID = Red(ID): keyed one-way map into [2, p-2]. pre: id != 0.
Int shadow(const ServerSecret& secret, const Int& id, const Int& p);

// C_K: keyed one-way digest truncated to d decimal digits. pre: 1 <= d <= 18.
CheckDigit check_digit(const ServerSecret& secret, const Int& value, unsigned d);

// Canonical owf input for t = h(T xor PW): both operands encoded at
// width max(bitlen(p), 64) bits before XOR.
std::vector<std::uint8_t> timestamp_xor_pw(long t_stamp, const Int& pw, const Int& p);

}  // namespace scra
