#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace scra {

using Int = mpz_class;

// Canonical fixed-width big-endian encoding. Values wider than `width` bytes
// are rejected; shorter ones are zero-padded on the left.
std::vector<std::uint8_t> to_bytes_be(const Int& v, std::size_t width);

// Minimal-width big-endian encoding (empty for zero).
std::vector<std::uint8_t> to_bytes_be(const Int& v);

Int from_bytes_be(std::span<const std::uint8_t> bytes);

std::size_t bit_length(const Int& v);

std::string to_hex(std::span<const std::uint8_t> bytes);

// Seedable randomness source wrapping GMP's Mersenne-Twister state.
// Stateful; one instance per context, not shared across threads.
class Rng {
 public:
  explicit Rng(unsigned long seed);
  ~Rng();
  Rng(const Rng&) = delete;
  Rng& operator=(const Rng&) = delete;

  // Uniform in [0, n), n > 0.
  Int below(const Int& n);
  // Uniform integer of at most `bits` bits.
  Int bits(unsigned bits);
  std::vector<std::uint8_t> bytes(std::size_t n);
  std::uint64_t u64();

 private:
  gmp_randstate_t state_;
};

}  // namespace scra
