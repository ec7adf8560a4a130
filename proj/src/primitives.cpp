#include "scra/primitives.hpp"

#include <openssl/evp.h>
#include <openssl/hmac.h>

#include "scra/costmodel.hpp"

namespace scra {

namespace {

std::vector<std::uint8_t> sha256(std::span<const std::uint8_t> input) {
  std::vector<std::uint8_t> out(32);
  unsigned len = 0;
  EVP_Digest(input.data(), input.size(), out.data(), &len, EVP_sha256(), nullptr);
  out.resize(len);
  return out;
}

std::vector<std::uint8_t> hmac_sha256(std::span<const std::uint8_t> key,
                                      std::span<const std::uint8_t> msg) {
  std::vector<std::uint8_t> out(32);
  unsigned len = 0;
  HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), msg.data(), msg.size(),
       out.data(), &len);
  out.resize(len);
  return out;
}

// Keyed integer derivation: HMAC(key, label || input) interpreted big-endian.
Int keyed_int(std::span<const std::uint8_t> key, std::uint8_t label, const Int& input) {
  auto msg = to_bytes_be(input);
  msg.insert(msg.begin(), label);
  return from_bytes_be(hmac_sha256(key, msg));
}

}  // namespace

OwfHandle OwfHandle::standard() { return OwfHandle(false, {}); }

OwfHandle OwfHandle::injected(Table table) { return OwfHandle(true, std::move(table)); }

std::vector<std::uint8_t> OwfHandle::operator()(std::span<const std::uint8_t> input) const {
  cost::Meter::tick_hash();
  if (!injected_) return sha256(input);
  auto it = table_.find(std::vector<std::uint8_t>(input.begin(), input.end()));
  if (it == table_.end()) throw TestVectorMissing{};
  return it->second;
}

ServerSecret make_server_secret(const Int& p, Rng& rng) {
  ServerSecret s;
  s.shadow_key = rng.bytes(32);
  s.checkdigit_key = rng.bytes(32);
  s.x_s = sample_exponent(p, 1, rng);
  return s;
}

Int reduce_to_exponent(std::span<const std::uint8_t> digest, const Int& p) {
  return from_bytes_be(digest) % (p - 1);
}

Int xor_align(const Int& a, const Int& b) { return a ^ b; }

Int shadow(const ServerSecret& secret, const Int& id, const Int& p) {
  cost::Meter::tick_shadow();
  if (id == 0) throw std::invalid_argument("shadow: id must be nonzero");
  return 2 + keyed_int(secret.shadow_key, 0x52, id) % (p - 3);  // [2, p-2]
}

CheckDigit check_digit(const ServerSecret& secret, const Int& value, unsigned d) {
  cost::Meter::tick_check();
  if (d < 1 || d > 18) throw std::invalid_argument("check_digit: d must be in [1, 18]");
  Int mod = 1;
  for (unsigned i = 0; i < d; ++i) mod *= 10;
  Int v = keyed_int(secret.checkdigit_key, 0x43, value) % mod;
  return CheckDigit{v.get_ui(), d};
}

std::vector<std::uint8_t> timestamp_xor_pw(long t_stamp, const Int& pw, const Int& p) {
  if (t_stamp < 0) throw std::invalid_argument("timestamp_xor_pw: negative timestamp");
  std::size_t width_bits = std::max<std::size_t>(bit_length(p), 64);
  std::size_t width = (width_bits + 7) / 8;
  return to_bytes_be(xor_align(Int(t_stamp), pw), width);
}

}  // namespace scra
