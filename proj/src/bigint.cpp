#include "scra/bigint.hpp"

#include <cstring>

namespace scra {

std::vector<std::uint8_t> to_bytes_be(const Int& v) {
  if (v < 0) throw std::invalid_argument("to_bytes_be: negative value");
  std::vector<std::uint8_t> out((mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8);
  if (v == 0) return {};
  std::size_t written = 0;
  mpz_export(out.data(), &written, 1, 1, 1, 0, v.get_mpz_t());
  out.resize(written);
  return out;
}

std::vector<std::uint8_t> to_bytes_be(const Int& v, std::size_t width) {
  auto raw = to_bytes_be(v);
  if (raw.size() > width) throw std::invalid_argument("to_bytes_be: value too wide");
  std::vector<std::uint8_t> out(width, 0);
  std::memcpy(out.data() + (width - raw.size()), raw.data(), raw.size());
  return out;
}

Int from_bytes_be(std::span<const std::uint8_t> bytes) {
  Int v = 0;
  if (!bytes.empty())
    mpz_import(v.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
  return v;
}

std::size_t bit_length(const Int& v) {
  if (v == 0) return 0;
  return mpz_sizeinbase(v.get_mpz_t(), 2);
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 0xf]);
  }
  return s;
}

Rng::Rng(unsigned long seed) {
  gmp_randinit_mt(state_);
  gmp_randseed_ui(state_, seed);
}

Rng::~Rng() { gmp_randclear(state_); }

Int Rng::below(const Int& n) {
  if (n <= 0) throw std::invalid_argument("Rng::below: n must be positive");
  Int v;
  mpz_urandomm(v.get_mpz_t(), state_, n.get_mpz_t());
  return v;
}

Int Rng::bits(unsigned bits) {
  Int v;
  mpz_urandomb(v.get_mpz_t(), state_, bits);
  return v;
}

std::vector<std::uint8_t> Rng::bytes(std::size_t n) {
  return to_bytes_be(bits(static_cast<unsigned>(8 * n)), n);
}

std::uint64_t Rng::u64() {
  auto b = bytes(8);
  std::uint64_t v = 0;
  for (auto x : b) v = (v << 8) | x;
  return v;
}

}  // namespace scra
