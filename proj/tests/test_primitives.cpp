#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "scra/primitives.hpp"

using scra::Int;

namespace {

scra::ServerSecret test_secret(scra::Int x_s = 7) {
  scra::ServerSecret s;
  s.shadow_key.assign(32, 0xAA);
  s.checkdigit_key.assign(32, 0xBB);
  s.x_s = std::move(x_s);
  return s;
}

}  // namespace

TEST_CASE("owf is deterministic and collision-free on random inputs") {
  auto h = scra::OwfHandle::standard();
  scra::Rng rng(1);
  auto in = rng.bytes(16);
  CHECK(h(in) == h(in));
  auto a = rng.bytes(8);
  auto b = rng.bytes(8);
  REQUIRE(a != b);
  CHECK(h(a) != h(b));
}

TEST_CASE("test-injected owf looks up its table") {
  std::vector<std::uint8_t> key = {0x01, 0x02};
  auto h = scra::OwfHandle::injected({{key, {0x03}}});
  CHECK(h(key) == std::vector<std::uint8_t>{0x03});
  std::vector<std::uint8_t> other = {0x09};
  CHECK_THROWS_AS(h(other), scra::TestVectorMissing);
}

TEST_CASE("reduce_to_exponent examples") {
  Int p = 23;
  CHECK(scra::reduce_to_exponent(std::vector<std::uint8_t>{25}, p) == 3);
  CHECK(scra::reduce_to_exponent(std::vector<std::uint8_t>{0}, p) == 0);
  CHECK(scra::reduce_to_exponent(std::vector<std::uint8_t>{}, p) == 0);
  CHECK(scra::reduce_to_exponent(std::vector<std::uint8_t>{22}, p) == 0);
}

TEST_CASE("xor_align examples and involution") {
  CHECK(scra::xor_align(9, 12) == 5);
  CHECK(scra::xor_align(77, 77) == 0);
  CHECK(scra::xor_align(77, 0) == 77);
  scra::Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    Int a = rng.bits(40), b = rng.bits(40);
    CHECK(scra::xor_align(scra::xor_align(a, b), b) == a);
  }
}

TEST_CASE("shadow determinism, range, and injectivity smoke test") {
  auto secret = test_secret();
  Int p = 23;
  CHECK(scra::shadow(secret, 5, p) == scra::shadow(secret, 5, p));
  std::set<Int> seen;
  for (Int id = 2; id <= 12; ++id) {
    Int sid = scra::shadow(secret, id, p);
    CHECK(sid >= 2);
    CHECK(sid <= p - 1);
    seen.insert(sid);
  }
  CHECK(seen.size() > 5);  // tiny range mod 23; expect mostly-distinct
  CHECK_THROWS_AS(scra::shadow(secret, 0, p), std::invalid_argument);

  scra::Rng prng(5);
  Int big_p = scra::gen_prime(64, prng);
  std::set<Int> big_seen;
  for (Int id = 2; id < 102; ++id) big_seen.insert(scra::shadow(secret, id, big_p));
  CHECK(big_seen.size() == 100);  // distinct with overwhelming probability
}

TEST_CASE("check_digit determinism and range") {
  auto secret = test_secret();
  CHECK(scra::check_digit(secret, 5, 6) == scra::check_digit(secret, 5, 6));
  scra::Rng rng(8);
  for (int i = 0; i < 1000; ++i) {
    auto cd = scra::check_digit(secret, rng.bits(32), 4);
    CHECK(cd.value < 10000);
    CHECK(cd.digits == 4);
  }
  CHECK_THROWS_AS(scra::check_digit(secret, 5, 0), std::invalid_argument);
  CHECK_THROWS_AS(scra::check_digit(secret, 5, 19), std::invalid_argument);
}

TEST_CASE("shadow and check_digit are keyed") {
  auto s1 = test_secret();
  auto s2 = test_secret();
  s2.shadow_key.assign(32, 0x11);
  s2.checkdigit_key.assign(32, 0x22);
  Int p = scra::Int("340282366920938463463374607431768211507");
  int shadow_differs = 0, check_differs = 0;
  for (Int v = 100; v < 140; ++v) {
    if (scra::shadow(s1, v, p) != scra::shadow(s2, v, p)) ++shadow_differs;
    if (!(scra::check_digit(s1, v, 6) == scra::check_digit(s2, v, 6))) ++check_differs;
  }
  CHECK(shadow_differs == 40);
  CHECK(check_differs >= 39);  // one in 10^6 collision is plausible, two are not
}

TEST_CASE("check_digit depends only on the checkdigit key") {
  auto s1 = test_secret();
  auto s2 = test_secret();
  s2.shadow_key.assign(32, 0x77);
  s2.x_s = 13;
  for (Int v = 0; v < 20; ++v)
    CHECK(scra::check_digit(s1, v, 6) == scra::check_digit(s2, v, 6));
}

TEST_CASE("uniform guessing matches the check digit at rate 10^-d") {
  auto secret = test_secret();
  const unsigned d = 2;
  const long n = 50000;
  const double q = std::pow(10.0, -double(d));
  scra::Rng rng(12345);
  long hits = 0;
  for (long i = 0; i < n; ++i) {
    Int value = rng.bits(32);
    auto truth = scra::check_digit(secret, value, d);
    if (rng.below(100).get_ui() == truth.value) ++hits;
  }
  // 99.9% binomial interval around n*q
  double sd = std::sqrt(n * q * (1 - q));
  CHECK(hits >= long(n * q - 3.29 * sd));
  CHECK(hits <= long(n * q + 3.29 * sd) + 1);
}
