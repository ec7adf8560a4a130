#include "scra/modmath.hpp"

#include "scra/costmodel.hpp"

namespace scra {

namespace {

// Fixed-seed base source for Miller-Rabin; primality verdicts stay
// reproducible across runs.
Rng& mr_rng() {
  thread_local Rng rng(0x4d52u);
  return rng;
}

const unsigned kSmallPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31,
                                 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79,
                                 83, 89, 97, 101, 103, 107, 109, 113};

// Uninstrumented square-and-multiply for internal use (primality testing
// must not perturb cost meters).
Int pow_mod(Int base, Int exp, const Int& p) {
  Int result = 1;
  base %= p;
  while (exp > 0) {
    if (mpz_odd_p(exp.get_mpz_t())) result = result * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return result;
}

}  // namespace

bool is_probable_prime(const Int& n, int rounds) {
  if (n < 2) return false;
  for (unsigned q : kSmallPrimes) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  // n-1 = d * 2^s with d odd
  Int d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  d >>= s;
  for (int i = 0; i < rounds; ++i) {
    Int a = 2 + mr_rng().below(n - 3);
    Int x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (unsigned long j = 0; j + 1 < s; ++j) {
      x = x * x % n;
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

Prime::Prime(Int p) : p_(std::move(p)) {
  if (!is_probable_prime(p_)) throw NotPrime("Prime: modulus fails primality test");
}

Int mod_exp(const Int& base, const Int& exp, const Int& p) {
  cost::Meter::tick_exp();
  return pow_mod(base, exp, p);
}

Int mod_mul(const Int& a, const Int& b, const Int& p) {
  cost::Meter::tick_mul();
  return a * b % p;
}

Int mod_inv(const Int& a, const Int& p) {
  Int r = a % p;
  if (r < 0) r += p;
  if (r == 0) throw ZeroInverse{};
  // extended Euclid, tracking only the coefficient of a
  Int old_r = r, cur_r = p;
  Int old_s = 1, cur_s = 0;
  while (cur_r != 0) {
    Int q = old_r / cur_r;
    Int tmp = old_r - q * cur_r;
    old_r = cur_r;
    cur_r = tmp;
    tmp = old_s - q * cur_s;
    old_s = cur_s;
    cur_s = tmp;
  }
  Int inv = old_s % p;
  if (inv < 0) inv += p;
  return inv;
}

Int gen_prime(unsigned bits, Rng& rng) {
  if (bits < 8) throw std::invalid_argument("gen_prime: bits must be >= 8");
  for (;;) {
    Int candidate = rng.bits(bits);
    mpz_setbit(candidate.get_mpz_t(), bits - 1);  // exact bit length
    mpz_setbit(candidate.get_mpz_t(), 0);         // odd
    if (is_probable_prime(candidate)) return candidate;
  }
}

Int sample_exponent(const Int& p, const Int& coprime_to, Rng& rng) {
  if (coprime_to != 1 && coprime_to != p - 1)
    throw std::invalid_argument("sample_exponent: coprime_to must be 1 or p-1");
  for (;;) {
    Int r = 2 + rng.below(p - 3);  // [2, p-2]
    if (coprime_to == 1) return r;
    Int g;
    mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), coprime_to.get_mpz_t());
    if (g == 1) return r;
  }
}

}  // namespace scra
