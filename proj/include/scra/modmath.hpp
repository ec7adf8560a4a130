#pragma once

#include <stdexcept>

#include "scra/bigint.hpp"

namespace scra {

struct ZeroInverse : std::domain_error {
  ZeroInverse() : std::domain_error("mod_inv: zero has no inverse") {}
};

struct NotPrime : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Miller-Rabin with `rounds` random bases; error probability < 4^-rounds.
bool is_probable_prime(const Int& n, int rounds = 40);

// Prime modulus, primality-checked at construction (Miller-Rabin, 40 rounds).
class Prime {
 public:
  explicit Prime(Int p);
  const Int& value() const { return p_; }
  Int order() const { return p_ - 1; }  // multiplicative group order

 private:
  Int p_;
};

// base^exp mod p by square-and-multiply; 0^0 := 1.
// pre: p > 1, 0 <= base < p, exp >= 0.
Int mod_exp(const Int& base, const Int& exp, const Int& p);

// a*b mod p; the counted residue multiplication.
Int mod_mul(const Int& a, const Int& b, const Int& p);

// Inverse of a mod p by extended Euclid. Throws ZeroInverse on a == 0 mod p.
Int mod_inv(const Int& a, const Int& p);

// Probable prime of exactly `bits` bits (bits >= 8).
Int gen_prime(unsigned bits, Rng& rng);

// Uniform r in [2, p-2]; if coprime_to == p-1, additionally gcd(r, p-1) == 1.
// pre: coprime_to is 1 (no constraint) or p-1.
Int sample_exponent(const Int& p, const Int& coprime_to, Rng& rng);

}  // namespace scra
