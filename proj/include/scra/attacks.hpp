#pragma once

#include <string>
#include <vector>

#include "scra/schemes.hpp"

namespace scra {

struct EmptyCoalition : std::invalid_argument {
  EmptyCoalition() : std::invalid_argument("coalition needs at least two pairs") {}
};

struct NonInvertibleExponent : std::invalid_argument {
  NonInvertibleExponent() : std::invalid_argument("gcd(r, p-1) != 1") {}
};

struct MatrixMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A (possibly invalid) identity/password pair minted by an attack.
struct ForgedPair {
  Int identity;
  Int pw;
  std::string provenance;
};

// ID_j = ID_b^2, PW_j = PW_b^2 (mod p).
ForgedPair chan_cheng_forge(const Int& id_b, const Int& pw_b, const Int& p);

// ID_j = ID_b^r, PW_j = PW_b^r (mod p); chan_cheng is the r = 2 case.
ForgedPair chang_hwang_mech1(const Int& id_b, const Int& pw_b, const Int& r, const Int& p);

// Coalition product: ID_j = prod ID, PW_j = prod PW (mod p). Needs >= 2 pairs.
ForgedPair chang_hwang_mech2(const std::vector<std::pair<Int, Int>>& pairs, const Int& p);

// Registration-phase masquerade: craft ID_b = ID_k^r, register it honestly,
// then recover PW_k = PW_b^(r^-1 mod p-1). Requires gcd(r, p-1) = 1.
Int shen_masquerade(const Int& id_k, const Int& r, const Int& p);
Int shen_recover_pw(const Int& pw_b, const Int& r, const Int& p);

// mech1 lifted to shadow identities: SID_j = SID_b^r, PW_j = PW_b^r.
ForgedPair leung_forge(const Int& sid_b, const Int& pw_b, const Int& r, const Int& p);

// Exponent shift against the proposed scheme: returns the shifted base
// (ID_i xor R)^k and its matching password pw^k. The attacker still lacks
// the check digit for any (ID_b, R') split of that base.
std::pair<Int, Int> prop_attack_attempt(const Int& id_xor_r, const Int& pw, const Int& k,
                                        const Int& p);

// One matrix cell: outcome of a forged login against a scheme.
struct AttackOutcome {
  SchemeTag scheme;
  std::string attack;
  long trials = 1;
  long accepted = 0;
  std::string expected;  // "accepted", "rejected", or "rate<=10^-d"
  bool pass = false;
  std::optional<Reason> last_reason;
};

struct MatrixConfig {
  unsigned prime_bits = 16;
  unsigned check_digits = 6;
  unsigned long seed = 1;
  long guess_trials = 10000;  // trials for the random check-digit guess cells
};

// Runs every (scheme x attack) cell in faithful-paper mode and checks each
// against the published verdict. Throws MatrixMismatch naming the first
// deviating cell when `strict` is set.
std::vector<AttackOutcome> run_attack_matrix(const MatrixConfig& config, bool strict = true);

std::string render_matrix(const std::vector<AttackOutcome>& rows);

}  // namespace scra
