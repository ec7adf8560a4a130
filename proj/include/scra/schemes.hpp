#pragma once

#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "scra/primitives.hpp"

namespace scra {

enum class SchemeTag { HL, SLH, Kumar, Proposed };

std::string scheme_name(SchemeTag tag);
std::optional<SchemeTag> parse_scheme(const std::string& name);

enum class Reason {
  OK,
  BadIdFormat,
  BadCheckDigit,
  StaleTimestamp,
  Replay,
  VerifyFailed,
};

std::string reason_name(Reason r);

struct AuthDecision {
  bool accepted = false;
  Reason reason = Reason::VerifyFailed;
  static AuthDecision ok() { return {true, Reason::OK}; }
  static AuthDecision reject(Reason r) { return {false, r}; }
};

// Faithful-paper mode reproduces the published checks exactly (format-only
// id validity, no replay cache); hardened adds registry membership and
// replay detection.
enum class FidelityMode { FaithfulPaper, Hardened };

struct SystemParams {
  Prime p;
  ServerSecret secret;
  OwfHandle owf;
  long delta_t = 60;
  unsigned check_digits = 6;
  FidelityMode mode = FidelityMode::Hardened;

  SystemParams(Prime p_, ServerSecret secret_, OwfHandle owf_)
      : p(std::move(p_)), secret(std::move(secret_)), owf(std::move(owf_)) {}
};

SystemParams make_system_params(unsigned bits, Rng& rng);

struct SchemeMismatch : std::logic_error {
  SchemeMismatch() : std::logic_error("credential/message scheme tag mismatch") {}
};
struct DuplicateId : std::runtime_error {
  DuplicateId() : std::runtime_error("identity already registered") {}
};
struct BadIdFormatError : std::runtime_error {
  BadIdFormatError() : std::runtime_error("identity fails format validation") {}
};

// What the user/smart-card holds after registration.
struct Credential {
  SchemeTag tag;
  Int id;
  Int pw;
  std::optional<Int> sid;          // SLH, Kumar
  std::optional<Int> reg_number;   // Proposed
  std::optional<CheckDigit> c_id;  // Kumar, Proposed
};

// Over-the-wire login tuple, scheme-shaped:
//   HL:       (ID, C1, C2, T)
//   SLH:      (SID, C1, C2, T)
//   Kumar:    (SID || C_ID, C1, C2, T)
//   Proposed: (ID, R, C_ID, C1, C2, T)
struct LoginMessage {
  SchemeTag tag;
  Int identity;  // ID (HL/Proposed) or SID (SLH/Kumar)
  std::optional<Int> reg_number;
  std::optional<CheckDigit> c_id;
  Int c1;
  Int c2;
  long t_stamp = 0;
};

// Registration records plus the replay cache. The single mutable object;
// serialize mutation per instance.
class Registry {
 public:
  bool id_registered(const Int& id) const;
  bool sid_registered(const Int& sid) const;
  bool pair_registered(const Int& id, const Int& reg_number) const;
  bool reg_number_used(const Int& reg_number) const;

  void add_record(const Int& id, std::optional<Int> sid, std::optional<Int> reg_number);

  // Replay cache: (identity-part, T) retained for 2*delta_t ticks.
  bool replay_seen(const std::string& identity_key, long t_stamp) const;
  void record_login(const std::string& identity_key, long t_stamp, long now, long delta_t);

  struct Record {
    Int id;
    std::optional<Int> sid;
    std::optional<Int> reg_number;
  };
  const std::vector<Record>& records() const { return records_; }

  struct SeenEntry {
    std::string key;
    long expiry;
  };
  const std::vector<SeenEntry>& replay_cache() const { return seen_; }
  void restore_replay_entry(std::string key, long expiry);

 private:
  std::vector<Record> records_;
  std::vector<SeenEntry> seen_;
};

// Structural identity validity: nonzero and, as a residue mod p, not in
// {0, 1, p-1}. The registry-membership half lives in the authenticators
// (hardened mode only).
bool id_format_valid(const Int& id, const Int& p);

// Shared login computation:
//   c1 = c1_base^r, t = owf(T xor pw) mod p-1, c2 = m_base^t * pw^r.
std::pair<Int, Int> login_core(const Int& c1_base, const Int& m_base, const Int& pw,
                               long t_stamp, const Int& r, const SystemParams& params);

// Shared verification identity: c2 * (c1^x_s)^-1 == m_base^t (mod p).
bool verify_core(const Int& c1, const Int& c2, const Int& m_base, const Int& pw_recomputed,
                 long t_stamp, const SystemParams& params);

Credential hl_register(const SystemParams& params, Registry& registry, const Int& id);
LoginMessage hl_login(const Credential& cred, long t_stamp, const Int& r,
                      const SystemParams& params);
AuthDecision hl_authenticate(const SystemParams& params, Registry& registry,
                             const LoginMessage& msg, long t_now);

Credential slh_register(const SystemParams& params, Registry& registry, const Int& id);
LoginMessage slh_login(const Credential& cred, long t_stamp, const Int& r,
                       const SystemParams& params);
AuthDecision slh_authenticate(const SystemParams& params, Registry& registry,
                              const LoginMessage& msg, long t_now);

Credential kumar_register(const SystemParams& params, Registry& registry, const Int& id);
LoginMessage kumar_login(const Credential& cred, long t_stamp, const Int& r,
                         const SystemParams& params);
AuthDecision kumar_authenticate(const SystemParams& params, Registry& registry,
                                const LoginMessage& msg, long t_now);

// Duplicate ids allowed; R fresh and unique across all registrations.
Credential prop_register(const SystemParams& params, Registry& registry, const Int& id,
                         Rng& rng);
// Test/fixture entry point with an explicit registration number.
Credential prop_register_with_number(const SystemParams& params, Registry& registry,
                                     const Int& id, const Int& reg_number);
LoginMessage prop_login(const Credential& cred, long t_stamp, const Int& r,
                        const SystemParams& params);
AuthDecision prop_authenticate(const SystemParams& params, Registry& registry,
                               const LoginMessage& msg, long t_now);

// Dispatch helpers used by the CLI and the attack matrix.
Credential register_user(SchemeTag tag, const SystemParams& params, Registry& registry,
                         const Int& id, Rng& rng);
LoginMessage build_login(const Credential& cred, long t_stamp, const Int& r,
                         const SystemParams& params);
AuthDecision authenticate(const SystemParams& params, Registry& registry,
                          const LoginMessage& msg, long t_now);

// Replay-cache key for a message's identity part.
std::string identity_key(const LoginMessage& msg);

}  // namespace scra
