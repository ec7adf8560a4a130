#include "scra/schemes.hpp"

#include <algorithm>

#include "scra/costmodel.hpp"

namespace scra {

std::string scheme_name(SchemeTag tag) {
  switch (tag) {
    case SchemeTag::HL: return "hl";
    case SchemeTag::SLH: return "slh";
    case SchemeTag::Kumar: return "kumar";
    case SchemeTag::Proposed: return "proposed";
  }
  return "?";
}

std::optional<SchemeTag> parse_scheme(const std::string& name) {
  if (name == "hl") return SchemeTag::HL;
  if (name == "slh") return SchemeTag::SLH;
  if (name == "kumar") return SchemeTag::Kumar;
  if (name == "proposed") return SchemeTag::Proposed;
  return std::nullopt;
}

std::string reason_name(Reason r) {
  switch (r) {
    case Reason::OK: return "OK";
    case Reason::BadIdFormat: return "BAD_ID_FORMAT";
    case Reason::BadCheckDigit: return "BAD_CHECK_DIGIT";
    case Reason::StaleTimestamp: return "STALE_TIMESTAMP";
    case Reason::Replay: return "REPLAY";
    case Reason::VerifyFailed: return "VERIFY_FAILED";
  }
  return "?";
}

SystemParams make_system_params(unsigned bits, Rng& rng) {
  Prime p(gen_prime(bits, rng));
  ServerSecret secret = make_server_secret(p.value(), rng);
  return SystemParams(std::move(p), std::move(secret), OwfHandle::standard());
}

bool Registry::id_registered(const Int& id) const {
  return std::any_of(records_.begin(), records_.end(),
                     [&](const Record& r) { return r.id == id; });
}

bool Registry::sid_registered(const Int& sid) const {
  return std::any_of(records_.begin(), records_.end(),
                     [&](const Record& r) { return r.sid && *r.sid == sid; });
}

bool Registry::pair_registered(const Int& id, const Int& reg_number) const {
  return std::any_of(records_.begin(), records_.end(), [&](const Record& r) {
    return r.id == id && r.reg_number && *r.reg_number == reg_number;
  });
}

bool Registry::reg_number_used(const Int& reg_number) const {
  return std::any_of(records_.begin(), records_.end(),
                     [&](const Record& r) { return r.reg_number && *r.reg_number == reg_number; });
}

void Registry::add_record(const Int& id, std::optional<Int> sid, std::optional<Int> reg_number) {
  records_.push_back({id, std::move(sid), std::move(reg_number)});
}

bool Registry::replay_seen(const std::string& identity_key, long t_stamp) const {
  std::string key = identity_key + "@" + std::to_string(t_stamp);
  return std::any_of(seen_.begin(), seen_.end(),
                     [&](const SeenEntry& e) { return e.key == key; });
}

void Registry::record_login(const std::string& identity_key, long t_stamp, long now,
                            long delta_t) {
  std::erase_if(seen_, [&](const SeenEntry& e) { return e.expiry < now; });
  seen_.push_back({identity_key + "@" + std::to_string(t_stamp), now + 2 * delta_t});
}

void Registry::restore_replay_entry(std::string key, long expiry) {
  seen_.push_back({std::move(key), expiry});
}

bool id_format_valid(const Int& id, const Int& p) {
  if (id <= 0) return false;
  Int r = id % p;
  return r != 0 && r != 1 && r != p - 1;
}

std::pair<Int, Int> login_core(const Int& c1_base, const Int& m_base, const Int& pw,
                               long t_stamp, const Int& r, const SystemParams& params) {
  const Int& p = params.p.value();
  if (r < 2 || r > p - 2) throw std::invalid_argument("login_core: r outside [2, p-2]");
  Int c1 = mod_exp(c1_base, r, p);
  Int t = reduce_to_exponent(params.owf(timestamp_xor_pw(t_stamp, pw, p)), p);
  Int m = mod_exp(m_base, t, p);
  Int pw_r = mod_exp(pw, r, p);
  Int c2 = mod_mul(m, pw_r, p);
  return {c1, c2};
}

bool verify_core(const Int& c1, const Int& c2, const Int& m_base, const Int& pw_recomputed,
                 long t_stamp, const SystemParams& params) {
  const Int& p = params.p.value();
  Int c1_xs = mod_exp(c1 % p, params.secret.x_s, p);
  Int lhs = mod_mul(c2 % p, mod_inv(c1_xs, p), p);
  Int t = reduce_to_exponent(params.owf(timestamp_xor_pw(t_stamp, pw_recomputed, p)), p);
  Int rhs = mod_exp(m_base, t, p);
  return lhs == rhs;
}

namespace {

void require_tag(SchemeTag have, SchemeTag want) {
  if (have != want) throw SchemeMismatch{};
}

// Paper step order shared by HL and SLH: identity check, then freshness
// (plus replay in hardened mode), then the verification equation. Returns
// nullopt when the pre-verify checks pass.
std::optional<AuthDecision> pre_verify_checks(const SystemParams& params,
                                              const LoginMessage& msg, bool membership_ok) {
  if (!id_format_valid(msg.identity, params.p.value()))
    return AuthDecision::reject(Reason::BadIdFormat);
  if (params.mode == FidelityMode::Hardened && !membership_ok)
    return AuthDecision::reject(Reason::BadIdFormat);
  return std::nullopt;
}

std::optional<AuthDecision> freshness_checks(const SystemParams& params,
                                             const Registry& registry,
                                             const LoginMessage& msg, long t_now) {
  if (t_now < msg.t_stamp || t_now - msg.t_stamp > params.delta_t)
    return AuthDecision::reject(Reason::StaleTimestamp);
  if (params.mode == FidelityMode::Hardened &&
      registry.replay_seen(identity_key(msg), msg.t_stamp))
    return AuthDecision::reject(Reason::Replay);
  return std::nullopt;
}

AuthDecision finish(const SystemParams& params, Registry& registry, const LoginMessage& msg,
                    long t_now, bool verified) {
  if (!verified) return AuthDecision::reject(Reason::VerifyFailed);
  if (params.mode == FidelityMode::Hardened)
    registry.record_login(identity_key(msg), msg.t_stamp, t_now, params.delta_t);
  return AuthDecision::ok();
}

AuthDecision hl_like_authenticate(const SystemParams& params, Registry& registry,
                                  const LoginMessage& msg, long t_now, bool sid_mode) {
  const Int& p = params.p.value();
  bool member = sid_mode ? registry.sid_registered(msg.identity)
                         : registry.id_registered(msg.identity);
  if (auto d = pre_verify_checks(params, msg, member)) return *d;
  if (auto d = freshness_checks(params, registry, msg, t_now)) return *d;
  Int base = msg.identity % p;
  if (msg.c1 % p == 0) return AuthDecision::reject(Reason::VerifyFailed);
  Int pw = mod_exp(base, params.secret.x_s, p);
  bool ok = verify_core(msg.c1, msg.c2, base, pw, msg.t_stamp, params);
  return finish(params, registry, msg, t_now, ok);
}

}  // namespace

Credential hl_register(const SystemParams& params, Registry& registry, const Int& id) {
  const Int& p = params.p.value();
  if (!id_format_valid(id, p)) throw BadIdFormatError{};
  if (registry.id_registered(id)) throw DuplicateId{};
  Int pw = mod_exp(id % p, params.secret.x_s, p);
  registry.add_record(id, std::nullopt, std::nullopt);
  return Credential{SchemeTag::HL, id, pw, std::nullopt, std::nullopt, std::nullopt};
}

LoginMessage hl_login(const Credential& cred, long t_stamp, const Int& r,
                      const SystemParams& params) {
  require_tag(cred.tag, SchemeTag::HL);
  Int base = cred.id % params.p.value();
  auto [c1, c2] = login_core(base, base, cred.pw, t_stamp, r, params);
  return LoginMessage{SchemeTag::HL, cred.id, std::nullopt, std::nullopt, c1, c2, t_stamp};
}

AuthDecision hl_authenticate(const SystemParams& params, Registry& registry,
                             const LoginMessage& msg, long t_now) {
  require_tag(msg.tag, SchemeTag::HL);
  return hl_like_authenticate(params, registry, msg, t_now, /*sid_mode=*/false);
}

Credential slh_register(const SystemParams& params, Registry& registry, const Int& id) {
  const Int& p = params.p.value();
  if (!id_format_valid(id, p)) throw BadIdFormatError{};
  if (registry.id_registered(id)) throw DuplicateId{};
  Int sid = shadow(params.secret, id, p);
  Int pw = mod_exp(sid, params.secret.x_s, p);
  registry.add_record(id, sid, std::nullopt);
  return Credential{SchemeTag::SLH, id, pw, sid, std::nullopt, std::nullopt};
}

LoginMessage slh_login(const Credential& cred, long t_stamp, const Int& r,
                       const SystemParams& params) {
  require_tag(cred.tag, SchemeTag::SLH);
  if (!cred.sid) throw SchemeMismatch{};
  auto [c1, c2] = login_core(*cred.sid, *cred.sid, cred.pw, t_stamp, r, params);
  return LoginMessage{SchemeTag::SLH, *cred.sid, std::nullopt, std::nullopt, c1, c2, t_stamp};
}

AuthDecision slh_authenticate(const SystemParams& params, Registry& registry,
                              const LoginMessage& msg, long t_now) {
  require_tag(msg.tag, SchemeTag::SLH);
  return hl_like_authenticate(params, registry, msg, t_now, /*sid_mode=*/true);
}

Credential kumar_register(const SystemParams& params, Registry& registry, const Int& id) {
  const Int& p = params.p.value();
  if (!id_format_valid(id, p)) throw BadIdFormatError{};
  if (registry.id_registered(id)) throw DuplicateId{};
  Int sid = shadow(params.secret, id, p);
  CheckDigit cid = check_digit(params.secret, sid, params.check_digits);
  Int pw = mod_exp(sid, params.secret.x_s, p);
  registry.add_record(id, sid, std::nullopt);
  return Credential{SchemeTag::Kumar, id, pw, sid, std::nullopt, cid};
}

LoginMessage kumar_login(const Credential& cred, long t_stamp, const Int& r,
                         const SystemParams& params) {
  require_tag(cred.tag, SchemeTag::Kumar);
  if (!cred.sid || !cred.c_id) throw SchemeMismatch{};
  auto [c1, c2] = login_core(*cred.sid, *cred.sid, cred.pw, t_stamp, r, params);
  return LoginMessage{SchemeTag::Kumar, *cred.sid, std::nullopt, cred.c_id, c1, c2, t_stamp};
}

AuthDecision kumar_authenticate(const SystemParams& params, Registry& registry,
                                const LoginMessage& msg, long t_now) {
  require_tag(msg.tag, SchemeTag::Kumar);
  if (!msg.c_id) throw SchemeMismatch{};
  const Int& p = params.p.value();
  bool member = registry.sid_registered(msg.identity);
  if (auto d = pre_verify_checks(params, msg, member)) return *d;
  if (check_digit(params.secret, msg.identity, params.check_digits) != *msg.c_id)
    return AuthDecision::reject(Reason::BadCheckDigit);
  if (auto d = freshness_checks(params, registry, msg, t_now)) return *d;
  Int base = msg.identity % p;
  if (msg.c1 % p == 0) return AuthDecision::reject(Reason::VerifyFailed);
  Int pw = mod_exp(base, params.secret.x_s, p);
  bool ok = verify_core(msg.c1, msg.c2, base, pw, msg.t_stamp, params);
  return finish(params, registry, msg, t_now, ok);
}

namespace {

bool prop_base_valid(const Int& id, const Int& reg_number, const Int& p) {
  Int base = xor_align(id, reg_number) % p;
  return base != 0 && base != 1 && base != p - 1;
}

Credential prop_make(const SystemParams& params, Registry& registry, const Int& id,
                     const Int& reg_number) {
  const Int& p = params.p.value();
  Int masked = xor_align(id, reg_number);
  Int pw = mod_exp(masked % p, params.secret.x_s, p);
  CheckDigit cid = check_digit(params.secret, masked, params.check_digits);
  registry.add_record(id, std::nullopt, reg_number);
  return Credential{SchemeTag::Proposed, id, pw, std::nullopt, reg_number, cid};
}

}  // namespace

Credential prop_register(const SystemParams& params, Registry& registry, const Int& id,
                         Rng& rng) {
  const Int& p = params.p.value();
  if (!id_format_valid(id, p)) throw BadIdFormatError{};
  Int reg_number;
  do {
    reg_number = rng.below(p);
  } while (registry.reg_number_used(reg_number) || !prop_base_valid(id, reg_number, p));
  return prop_make(params, registry, id, reg_number);
}

Credential prop_register_with_number(const SystemParams& params, Registry& registry,
                                     const Int& id, const Int& reg_number) {
  const Int& p = params.p.value();
  if (!id_format_valid(id, p)) throw BadIdFormatError{};
  if (registry.reg_number_used(reg_number))
    throw std::invalid_argument("prop_register_with_number: registration number in use");
  if (!prop_base_valid(id, reg_number, p))
    throw std::invalid_argument("prop_register_with_number: id xor R is a degenerate base");
  return prop_make(params, registry, id, reg_number);
}

LoginMessage prop_login(const Credential& cred, long t_stamp, const Int& r,
                        const SystemParams& params) {
  require_tag(cred.tag, SchemeTag::Proposed);
  if (!cred.reg_number || !cred.c_id) throw SchemeMismatch{};
  const Int& p = params.p.value();
  Int c1_base = xor_align(cred.id, *cred.reg_number) % p;
  auto [c1, c2] = login_core(c1_base, cred.id % p, cred.pw, t_stamp, r, params);
  return LoginMessage{SchemeTag::Proposed, cred.id, cred.reg_number, cred.c_id, c1, c2, t_stamp};
}

AuthDecision prop_authenticate(const SystemParams& params, Registry& registry,
                               const LoginMessage& msg, long t_now) {
  require_tag(msg.tag, SchemeTag::Proposed);
  if (!msg.reg_number || !msg.c_id) throw SchemeMismatch{};
  const Int& p = params.p.value();
  bool member = registry.pair_registered(msg.identity, *msg.reg_number);
  if (auto d = pre_verify_checks(params, msg, member)) return *d;
  Int masked = xor_align(msg.identity, *msg.reg_number);
  if (check_digit(params.secret, masked, params.check_digits) != *msg.c_id)
    return AuthDecision::reject(Reason::BadCheckDigit);
  if (auto d = freshness_checks(params, registry, msg, t_now)) return *d;
  if (msg.c1 % p == 0) return AuthDecision::reject(Reason::VerifyFailed);
  Int pw = mod_exp(masked % p, params.secret.x_s, p);
  bool ok = verify_core(msg.c1, msg.c2, msg.identity % p, pw, msg.t_stamp, params);
  return finish(params, registry, msg, t_now, ok);
}

Credential register_user(SchemeTag tag, const SystemParams& params, Registry& registry,
                         const Int& id, Rng& rng) {
  switch (tag) {
    case SchemeTag::HL: return hl_register(params, registry, id);
    case SchemeTag::SLH: return slh_register(params, registry, id);
    case SchemeTag::Kumar: return kumar_register(params, registry, id);
    case SchemeTag::Proposed: return prop_register(params, registry, id, rng);
  }
  throw std::logic_error("register_user: bad tag");
}

LoginMessage build_login(const Credential& cred, long t_stamp, const Int& r,
                         const SystemParams& params) {
  switch (cred.tag) {
    case SchemeTag::HL: return hl_login(cred, t_stamp, r, params);
    case SchemeTag::SLH: return slh_login(cred, t_stamp, r, params);
    case SchemeTag::Kumar: return kumar_login(cred, t_stamp, r, params);
    case SchemeTag::Proposed: return prop_login(cred, t_stamp, r, params);
  }
  throw std::logic_error("build_login: bad tag");
}

AuthDecision authenticate(const SystemParams& params, Registry& registry,
                          const LoginMessage& msg, long t_now) {
  switch (msg.tag) {
    case SchemeTag::HL: return hl_authenticate(params, registry, msg, t_now);
    case SchemeTag::SLH: return slh_authenticate(params, registry, msg, t_now);
    case SchemeTag::Kumar: return kumar_authenticate(params, registry, msg, t_now);
    case SchemeTag::Proposed: return prop_authenticate(params, registry, msg, t_now);
  }
  throw std::logic_error("authenticate: bad tag");
}

std::string identity_key(const LoginMessage& msg) {
  std::string key = scheme_name(msg.tag) + ":" + msg.identity.get_str();
  if (msg.reg_number) key += "/" + msg.reg_number->get_str();
  return key;
}

}  // namespace scra
