#pragma once

#include <filesystem>

#include "scra/schemes.hpp"

namespace scra {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Binary key file ("SCRK" magic, version byte); never transmitted.
void save_server_secret(const ServerSecret& secret, const std::filesystem::path& path);
ServerSecret load_server_secret(const std::filesystem::path& path);

// Public parameters as versioned structured text (canonical decimal fields).
struct PublicParams {
  Int p;
  long delta_t;
  unsigned check_digits;
  FidelityMode mode;
  SchemeTag scheme;
};

void save_public_params(const PublicParams& params, const std::filesystem::path& path);
PublicParams load_public_params(const std::filesystem::path& path);

// Credential file, versioned structured text. Field order is fixed:
// scheme, id, pw, sid, r, cid, cid_digits (absent optionals written as "-").
void save_credential(const Credential& cred, const std::filesystem::path& path);
Credential load_credential(const std::filesystem::path& path);

// Registry file: one "record" line per registration, one "seen" line per
// live replay-cache entry.
void save_registry(const Registry& registry, const std::filesystem::path& path);
Registry load_registry(const std::filesystem::path& path);

}  // namespace scra
