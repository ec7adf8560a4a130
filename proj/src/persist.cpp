#include "scra/persist.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

namespace scra {

namespace {

constexpr char kKeyMagic[4] = {'S', 'C', 'R', 'K'};
constexpr std::uint8_t kKeyVersion = 1;

void put_u32(std::ostream& out, std::uint32_t n) {
  char b[4] = {char(n >> 24), char(n >> 16), char(n >> 8), char(n)};
  out.write(b, 4);
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (!in) throw IoError("key file truncated");
  return (std::uint32_t(b[0]) << 24) | (std::uint32_t(b[1]) << 16) | (std::uint32_t(b[2]) << 8) |
         std::uint32_t(b[3]);
}

void put_blob(std::ostream& out, std::span<const std::uint8_t> bytes) {
  put_u32(out, static_cast<std::uint32_t>(bytes.size()));
  out.write(reinterpret_cast<const char*>(bytes.data()), bytes.size());
}

std::vector<std::uint8_t> get_blob(std::istream& in) {
  std::uint32_t n = get_u32(in);
  std::vector<std::uint8_t> bytes(n);
  in.read(reinterpret_cast<char*>(bytes.data()), n);
  if (!in) throw IoError("key file truncated");
  return bytes;
}

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode) {
  std::ofstream out(path, mode);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path, std::ios::openmode mode) {
  std::ifstream in(path, mode);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  return in;
}

std::string opt_str(const std::optional<Int>& v) { return v ? v->get_str() : "-"; }

std::optional<Int> parse_opt(const std::string& s) {
  if (s == "-") return std::nullopt;
  return Int(s);
}

// "key value" line parser for the versioned text formats.
class TextReader {
 public:
  TextReader(std::istream& in, const std::string& header) : in_(in) {
    std::string line;
    if (!std::getline(in_, line) || line != header)
      throw IoError("bad file header, expected '" + header + "'");
  }

  std::string expect(const std::string& key) {
    std::string line;
    if (!std::getline(in_, line)) throw IoError("missing field: " + key);
    auto sp = line.find(' ');
    if (sp == std::string::npos || line.substr(0, sp) != key)
      throw IoError("expected field '" + key + "', got '" + line + "'");
    return line.substr(sp + 1);
  }

  std::istream& stream() { return in_; }

 private:
  std::istream& in_;
};

}  // namespace

void save_server_secret(const ServerSecret& secret, const std::filesystem::path& path) {
  auto out = open_out(path, std::ios::binary);
  out.write(kKeyMagic, 4);
  out.put(char(kKeyVersion));
  put_blob(out, secret.shadow_key);
  put_blob(out, secret.checkdigit_key);
  put_blob(out, to_bytes_be(secret.x_s));
  if (!out) throw IoError("write failed: " + path.string());
}

ServerSecret load_server_secret(const std::filesystem::path& path) {
  auto in = open_in(path, std::ios::binary);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kKeyMagic, 4) != 0) throw IoError("bad key file magic");
  if (in.get() != kKeyVersion) throw IoError("unsupported key file version");
  ServerSecret s;
  s.shadow_key = get_blob(in);
  s.checkdigit_key = get_blob(in);
  s.x_s = from_bytes_be(get_blob(in));
  return s;
}

void save_public_params(const PublicParams& params, const std::filesystem::path& path) {
  auto out = open_out(path, std::ios::out);
  out << "scra-params v1\n";
  out << "scheme " << scheme_name(params.scheme) << "\n";
  out << "p " << params.p.get_str() << "\n";
  out << "delta_t " << params.delta_t << "\n";
  out << "check_digits " << params.check_digits << "\n";
  out << "mode " << (params.mode == FidelityMode::FaithfulPaper ? "paper" : "hardened") << "\n";
  if (!out) throw IoError("write failed: " + path.string());
}

PublicParams load_public_params(const std::filesystem::path& path) {
  auto in = open_in(path, std::ios::in);
  TextReader r(in, "scra-params v1");
  PublicParams params;
  auto scheme = parse_scheme(r.expect("scheme"));
  if (!scheme) throw IoError("bad scheme in params file");
  params.scheme = *scheme;
  params.p = Int(r.expect("p"));
  params.delta_t = std::stol(r.expect("delta_t"));
  params.check_digits = static_cast<unsigned>(std::stoul(r.expect("check_digits")));
  std::string mode = r.expect("mode");
  if (mode == "paper")
    params.mode = FidelityMode::FaithfulPaper;
  else if (mode == "hardened")
    params.mode = FidelityMode::Hardened;
  else
    throw IoError("bad mode in params file");
  return params;
}

void save_credential(const Credential& cred, const std::filesystem::path& path) {
  auto out = open_out(path, std::ios::out);
  out << "scra-credential v1\n";
  out << "scheme " << scheme_name(cred.tag) << "\n";
  out << "id " << cred.id.get_str() << "\n";
  out << "pw " << cred.pw.get_str() << "\n";
  out << "sid " << opt_str(cred.sid) << "\n";
  out << "r " << opt_str(cred.reg_number) << "\n";
  out << "cid " << (cred.c_id ? std::to_string(cred.c_id->value) : "-") << "\n";
  out << "cid_digits " << (cred.c_id ? std::to_string(cred.c_id->digits) : "-") << "\n";
  if (!out) throw IoError("write failed: " + path.string());
}

Credential load_credential(const std::filesystem::path& path) {
  auto in = open_in(path, std::ios::in);
  TextReader r(in, "scra-credential v1");
  Credential cred;
  auto scheme = parse_scheme(r.expect("scheme"));
  if (!scheme) throw IoError("bad scheme in credential file");
  cred.tag = *scheme;
  cred.id = Int(r.expect("id"));
  cred.pw = Int(r.expect("pw"));
  cred.sid = parse_opt(r.expect("sid"));
  cred.reg_number = parse_opt(r.expect("r"));
  std::string cid = r.expect("cid");
  std::string digits = r.expect("cid_digits");
  if (cid != "-") {
    if (digits == "-") throw IoError("cid without cid_digits");
    cred.c_id = CheckDigit{std::stoull(cid), static_cast<unsigned>(std::stoul(digits))};
  }
  return cred;
}

void save_registry(const Registry& registry, const std::filesystem::path& path) {
  auto out = open_out(path, std::ios::out);
  out << "scra-registry v1\n";
  for (const auto& rec : registry.records())
    out << "record " << rec.id.get_str() << " " << opt_str(rec.sid) << " "
        << opt_str(rec.reg_number) << "\n";
  for (const auto& seen : registry.replay_cache())
    out << "seen " << seen.expiry << " " << seen.key << "\n";
  if (!out) throw IoError("write failed: " + path.string());
}

Registry load_registry(const std::filesystem::path& path) {
  auto in = open_in(path, std::ios::in);
  std::string line;
  if (!std::getline(in, line) || line != "scra-registry v1")
    throw IoError("bad registry file header");
  Registry registry;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string kind;
    fields >> kind;
    if (kind == "record") {
      std::string id, sid, reg;
      fields >> id >> sid >> reg;
      if (fields.fail()) throw IoError("bad record line: " + line);
      registry.add_record(Int(id), parse_opt(sid), parse_opt(reg));
    } else if (kind == "seen") {
      long expiry;
      std::string key;
      fields >> expiry >> key;
      if (fields.fail()) throw IoError("bad seen line: " + line);
      registry.restore_replay_entry(key, expiry);
    } else {
      throw IoError("unknown registry line: " + line);
    }
  }
  return registry;
}

}  // namespace scra
