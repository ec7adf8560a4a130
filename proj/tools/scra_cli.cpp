#include <CLI11.hpp>

#include <iostream>

#include "scra/attacks.hpp"
#include "scra/channel.hpp"
#include "scra/costmodel.hpp"
#include "scra/persist.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRejected = 2;
constexpr int kExitMismatch = 3;
constexpr int kExitUsage = 64;

struct FileArgs {
  std::string params_path = "scra-params.txt";
  std::string key_path = "scra-key.bin";
  std::string registry_path = "scra-registry.txt";
};

void add_file_flags(CLI::App* cmd, FileArgs& files) {
  cmd->add_option("--params", files.params_path, "public parameters file")
      ->envname("SCRA_PARAMS");
  cmd->add_option("--key", files.key_path, "server key file")->envname("SCRA_KEY");
  cmd->add_option("--registry", files.registry_path, "registry file")->envname("SCRA_REGISTRY");
}

scra::SystemParams load_system(const FileArgs& files, scra::SchemeTag* scheme_out = nullptr) {
  scra::PublicParams pub = scra::load_public_params(files.params_path);
  scra::ServerSecret secret = scra::load_server_secret(files.key_path);
  scra::SystemParams params(scra::Prime(pub.p), std::move(secret),
                            scra::OwfHandle::standard());
  params.delta_t = pub.delta_t;
  params.check_digits = pub.check_digits;
  params.mode = pub.mode;
  if (scheme_out) *scheme_out = pub.scheme;
  return params;
}

scra::FidelityMode parse_mode(const std::string& mode) {
  if (mode == "paper") return scra::FidelityMode::FaithfulPaper;
  if (mode == "hardened") return scra::FidelityMode::Hardened;
  throw CLI::ValidationError("--mode must be 'paper' or 'hardened'");
}

int cmd_setup(const FileArgs& files, const std::string& scheme, unsigned bits, unsigned digits,
              long delta_t, unsigned long seed, const std::string& mode) {
  auto tag = scra::parse_scheme(scheme);
  if (!tag) {
    std::cerr << "error: unknown scheme '" << scheme << "'\n";
    return kExitUsage;
  }
  if (bits < 8) {
    std::cerr << "error: --bits must be >= 8\n";
    return kExitUsage;
  }
  scra::Rng rng(seed);
  scra::Int p = scra::gen_prime(bits, rng);
  scra::ServerSecret secret = scra::make_server_secret(p, rng);
  scra::PublicParams pub{p, delta_t, digits, parse_mode(mode), *tag};
  scra::save_public_params(pub, files.params_path);
  scra::save_server_secret(secret, files.key_path);
  scra::save_registry(scra::Registry{}, files.registry_path);
  std::cout << "scheme " << scheme << "\n"
            << "p " << p.get_str() << " (" << bits << " bits)\n"
            << "delta_t " << delta_t << "\n"
            << "check_digits " << digits << "\n"
            << "mode " << mode << "\n";
  return kExitOk;
}

int cmd_register(const FileArgs& files, const std::string& id_str, const std::string& out_path,
                 unsigned long seed) {
  scra::SchemeTag scheme;
  scra::SystemParams params = load_system(files, &scheme);
  scra::Registry registry = scra::load_registry(files.registry_path);
  scra::Rng rng(seed);
  scra::Credential cred =
      scra::register_user(scheme, params, registry, scra::Int(id_str), rng);
  scra::save_credential(cred, out_path);
  scra::save_registry(registry, files.registry_path);
  std::cout << "registered id " << cred.id.get_str();
  if (cred.reg_number) std::cout << " R " << cred.reg_number->get_str();
  if (cred.sid) std::cout << " sid " << cred.sid->get_str();
  std::cout << "\ncredential written to " << out_path << "\n";
  return kExitOk;
}

int cmd_login_auth(const FileArgs& files, const std::string& cred_path, long delay,
                   const std::string& tamper, unsigned long seed) {
  scra::SystemParams params = load_system(files);
  scra::Registry registry = scra::load_registry(files.registry_path);
  scra::Credential cred = scra::load_credential(cred_path);

  scra::SimClock clock(1000);
  scra::Rng rng(seed);
  scra::Int r = scra::sample_exponent(params.p.value(), 1, rng);
  scra::LoginMessage msg = scra::build_login(cred, clock.now(), r, params);

  if (tamper == "c1")
    msg.c1 ^= 1;
  else if (tamper == "c2")
    msg.c2 ^= 1;
  else if (tamper == "id")
    msg.identity ^= 1;
  else if (tamper == "t")
    msg.t_stamp += 1;
  else if (!tamper.empty()) {
    std::cerr << "error: --tamper must be one of c1, c2, id, t\n";
    return kExitUsage;
  }

  scra::Channel channel(clock, delay);
  auto [frame, arrival] = channel.deliver(scra::encode(msg));
  std::cout << "frame " << scra::to_hex(frame) << "\n";

  scra::LoginMessage received = scra::decode(frame);
  scra::AuthDecision decision = scra::authenticate(params, registry, received, arrival);
  scra::save_registry(registry, files.registry_path);
  std::cout << "decision " << (decision.accepted ? "accepted" : "rejected") << " "
            << scra::reason_name(decision.reason) << "\n";
  return decision.accepted ? kExitOk : kExitRejected;
}

int cmd_attack(const std::string& which, unsigned bits, unsigned digits, long trials,
               unsigned long seed) {
  scra::MatrixConfig config;
  config.prime_bits = bits;
  config.check_digits = digits;
  config.guess_trials = trials;
  config.seed = seed;
  auto rows = scra::run_attack_matrix(config, /*strict=*/false);
  if (which != "matrix") {
    bool found = false;
    for (const auto& row : rows) {
      if (row.attack == which) {
        found = true;
        std::cout << scra::render_matrix({row});
      }
    }
    if (!found) {
      std::cerr << "error: unknown attack '" << which
                << "' (use one of: chan-cheng, mech1, mech2, mech1-primitive-root, "
                   "shen-masquerade, shen-registration, leung, mech1-analogue, cid-guess, "
                   "matrix)\n";
      return kExitUsage;
    }
    return kExitOk;
  }
  std::cout << scra::render_matrix(rows);
  for (const auto& row : rows)
    if (!row.pass) return kExitMismatch;
  return kExitOk;
}

int cmd_costs(bool json) {
  try {
    auto table = scra::cost::cost_table();
    std::cout << (json ? scra::cost::cost_table_json(table)
                       : scra::cost::render_cost_table(table));
    if (json) std::cout << "\n";
  } catch (const scra::cost::TableMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMismatch;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Smart-card remote user authentication testbed"};
  app.require_subcommand(1);

  FileArgs files;
  std::string scheme = "proposed";
  unsigned bits = 16;
  unsigned digits = 6;
  long delta_t = 60;
  unsigned long seed = 1;
  std::string mode = "hardened";

  auto* setup = app.add_subcommand("setup", "generate system parameters and server key");
  add_file_flags(setup, files);
  setup->add_option("--scheme", scheme, "hl|slh|kumar|proposed")->envname("SCRA_SCHEME");
  setup->add_option("--bits", bits, "prime bit length")->envname("SCRA_BITS");
  setup->add_option("--digits", digits, "check digit count")->envname("SCRA_DIGITS");
  setup->add_option("--delta-t", delta_t, "freshness window in ticks")->envname("SCRA_DELTA_T");
  setup->add_option("--seed", seed, "rng seed")->envname("SCRA_SEED");
  setup->add_option("--mode", mode, "paper|hardened")->envname("SCRA_MODE");

  std::string id_str;
  std::string cred_path = "scra-credential.txt";
  auto* reg = app.add_subcommand("register", "register an identity, emit a credential file");
  add_file_flags(reg, files);
  reg->add_option("--id", id_str, "identity (decimal)")->required();
  reg->add_option("--out", cred_path, "credential output path");
  reg->add_option("--seed", seed, "rng seed")->envname("SCRA_SEED");

  long delay = 0;
  std::string tamper;
  auto* login = app.add_subcommand("login-auth", "simulate a login round trip");
  add_file_flags(login, files);
  login->add_option("--cred", cred_path, "credential file")->required();
  login->add_option("--delay", delay, "delivery delay in ticks");
  login->add_option("--tamper", tamper, "tamper with a field: c1|c2|id|t");
  login->add_option("--seed", seed, "rng seed")->envname("SCRA_SEED");

  std::string which = "matrix";
  long trials = 10000;
  bool have_seed = false;
  auto* attack = app.add_subcommand("attack", "run a published attack or the whole matrix");
  attack->add_option("attack-id", which, "attack name or 'matrix'");
  attack->add_option("--bits", bits, "prime bit length");
  attack->add_option("--digits", digits, "check digit count");
  attack->add_option("--trials", trials, "trials for the guessing cells");
  attack->add_option("--seed", seed, "rng seed (required for reproducibility)")
      ->envname("SCRA_SEED");

  bool json = false;
  auto* costs = app.add_subcommand("cost-table", "print the per-phase operation counts");
  costs->add_flag("--json", json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  have_seed = attack->count("--seed") > 0 || std::getenv("SCRA_SEED") != nullptr;

  try {
    if (setup->parsed())
      return cmd_setup(files, scheme, bits, digits, delta_t, seed, mode);
    if (reg->parsed()) return cmd_register(files, id_str, cred_path, seed);
    if (login->parsed()) return cmd_login_auth(files, cred_path, delay, tamper, seed);
    if (attack->parsed()) {
      if (!have_seed) {
        std::cerr << "error: attack requires --seed for reproducibility\n";
        return kExitUsage;
      }
      return cmd_attack(which, bits, digits, trials, seed);
    }
    if (costs->parsed()) return cmd_costs(json);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
