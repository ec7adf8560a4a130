#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("scra-cli-" + std::to_string(::getpid()) + "-" +
                                        std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static inline int counter = 0;
};

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(SCRA_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buf[4096];
  while (size_t n = fread(buf, 1, sizeof buf, pipe)) output.append(buf, n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

std::string files(const TempDir& dir) {
  return "--params " + (dir.path / "params.txt").string() + " --key " +
         (dir.path / "key.bin").string() + " --registry " + (dir.path / "registry.txt").string();
}

}  // namespace

TEST_CASE("setup writes files and is seed-deterministic") {
  TempDir dir;
  auto r1 = run("setup --scheme hl --bits 16 --seed 9 " + files(dir));
  CHECK(r1.exit_code == 0);
  CHECK(r1.output.find("p ") != std::string::npos);
  CHECK(fs::exists(dir.path / "params.txt"));
  CHECK(fs::exists(dir.path / "key.bin"));

  TempDir dir2;
  auto r2 = run("setup --scheme hl --bits 16 --seed 9 " + files(dir2));
  CHECK(r1.output == r2.output);

  std::ifstream a(dir.path / "params.txt"), b(dir2.path / "params.txt");
  std::string sa((std::istreambuf_iterator<char>(a)), {});
  std::string sb((std::istreambuf_iterator<char>(b)), {});
  CHECK(sa == sb);
}

TEST_CASE("setup rejects bits < 8 with a usage error") {
  TempDir dir;
  CHECK(run("setup --scheme hl --bits 4 --seed 9 " + files(dir)).exit_code == 64);
  CHECK(run("setup --scheme nope --bits 16 --seed 9 " + files(dir)).exit_code == 64);
  CHECK(run("bogus-subcommand").exit_code == 64);
}

TEST_CASE("register, login-auth happy path and failure modes") {
  TempDir dir;
  REQUIRE(run("setup --scheme hl --bits 16 --seed 9 " + files(dir)).exit_code == 0);
  auto cred = (dir.path / "cred.txt").string();
  auto reg = run("register --id 1234 --out " + cred + " " + files(dir));
  CHECK(reg.exit_code == 0);
  CHECK(fs::exists(cred));

  // duplicate registration under HL
  CHECK(run("register --id 1234 --out " + cred + " " + files(dir)).exit_code != 0);

  // run the tampered attempt first: an accepted login at the same simulated
  // timestamp would otherwise trip the replay cache before verification
  auto tampered = run("login-auth --cred " + cred + " --seed 5 --tamper c2 " + files(dir));
  CHECK(tampered.exit_code == 2);
  CHECK(tampered.output.find("VERIFY_FAILED") != std::string::npos);

  auto ok = run("login-auth --cred " + cred + " --seed 3 " + files(dir));
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("frame ") != std::string::npos);
  CHECK(ok.output.find("accepted OK") != std::string::npos);

  auto stale = run("login-auth --cred " + cred + " --seed 4 --delay 100 " + files(dir));
  CHECK(stale.exit_code == 2);
  CHECK(stale.output.find("STALE_TIMESTAMP") != std::string::npos);

  auto replay = run("login-auth --cred " + cred + " --seed 3 " + files(dir));
  CHECK(replay.exit_code == 2);
  CHECK(replay.output.find("REPLAY") != std::string::npos);

  CHECK(run("login-auth --cred " + cred + " --seed 5 --tamper bogus " + files(dir)).exit_code ==
        64);
}

TEST_CASE("proposed scheme registers the same id twice with distinct R") {
  TempDir dir;
  REQUIRE(run("setup --scheme proposed --bits 16 --seed 9 " + files(dir)).exit_code == 0);
  auto c1 = (dir.path / "c1.txt").string();
  auto c2 = (dir.path / "c2.txt").string();
  auto r1 = run("register --id 1234 --seed 1 --out " + c1 + " " + files(dir));
  auto r2 = run("register --id 1234 --seed 2 --out " + c2 + " " + files(dir));
  CHECK(r1.exit_code == 0);
  CHECK(r2.exit_code == 0);
  CHECK(r1.output != r2.output);  // distinct R printed

  CHECK(run("login-auth --cred " + c1 + " --seed 3 " + files(dir)).exit_code == 0);
  CHECK(run("login-auth --cred " + c2 + " --seed 4 " + files(dir)).exit_code == 0);
}

TEST_CASE("attack matrix exits 0 and requires a seed") {
  auto r = run("attack matrix --seed 11 --bits 12 --trials 500");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("chan-cheng") != std::string::npos);
  CHECK(r.output.find("FAIL") == std::string::npos);

  CHECK(run("attack matrix").exit_code == 64);
  CHECK(run("attack no-such-attack --seed 11 --trials 100").exit_code == 64);

  auto single = run("attack chan-cheng --seed 11 --bits 12 --trials 100");
  CHECK(single.exit_code == 0);
  CHECK(single.output.find("accepted") != std::string::npos);

  auto blocked = run("attack mech1-analogue --seed 11 --bits 12 --trials 100");
  CHECK(blocked.exit_code == 0);
  CHECK(blocked.output.find("rejected:BAD_CHECK_DIGIT") != std::string::npos);
  CHECK(blocked.output.find("pass") != std::string::npos);
}

TEST_CASE("cost-table renders the golden table and a json variant") {
  auto text = run("cost-table");
  CHECK(text.exit_code == 0);
  CHECK(text.output.find("hl") != std::string::npos);
  CHECK(text.output.find("3E+H+M+C") != std::string::npos);

  auto json = run("cost-table --json");
  CHECK(json.exit_code == 0);
  CHECK(json.output.find("\"proposed\"") != std::string::npos);
  CHECK(json.output.find("\"E\":3") != std::string::npos);
}
