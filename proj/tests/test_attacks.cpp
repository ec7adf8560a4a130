#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "scra/attacks.hpp"

using scra::Int;

TEST_CASE("chan_cheng_forge worked example and fixed point") {
  auto forged = scra::chan_cheng_forge(5, 17, 23);
  CHECK(forged.identity == 2);
  CHECK(forged.pw == 13);
  CHECK(scra::mod_exp(2, 7, 23) == 13);  // still a valid pair under x_s = 7

  auto fixed = scra::chan_cheng_forge(1, 1, 23);
  CHECK(fixed.identity == 1);
  CHECK(fixed.pw == 1);
}

TEST_CASE("chan_cheng forgeries are sound for random parameters") {
  scra::Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    Int p = scra::gen_prime(8 + rng.below(8).get_ui(), rng);
    Int x_s = scra::sample_exponent(p, 1, rng);
    Int id = 2 + rng.below(p - 3);
    Int pw = scra::mod_exp(id, x_s, p);
    auto forged = scra::chan_cheng_forge(id, pw, p);
    CHECK(forged.pw == scra::mod_exp(forged.identity, x_s, p));
  }
}

TEST_CASE("chang_hwang_mech1 worked example and degenerate r") {
  auto forged = scra::chang_hwang_mech1(5, 17, 3, 23);
  CHECK(forged.identity == 10);
  CHECK(forged.pw == 14);
  CHECK(scra::mod_exp(10, 7, 23) == 14);

  auto identity = scra::chang_hwang_mech1(5, 17, 1, 23);
  CHECK(identity.identity == 5);
  CHECK(identity.pw == 17);
  CHECK_THROWS_AS(scra::chang_hwang_mech1(5, 17, 0, 23), std::invalid_argument);
}

TEST_CASE("mech1 at r=2 coincides with chan_cheng for all inputs") {
  for (Int id = 1; id < 23; ++id)
    for (Int pw = 1; pw < 23; ++pw) {
      auto a = scra::chan_cheng_forge(id, pw, 23);
      auto b = scra::chang_hwang_mech1(id, pw, 2, 23);
      CHECK(a.identity == b.identity);
      CHECK(a.pw == b.pw);
    }
}

TEST_CASE("chang_hwang_mech2 worked example and coalition size") {
  auto forged = scra::chang_hwang_mech2({{5, 17}, {10, 14}}, 23);
  CHECK(forged.identity == 4);
  CHECK(forged.pw == 8);
  CHECK(scra::mod_exp(4, 7, 23) == 8);
  CHECK_THROWS_AS(scra::chang_hwang_mech2({{5, 17}}, 23), scra::EmptyCoalition);
  CHECK_THROWS_AS(scra::chang_hwang_mech2({}, 23), scra::EmptyCoalition);
}

TEST_CASE("mech2 coalitions are sound for random parameters") {
  scra::Rng rng(32);
  for (int i = 0; i < 100; ++i) {
    Int p = scra::gen_prime(10, rng);
    Int x_s = scra::sample_exponent(p, 1, rng);
    std::vector<std::pair<Int, Int>> pairs;
    for (int j = 0; j < 2 + int(rng.below(3).get_ui()); ++j) {
      Int id = 2 + rng.below(p - 3);
      pairs.emplace_back(id, scra::mod_exp(id, x_s, p));
    }
    auto forged = scra::chang_hwang_mech2(pairs, p);
    CHECK(forged.pw == scra::mod_exp(forged.identity, x_s, p));
  }
}

TEST_CASE("shen masquerade worked chain at p=23") {
  CHECK(scra::shen_masquerade(5, 3, 23) == 10);
  Int pw_b = scra::mod_exp(10, 7, 23);
  CHECK(pw_b == 14);
  CHECK(scra::mod_inv(3, 22) == 15);
  CHECK(scra::shen_recover_pw(pw_b, 3, 23) == 17);  // the true pw of id 5

  CHECK(scra::shen_masquerade(5, 1, 23) == 5);
  CHECK(scra::shen_recover_pw(14, 1, 23) == 14);
  CHECK_THROWS_AS(scra::shen_masquerade(5, 2, 23), scra::NonInvertibleExponent);
  CHECK_THROWS_AS(scra::shen_recover_pw(14, 2, 23), scra::NonInvertibleExponent);
}

TEST_CASE("shen masquerade round trip is exact for all primes <= 50") {
  for (const Int& p : oracle::primes_up_to(50)) {
    if (p < 7) continue;  // [2, p-2] too thin to matter below 7
    Int x_s = 2 + p % 5;
    for (Int id_k = 2; id_k <= p - 2; ++id_k) {
      for (const Int& r : oracle::units_mod(p - 1)) {
        if (r < 1) continue;
        Int id_b = scra::shen_masquerade(id_k, r, p);
        Int pw_b = scra::mod_exp(id_b, x_s, p);  // honest registration of id_b
        CHECK(scra::shen_recover_pw(pw_b, r, p) == scra::mod_exp(id_k, x_s, p));
      }
    }
  }
}

TEST_CASE("leung_forge matches mech1 numerics on shadow identities") {
  auto forged = scra::leung_forge(5, 17, 3, 23);
  CHECK(forged.identity == 10);
  CHECK(forged.pw == 14);

  auto id1 = scra::leung_forge(5, 17, 1, 23);
  CHECK(id1.identity == 5);
  CHECK(id1.pw == 17);
}

TEST_CASE("leung forgery passes SLH verification end to end") {
  auto params = fixture::p23_standard(scra::FidelityMode::FaithfulPaper);
  scra::Registry registry;
  auto bob = scra::slh_register(params, registry, 5);
  for (Int r = 2; r < 6; ++r) {
    auto forged = scra::leung_forge(*bob.sid, bob.pw, r, 23);
    if (!scra::id_format_valid(forged.identity, 23)) continue;
    auto [c1, c2] = scra::login_core(forged.identity, forged.identity, forged.pw, 500, 4, params);
    scra::LoginMessage msg{scra::SchemeTag::SLH, forged.identity, std::nullopt, std::nullopt,
                           c1, c2, 500};
    CHECK(scra::slh_authenticate(params, registry, msg, 505).accepted);
  }
}

TEST_CASE("prop_attack_attempt yields the shifted base and matching password") {
  auto [base, pw] = scra::prop_attack_attempt(5, 17, 3, 23);
  CHECK(base == 10);
  CHECK(pw == 14);
  auto [b1, p1] = scra::prop_attack_attempt(5, 17, 1, 23);
  CHECK(b1 == 5);
  CHECK(p1 == 17);
  CHECK_THROWS_AS(scra::prop_attack_attempt(5, 17, 0, 23), std::invalid_argument);
}

TEST_CASE("no split of the shifted base carries a valid check digit at p=23") {
  auto params = fixture::p23_standard(scra::FidelityMode::FaithfulPaper);
  scra::Registry registry;
  auto bob = scra::prop_register_with_number(params, registry, 9, 12);
  auto [base, pw] = scra::prop_attack_attempt(scra::xor_align(9, 12), bob.pw, 3, 23);
  // try every split ID_b xor R' = base with R' < 32
  for (Int r_prime = 0; r_prime < 32; ++r_prime) {
    Int id_b = scra::xor_align(base, r_prime);
    if (!scra::id_format_valid(id_b, 23)) continue;
    auto [c1, c2] = scra::login_core(base, id_b % 23, pw, 500, 4, params);
    scra::LoginMessage msg{scra::SchemeTag::Proposed, id_b, r_prime, bob.c_id, c1, c2, 500};
    auto d = scra::prop_authenticate(params, registry, msg, 505);
    CHECK_FALSE(d.accepted);
    CHECK(d.reason == scra::Reason::BadCheckDigit);
  }
}

TEST_CASE("attack matrix matches the published verdicts") {
  scra::MatrixConfig config;
  config.prime_bits = 16;
  config.check_digits = 6;
  config.seed = 424242;
  config.guess_trials = 2000;
  auto rows = scra::run_attack_matrix(config, /*strict=*/true);
  CHECK(rows.size() == 13);
  for (const auto& row : rows) CHECK(row.pass);
  CHECK_FALSE(scra::render_matrix(rows).empty());
}

TEST_CASE("hardened registry checking never flips a rejected cell to accepted") {
  // forgeries rejected in faithful mode stay rejected with membership on
  auto params = fixture::p23_standard(scra::FidelityMode::FaithfulPaper);
  scra::Registry registry;
  auto bob = scra::kumar_register(params, registry, 5);
  auto forged = scra::leung_forge(*bob.sid, bob.pw, 3, 23);
  auto [c1, c2] = scra::login_core(forged.identity, forged.identity, forged.pw, 500, 4, params);
  scra::LoginMessage msg{scra::SchemeTag::Kumar, forged.identity, std::nullopt, bob.c_id,
                         c1, c2, 500};
  CHECK_FALSE(scra::kumar_authenticate(params, registry, msg, 505).accepted);
  params.mode = scra::FidelityMode::Hardened;
  CHECK_FALSE(scra::kumar_authenticate(params, registry, msg, 505).accepted);

  // and an accepted faithful HL forgery is newly rejected, never the reverse
  auto hl_params = fixture::p23_standard(scra::FidelityMode::FaithfulPaper);
  scra::Registry hl_registry;
  auto hl_bob = scra::hl_register(hl_params, hl_registry, 5);
  auto cc = scra::chan_cheng_forge(hl_bob.id, hl_bob.pw, 23);
  auto [hc1, hc2] = scra::login_core(cc.identity, cc.identity, cc.pw, 500, 4, hl_params);
  scra::LoginMessage hl_msg{scra::SchemeTag::HL, cc.identity, std::nullopt, std::nullopt,
                            hc1, hc2, 500};
  CHECK(scra::hl_authenticate(hl_params, hl_registry, hl_msg, 505).accepted);
  hl_params.mode = scra::FidelityMode::Hardened;
  CHECK_FALSE(scra::hl_authenticate(hl_params, hl_registry, hl_msg, 505).accepted);
}
