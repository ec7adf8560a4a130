#include "scra/costmodel.hpp"

#include <sstream>

#include "scra/schemes.hpp"

namespace scra::cost {

namespace {

thread_local Meter* g_active = nullptr;

}  // namespace

Meter::Meter() {
  if (g_active) throw std::logic_error("Meter: nesting not supported");
  g_active = this;
}

Meter::~Meter() { g_active = nullptr; }

void Meter::tick_exp() {
  if (g_active) ++g_active->counts_.E;
}
void Meter::tick_hash() {
  if (g_active) ++g_active->counts_.H;
}
void Meter::tick_mul() {
  if (g_active) ++g_active->counts_.M;
}
void Meter::tick_shadow() {
  if (g_active) ++g_active->counts_.R;
}
void Meter::tick_check() {
  if (g_active) ++g_active->counts_.C;
}

std::string CostVector::symbolic() const {
  std::string out;
  auto term = [&out](unsigned n, char sym) {
    if (n == 0) return;
    if (!out.empty()) out += "+";
    if (n > 1) out += std::to_string(n);
    out += sym;
  };
  term(E, 'E');
  term(H, 'H');
  term(M, 'M');
  term(R, 'R');
  term(C, 'C');
  return out.empty() ? "0" : out;
}

namespace {

struct PhaseFixture {
  SystemParams params;
  Registry registry;
  Credential cred;
  LoginMessage msg;
};

// Small deterministic fixture; counters are read off an actual phase run.
PhaseFixture build_fixture(SchemeTag scheme) {
  Rng rng(0xC057);
  SystemParams params = make_system_params(16, rng);
  Registry registry;
  Int id = 0;
  const Int& p = params.p.value();
  do {
    id = 2 + rng.below(p - 4);
  } while (!id_format_valid(id, p));
  Credential cred = register_user(scheme, params, registry, id, rng);
  Int r = sample_exponent(p, 1, rng);
  LoginMessage msg = build_login(cred, 500, r, params);
  return {std::move(params), std::move(registry), std::move(cred), std::move(msg)};
}

}  // namespace

CostVector count_phase(SchemeTag scheme, Phase phase) {
  PhaseFixture fx = build_fixture(scheme);
  Rng rng(0x9999);
  switch (phase) {
    case Phase::Registration: {
      Registry fresh;
      Meter meter;
      register_user(scheme, fx.params, fresh, fx.cred.id, rng);
      return meter.read();
    }
    case Phase::Login: {
      Int r = sample_exponent(fx.params.p.value(), 1, rng);
      Meter meter;
      build_login(fx.cred, 500, r, fx.params);
      return meter.read();
    }
    case Phase::Authentication: {
      Meter meter;
      AuthDecision d = authenticate(fx.params, fx.registry, fx.msg, 510);
      if (!d.accepted)
        throw std::logic_error("count_phase: fixture authentication unexpectedly rejected");
      return meter.read();
    }
  }
  throw std::logic_error("count_phase: bad phase");
}

namespace {

const std::map<std::pair<SchemeTag, Phase>, std::string> kPublishedTable = {
    {{SchemeTag::HL, Phase::Registration}, "E"},
    {{SchemeTag::HL, Phase::Login}, "3E+H+M"},
    {{SchemeTag::HL, Phase::Authentication}, "3E+H+M"},
    {{SchemeTag::SLH, Phase::Registration}, "E+R"},
    {{SchemeTag::SLH, Phase::Login}, "3E+H+M"},
    {{SchemeTag::SLH, Phase::Authentication}, "3E+H+M"},
    {{SchemeTag::Kumar, Phase::Registration}, "E+R+C"},
    {{SchemeTag::Kumar, Phase::Login}, "3E+H+M"},
    {{SchemeTag::Kumar, Phase::Authentication}, "3E+H+M+C"},
    {{SchemeTag::Proposed, Phase::Registration}, "E+C"},
    {{SchemeTag::Proposed, Phase::Login}, "3E+H+M"},
    {{SchemeTag::Proposed, Phase::Authentication}, "3E+H+M+C"},
};

std::string phase_name(Phase phase) {
  switch (phase) {
    case Phase::Registration: return "registration";
    case Phase::Login: return "login";
    case Phase::Authentication: return "authentication";
  }
  return "?";
}

}  // namespace

CostTable cost_table() {
  CostTable table;
  for (const auto& [cell, expected] : kPublishedTable) {
    CostVector measured = count_phase(cell.first, cell.second);
    if (measured.symbolic() != expected)
      throw TableMismatch("cost table cell deviates: " + scheme_name(cell.first) + " " +
                          phase_name(cell.second) + " measured " + measured.symbolic() +
                          " expected " + expected);
    table[cell] = measured;
  }
  return table;
}

std::string render_cost_table(const CostTable& table) {
  std::ostringstream out;
  out << "scheme    registration  login    authentication\n";
  for (SchemeTag tag :
       {SchemeTag::HL, SchemeTag::SLH, SchemeTag::Kumar, SchemeTag::Proposed}) {
    char line[120];
    std::snprintf(line, sizeof line, "%-9s %-13s %-8s %s\n", scheme_name(tag).c_str(),
                  table.at({tag, Phase::Registration}).symbolic().c_str(),
                  table.at({tag, Phase::Login}).symbolic().c_str(),
                  table.at({tag, Phase::Authentication}).symbolic().c_str());
    out << line;
  }
  return out.str();
}

std::string cost_table_json(const CostTable& table) {
  std::ostringstream out;
  out << "{";
  bool first_scheme = true;
  for (SchemeTag tag :
       {SchemeTag::HL, SchemeTag::SLH, SchemeTag::Kumar, SchemeTag::Proposed}) {
    if (!first_scheme) out << ",";
    first_scheme = false;
    out << "\"" << scheme_name(tag) << "\":{";
    bool first_phase = true;
    for (Phase phase : {Phase::Registration, Phase::Login, Phase::Authentication}) {
      const CostVector& v = table.at({tag, phase});
      if (!first_phase) out << ",";
      first_phase = false;
      out << "\"" << phase_name(phase) << "\":{\"E\":" << v.E << ",\"H\":" << v.H
          << ",\"M\":" << v.M << ",\"R\":" << v.R << ",\"C\":" << v.C << "}";
    }
    out << "}";
  }
  out << "}";
  return out.str();
}

}  // namespace scra::cost
