#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace scra {

enum class SchemeTag;  // schemes.hpp

namespace cost {

// Counting boundary: E = mod_exp calls, M = explicit residue multiplications
// outside mod_exp, H = one-way-function calls, R = shadow calls,
// C = check-digit calls. mod_inv and comparisons are not counted.
struct CostVector {
  unsigned E = 0, H = 0, M = 0, R = 0, C = 0;
  bool operator==(const CostVector&) const = default;
  std::string symbolic() const;  // e.g. "3E+H+M"
};

// RAII scope installing a thread-local counter. Instrumented primitives
// tick the innermost active meter. Nesting is not supported.
class Meter {
 public:
  Meter();
  ~Meter();
  Meter(const Meter&) = delete;
  Meter& operator=(const Meter&) = delete;
  const CostVector& read() const { return counts_; }

  static void tick_exp();
  static void tick_hash();
  static void tick_mul();
  static void tick_shadow();
  static void tick_check();

 private:
  CostVector counts_;
};

enum class Phase { Registration, Login, Authentication };

struct TableMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Executes the named phase once on a small fixture under a Meter and
// returns the measured counts. Counters are measured, never hard-coded.
CostVector count_phase(SchemeTag scheme, Phase phase);

using CostTable = std::map<std::pair<SchemeTag, Phase>, CostVector>;

// All 12 (scheme, phase) cells, measured by instrumentation. Throws
// TableMismatch naming the first cell that deviates from the published
// symbolic counts.
CostTable cost_table();

std::string render_cost_table(const CostTable& table);
std::string cost_table_json(const CostTable& table);

}  // namespace cost
}  // namespace scra
