#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ilb/formula.hpp"

namespace ilb {

// Worlds are 0..n-1; relations are stored as per-world successor bitmasks,
// which caps models at 64 worlds (far beyond anything enumerable here).
struct VeltmanFrame {
  int n = 0;
  std::vector<std::uint64_t> r;               // r[x] = R-successors of x
  std::vector<std::vector<std::uint64_t>> s;  // s[x][y] = S_x-successors of y

  explicit VeltmanFrame(int worlds = 0) { resize(worlds); }

  void resize(int worlds) {
    n = worlds;
    r.assign(n, 0);
    s.assign(n, std::vector<std::uint64_t>(n, 0));
  }

  std::uint64_t all_mask() const {
    return n == 64 ? ~0ULL : ((1ULL << n) - 1);
  }
  bool rel_r(int x, int y) const { return (r[x] >> y) & 1; }
  bool rel_s(int x, int y, int z) const { return (s[x][y] >> z) & 1; }
  std::uint64_t upset(int x) const { return r[x]; }
};

using Valuation = std::map<std::string, std::uint64_t>;

struct VeltmanModel {
  VeltmanFrame frame;
  Valuation val;
};

// One Definition-1 violation: the condition number (1..5) and a witness.
struct Violation {
  int condition;
  std::string detail;
};

// Empty iff the structure is a Veltman frame. For each violated condition
// the lexicographically first witness tuple is reported.
std::vector<Violation> validate_frame(const VeltmanFrame& f);

// In-place transitive closure of R.
void r_transitive_close(VeltmanFrame& f);

// Adds the pairs forced by Definition 1 (yS_xy for xRy; yS_xz for xRyRz)
// and closes each S_x transitively.
void s_mandatory_close(VeltmanFrame& f);

// Frame/model file format (line oriented):
//   worlds: <n>
//   close: r-transitive, s-mandatory     (optional, any subset)
//   R: <i> <j>; <i> <j>; ...
//   S <x>: <i> <j>; ...
//   val <name>: <i> <j> ...              (models only)
// A '#' introduces a comment when it starts the line or is followed by
// whitespace; '#name' tokens are reserved valuation variables.
// Closures run in the fixed order r-transitive, s-mandatory; validation
// always runs afterwards and throws Error(Validation) listing every
// violated condition.
VeltmanFrame load_frame(std::string_view text);
VeltmanModel load_model(std::string_view text);

std::string write_frame(const VeltmanFrame& f);
std::string write_model(const VeltmanModel& m);

// Forcing. Unknown variables are false everywhere.
bool forces(const VeltmanModel& m, int world, const Formula& f);
std::uint64_t forcing_set(const VeltmanModel& m, const Formula& f);

}  // namespace ilb
