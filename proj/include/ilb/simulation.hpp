#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ilb/formula.hpp"
#include "ilb/veltman.hpp"

namespace ilb {

// A level relation bis_i or the stabilized greatest B-simulation
// (level == nullopt). pairs[b] is the bitmask of worlds u with (b,u) in
// the relation.
struct SimRelation {
  std::optional<int> level;
  std::vector<std::uint64_t> pairs;

  bool at(int b, int u) const { return (pairs[b] >> u) & 1; }
  bool operator==(const SimRelation& o) const { return pairs == o.pairs; }
};

// bis_0(b,u) iff b and u have the same R-upset; round k+1 keeps (b,u) iff
// every R-successor c of b has an R-successor c' of u with (c,c')
// surviving round k and c'S_u-upset contained in cS_b-upset.
SimRelation bis_level(const VeltmanFrame& f, int n);

// Fixpoint of the refinement; equals the intersection of all bis_i and is
// the largest B-simulation on the frame.
SimRelation greatest_b_simulation(const VeltmanFrame& f);

// Length of the longest R-chain starting at x (0 at endpoints).
int depth(const VeltmanFrame& f, int x);
int frame_depth(const VeltmanFrame& f);

struct CiResult {
  bool holds = false;
  std::optional<std::pair<int, int>> witness;  // first failing (a,b)
};

// Frame condition C_i: for all aRb there is u with bS_au, bis_i(b,u) and
// every uS_a d R e landing back in b's upset.
CiResult check_ci(const VeltmanFrame& f, int i);

// The final clause of the C_B condition appears in two variants; the
// successor form (yRe) matches the C_i family and is the default.
enum class CbFinalClause { SuccessorForm, MemberForm };

CiResult check_cb(const VeltmanFrame& f,
                  CbFinalClause clause = CbFinalClause::SuccessorForm);

// Characteristic formula A_i^b with its valuation V_i^b: under the
// valuation, u forces the formula iff (b,u) is in bis_i. Reserved variable
// names are "#r0_<node>", "#p0_<node>_<succ>", "#q<level>_<node>_<succ>".
struct CharacteristicResult {
  Formula formula;
  Valuation valuation;
  std::vector<std::string> reserved;  // in creation order
};

CharacteristicResult characteristic_formula(const VeltmanFrame& f, int b, int i);

// The constructive refutation extracted from a failing C_i check: a model
// (valuation V_i^b plus fresh "#q", "#s") where `world` forces the
// antecedent A_i^b |> #q but not the consequent A_i^b & []#s |> #q & []#s,
// refuting a B_i instance on the frame. Throws Error(Precondition) if the
// witness pair does not actually fail C_i.
struct Lemma7Result {
  VeltmanModel model;
  Formula antecedent;
  Formula consequent;
  int world;
};

Lemma7Result lemma7_counterexample(const VeltmanFrame& f, int i,
                                   std::pair<int, int> witness);

}  // namespace ilb
