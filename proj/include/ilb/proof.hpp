#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ilb/formula.hpp"
#include "ilb/schema.hpp"

namespace ilb {

// Hilbert-style derivation steps. Step indices in MP/Nec are 1-based and
// must refer to strictly earlier steps. Nec may only be applied to steps
// that do not depend on a hypothesis.
enum class StepKind { Taut, Ax, Hyp, MP, Nec };

struct Step {
  StepKind kind = StepKind::Taut;
  Formula f;           // Taut, Ax, Hyp
  SchemaId schema{};   // Ax
  int i = 0, j = 0;    // MP: premise i, implication j; Nec: premise i
};

struct Derivation {
  std::vector<Step> steps;
  std::vector<Formula> hypotheses;
  std::set<SchemaId> enabled;  // extension schemata; IL axioms always allowed
};

// Truth-table tautology test treating modal_atoms(f) as opaque atoms.
// Refuses formulas with more than 20 distinct non-constant atoms
// (Error(Resource)).
bool taut(const Formula& f);

struct VerifyResult {
  bool ok = false;
  int step = 0;          // 1-based failing step when !ok
  std::string reason;
  std::vector<Formula> formulas;  // resolved step formulas (prefix on failure)
};

VerifyResult verify_derivation(const Derivation& d);

// Proof-script format, one step per line:
//   <n> TAUT <formula>
//   <n> AX <schema-id> <formula>
//   <n> HYP <formula>
//   <n> MP <i> <j>
//   <n> NEC <i>
// Steps must be numbered consecutively from 1. Blank lines and lines
// starting with '#' are ignored. Hypotheses are implicit in HYP steps and
// the enabled set is taken from the AX lines.
Derivation parse_derivation(std::string_view text);
std::string write_derivation(const Derivation& d);

// Generated derivation of A |> B -> A & C |> B & C for A in ES2 and C a
// conjunction of disjunctions of boxed formulas; uses schema B plus IL
// axioms and propositional glue. The output verifies.
Derivation derive_b_prime(const Formula& a, const Formula& b, const Formula& c);

// Generated derivation of (A == B) -> (A |> A & B) for A, B in BS1, using
// only B0 (schema B restricted to BS1 antecedents) over IL. Works in full
// DNF over the shared boxed basis, by descending induction on the positive
// box-set of each disjunct. Refuses bases larger than 6 boxed formulas.
Derivation derive_z(const Formula& a, const Formula& b);

}  // namespace ilb
