#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ilb {

// Connectives of the modal interpretability language. Diamond, top, <->
// and == are abbreviations expanded at parse time and never stored.
enum class Conn : std::uint8_t { Var, Bot, Not, And, Or, Imp, Box, Rhd };

// Immutable formula tree with shared subterms. Copying is cheap.
class Formula {
public:
  Formula();  // bottom

  static Formula var(std::string_view name);
  static Formula bot();
  static Formula top();                       // ~false
  static Formula neg(Formula f);
  static Formula conj(Formula l, Formula r);
  static Formula disj(Formula l, Formula r);
  static Formula imp(Formula l, Formula r);
  static Formula box(Formula f);
  static Formula dia(Formula f);              // ~[]~f
  static Formula rhd(Formula l, Formula r);
  static Formula equiv(Formula l, Formula r);  // (l |> r) & (r |> l)
  static Formula iff(Formula l, Formula r);    // (l -> r) & (r -> l)

  // Left-associated folds; empty input yields top/bot respectively.
  static Formula conj_all(const std::vector<Formula>& fs);
  static Formula disj_all(const std::vector<Formula>& fs);

  Conn kind() const;
  bool is(Conn c) const { return kind() == c; }
  const std::string& name() const;  // Var only
  const Formula& child() const;     // Not, Box
  const Formula& lhs() const;       // And, Or, Imp, Rhd
  const Formula& rhs() const;

  std::size_t hash() const;
  // Node identity; stable for the lifetime of any copy sharing the node.
  // Useful as a memoization key (shared subterms share identity).
  const void* id() const { return node_.get(); }
  bool operator==(const Formula& o) const;
  bool operator!=(const Formula& o) const { return !(*this == o); }

  std::string str() const;

  struct Node;  // exposed for the factory implementations; treat as opaque

private:
  std::shared_ptr<const Node> node_;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  // empty slot used inside leaf nodes only; never observable
  explicit Formula(std::nullptr_t) : node_(nullptr) {}
};

struct Formula::Node {
  Conn kind = Conn::Bot;
  std::size_t hash = 0;
  std::string name;           // Var
  Formula l{nullptr}, r{nullptr};  // unary ops use l
};

// Parses the ASCII grammar: variables [a-zA-Z_][a-zA-Z0-9_]* (optionally
// prefixed with '#' for reserved generated names), constants false/true,
// ~ [] <> & | -> <-> |> ==. Precedence, strongest first: prefix ops;
// & ; | ; |> and == (non-associative); -> (right-associative); <->.
// Throws Error(Parse) with a character position on malformed input.
Formula parse_formula(std::string_view text);

// Deterministic rendering; parse_formula(render_formula(f)) == f.
std::string render_formula(const Formula& f);

// Syntactic class membership, computed literally on the expanded tree.
struct ClassReport {
  bool in_bs1 = false;
  std::optional<int> es2_level;  // least stage admitting the formula
  bool in_es3 = false;
  bool in_es4 = false;
  bool in_ep2c = false;  // grammar coincides with ES3
};

ClassReport classify(const Formula& f);

// Literal membership in stage `level` of the ES2 hierarchy (stage 0 = BS1).
bool in_es2_stage(const Formula& f, int level);

// Maximal boxed subformulas, deduplicated, ordered by rendered string.
std::vector<Formula> boxed_basis(const Formula& f);

// Maximal box/rhd-headed subformulas plus outer variables and bottom,
// deduplicated, in first-occurrence order.
std::vector<Formula> modal_atoms(const Formula& f);

// Variable names occurring anywhere in f, sorted.
std::vector<std::string> variables(const Formula& f);

// Propositional evaluation of f treating each formula in `atoms` as an
// opaque atom whose value is the corresponding bit of `assignment`;
// bottom is false. Throws Error(Precondition) if f reaches a Var/Box/Rhd
// node not listed in atoms.
bool eval_with_atoms(const Formula& f, const std::vector<Formula>& atoms,
                     std::uint64_t assignment);

// Full disjunctive normal form of f over `basis` (boxed formulas, each
// used exactly once per disjunct, signed). Disjuncts are emitted in
// binary-counting order of sign vectors, all-positive first; the empty
// disjunction is bottom. Requires f in BS1 and every maximal boxed
// subformula of f present in basis.
Formula full_dnf(const Formula& f, const std::vector<Formula>& basis);

// Indices of basis elements occurring positively in a full-DNF conjunct.
std::set<int> box_set(const Formula& disjunct, const std::vector<Formula>& basis);

}  // namespace ilb
