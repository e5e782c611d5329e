#include <algorithm>

#include "ilb/error.hpp"
#include "ilb/formula.hpp"

namespace ilb {

namespace {

bool is_top_const(const Formula& f) {
  return f.is(Conn::Not) && f.child().is(Conn::Bot);
}

struct ClassInfo {
  bool bs1 = false;
  std::optional<int> es2 = std::nullopt;
  bool es3 = false;
  bool es4 = false;
};

// Bottom-up literal-grammar classification. The constants false/true are
// admitted into every class (both are grammar-expressible, e.g. via
// []false & ~[]false).
ClassInfo classify_rec(const Formula& f) {
  ClassInfo info;
  switch (f.kind()) {
    case Conn::Bot:
      info.bs1 = true;
      info.es2 = 0;
      info.es3 = true;
      info.es4 = true;
      return info;
    case Conn::Var:
      return info;
    case Conn::Box:
      info.bs1 = true;
      info.es2 = 0;
      info.es3 = true;
      info.es4 = true;
      return info;
    case Conn::Not: {
      if (is_top_const(f)) {
        info.bs1 = true;
        info.es2 = 0;
        info.es3 = true;
        info.es4 = true;
        return info;
      }
      const ClassInfo c = classify_rec(f.child());
      info.bs1 = c.bs1;
      info.es4 = c.es4;
      info.es3 = f.child().is(Conn::Box);  // ES3 only negates boxes
      if (info.bs1) {
        info.es2 = 0;
      } else if (f.child().is(Conn::Rhd)) {
        const ClassInfo a = classify_rec(f.child().lhs());
        if (a.es2) info.es2 = *a.es2 + 1;
      }
      return info;
    }
    case Conn::And:
    case Conn::Or: {
      const ClassInfo l = classify_rec(f.lhs());
      const ClassInfo r = classify_rec(f.rhs());
      info.bs1 = l.bs1 && r.bs1;
      info.es3 = l.es3 && r.es3;
      info.es4 = l.es4 && r.es4;
      if (l.es2 && r.es2) info.es2 = std::max(*l.es2, *r.es2);
      return info;
    }
    case Conn::Imp:
      return info;  // no implication clause in any of the class grammars
    case Conn::Rhd:
      info.es3 = true;
      info.es4 = true;
      return info;
  }
  return info;
}

}  // namespace

ClassReport classify(const Formula& f) {
  const ClassInfo info = classify_rec(f);
  ClassReport rep;
  rep.in_bs1 = info.bs1;
  rep.es2_level = info.es2;
  rep.in_es3 = info.es3;
  rep.in_es4 = info.es4;
  rep.in_ep2c = info.es3;
  return rep;
}

bool in_es2_stage(const Formula& f, int level) {
  if (level < 0) return false;
  if (level == 0) return classify_rec(f).bs1;
  if (in_es2_stage(f, level - 1)) return true;
  switch (f.kind()) {
    case Conn::Bot:
      return true;
    case Conn::Not:
      if (is_top_const(f)) return true;
      return f.child().is(Conn::Rhd) && in_es2_stage(f.child().lhs(), level - 1);
    case Conn::And:
    case Conn::Or:
      return in_es2_stage(f.lhs(), level) && in_es2_stage(f.rhs(), level);
    default:
      return false;
  }
}

namespace {

void collect_boxed(const Formula& f, std::vector<Formula>& out) {
  switch (f.kind()) {
    case Conn::Box:
      out.push_back(f);
      return;  // nested boxes are not maximal
    case Conn::Not:
      collect_boxed(f.child(), out);
      return;
    case Conn::And:
    case Conn::Or:
    case Conn::Imp:
    case Conn::Rhd:
      collect_boxed(f.lhs(), out);
      collect_boxed(f.rhs(), out);
      return;
    default:
      return;
  }
}

void collect_atoms(const Formula& f, std::vector<Formula>& out) {
  switch (f.kind()) {
    case Conn::Box:
    case Conn::Rhd:
    case Conn::Var:
    case Conn::Bot:
      out.push_back(f);
      return;
    case Conn::Not:
      collect_atoms(f.child(), out);
      return;
    default:
      collect_atoms(f.lhs(), out);
      collect_atoms(f.rhs(), out);
      return;
  }
}

void dedup_stable(std::vector<Formula>& v) {
  std::vector<Formula> out;
  for (const Formula& f : v) {
    bool seen = false;
    for (const Formula& g : out)
      if (f == g) {
        seen = true;
        break;
      }
    if (!seen) out.push_back(f);
  }
  v = std::move(out);
}

}  // namespace

std::vector<Formula> boxed_basis(const Formula& f) {
  std::vector<Formula> out;
  collect_boxed(f, out);
  dedup_stable(out);
  std::sort(out.begin(), out.end(),
            [](const Formula& a, const Formula& b) { return a.str() < b.str(); });
  return out;
}

std::vector<Formula> modal_atoms(const Formula& f) {
  std::vector<Formula> out;
  collect_atoms(f, out);
  dedup_stable(out);
  return out;
}

namespace {

void collect_vars(const Formula& f, std::vector<std::string>& out) {
  switch (f.kind()) {
    case Conn::Var: out.push_back(f.name()); return;
    case Conn::Bot: return;
    case Conn::Not:
    case Conn::Box: collect_vars(f.child(), out); return;
    default:
      collect_vars(f.lhs(), out);
      collect_vars(f.rhs(), out);
      return;
  }
}

}  // namespace

std::vector<std::string> variables(const Formula& f) {
  std::vector<std::string> out;
  collect_vars(f, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool eval_with_atoms(const Formula& f, const std::vector<Formula>& atoms,
                     std::uint64_t assignment) {
  for (std::size_t i = 0; i < atoms.size(); ++i)
    if (f == atoms[i]) return (assignment >> i) & 1;
  switch (f.kind()) {
    case Conn::Bot:
      return false;
    case Conn::Not:
      return !eval_with_atoms(f.child(), atoms, assignment);
    case Conn::And:
      return eval_with_atoms(f.lhs(), atoms, assignment) &&
             eval_with_atoms(f.rhs(), atoms, assignment);
    case Conn::Or:
      return eval_with_atoms(f.lhs(), atoms, assignment) ||
             eval_with_atoms(f.rhs(), atoms, assignment);
    case Conn::Imp:
      return !eval_with_atoms(f.lhs(), atoms, assignment) ||
             eval_with_atoms(f.rhs(), atoms, assignment);
    default:
      throw Error(Error::Kind::Precondition,
                  "subformula is not over the given atoms: " + f.str());
  }
}

Formula full_dnf(const Formula& f, const std::vector<Formula>& basis) {
  if (!classify(f).in_bs1)
    throw Error(Error::Kind::Precondition, "full_dnf requires a BS1 formula: " + f.str());
  for (const Formula& b : basis)
    if (!b.is(Conn::Box))
      throw Error(Error::Kind::Precondition, "basis element is not boxed: " + b.str());
  for (const Formula& b : boxed_basis(f)) {
    bool present = false;
    for (const Formula& e : basis)
      if (b == e) {
        present = true;
        break;
      }
    if (!present)
      throw Error(Error::Kind::Precondition, "boxed subformula missing from basis: " + b.str());
  }
  const std::size_t n = basis.size();
  std::vector<Formula> disjuncts;
  for (std::uint64_t signs = 0; signs < (1ULL << n); ++signs) {
    // sign bit 0 = positive; counting order puts the all-positive row first,
    // with the last basis element flipping fastest.
    std::uint64_t assignment = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (!((signs >> (n - 1 - j)) & 1)) assignment |= 1ULL << j;
    if (!eval_with_atoms(f, basis, assignment)) continue;
    std::vector<Formula> lits;
    lits.reserve(n);
    for (std::size_t j = 0; j < n; ++j)
      lits.push_back(((signs >> (n - 1 - j)) & 1) ? Formula::neg(basis[j]) : basis[j]);
    disjuncts.push_back(n == 0 ? Formula::top() : Formula::conj_all(lits));
  }
  return Formula::disj_all(disjuncts);
}

std::set<int> box_set(const Formula& disjunct, const std::vector<Formula>& basis) {
  std::vector<Formula> lits;
  // flatten the left-associated conjunction
  const Formula* cur = &disjunct;
  while (cur->is(Conn::And)) {
    lits.push_back(cur->rhs());
    cur = &cur->lhs();
  }
  lits.push_back(*cur);
  std::reverse(lits.begin(), lits.end());
  if (basis.empty() && lits.size() == 1 && is_top_const(lits[0])) return {};
  if (lits.size() != basis.size())
    throw Error(Error::Kind::Precondition, "disjunct not in full-DNF shape: " + disjunct.str());
  std::set<int> out;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (lits[j] == basis[j])
      out.insert(static_cast<int>(j));
    else if (!(lits[j].is(Conn::Not) && lits[j].child() == basis[j]))
      throw Error(Error::Kind::Precondition, "disjunct not in full-DNF shape: " + disjunct.str());
  }
  return out;
}

}  // namespace ilb
