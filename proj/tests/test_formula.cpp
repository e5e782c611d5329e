#include <random>

#include "doctest.h"
#include "ilb/error.hpp"
#include "ilb/formula.hpp"

using namespace ilb;

namespace {

Formula F(const std::string& s) { return parse_formula(s); }

// Independent truth-table evaluator for the DNF oracle: plain recursion,
// no shared code with eval_with_atoms.
bool table_eval(const Formula& f, const std::vector<Formula>& atoms, unsigned row) {
  for (std::size_t i = 0; i < atoms.size(); ++i)
    if (f == atoms[i]) return (row >> i) & 1;
  switch (f.kind()) {
    case Conn::Bot: return false;
    case Conn::Not: return !table_eval(f.child(), atoms, row);
    case Conn::And: return table_eval(f.lhs(), atoms, row) && table_eval(f.rhs(), atoms, row);
    case Conn::Or: return table_eval(f.lhs(), atoms, row) || table_eval(f.rhs(), atoms, row);
    case Conn::Imp: return !table_eval(f.lhs(), atoms, row) || table_eval(f.rhs(), atoms, row);
    default: FAIL("unexpected atom"); return false;
  }
}

// Deterministic random formulas over p,q,r for round-trip and class laws.
Formula random_formula(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 3 : 10);
  switch (pick(rng)) {
    case 0: return Formula::var("p");
    case 1: return Formula::var("q");
    case 2: return Formula::var("r");
    case 3: return Formula::bot();
    case 4: return Formula::neg(random_formula(rng, depth - 1));
    case 5: return Formula::box(random_formula(rng, depth - 1));
    case 6: return Formula::conj(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 7: return Formula::disj(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 8: return Formula::imp(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 9: return Formula::rhd(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    default: return Formula::dia(random_formula(rng, depth - 1));
  }
}

}  // namespace

TEST_CASE("parser: precedence and abbreviations") {
  CHECK(F("[]p -> p |> q") ==
        Formula::imp(Formula::box(Formula::var("p")),
                     Formula::rhd(Formula::var("p"), Formula::var("q"))));
  // <>p == <>q expands to (~[]~p |> ~[]~q) & (~[]~q |> ~[]~p)
  const Formula dp = Formula::dia(Formula::var("p"));
  const Formula dq = Formula::dia(Formula::var("q"));
  CHECK(F("<>p == <>q") == Formula::equiv(dp, dq));
  CHECK(F("<>p == <>q") == F("(~[]~p |> ~[]~q) & (~[]~q |> ~[]~p)"));
  CHECK(F("true") == Formula::neg(Formula::bot()));
  CHECK(F("p <-> q") == Formula::iff(Formula::var("p"), Formula::var("q")));
  CHECK(F("p & q | r") == F("(p & q) | r"));
  CHECK(F("p | q & r") == F("p | (q & r)"));
  CHECK(F("p -> q -> r") == F("p -> (q -> r)"));
  CHECK(F("p |> q -> r") == F("(p |> q) -> r"));
  CHECK(F("~[]p") == Formula::neg(Formula::box(Formula::var("p"))));
  CHECK(F("#r0_1") == Formula::var("#r0_1"));
}

TEST_CASE("parser: errors carry positions") {
  CHECK_THROWS_AS(F("p |> q |> r"), Error);
  CHECK_THROWS_AS(F("p == q == r"), Error);
  CHECK_THROWS_AS(F("(p & q"), Error);
  CHECK_THROWS_AS(F("p q"), Error);
  CHECK_THROWS_AS(F(""), Error);
  CHECK_THROWS_AS(F("p @ q"), Error);
  CHECK_THROWS_AS(F("p -"), Error);
  try {
    F("p |> q |> r");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == Error::Kind::Parse);
    CHECK(std::string(e.what()).find("parse error at") != std::string::npos);
  }
}

TEST_CASE("render: canonical output") {
  CHECK(Formula::box(Formula::var("p")).str() == "[]p");
  CHECK(Formula::rhd(Formula::bot(), Formula::bot()).str() == "false |> false");
  CHECK(Formula::conj(Formula::box(Formula::var("p")),
                      Formula::neg(Formula::box(Formula::var("q"))))
            .str() == "[]p & ~[]q");
  CHECK(F("<>p").str() == "<>p");
  CHECK(F("true").str() == "true");
}

TEST_CASE("render/parse round trip on random formulas") {
  std::mt19937 rng(20240817);
  for (int i = 0; i < 500; ++i) {
    const Formula f = random_formula(rng, 5);
    CHECK(parse_formula(f.str()) == f);
  }
}

TEST_CASE("classify: representative formulas") {
  {
    const ClassReport r = classify(F("[]p"));
    CHECK(r.in_bs1);
    CHECK(r.es2_level == 0);
    CHECK(r.in_es3);
    CHECK(r.in_es4);
    CHECK(r.in_ep2c);
  }
  {
    const ClassReport r = classify(F("~([]p |> q)"));
    CHECK_FALSE(r.in_bs1);
    CHECK(r.es2_level == 1);
    CHECK_FALSE(r.in_es3);
    CHECK(r.in_es4);
    CHECK_FALSE(r.in_ep2c);
  }
  {
    const ClassReport r = classify(F("<>p"));
    CHECK(r.in_bs1);
    CHECK(r.es2_level == 0);
  }
  {
    const ClassReport r = classify(F("p |> q"));
    CHECK_FALSE(r.in_bs1);
    CHECK_FALSE(r.es2_level.has_value());
    CHECK(r.in_es3);
    CHECK(r.in_ep2c);
  }
  // literal classification: -> is not in any class grammar
  CHECK_FALSE(classify(F("[]p -> []q")).in_bs1);
  // constants are admitted
  CHECK(classify(F("false")).in_bs1);
  CHECK(classify(F("true")).in_bs1);
  // deeper negated-rhd nesting raises the stage
  CHECK(classify(F("~(~([]p |> q) |> r)")).es2_level == 2);
  CHECK_FALSE(classify(F("~(~([]p |> q) & []r)")).es2_level.has_value());
}

TEST_CASE("classify: laws on random formulas") {
  std::mt19937 rng(987654321);
  for (int i = 0; i < 800; ++i) {
    const Formula f = random_formula(rng, 4);
    const ClassReport r = classify(f);
    // BS1 coincides with stage 0
    CHECK(r.in_bs1 == (r.es2_level.has_value() && *r.es2_level == 0));
    CHECK(r.in_bs1 == in_es2_stage(f, 0));
    // the computed level is minimal and stages are cumulative
    if (r.es2_level) {
      CHECK(in_es2_stage(f, *r.es2_level));
      CHECK(in_es2_stage(f, *r.es2_level + 1));
      CHECK(in_es2_stage(f, *r.es2_level + 3));
      if (*r.es2_level > 0) CHECK_FALSE(in_es2_stage(f, *r.es2_level - 1));
      CHECK(r.in_es4);  // every staged formula fits the ES4 grammar
    } else {
      for (int lvl = 0; lvl <= 6; ++lvl) CHECK_FALSE(in_es2_stage(f, lvl));
    }
    if (r.in_es3) CHECK(r.in_es4);
    CHECK(r.in_ep2c == r.in_es3);
  }
}

TEST_CASE("boxed_basis") {
  const auto b1 = boxed_basis(F("[]p | []q"));
  REQUIRE(b1.size() == 2);
  CHECK(b1[0] == F("[]p"));
  CHECK(b1[1] == F("[]q"));
  const auto b2 = boxed_basis(F("[]p & ~[]p"));
  REQUIRE(b2.size() == 1);
  CHECK(b2[0] == F("[]p"));
  const auto b3 = boxed_basis(F("[]([]p -> p)"));
  REQUIRE(b3.size() == 1);
  CHECK(b3[0] == F("[]([]p -> p)"));
  CHECK(boxed_basis(F("p & q")).empty());
}

TEST_CASE("modal_atoms") {
  const auto a1 = modal_atoms(F("[]p -> []p"));
  REQUIRE(a1.size() == 1);
  CHECK(a1[0] == F("[]p"));
  const auto a2 = modal_atoms(F("(p|>q) & ~(p|>q)"));
  REQUIRE(a2.size() == 1);
  CHECK(a2[0] == F("p |> q"));
  const auto a3 = modal_atoms(F("p & []q"));
  REQUIRE(a3.size() == 2);
  CHECK(a3[0] == F("p"));
  CHECK(a3[1] == F("[]q"));
}

TEST_CASE("full_dnf: basic shapes") {
  {
    const Formula d = full_dnf(F("[]p"), boxed_basis(F("[]p")));
    CHECK(d == F("[]p"));
  }
  {
    const std::vector<Formula> basis = {F("[]p"), F("[]q")};
    const Formula d = full_dnf(F("[]p | []q"), basis);
    CHECK(d == F("([]p & []q) | ([]p & ~[]q) | (~[]p & []q)"));
  }
  {
    const Formula d = full_dnf(F("[]p & ~[]p"), boxed_basis(F("[]p")));
    CHECK(d == Formula::bot());
  }
}

TEST_CASE("full_dnf: truth-table oracle on random BS1 formulas") {
  std::mt19937 rng(4242);
  auto random_bs1 = [&rng](auto&& self, int depth) -> Formula {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 5);
    switch (pick(rng)) {
      case 0: return Formula::box(Formula::var("p"));
      case 1: return Formula::box(Formula::var("q"));
      case 2: return Formula::box(Formula::conj(Formula::var("p"), Formula::var("r")));
      case 3: return Formula::neg(self(self, depth - 1));
      case 4: return Formula::conj(self(self, depth - 1), self(self, depth - 1));
      default: return Formula::disj(self(self, depth - 1), self(self, depth - 1));
    }
  };
  for (int i = 0; i < 300; ++i) {
    const Formula f = random_bs1(random_bs1, 4);
    const std::vector<Formula> basis = boxed_basis(f);
    REQUIRE(basis.size() <= 3);
    const Formula d = full_dnf(f, basis);
    // equivalence under every assignment to the basis atoms
    for (unsigned row = 0; row < (1u << basis.size()); ++row)
      CHECK(table_eval(f, basis, row) == table_eval(d, basis, row));
    // each disjunct mentions each basis element exactly once, signed
    if (d != Formula::bot()) {
      std::vector<Formula> disjuncts;
      const Formula* cur = &d;
      while (cur->is(Conn::Or)) {
        disjuncts.push_back(cur->rhs());
        cur = &cur->lhs();
      }
      disjuncts.push_back(*cur);
      for (const Formula& dis : disjuncts) CHECK_NOTHROW(box_set(dis, basis));
    }
  }
}

TEST_CASE("box_set") {
  const std::vector<Formula> basis = {F("[]p"), F("[]q")};
  CHECK(box_set(F("[]p & ~[]q"), basis) == std::set<int>{0});
  CHECK(box_set(F("~[]p & ~[]q"), basis) == std::set<int>{});
  CHECK(box_set(F("[]p & []q"), basis) == std::set<int>{0, 1});
  CHECK_THROWS_AS(box_set(F("[]p"), basis), Error);
  CHECK_THROWS_AS(box_set(F("[]q & []p"), basis), Error);
}

TEST_CASE("full_dnf: precondition errors") {
  CHECK_THROWS_AS(full_dnf(F("p |> q"), {}), Error);
  CHECK_THROWS_AS(full_dnf(F("[]p"), {}), Error);                  // missing basis element
  CHECK_THROWS_AS(full_dnf(F("[]p"), {F("p")}), Error);            // non-boxed basis
}

TEST_CASE("eval_with_atoms rejects unlisted atoms") {
  CHECK_THROWS_AS(eval_with_atoms(F("p & q"), {F("p")}, 1), Error);
  CHECK(eval_with_atoms(F("p -> p"), {F("p")}, 0));
}
