#include "ilb/schema.hpp"

#include <array>

#include "ilb/error.hpp"

namespace ilb {

namespace {

struct SchemaDef {
  SchemaKind kind;
  const char* name;
  const char* pattern;
  std::vector<std::string> metavars;
};

const std::vector<SchemaDef>& defs() {
  static const std::vector<SchemaDef> table = {
      {SchemaKind::L1, "L1", "[](A -> B) -> ([]A -> []B)", {"A", "B"}},
      {SchemaKind::L2, "L2", "[]A -> [][]A", {"A"}},
      {SchemaKind::L3, "L3", "[]([]A -> A) -> []A", {"A"}},
      {SchemaKind::J1, "J1", "[](A -> B) -> (A |> B)", {"A", "B"}},
      {SchemaKind::J2, "J2", "(A |> B) & (B |> C) -> (A |> C)", {"A", "B", "C"}},
      {SchemaKind::J3, "J3", "(A |> C) & (B |> C) -> (A | B |> C)", {"A", "B", "C"}},
      {SchemaKind::J4, "J4", "(A |> B) -> (<>A -> <>B)", {"A", "B"}},
      {SchemaKind::J5, "J5", "<>A |> A", {"A"}},
      {SchemaKind::M, "M", "(A |> B) -> (A & []C |> B & []C)", {"A", "B", "C"}},
      {SchemaKind::M0, "M0", "(A |> B) -> (<>A & []C |> B & []C)", {"A", "B", "C"}},
      {SchemaKind::P, "P", "(A |> B) -> [](A |> B)", {"A", "B"}},
      {SchemaKind::W, "W", "(A |> B) -> (A |> B & []~A)", {"A", "B"}},
      {SchemaKind::Wstar, "Wstar", "(A |> B) -> (B & []C |> B & []C & []~A)", {"A", "B", "C"}},
      {SchemaKind::R, "R", "(A |> B) -> (~(A |> ~C) |> B & []C)", {"A", "B", "C"}},
      {SchemaKind::Rstar, "Rstar", "(A |> B) -> (~(A |> ~C) |> B & []C & []~A)",
       {"A", "B", "C"}},
      {SchemaKind::B, "B", "(A |> B) -> (A & []C |> B & []C)", {"A", "B", "C"}},
      {SchemaKind::Bi, "Bi", "(A |> B) -> (A & []C |> B & []C)", {"A", "B", "C"}},
      {SchemaKind::Bprime, "Bprime", "(A |> B) -> (A & C |> B & C)", {"A", "B", "C"}},
      {SchemaKind::Z, "Z", "(A == B) -> (A |> A & B)", {"A", "B"}},
      {SchemaKind::Zext, "Zext",
       "[]((A <-> A2) & (B <-> B2)) -> ((A == B) -> (A |> A & B))",
       {"A", "A2", "B", "B2"}},
  };
  return table;
}

const SchemaDef& def_of(SchemaKind k) {
  for (const SchemaDef& d : defs())
    if (d.kind == k) return d;
  throw Error(Error::Kind::Usage, "unknown schema");
}

bool match_rec(const Formula& tmpl, const Formula& f,
               std::map<std::string, Formula>& bind) {
  if (tmpl.is(Conn::Var)) {
    auto it = bind.find(tmpl.name());
    if (it == bind.end()) {
      bind.emplace(tmpl.name(), f);
      return true;
    }
    return it->second == f;
  }
  if (tmpl.kind() != f.kind()) return false;
  switch (tmpl.kind()) {
    case Conn::Bot: return true;
    case Conn::Not:
    case Conn::Box: return match_rec(tmpl.child(), f.child(), bind);
    default:
      return match_rec(tmpl.lhs(), f.lhs(), bind) && match_rec(tmpl.rhs(), f.rhs(), bind);
  }
}

Formula substitute(const Formula& tmpl, const std::map<std::string, Formula>& bind) {
  switch (tmpl.kind()) {
    case Conn::Var: {
      auto it = bind.find(tmpl.name());
      if (it == bind.end())
        throw Error(Error::Kind::Precondition, "missing assignment for slot " + tmpl.name());
      return it->second;
    }
    case Conn::Bot: return tmpl;
    case Conn::Not: return Formula::neg(substitute(tmpl.child(), bind));
    case Conn::Box: return Formula::box(substitute(tmpl.child(), bind));
    case Conn::And: return Formula::conj(substitute(tmpl.lhs(), bind), substitute(tmpl.rhs(), bind));
    case Conn::Or: return Formula::disj(substitute(tmpl.lhs(), bind), substitute(tmpl.rhs(), bind));
    case Conn::Imp: return Formula::imp(substitute(tmpl.lhs(), bind), substitute(tmpl.rhs(), bind));
    case Conn::Rhd: return Formula::rhd(substitute(tmpl.lhs(), bind), substitute(tmpl.rhs(), bind));
  }
  return tmpl;
}

std::optional<std::string> require_class(const std::map<std::string, Formula>& bind,
                                         const std::string& slot, const char* cls) {
  auto it = bind.find(slot);
  if (it == bind.end()) return "missing assignment for slot " + slot;
  const ClassReport rep = classify(it->second);
  const std::string_view c(cls);
  if (c == "ES2" && !rep.es2_level) return "slot " + slot + " requires ES2";
  if (c == "BS1" && !rep.in_bs1) return "slot " + slot + " requires BS1";
  return std::nullopt;
}

}  // namespace

bool is_boxed_cnf(const Formula& f) {
  if (f.is(Conn::And)) return is_boxed_cnf(f.lhs()) && is_boxed_cnf(f.rhs());
  const Formula* cur = &f;
  std::vector<const Formula*> stack{cur};
  while (!stack.empty()) {
    const Formula* g = stack.back();
    stack.pop_back();
    if (g->is(Conn::Or)) {
      stack.push_back(&g->lhs());
      stack.push_back(&g->rhs());
    } else if (!g->is(Conn::Box)) {
      return false;
    }
  }
  return true;
}

std::string to_string(const SchemaId& id) {
  if (id.kind == SchemaKind::Bi) return "B" + std::to_string(id.level);
  return def_of(id.kind).name;
}

std::optional<SchemaId> parse_schema_id(std::string_view text) {
  if (text == "W*") return SchemaId{SchemaKind::Wstar, 0};
  if (text == "R*") return SchemaId{SchemaKind::Rstar, 0};
  if (text == "B'") return SchemaId{SchemaKind::Bprime, 0};
  for (const SchemaDef& d : defs())
    if (text == d.name && d.kind != SchemaKind::Bi) return SchemaId{d.kind, 0};
  if (text.size() >= 2 && text[0] == 'B') {
    int level = 0;
    for (std::size_t i = 1; i < text.size(); ++i) {
      if (text[i] < '0' || text[i] > '9') return std::nullopt;
      level = level * 10 + (text[i] - '0');
    }
    return SchemaId{SchemaKind::Bi, level};
  }
  return std::nullopt;
}

std::vector<std::string> schema_metavars(const SchemaId& id) {
  return def_of(id.kind).metavars;
}

const Formula& schema_template(const SchemaId& id) {
  static std::map<SchemaKind, Formula> cache = [] {
    std::map<SchemaKind, Formula> c;
    for (const SchemaDef& d : defs()) c.emplace(d.kind, parse_formula(d.pattern));
    return c;
  }();
  return cache.at(id.kind);
}

bool is_il_axiom(const SchemaId& id) {
  switch (id.kind) {
    case SchemaKind::L1:
    case SchemaKind::L2:
    case SchemaKind::L3:
    case SchemaKind::J1:
    case SchemaKind::J2:
    case SchemaKind::J3:
    case SchemaKind::J4:
    case SchemaKind::J5:
      return true;
    default:
      return false;
  }
}

std::optional<std::string> schema_side_condition_error(
    const SchemaId& id, const std::map<std::string, Formula>& bind) {
  switch (id.kind) {
    case SchemaKind::B:
      return require_class(bind, "A", "ES2");
    case SchemaKind::Bi: {
      auto it = bind.find("A");
      if (it == bind.end()) return "missing assignment for slot A";
      if (!in_es2_stage(it->second, id.level))
        return "slot A requires ES2^" + std::to_string(id.level);
      return std::nullopt;
    }
    case SchemaKind::Bprime: {
      if (auto e = require_class(bind, "A", "ES2")) return e;
      auto it = bind.find("C");
      if (it == bind.end()) return "missing assignment for slot C";
      if (!is_boxed_cnf(it->second))
        return "slot C requires a conjunction of disjunctions of boxed formulas";
      return std::nullopt;
    }
    case SchemaKind::Z: {
      if (auto e = require_class(bind, "A", "BS1")) return e;
      return require_class(bind, "B", "BS1");
    }
    case SchemaKind::Zext: {
      for (const char* slot : {"A", "A2", "B", "B2"})
        if (auto e = require_class(bind, slot, "ES2")) return e;
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

Formula instantiate(const SchemaId& id, const std::map<std::string, Formula>& assignment) {
  for (const std::string& mv : schema_metavars(id))
    if (!assignment.count(mv))
      throw Error(Error::Kind::Precondition, "missing assignment for slot " + mv);
  if (auto err = schema_side_condition_error(id, assignment))
    throw Error(Error::Kind::Precondition, *err);
  return substitute(schema_template(id), assignment);
}

std::optional<std::map<std::string, Formula>> match_schema(const SchemaId& id,
                                                           const Formula& f) {
  std::map<std::string, Formula> bind;
  if (!match_rec(schema_template(id), f, bind)) return std::nullopt;
  return bind;
}

}  // namespace ilb
