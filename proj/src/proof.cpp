#include "ilb/proof.hpp"

#include <sstream>

#include "ilb/error.hpp"

namespace ilb {

namespace {

constexpr int kTautAtomBudget = 20;

// Small postorder boolean program; atoms are indices into the atom list.
struct BoolProg {
  enum Op : std::uint8_t { Atom, Const0, NotOp, AndOp, OrOp, ImpOp };
  struct Ins {
    Op op;
    int a = 0;
  };
  std::vector<Ins> code;
};

void compile(const Formula& f, const std::vector<Formula>& atoms, BoolProg& prog) {
  switch (f.kind()) {
    case Conn::Bot:
      prog.code.push_back({BoolProg::Const0, 0});
      return;
    case Conn::Var:
    case Conn::Box:
    case Conn::Rhd:
      for (std::size_t i = 0; i < atoms.size(); ++i)
        if (atoms[i] == f) {
          prog.code.push_back({BoolProg::Atom, static_cast<int>(i)});
          return;
        }
      throw Error(Error::Kind::Precondition, "atom not listed: " + f.str());
    case Conn::Not:
      compile(f.child(), atoms, prog);
      prog.code.push_back({BoolProg::NotOp, 0});
      return;
    case Conn::And:
    case Conn::Or:
    case Conn::Imp:
      compile(f.lhs(), atoms, prog);
      compile(f.rhs(), atoms, prog);
      prog.code.push_back({f.is(Conn::And)  ? BoolProg::AndOp
                           : f.is(Conn::Or) ? BoolProg::OrOp
                                            : BoolProg::ImpOp,
                           0});
      return;
  }
}

bool eval(const BoolProg& prog, std::uint32_t assignment) {
  static thread_local std::vector<bool> stack;
  stack.clear();
  for (const BoolProg::Ins& ins : prog.code) {
    switch (ins.op) {
      case BoolProg::Atom:
        stack.push_back((assignment >> ins.a) & 1);
        break;
      case BoolProg::Const0:
        stack.push_back(false);
        break;
      case BoolProg::NotOp:
        stack.back() = !stack.back();
        break;
      default: {
        const bool r = stack.back();
        stack.pop_back();
        const bool l = stack.back();
        stack.back() = ins.op == BoolProg::AndOp  ? (l && r)
                       : ins.op == BoolProg::OrOp ? (l || r)
                                                  : (!l || r);
      }
    }
  }
  return stack.back();
}

}  // namespace

bool taut(const Formula& f) {
  std::vector<Formula> atoms;
  for (const Formula& a : modal_atoms(f))
    if (!a.is(Conn::Bot)) atoms.push_back(a);
  if (atoms.size() > kTautAtomBudget)
    throw Error(Error::Kind::Resource,
                "tautology check refused: " + std::to_string(atoms.size()) +
                    " modal atoms exceed the budget of " + std::to_string(kTautAtomBudget));
  BoolProg prog;
  compile(f, atoms, prog);
  const std::uint64_t rows = 1ULL << atoms.size();
  for (std::uint64_t a = 0; a < rows; ++a)
    if (!eval(prog, static_cast<std::uint32_t>(a))) return false;
  return true;
}

VerifyResult verify_derivation(const Derivation& d) {
  VerifyResult res;
  std::vector<bool> uses_hyp(d.steps.size(), false);
  auto reject = [&](int idx, const std::string& why) {
    res.ok = false;
    res.step = idx + 1;
    res.reason = why;
    return res;
  };
  for (std::size_t idx = 0; idx < d.steps.size(); ++idx) {
    const Step& st = d.steps[idx];
    switch (st.kind) {
      case StepKind::Taut: {
        bool is_taut = false;
        try {
          is_taut = taut(st.f);
        } catch (const Error& e) {
          return reject(static_cast<int>(idx), e.what());
        }
        if (!is_taut)
          return reject(static_cast<int>(idx), "not a propositional tautology: " + st.f.str());
        res.formulas.push_back(st.f);
        break;
      }
      case StepKind::Ax: {
        if (!is_il_axiom(st.schema) && !d.enabled.count(st.schema))
          return reject(static_cast<int>(idx),
                        "schema " + to_string(st.schema) + " is not enabled");
        const auto bind = match_schema(st.schema, st.f);
        if (!bind)
          return reject(static_cast<int>(idx),
                        "not an instance of " + to_string(st.schema) + ": " + st.f.str());
        if (auto err = schema_side_condition_error(st.schema, *bind))
          return reject(static_cast<int>(idx), *err);
        res.formulas.push_back(st.f);
        break;
      }
      case StepKind::Hyp: {
        bool found = false;
        for (const Formula& h : d.hypotheses)
          if (h == st.f) {
            found = true;
            break;
          }
        if (!found)
          return reject(static_cast<int>(idx), "not a declared hypothesis: " + st.f.str());
        uses_hyp[idx] = true;
        res.formulas.push_back(st.f);
        break;
      }
      case StepKind::MP: {
        if (st.i < 1 || st.j < 1 || st.i > static_cast<int>(idx) ||
            st.j > static_cast<int>(idx))
          return reject(static_cast<int>(idx), "MP indices must refer to earlier steps");
        const Formula& prem = res.formulas[st.i - 1];
        const Formula& impf = res.formulas[st.j - 1];
        if (!impf.is(Conn::Imp))
          return reject(static_cast<int>(idx),
                        "MP: step " + std::to_string(st.j) + " is not an implication");
        if (impf.lhs() != prem)
          return reject(static_cast<int>(idx),
                        "MP: step " + std::to_string(st.i) + " does not match the antecedent");
        uses_hyp[idx] = uses_hyp[st.i - 1] || uses_hyp[st.j - 1];
        res.formulas.push_back(impf.rhs());
        break;
      }
      case StepKind::Nec: {
        if (st.i < 1 || st.i > static_cast<int>(idx))
          return reject(static_cast<int>(idx), "NEC index must refer to an earlier step");
        if (uses_hyp[st.i - 1])
          return reject(static_cast<int>(idx),
                        "NEC applied to a step that depends on a hypothesis");
        res.formulas.push_back(Formula::box(res.formulas[st.i - 1]));
        break;
      }
    }
  }
  if (d.steps.empty()) {
    res.ok = false;
    res.step = 0;
    res.reason = "empty derivation";
    return res;
  }
  res.ok = true;
  res.step = 0;
  return res;
}

Derivation parse_derivation(std::string_view text) {
  Derivation d;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  int expected = 1;
  auto fail = [&](const std::string& msg) -> void {
    throw Error(Error::Kind::Parse, "line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    int num = 0;
    std::string kind;
    if (!(ls >> num >> kind)) fail("expected \"<n> <step>\"");
    if (num != expected) fail("steps must be numbered consecutively from 1");
    ++expected;
    std::string rest;
    std::getline(ls, rest);
    Step st;
    if (kind == "TAUT") {
      st.kind = StepKind::Taut;
      st.f = parse_formula(rest);
    } else if (kind == "AX") {
      st.kind = StepKind::Ax;
      std::istringstream rs(rest);
      std::string id;
      if (!(rs >> id)) fail("AX needs a schema id");
      const auto sid = parse_schema_id(id);
      if (!sid) fail("unknown schema id \"" + id + "\"");
      st.schema = *sid;
      std::string ftext;
      std::getline(rs, ftext);
      st.f = parse_formula(ftext);
      if (!is_il_axiom(st.schema)) d.enabled.insert(st.schema);
    } else if (kind == "HYP") {
      st.kind = StepKind::Hyp;
      st.f = parse_formula(rest);
      bool known = false;
      for (const Formula& h : d.hypotheses)
        if (h == st.f) known = true;
      if (!known) d.hypotheses.push_back(st.f);
    } else if (kind == "MP") {
      st.kind = StepKind::MP;
      std::istringstream rs(rest);
      if (!(rs >> st.i >> st.j)) fail("MP needs two indices");
    } else if (kind == "NEC") {
      st.kind = StepKind::Nec;
      std::istringstream rs(rest);
      if (!(rs >> st.i)) fail("NEC needs one index");
    } else {
      fail("unknown step kind \"" + kind + "\"");
    }
    d.steps.push_back(std::move(st));
  }
  if (d.steps.empty()) throw Error(Error::Kind::Parse, "empty proof script");
  return d;
}

std::string write_derivation(const Derivation& d) {
  std::string out;
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const Step& st = d.steps[i];
    out += std::to_string(i + 1);
    switch (st.kind) {
      case StepKind::Taut: out += " TAUT " + st.f.str(); break;
      case StepKind::Ax: out += " AX " + to_string(st.schema) + " " + st.f.str(); break;
      case StepKind::Hyp: out += " HYP " + st.f.str(); break;
      case StepKind::MP:
        out += " MP " + std::to_string(st.i) + " " + std::to_string(st.j);
        break;
      case StepKind::Nec: out += " NEC " + std::to_string(st.i); break;
    }
    out += "\n";
  }
  return out;
}

}  // namespace ilb
