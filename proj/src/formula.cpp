#include "ilb/formula.hpp"

#include <functional>

namespace ilb {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

const std::shared_ptr<const Formula::Node>& bot_node() {
  static const std::shared_ptr<const Formula::Node> node = [] {
    auto n = std::make_shared<Formula::Node>();
    n->kind = Conn::Bot;
    n->hash = 0x42;
    return std::shared_ptr<const Formula::Node>(n);
  }();
  return node;
}

}  // namespace

Formula::Formula() : node_(bot_node()) {}

Conn Formula::kind() const { return node_->kind; }
std::size_t Formula::hash() const { return node_->hash; }
const std::string& Formula::name() const { return node_->name; }
const Formula& Formula::child() const { return node_->l; }
const Formula& Formula::lhs() const { return node_->l; }
const Formula& Formula::rhs() const { return node_->r; }

Formula Formula::bot() { return Formula(); }

Formula Formula::var(std::string_view name) {
  auto n = std::make_shared<Node>();
  n->kind = Conn::Var;
  n->name = std::string(name);
  n->hash = mix(static_cast<std::size_t>(Conn::Var), std::hash<std::string>{}(n->name));
  return Formula(std::move(n));
}

Formula Formula::neg(Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = Conn::Not;
  n->l = std::move(f);
  n->hash = mix(3, n->l.hash());
  return Formula(std::move(n));
}

Formula Formula::box(Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = Conn::Box;
  n->l = std::move(f);
  n->hash = mix(7, n->l.hash());
  return Formula(std::move(n));
}

Formula Formula::conj(Formula l, Formula r) {
  auto n = std::make_shared<Node>();
  n->kind = Conn::And;
  n->l = std::move(l);
  n->r = std::move(r);
  n->hash = mix(mix(11, n->l.hash()), n->r.hash());
  return Formula(std::move(n));
}

Formula Formula::disj(Formula l, Formula r) {
  auto n = std::make_shared<Node>();
  n->kind = Conn::Or;
  n->l = std::move(l);
  n->r = std::move(r);
  n->hash = mix(mix(13, n->l.hash()), n->r.hash());
  return Formula(std::move(n));
}

Formula Formula::imp(Formula l, Formula r) {
  auto n = std::make_shared<Node>();
  n->kind = Conn::Imp;
  n->l = std::move(l);
  n->r = std::move(r);
  n->hash = mix(mix(19, n->l.hash()), n->r.hash());
  return Formula(std::move(n));
}

Formula Formula::rhd(Formula l, Formula r) {
  auto n = std::make_shared<Node>();
  n->kind = Conn::Rhd;
  n->l = std::move(l);
  n->r = std::move(r);
  n->hash = mix(mix(23, n->l.hash()), n->r.hash());
  return Formula(std::move(n));
}

Formula Formula::top() { return neg(bot()); }
Formula Formula::dia(Formula f) { return neg(box(neg(std::move(f)))); }

Formula Formula::equiv(Formula l, Formula r) {
  return conj(rhd(l, r), rhd(r, l));
}

Formula Formula::iff(Formula l, Formula r) {
  return conj(imp(l, r), imp(r, l));
}

Formula Formula::conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return top();
  Formula acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = conj(acc, fs[i]);
  return acc;
}

Formula Formula::disj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return bot();
  Formula acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = disj(acc, fs[i]);
  return acc;
}

bool Formula::operator==(const Formula& o) const {
  if (node_ == o.node_) return true;
  if (node_->hash != o.node_->hash || node_->kind != o.node_->kind) return false;
  switch (node_->kind) {
    case Conn::Var: return node_->name == o.node_->name;
    case Conn::Bot: return true;
    case Conn::Not:
    case Conn::Box: return node_->l == o.node_->l;
    default: return node_->l == o.node_->l && node_->r == o.node_->r;
  }
}

namespace {

// Precedence levels used by the renderer: higher binds tighter.
constexpr int kLvlImp = 1;
constexpr int kLvlRhd = 2;
constexpr int kLvlOr = 3;
constexpr int kLvlAnd = 4;
constexpr int kLvlUnary = 5;

bool is_diamond(const Formula& f) {
  return f.is(Conn::Not) && f.child().is(Conn::Box) && f.child().child().is(Conn::Not);
}

bool is_top(const Formula& f) { return f.is(Conn::Not) && f.child().is(Conn::Bot); }

void render(const Formula& f, int context, std::string& out) {
  switch (f.kind()) {
    case Conn::Var:
      out += f.name();
      return;
    case Conn::Bot:
      out += "false";
      return;
    case Conn::Not:
      if (is_diamond(f)) {
        out += "<>";
        render(f.child().child().child(), kLvlUnary, out);
      } else if (is_top(f)) {
        out += "true";
      } else {
        out += "~";
        render(f.child(), kLvlUnary, out);
      }
      return;
    case Conn::Box:
      out += "[]";
      render(f.child(), kLvlUnary, out);
      return;
    default:
      break;
  }
  int lvl;
  const char* op;
  int llvl, rlvl;
  switch (f.kind()) {
    case Conn::And: lvl = kLvlAnd; op = " & "; llvl = lvl; rlvl = lvl + 1; break;
    case Conn::Or: lvl = kLvlOr; op = " | "; llvl = lvl; rlvl = lvl + 1; break;
    case Conn::Rhd: lvl = kLvlRhd; op = " |> "; llvl = lvl + 1; rlvl = lvl + 1; break;
    default: lvl = kLvlImp; op = " -> "; llvl = lvl + 1; rlvl = lvl; break;
  }
  const bool parens = lvl < context;
  if (parens) out += "(";
  render(f.lhs(), llvl, out);
  out += op;
  render(f.rhs(), rlvl, out);
  if (parens) out += ")";
}

}  // namespace

std::string Formula::str() const {
  std::string out;
  render(*this, 0, out);
  return out;
}

std::string render_formula(const Formula& f) { return f.str(); }

}  // namespace ilb
