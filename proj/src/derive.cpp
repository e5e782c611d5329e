#include <map>
#include <set>
#include <stdexcept>

#include "ilb/error.hpp"
#include "ilb/proof.hpp"

namespace ilb {

namespace {

void and_parts_rec(const Formula& f, std::vector<Formula>& out) {
  if (f.is(Conn::And)) {
    and_parts_rec(f.lhs(), out);
    and_parts_rec(f.rhs(), out);
  } else {
    out.push_back(f);
  }
}

void or_parts_rec(const Formula& f, std::vector<Formula>& out) {
  if (f.is(Conn::Or)) {
    or_parts_rec(f.lhs(), out);
    or_parts_rec(f.rhs(), out);
  } else {
    out.push_back(f);
  }
}

std::vector<Formula> and_parts(const Formula& f) {
  std::vector<Formula> out;
  and_parts_rec(f, out);
  return out;
}

std::vector<Formula> or_parts(const Formula& f) {
  std::vector<Formula> out;
  or_parts_rec(f, out);
  return out;
}

// Appends steps, deduplicating by conclusion so shared glue is emitted once.
// All generated derivations are hypothesis-free.
class Builder {
public:
  explicit Builder(std::set<SchemaId> enabled) { d_.enabled = std::move(enabled); }

  int taut_step(const Formula& f) {
    if (const int i = find(f)) return i;
    Step st;
    st.kind = StepKind::Taut;
    st.f = f;
    d_.steps.push_back(std::move(st));
    return record(f);
  }

  int ax_step(SchemaId id, const Formula& f) {
    if (const int i = find(f)) return i;
    Step st;
    st.kind = StepKind::Ax;
    st.schema = id;
    st.f = f;
    d_.steps.push_back(std::move(st));
    return record(f);
  }

  int mp(int i, int j) {
    const Formula& impf = at(j);
    if (!impf.is(Conn::Imp) || impf.lhs() != at(i))
      throw std::logic_error("generator emitted a malformed MP");
    const Formula result = impf.rhs();
    if (const int k = find(result)) return k;
    Step st;
    st.kind = StepKind::MP;
    st.i = i;
    st.j = j;
    d_.steps.push_back(std::move(st));
    return record(result);
  }

  int nec(int i) {
    const Formula result = Formula::box(at(i));
    if (const int k = find(result)) return k;
    Step st;
    st.kind = StepKind::Nec;
    st.i = i;
    d_.steps.push_back(std::move(st));
    return record(result);
  }

  // x |> y from the tautology x -> y, via Nec and J1.
  int rhd_from_taut(const Formula& x, const Formula& y) {
    const int t = taut_step(Formula::imp(x, y));
    const int n = nec(t);
    const Formula xy = Formula::rhd(x, y);
    const int ax = ax_step(SchemaId{SchemaKind::J1, 0}, Formula::imp(at(n), xy));
    return mp(n, ax);
  }

  const Formula& at(int i) const { return formulas_[i - 1]; }

  // The conclusion is the formula of the last step; when deduplication left
  // the intended conclusion in the middle, repeat its deriving step.
  int ensure_last(int i) {
    if (i == static_cast<int>(formulas_.size())) return i;
    d_.steps.push_back(d_.steps[i - 1]);
    formulas_.push_back(formulas_[i - 1]);
    return static_cast<int>(formulas_.size());
  }

  Derivation take() { return std::move(d_); }

private:
  int find(const Formula& f) const {
    auto it = memo_.find(f.str());
    return it == memo_.end() ? 0 : it->second;
  }
  int record(const Formula& f) {
    formulas_.push_back(f);
    memo_.emplace(f.str(), static_cast<int>(formulas_.size()));
    return static_cast<int>(formulas_.size());
  }

  Derivation d_;
  std::vector<Formula> formulas_;
  std::map<std::string, int> memo_;
};

// Derived rules for statements of the form H -> phi, H fixed. Keeps the
// whole derivation hypothesis-free (no deduction theorem in the kernel).
class Under {
public:
  Under(Builder& b, Formula h) : b_(b), h_(std::move(h)) {}

  int taut_under(const Formula& phi) { return b_.taut_step(Formula::imp(h_, phi)); }

  // from a proved step i: H -> phi
  int import_step(int i) {
    const Formula& phi = b_.at(i);
    const int t = b_.taut_step(Formula::imp(phi, Formula::imp(h_, phi)));
    return b_.mp(i, t);
  }

  // H -> phi and H -> (phi -> psi) give H -> psi
  int mp_under(int i, int j) {
    const Formula hphi = b_.at(i);
    const Formula himp = b_.at(j);
    const Formula target = Formula::imp(h_, himp.rhs().rhs());
    const int t = b_.taut_step(Formula::imp(hphi, Formula::imp(himp, target)));
    return b_.mp(j, b_.mp(i, t));
  }

  // H -> phi and H -> psi give H -> (phi & psi)
  int conj_under(int i, int j) {
    const Formula hphi = b_.at(i);
    const Formula hpsi = b_.at(j);
    const Formula target =
        Formula::imp(h_, Formula::conj(hphi.rhs(), hpsi.rhs()));
    const int t = b_.taut_step(Formula::imp(hphi, Formula::imp(hpsi, target)));
    return b_.mp(j, b_.mp(i, t));
  }

  // H -> (X |> Y), H -> (Y |> Z) give H -> (X |> Z) (J2)
  int rhd_trans(int ixy, int iyz) {
    const Formula xy = b_.at(ixy).rhs();
    const Formula yz = b_.at(iyz).rhs();
    const Formula xz = Formula::rhd(xy.lhs(), yz.rhs());
    const int cj = conj_under(ixy, iyz);
    const int ax = b_.ax_step(SchemaId{SchemaKind::J2, 0},
                              Formula::imp(Formula::conj(xy, yz), xz));
    return mp_under(cj, import_step(ax));
  }

  // H -> (X |> Z), H -> (Y |> Z) give H -> ((X | Y) |> Z) (J3)
  int rhd_disj(int ixz, int iyz) {
    const Formula xz = b_.at(ixz).rhs();
    const Formula yz = b_.at(iyz).rhs();
    const Formula target =
        Formula::rhd(Formula::disj(xz.lhs(), yz.lhs()), xz.rhs());
    const int cj = conj_under(ixz, iyz);
    const int ax = b_.ax_step(SchemaId{SchemaKind::J3, 0},
                              Formula::imp(Formula::conj(xz, yz), target));
    return mp_under(cj, import_step(ax));
  }

  // H -> (X |> Y) with tautological Xp -> X gives H -> (Xp |> Y)
  int weaken_ante(const Formula& xp, int ixy) {
    const Formula xy = b_.at(ixy).rhs();
    const int base = b_.rhd_from_taut(xp, xy.lhs());
    return rhd_trans(import_step(base), ixy);
  }

  // H -> (X |> Y) with tautological Y -> Yp gives H -> (X |> Yp)
  int weaken_cons(int ixy, const Formula& yp) {
    const Formula xy = b_.at(ixy).rhs();
    const int base = b_.rhd_from_taut(xy.rhs(), yp);
    return rhd_trans(ixy, import_step(base));
  }

private:
  Builder& b_;
  Formula h_;
};

Derivation finish(Builder& pb, int conclusion, const Formula& expected) {
  pb.ensure_last(conclusion);
  Derivation d = pb.take();
  const VerifyResult vr = verify_derivation(d);
  if (!vr.ok)
    throw std::logic_error("generated derivation rejected at step " +
                           std::to_string(vr.step) + ": " + vr.reason);
  if (vr.formulas.back() != expected)
    throw std::logic_error("generated derivation proves the wrong conclusion: got " +
                           vr.formulas.back().str() + ", wanted " + expected.str());
  return d;
}

}  // namespace

Derivation derive_b_prime(const Formula& a, const Formula& b, const Formula& c) {
  if (!classify(a).es2_level)
    throw Error(Error::Kind::Precondition, "slot A requires ES2");
  if (!is_boxed_cnf(c))
    throw Error(Error::Kind::Precondition,
                "slot C requires a conjunction of disjunctions of boxed formulas");
  Builder pb({SchemaId{SchemaKind::B, 0}});
  const Formula h = Formula::rhd(a, b);
  Under u(pb, h);
  int cur = u.taut_under(h);  // H -> (A |> B), H being A |> B itself
  Formula x = a, y = b;
  for (const Formula& clause : and_parts(c)) {
    const std::vector<Formula> boxes = or_parts(clause);
    if (boxes.size() == 1) {
      const Formula nx = Formula::conj(x, clause);
      const Formula ny = Formula::conj(y, clause);
      const int ax = pb.ax_step(SchemaId{SchemaKind::B, 0},
                                Formula::imp(Formula::rhd(x, y), Formula::rhd(nx, ny)));
      cur = u.mp_under(cur, u.import_step(ax));
      x = nx;
      y = ny;
    } else {
      const Formula ny = Formula::conj(y, clause);
      std::vector<int> parts;
      for (const Formula& box : boxes) {
        const Formula xi = Formula::conj(x, box);
        const Formula yi = Formula::conj(y, box);
        const int ax = pb.ax_step(SchemaId{SchemaKind::B, 0},
                                  Formula::imp(Formula::rhd(x, y), Formula::rhd(xi, yi)));
        int s = u.mp_under(cur, u.import_step(ax));
        s = u.weaken_cons(s, ny);
        parts.push_back(s);
      }
      int fold = parts[0];
      for (std::size_t k = 1; k < parts.size(); ++k) fold = u.rhd_disj(fold, parts[k]);
      const Formula nx = Formula::conj(x, clause);
      cur = u.weaken_ante(nx, fold);
      x = nx;
      y = ny;
    }
  }
  const Formula tx = Formula::conj(a, c);
  const Formula ty = Formula::conj(b, c);
  if (x != tx) cur = u.weaken_ante(tx, cur);
  if (y != ty) cur = u.weaken_cons(cur, ty);
  return finish(pb, cur, Formula::imp(h, Formula::rhd(tx, ty)));
}

Derivation derive_z(const Formula& a, const Formula& b) {
  if (!classify(a).in_bs1)
    throw Error(Error::Kind::Precondition, "slot A requires BS1");
  if (!classify(b).in_bs1)
    throw Error(Error::Kind::Precondition, "slot B requires BS1");
  std::vector<Formula> basis = boxed_basis(Formula::conj(a, b));
  if (basis.size() > 6)
    throw Error(Error::Kind::Resource,
                "basis-size budget exceeded: " + std::to_string(basis.size()) +
                    " boxed subformulas (at most 6)");

  const SchemaId b0{SchemaKind::Bi, 0};
  Builder pb({b0});
  const Formula h = Formula::conj(Formula::rhd(a, b), Formula::rhd(b, a));
  Under u(pb, h);
  const Formula ab = Formula::conj(a, b);
  const Formula target = Formula::rhd(a, ab);

  const Formula da = full_dnf(a, basis);
  const Formula db = full_dnf(b, basis);
  if (da.is(Conn::Bot)) {
    // A is contradictory over its boxed atoms, so A -> A & B is tautological.
    const int s = pb.rhd_from_taut(a, ab);
    const int fin = u.import_step(s);
    return finish(pb, fin, pb.at(fin));
  }

  using Key = std::vector<bool>;
  auto key_of = [&](const Formula& dis) {
    const std::set<int> pos = box_set(dis, basis);
    Key k(basis.size(), false);
    for (int i : pos) k[i] = true;
    return k;
  };
  struct Entry {
    Formula f;
    std::set<int> pos;
    bool in_a = false, in_b = false;
  };
  std::map<Key, Entry> catalog;
  std::vector<std::pair<Formula, Key>> list_a, list_b;
  for (const Formula& dis : or_parts(da)) {
    const Key k = key_of(dis);
    auto& e = catalog[k];
    e.f = dis;
    e.pos = box_set(dis, basis);
    e.in_a = true;
    list_a.emplace_back(dis, k);
  }
  if (!db.is(Conn::Bot)) {
    for (const Formula& dis : or_parts(db)) {
      const Key k = key_of(dis);
      auto& e = catalog[k];
      e.f = dis;
      e.pos = box_set(dis, basis);
      e.in_b = true;
      list_b.emplace_back(dis, k);
    }
  }

  std::map<Key, int> proved;  // step of H -> (D |> A & B)
  for (int size = static_cast<int>(basis.size()); size >= 0; --size) {
    for (const auto& [k, e] : catalog) {
      if (static_cast<int>(e.pos.size()) != size) continue;
      if (e.in_a && e.in_b) {
        // common disjunct: D -> A & B is already tautological
        proved[k] = u.import_step(pb.rhd_from_taut(e.f, ab));
        continue;
      }
      const Formula& src = e.in_a ? a : b;
      const Formula& other = e.in_a ? b : a;
      const int h_src = u.taut_under(Formula::rhd(src, other));
      int cur = u.import_step(pb.rhd_from_taut(e.f, src));
      cur = u.rhd_trans(cur, h_src);  // H -> (D |> other)
      // conjoin the positive box-set on both sides via B0
      Formula x = e.f, y = other;
      for (const int j : e.pos) {
        const Formula nx = Formula::conj(x, basis[j]);
        const Formula ny = Formula::conj(y, basis[j]);
        const int ax =
            pb.ax_step(b0, Formula::imp(Formula::rhd(x, y), Formula::rhd(nx, ny)));
        cur = u.mp_under(cur, u.import_step(ax));
        x = nx;
        y = ny;
      }
      if (x != e.f) cur = u.weaken_ante(e.f, cur);  // D implies its positive boxes
      // disjuncts on the other side compatible with D's box-set
      const auto& others = e.in_a ? list_b : list_a;
      std::vector<Key> compatible;
      for (const auto& [dis, ok] : others) {
        const Entry& oe = catalog[ok];
        bool superset = true;
        for (const int j : e.pos)
          if (!oe.pos.count(j)) {
            superset = false;
            break;
          }
        if (superset) compatible.push_back(ok);
      }
      if (compatible.empty()) {
        // the other formula contradicts D's box-set, so y -> A & B vacuously
        cur = u.weaken_cons(cur, ab);
      } else {
        std::vector<Formula> ss;
        for (const Key& ok : compatible) ss.push_back(catalog[ok].f);
        cur = u.weaken_cons(cur, Formula::disj_all(ss));
        int fold = proved.at(compatible[0]);
        for (std::size_t i = 1; i < compatible.size(); ++i)
          fold = u.rhd_disj(fold, proved.at(compatible[i]));
        cur = u.rhd_trans(cur, fold);
      }
      proved[k] = cur;
    }
  }

  int fold = proved.at(list_a[0].second);
  for (std::size_t i = 1; i < list_a.size(); ++i)
    fold = u.rhd_disj(fold, proved.at(list_a[i].second));
  const int ada = u.import_step(pb.rhd_from_taut(a, da));
  const int fin = u.rhd_trans(ada, fold);
  return finish(pb, fin, Formula::imp(h, target));
}

}  // namespace ilb
