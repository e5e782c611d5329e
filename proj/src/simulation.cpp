#include "ilb/simulation.hpp"

#include <map>
#include <string>

#include "ilb/error.hpp"

namespace ilb {

namespace {

std::vector<std::uint64_t> bis0(const VeltmanFrame& f) {
  std::vector<std::uint64_t> rel(f.n, 0);
  for (int b = 0; b < f.n; ++b)
    for (int u = 0; u < f.n; ++u)
      if (f.r[b] == f.r[u]) rel[b] |= 1ULL << u;
  return rel;
}

std::vector<std::uint64_t> refine(const VeltmanFrame& f,
                                  const std::vector<std::uint64_t>& rel) {
  std::vector<std::uint64_t> next(f.n, 0);
  for (int b = 0; b < f.n; ++b) {
    std::uint64_t keep = rel[b];
    std::uint64_t todo = keep;
    while (todo) {
      const int u = __builtin_ctzll(todo);
      todo &= todo - 1;
      bool ok = true;
      std::uint64_t cs = f.r[b];
      while (cs && ok) {
        const int c = __builtin_ctzll(cs);
        cs &= cs - 1;
        bool found = false;
        std::uint64_t cands = f.r[u] & rel[c];
        while (cands) {
          const int cp = __builtin_ctzll(cands);
          cands &= cands - 1;
          if (!(f.s[u][cp] & ~f.s[b][c])) {
            found = true;
            break;
          }
        }
        ok = found;
      }
      if (!ok) keep &= ~(1ULL << u);
    }
    next[b] = keep;
  }
  return next;
}

}  // namespace

SimRelation bis_level(const VeltmanFrame& f, int n) {
  std::vector<std::uint64_t> rel = bis0(f);
  for (int round = 0; round < n; ++round) rel = refine(f, rel);
  return SimRelation{n, std::move(rel)};
}

SimRelation greatest_b_simulation(const VeltmanFrame& f) {
  std::vector<std::uint64_t> rel = bis0(f);
  for (;;) {
    std::vector<std::uint64_t> next = refine(f, rel);
    if (next == rel) break;
    rel = std::move(next);
  }
  return SimRelation{std::nullopt, std::move(rel)};
}

int depth(const VeltmanFrame& f, int x) {
  int best = 0;
  std::uint64_t succs = f.r[x];
  while (succs) {
    const int y = __builtin_ctzll(succs);
    succs &= succs - 1;
    best = std::max(best, 1 + depth(f, y));
  }
  return best;
}

int frame_depth(const VeltmanFrame& f) {
  int best = 0;
  for (int x = 0; x < f.n; ++x) best = std::max(best, depth(f, x));
  return best;
}

namespace {

CiResult scan_condition(const VeltmanFrame& f, const std::vector<std::uint64_t>& bis,
                        CbFinalClause clause) {
  for (int a = 0; a < f.n; ++a) {
    std::uint64_t bs = f.r[a];
    while (bs) {
      const int b = __builtin_ctzll(bs);
      bs &= bs - 1;
      bool found = false;
      std::uint64_t us = f.s[a][b] & bis[b];
      while (us && !found) {
        const int u = __builtin_ctzll(us);
        us &= us - 1;
        bool clause_ok = true;
        std::uint64_t ds = f.s[a][u];
        while (ds && clause_ok) {
          const int d = __builtin_ctzll(ds);
          ds &= ds - 1;
          if (clause == CbFinalClause::SuccessorForm) {
            if (f.r[d] & ~f.r[b]) clause_ok = false;
          } else {
            if (f.r[d] && !f.rel_r(b, d)) clause_ok = false;
          }
        }
        found = clause_ok;
      }
      if (!found) return CiResult{false, std::make_pair(a, b)};
    }
  }
  return CiResult{true, std::nullopt};
}

}  // namespace

CiResult check_ci(const VeltmanFrame& f, int i) {
  return scan_condition(f, bis_level(f, i).pairs, CbFinalClause::SuccessorForm);
}

CiResult check_cb(const VeltmanFrame& f, CbFinalClause clause) {
  return scan_condition(f, greatest_b_simulation(f).pairs, clause);
}

namespace {

struct CharBuilder {
  const VeltmanFrame& f;
  Valuation val;
  std::vector<std::string> order;
  std::map<std::pair<int, int>, Formula> memo;

  std::string fresh(const std::string& name, std::uint64_t mask) {
    if (!val.count(name)) {
      val[name] = mask;
      order.push_back(name);
    }
    return name;
  }

  Formula build(int level, int b) {
    const auto key = std::make_pair(level, b);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    Formula out;
    if (level == 0) {
      const std::string r = fresh("#r0_" + std::to_string(b), f.r[b]);
      out = Formula::box(Formula::var(r));
      std::uint64_t succs = f.r[b];
      while (succs) {
        const int x = __builtin_ctzll(succs);
        succs &= succs - 1;
        const std::string p =
            fresh("#p0_" + std::to_string(b) + "_" + std::to_string(x), 1ULL << x);
        out = Formula::conj(out, Formula::dia(Formula::var(p)));
      }
    } else {
      out = build(level - 1, b);
      std::uint64_t succs = f.r[b];
      while (succs) {
        const int x = __builtin_ctzll(succs);
        succs &= succs - 1;
        const Formula sub = build(level - 1, x);
        const std::string q = fresh("#q" + std::to_string(level) + "_" + std::to_string(b) +
                                        "_" + std::to_string(x),
                                    f.all_mask() & ~f.s[b][x]);
        out = Formula::conj(out, Formula::neg(Formula::rhd(sub, Formula::var(q))));
      }
    }
    memo.emplace(key, out);
    return out;
  }
};

}  // namespace

CharacteristicResult characteristic_formula(const VeltmanFrame& f, int b, int i) {
  if (b < 0 || b >= f.n) throw Error(Error::Kind::Precondition, "node out of range");
  if (i < 0) throw Error(Error::Kind::Precondition, "level must be nonnegative");
  CharBuilder builder{f, {}, {}, {}};
  const Formula formula = builder.build(i, b);
  return CharacteristicResult{formula, std::move(builder.val), std::move(builder.order)};
}

Lemma7Result lemma7_counterexample(const VeltmanFrame& f, int i,
                                   std::pair<int, int> witness) {
  const auto [a, b] = witness;
  if (a < 0 || a >= f.n || b < 0 || b >= f.n || !f.rel_r(a, b))
    throw Error(Error::Kind::Precondition, "witness pair must satisfy aRb");
  // re-run the C_i check at this pair
  const std::vector<std::uint64_t> bis = bis_level(f, i).pairs;
  std::uint64_t us = f.s[a][b] & bis[b];
  while (us) {
    const int u = __builtin_ctzll(us);
    us &= us - 1;
    bool clause_ok = true;
    std::uint64_t ds = f.s[a][u];
    while (ds && clause_ok) {
      const int d = __builtin_ctzll(ds);
      ds &= ds - 1;
      if (f.r[d] & ~f.r[b]) clause_ok = false;
    }
    if (clause_ok)
      throw Error(Error::Kind::Precondition,
                  "pair (" + std::to_string(a) + "," + std::to_string(b) +
                      ") does not violate C_" + std::to_string(i));
  }

  CharacteristicResult ch = characteristic_formula(f, b, i);
  // D = worlds d with bS_a d R e and not bRe for some e
  std::uint64_t dmask = 0;
  std::uint64_t ds = f.s[a][b];
  while (ds) {
    const int d = __builtin_ctzll(ds);
    ds &= ds - 1;
    if (f.r[d] & ~f.r[b]) dmask |= 1ULL << d;
  }
  Valuation val = ch.valuation;
  val["#q"] = dmask | (f.all_mask() & ~f.s[a][b]);
  val["#s"] = f.r[b];
  const Formula q = Formula::var("#q");
  const Formula s = Formula::var("#s");
  const Formula antecedent = Formula::rhd(ch.formula, q);
  const Formula consequent = Formula::rhd(Formula::conj(ch.formula, Formula::box(s)),
                                          Formula::conj(q, Formula::box(s)));
  return Lemma7Result{VeltmanModel{f, std::move(val)}, antecedent, consequent, a};
}

}  // namespace ilb
