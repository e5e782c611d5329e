#include "ilb/search.hpp"

#include <algorithm>

#include "ilb/error.hpp"
#include "ilb/veltman.hpp"

namespace ilb {

namespace {

constexpr int kMaxEnumWorlds = 5;
constexpr int kMaxInstanceVars = 4;

// All transitive supersets of `mandatory` within universe `allowed` (as a
// row mask per element of 0..n-1), ascending by free-pair bitmask.
void s_options(int n, const std::vector<std::uint64_t>& mandatory, std::uint64_t allowed,
               std::vector<std::vector<std::uint64_t>>& out) {
  std::vector<std::pair<int, int>> free_pairs;
  for (int i = 0; i < n; ++i) {
    if (!((allowed >> i) & 1)) continue;
    for (int j = 0; j < n; ++j)
      if (((allowed >> j) & 1) && !((mandatory[i] >> j) & 1))
        free_pairs.emplace_back(i, j);
  }
  const std::size_t k = free_pairs.size();
  for (std::uint64_t pick = 0; pick < (1ULL << k); ++pick) {
    std::vector<std::uint64_t> rel = mandatory;
    for (std::size_t t = 0; t < k; ++t)
      if ((pick >> t) & 1) rel[free_pairs[t].first] |= 1ULL << free_pairs[t].second;
    bool trans = true;
    for (int i = 0; i < n && trans; ++i) {
      if (!((allowed >> i) & 1)) continue;
      std::uint64_t row = rel[i];
      while (row) {
        const int j = __builtin_ctzll(row);
        row &= row - 1;
        if (rel[j] & ~rel[i]) {
          trans = false;
          break;
        }
      }
    }
    if (trans) out.push_back(std::move(rel));
  }
}

}  // namespace

void enumerate_frames(int max_worlds,
                      const std::function<bool(const VeltmanFrame&)>& visit) {
  if (max_worlds < 1) throw Error(Error::Kind::Precondition, "need at least one world");
  if (max_worlds > kMaxEnumWorlds)
    throw Error(Error::Kind::Resource,
                "enumeration capped at " + std::to_string(kMaxEnumWorlds) + " worlds");
  for (int n = 1; n <= max_worlds; ++n) {
    const int off_diag = n * (n - 1);
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) slots.emplace_back(i, j);
    for (std::uint64_t rbits = 0; rbits < (1ULL << off_diag); ++rbits) {
      VeltmanFrame f(n);
      for (int t = 0; t < off_diag; ++t)
        if ((rbits >> t) & 1) f.r[slots[t].first] |= 1ULL << slots[t].second;
      // transitive and (being irreflexive) conversely well-founded
      bool ok = true;
      for (int i = 0; i < n && ok; ++i) {
        std::uint64_t row = f.r[i];
        while (row) {
          const int j = __builtin_ctzll(row);
          row &= row - 1;
          if (f.r[j] & ~f.r[i]) {
            ok = false;
            break;
          }
          if ((f.r[j] >> i) & 1) {  // cycle i R j R i
            ok = false;
            break;
          }
        }
      }
      if (!ok) continue;
      // per-world S options over the mandatory pairs
      std::vector<std::vector<std::vector<std::uint64_t>>> options(n);
      for (int x = 0; x < n; ++x) {
        std::vector<std::uint64_t> mandatory(n, 0);
        std::uint64_t up = f.r[x];
        std::uint64_t ys = up;
        while (ys) {
          const int y = __builtin_ctzll(ys);
          ys &= ys - 1;
          mandatory[y] = (1ULL << y) | f.r[y];
        }
        s_options(n, mandatory, up, options[x]);
      }
      std::vector<std::size_t> idx(n, 0);
      for (;;) {
        for (int x = 0; x < n; ++x) f.s[x] = options[x][idx[x]];
        if (!visit(f)) return;
        int x = n - 1;
        while (x >= 0) {
          if (++idx[x] < options[x].size()) break;
          idx[x] = 0;
          --x;
        }
        if (x < 0) break;
      }
    }
  }
}

std::vector<VeltmanFrame> all_frames(int max_worlds) {
  std::vector<VeltmanFrame> out;
  enumerate_frames(max_worlds, [&](const VeltmanFrame& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

InstanceCheck instance_valid_on_frame(const VeltmanFrame& f, const Formula& inst) {
  const std::vector<std::string> vars = variables(inst);
  if (static_cast<int>(vars.size()) > kMaxInstanceVars)
    throw Error(Error::Kind::Resource,
                "instance has " + std::to_string(vars.size()) + " variables (at most " +
                    std::to_string(kMaxInstanceVars) + ")");
  const int bits = f.n * static_cast<int>(vars.size());
  VeltmanModel m{f, {}};
  const std::uint64_t all = f.all_mask();
  for (std::uint64_t combo = 0; combo < (1ULL << bits); ++combo) {
    for (std::size_t v = 0; v < vars.size(); ++v)
      m.val[vars[v]] = (combo >> (v * f.n)) & all;
    const std::uint64_t ok = forcing_set(m, inst);
    if (ok != all) {
      const int world = __builtin_ctzll(all & ~ok);
      return InstanceCheck{false, RefutationWitness{m.val, world}};
    }
  }
  return InstanceCheck{true, std::nullopt};
}

std::optional<SearchReport> find_frame_countermodel(
    const std::vector<Formula>& pool, int max_worlds,
    const std::function<bool(const VeltmanFrame&)>& side_condition,
    const std::string& pool_id) {
  std::optional<SearchReport> report;
  enumerate_frames(max_worlds, [&](const VeltmanFrame& f) {
    if (side_condition && !side_condition(f)) return true;
    for (const Formula& inst : pool) {
      const InstanceCheck chk = instance_valid_on_frame(f, inst);
      if (chk.valid) continue;
      // independent re-verification of the witness
      VeltmanModel m{f, chk.witness->valuation};
      if (forces(m, chk.witness->world, inst))
        throw std::logic_error("countermodel failed re-verification");
      SearchReport r;
      r.schema = pool_id;
      r.bounds = SearchBounds{max_worlds, kMaxInstanceVars, pool_id};
      r.found = true;
      r.frame = f;
      r.valuation = chk.witness->valuation;
      r.world = chk.witness->world;
      r.instance = inst;
      report = std::move(r);
      return false;
    }
    return true;
  });
  return report;
}

}  // namespace ilb
