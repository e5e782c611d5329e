#include "ilb/conditions.hpp"

#include <deque>

#include "ilb/error.hpp"
#include "ilb/simulation.hpp"

namespace ilb {

namespace {

std::string tup(std::initializer_list<std::pair<const char*, int>> parts) {
  std::string out;
  for (const auto& [name, v] : parts) {
    if (!out.empty()) out += " ";
    out += std::string(name) + "=" + std::to_string(v);
  }
  return out;
}

}  // namespace

ConditionResult check_m(const VeltmanFrame& f) {
  for (int x = 0; x < f.n; ++x)
    for (int y = 0; y < f.n; ++y) {
      if (!f.rel_r(x, y)) continue;
      for (int z = 0; z < f.n; ++z) {
        if (!f.rel_s(x, y, z)) continue;
        const std::uint64_t bad = f.r[z] & ~f.r[y];
        if (bad)
          return {false, "xRyS_xzRu without yRu: " +
                             tup({{"x", x}, {"y", y}, {"z", z}, {"u", __builtin_ctzll(bad)}})};
      }
    }
  return {true, ""};
}

ConditionResult check_m0(const VeltmanFrame& f) {
  for (int x = 0; x < f.n; ++x)
    for (int y = 0; y < f.n; ++y) {
      if (!f.rel_r(x, y)) continue;
      for (int z = 0; z < f.n; ++z) {
        if (!f.rel_r(y, z)) continue;
        for (int u = 0; u < f.n; ++u) {
          if (!f.rel_s(x, z, u)) continue;
          const std::uint64_t bad = f.r[u] & ~f.r[y];
          if (bad)
            return {false, "xRyRzS_xuRv without yRv: " +
                               tup({{"x", x}, {"y", y}, {"z", z}, {"u", u},
                                    {"v", __builtin_ctzll(bad)}})};
        }
      }
    }
  return {true, ""};
}

ConditionResult check_p(const VeltmanFrame& f) {
  for (int x = 0; x < f.n; ++x)
    for (int y = 0; y < f.n; ++y) {
      if (!f.rel_r(x, y)) continue;
      for (int z = 0; z < f.n; ++z) {
        if (!f.rel_r(y, z)) continue;
        for (int u = 0; u < f.n; ++u) {
          if (!f.rel_s(x, z, u)) continue;
          if (!f.rel_r(y, u))
            return {false, "xRyRzS_xu without yRu: " +
                               tup({{"x", x}, {"y", y}, {"z", z}, {"u", u}})};
          if (!f.rel_s(y, z, u))
            return {false, "xRyRzS_xu without zS_yu: " +
                               tup({{"x", x}, {"y", y}, {"z", z}, {"u", u}})};
        }
      }
    }
  return {true, ""};
}

ConditionResult check_w(const VeltmanFrame& f) {
  // (S_w;R) must be conversely well-founded for every w; on finite frames
  // this is acyclicity of the composed relation.
  for (int w = 0; w < f.n; ++w) {
    // comp[a] = successors of a under (S_w;R); via[a][b] = an S_w midpoint
    std::vector<std::uint64_t> comp(f.n, 0);
    std::vector<std::vector<int>> via(f.n, std::vector<int>(f.n, -1));
    for (int a = 0; a < f.n; ++a)
      for (int c = 0; c < f.n; ++c) {
        if (!f.rel_s(w, a, c)) continue;
        std::uint64_t succ = f.r[c] & ~comp[a];
        comp[a] |= f.r[c];
        while (succ) {
          const int b = __builtin_ctzll(succ);
          succ &= succ - 1;
          if (via[a][b] == -1) via[a][b] = c;
        }
      }
    // reachability
    std::vector<std::uint64_t> reach = comp;
    for (int k = 0; k < f.n; ++k)
      for (int i = 0; i < f.n; ++i)
        if ((reach[i] >> k) & 1) reach[i] |= reach[k];
    for (int start = 0; start < f.n; ++start) {
      if (!((reach[start] >> start) & 1)) continue;
      // BFS shortest composite cycle through start
      std::vector<int> parent(f.n, -1);
      std::deque<int> queue;
      std::vector<int> path;
      if ((comp[start] >> start) & 1) {
        path = {start, start};
      } else {
        for (int y = 0; y < f.n && path.empty(); ++y)
          if (((comp[start] >> y) & 1) && parent[y] == -1) {
            parent[y] = start;
            queue.push_back(y);
          }
        while (!queue.empty() && path.empty()) {
          const int x = queue.front();
          queue.pop_front();
          for (int y = 0; y < f.n; ++y) {
            if (!((comp[x] >> y) & 1)) continue;
            if (y == start) {
              path = {start};
              std::vector<int> rev;
              for (int c = x; c != start; c = parent[c]) rev.push_back(c);
              for (auto it = rev.rbegin(); it != rev.rend(); ++it) path.push_back(*it);
              path.push_back(start);
              break;
            }
            if (parent[y] == -1) {
              parent[y] = x;
              queue.push_back(y);
            }
          }
        }
      }
      std::string witness = "cycle in (S_" + std::to_string(w) + ";R): ";
      for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const int a = path[i], b = path[i + 1];
        witness += std::to_string(a) + " S_" + std::to_string(w) + " " +
                   std::to_string(via[a][b]) + " R ";
      }
      witness += std::to_string(path.back());
      return {false, witness};
    }
  }
  return {true, ""};
}

ConditionResult check_r(const VeltmanFrame& f) {
  for (int x = 0; x < f.n; ++x)
    for (int y = 0; y < f.n; ++y) {
      if (!f.rel_r(x, y)) continue;
      for (int z = 0; z < f.n; ++z) {
        if (!f.rel_r(y, z)) continue;
        for (int u = 0; u < f.n; ++u) {
          if (!f.rel_s(x, z, u)) continue;
          const std::uint64_t bad = f.r[u] & ~f.s[y][z];
          if (bad)
            return {false, "xRyRzS_xuRv without zS_yv: " +
                               tup({{"x", x}, {"y", y}, {"z", z}, {"u", u},
                                    {"v", __builtin_ctzll(bad)}})};
        }
      }
    }
  return {true, ""};
}

ConditionResult check_condition(const VeltmanFrame& f, ConditionId c) {
  switch (c.kind) {
    case ConditionKind::M: return check_m(f);
    case ConditionKind::M0: return check_m0(f);
    case ConditionKind::P: return check_p(f);
    case ConditionKind::W: return check_w(f);
    case ConditionKind::R: return check_r(f);
    case ConditionKind::Ci: {
      const CiResult res = check_ci(f, c.level);
      if (res.holds) return {true, ""};
      return {false, "C_" + std::to_string(c.level) + " fails at " +
                         tup({{"a", res.witness->first}, {"b", res.witness->second}})};
    }
    case ConditionKind::CB: {
      const CiResult res = check_cb(f);
      if (res.holds) return {true, ""};
      return {false, "C_B fails at " +
                         tup({{"a", res.witness->first}, {"b", res.witness->second}})};
    }
  }
  throw Error(Error::Kind::Usage, "unknown condition");
}

std::optional<ConditionId> parse_condition_id(std::string_view text) {
  if (text == "M") return ConditionId{ConditionKind::M, 0};
  if (text == "M0") return ConditionId{ConditionKind::M0, 0};
  if (text == "P") return ConditionId{ConditionKind::P, 0};
  if (text == "W") return ConditionId{ConditionKind::W, 0};
  if (text == "R") return ConditionId{ConditionKind::R, 0};
  if (text == "CB") return ConditionId{ConditionKind::CB, 0};
  if (text.size() >= 3 && text.substr(0, 2) == "C:") {
    int level = 0;
    for (std::size_t i = 2; i < text.size(); ++i) {
      if (text[i] < '0' || text[i] > '9') return std::nullopt;
      level = level * 10 + (text[i] - '0');
    }
    return ConditionId{ConditionKind::Ci, level};
  }
  return std::nullopt;
}

std::string to_string(ConditionId c) {
  switch (c.kind) {
    case ConditionKind::M: return "M";
    case ConditionKind::M0: return "M0";
    case ConditionKind::P: return "P";
    case ConditionKind::W: return "W";
    case ConditionKind::R: return "R";
    case ConditionKind::Ci: return "C:" + std::to_string(c.level);
    case ConditionKind::CB: return "CB";
  }
  return "?";
}

}  // namespace ilb
