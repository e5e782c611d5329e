#include "ilb/veltman.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <sstream>
#include <unordered_map>

#include "ilb/error.hpp"

namespace ilb {

namespace {

// Shortest R-cycle through the smallest world lying on one; deterministic.
std::string find_cycle(const VeltmanFrame& f) {
  // reachability closure
  std::vector<std::uint64_t> reach = f.r;
  for (int k = 0; k < f.n; ++k)
    for (int i = 0; i < f.n; ++i)
      if ((reach[i] >> k) & 1) reach[i] |= reach[k];
  for (int start = 0; start < f.n; ++start) {
    if (!((reach[start] >> start) & 1)) continue;
    // BFS from start back to start, expanding successors in ascending order
    std::vector<int> parent(f.n, -1);
    std::deque<int> queue;
    for (int y = 0; y < f.n; ++y)
      if (f.rel_r(start, y)) {
        if (y == start) return std::to_string(start) + " R " + std::to_string(start);
        if (parent[y] == -1) {
          parent[y] = start;
          queue.push_back(y);
        }
      }
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      for (int y = 0; y < f.n; ++y) {
        if (!f.rel_r(x, y)) continue;
        if (y == start) {
          std::vector<int> path{start};
          for (int c = x; c != start; c = parent[c]) path.push_back(c);
          path.push_back(start);
          std::reverse(path.begin() + 1, path.end() - 1);
          std::string out = std::to_string(path.front());
          for (std::size_t i = 1; i < path.size(); ++i) out += " R " + std::to_string(path[i]);
          return out;
        }
        if (parent[y] == -1) {
          parent[y] = x;
          queue.push_back(y);
        }
      }
    }
  }
  return "";
}

}  // namespace

std::vector<Violation> validate_frame(const VeltmanFrame& f) {
  std::vector<Violation> out;
  if (f.n <= 0) {
    out.push_back({1, "empty universe"});
    return out;
  }
  // 1: R transitive and conversely well-founded (finite: acyclic).
  bool trans_ok = true;
  for (int x = 0; x < f.n && trans_ok; ++x)
    for (int y = 0; y < f.n && trans_ok; ++y)
      if (f.rel_r(x, y) && (f.r[y] & ~f.r[x])) {
        int z = __builtin_ctzll(f.r[y] & ~f.r[x]);
        out.push_back({1, "R not transitive: " + std::to_string(x) + " R " + std::to_string(y) +
                               " R " + std::to_string(z) + " but not " + std::to_string(x) +
                               " R " + std::to_string(z)});
        trans_ok = false;
      }
  const std::string cycle = find_cycle(f);
  if (!cycle.empty()) out.push_back({1, "R cycle " + cycle});
  // 2: y S_x z implies xRy and xRz.
  for (int x = 0; x < f.n; ++x)
    for (int y = 0; y < f.n; ++y) {
      const std::uint64_t bad =
          f.rel_r(x, y) ? (f.s[x][y] & ~f.r[x]) : f.s[x][y];
      if (bad) {
        const int z = __builtin_ctzll(bad);
        out.push_back({2, std::to_string(y) + " S_" + std::to_string(x) + " " +
                               std::to_string(z) + " but not " + std::to_string(x) + " R " +
                               std::to_string(y) + " and " + std::to_string(x) + " R " +
                               std::to_string(z)});
        goto cond3;
      }
    }
cond3:
  // 3: xRy implies y S_x y.
  for (int x = 0; x < f.n; ++x)
    for (int y = 0; y < f.n; ++y)
      if (f.rel_r(x, y) && !f.rel_s(x, y, y)) {
        out.push_back({3, std::to_string(x) + " R " + std::to_string(y) + " but not " +
                               std::to_string(y) + " S_" + std::to_string(x) + " " +
                               std::to_string(y)});
        goto cond4;
      }
cond4:
  // 4: xRyRz implies y S_x z.
  for (int x = 0; x < f.n; ++x)
    for (int y = 0; y < f.n; ++y)
      if (f.rel_r(x, y) && (f.r[y] & ~f.s[x][y])) {
        const int z = __builtin_ctzll(f.r[y] & ~f.s[x][y]);
        out.push_back({4, std::to_string(x) + " R " + std::to_string(y) + " R " +
                               std::to_string(z) + " but not " + std::to_string(y) + " S_" +
                               std::to_string(x) + " " + std::to_string(z)});
        goto cond5;
      }
cond5:
  // 5: each S_x transitive.
  for (int x = 0; x < f.n; ++x)
    for (int u = 0; u < f.n; ++u)
      for (int v = 0; v < f.n; ++v)
        if (f.rel_s(x, u, v) && (f.s[x][v] & ~f.s[x][u])) {
          const int w = __builtin_ctzll(f.s[x][v] & ~f.s[x][u]);
          out.push_back({5, std::to_string(u) + " S_" + std::to_string(x) + " " +
                                 std::to_string(v) + " S_" + std::to_string(x) + " " +
                                 std::to_string(w) + " but not " + std::to_string(u) + " S_" +
                                 std::to_string(x) + " " + std::to_string(w)});
          return out;
        }
  return out;
}

void r_transitive_close(VeltmanFrame& f) {
  for (int k = 0; k < f.n; ++k)
    for (int i = 0; i < f.n; ++i)
      if ((f.r[i] >> k) & 1) f.r[i] |= f.r[k];
}

void s_mandatory_close(VeltmanFrame& f) {
  for (int x = 0; x < f.n; ++x) {
    for (int y = 0; y < f.n; ++y)
      if (f.rel_r(x, y)) {
        f.s[x][y] |= 1ULL << y;  // condition 3
        f.s[x][y] |= f.r[y];     // condition 4
      }
    for (int k = 0; k < f.n; ++k)
      for (int i = 0; i < f.n; ++i)
        if ((f.s[x][i] >> k) & 1) f.s[x][i] |= f.s[x][k];
  }
}

namespace {

[[noreturn]] void fail_line(int line, const std::string& msg) {
  throw Error(Error::Kind::Parse, "line " + std::to_string(line) + ": " + msg);
}

// Strips comments: '#' opens a comment when it is the first non-blank
// character or is followed by whitespace/end of line. '#ident' survives.
std::string strip_comment(const std::string& line) {
  std::size_t first = line.find_first_not_of(" \t");
  if (first != std::string::npos && line[first] == '#') return "";
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] != '#') continue;
    if (i + 1 >= line.size() || std::isspace(static_cast<unsigned char>(line[i + 1])) ||
        line[i + 1] == '#')
      return line.substr(0, i);
  }
  return line;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

int parse_world(const std::string& tok, int n, int line) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
    fail_line(line, "expected a world number, got \"" + tok + "\"");
  const long v = std::stol(tok);
  if (v < 0 || v >= n) fail_line(line, "world " + tok + " out of range (worlds: " + std::to_string(n) + ")");
  return static_cast<int>(v);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

VeltmanModel parse_structure(std::string_view text) {
  VeltmanModel m;
  bool have_worlds = false;
  bool close_r = false, close_s = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    const std::size_t colon = line.find(':');
    if (colon == std::string::npos) fail_line(lineno, "expected \"<directive>:\"");
    const std::string head = trim(line.substr(0, colon));
    const std::string body = trim(line.substr(colon + 1));
    const std::vector<std::string> head_words = words(head);
    if (head_words.empty()) fail_line(lineno, "empty directive");
    const std::string& key = head_words[0];
    if (key == "worlds") {
      if (have_worlds) fail_line(lineno, "duplicate worlds directive");
      if (body.empty() || body.find_first_not_of("0123456789") != std::string::npos)
        fail_line(lineno, "worlds: expects a number");
      const long n = std::stol(body);
      if (n <= 0) fail_line(lineno, "worlds: must be positive");
      if (n > 64) fail_line(lineno, "worlds: at most 64 supported");
      m.frame.resize(static_cast<int>(n));
      have_worlds = true;
      continue;
    }
    if (!have_worlds) fail_line(lineno, "worlds: must come first");
    if (key == "close") {
      for (std::string tok : split(body, ',')) {
        tok = trim(tok);
        if (tok == "r-transitive")
          close_r = true;
        else if (tok == "s-mandatory")
          close_s = true;
        else
          fail_line(lineno, "unknown closure \"" + tok + "\"");
      }
      continue;
    }
    if (key == "R") {
      if (head_words.size() != 1) fail_line(lineno, "malformed R directive");
      for (const std::string& pair : split(body, ';')) {
        const std::vector<std::string> ij = words(pair);
        if (ij.empty()) continue;
        if (ij.size() != 2) fail_line(lineno, "R pairs are \"<i> <j>\"");
        const int i = parse_world(ij[0], m.frame.n, lineno);
        const int j = parse_world(ij[1], m.frame.n, lineno);
        m.frame.r[i] |= 1ULL << j;
      }
      continue;
    }
    if (key == "S") {
      if (head_words.size() != 2) fail_line(lineno, "S directive is \"S <x>:\"");
      const int x = parse_world(head_words[1], m.frame.n, lineno);
      for (const std::string& pair : split(body, ';')) {
        const std::vector<std::string> ij = words(pair);
        if (ij.empty()) continue;
        if (ij.size() != 2) fail_line(lineno, "S pairs are \"<i> <j>\"");
        const int i = parse_world(ij[0], m.frame.n, lineno);
        const int j = parse_world(ij[1], m.frame.n, lineno);
        m.frame.s[x][i] |= 1ULL << j;
      }
      continue;
    }
    if (key == "val") {
      if (head_words.size() != 2) fail_line(lineno, "val directive is \"val <name>:\"");
      std::uint64_t mask = m.val.count(head_words[1]) ? m.val[head_words[1]] : 0;
      for (const std::string& tok : words(body))
        mask |= 1ULL << parse_world(tok, m.frame.n, lineno);
      m.val[head_words[1]] = mask;
      continue;
    }
    fail_line(lineno, "unknown directive \"" + key + "\"");
  }
  if (!have_worlds) throw Error(Error::Kind::Parse, "missing worlds directive");
  if (close_r) r_transitive_close(m.frame);
  if (close_s) s_mandatory_close(m.frame);
  const std::vector<Violation> violations = validate_frame(m.frame);
  if (!violations.empty()) {
    std::string msg = "invalid frame:";
    for (const Violation& v : violations)
      msg += "\n  condition " + std::to_string(v.condition) + ": " + v.detail;
    throw Error(Error::Kind::Validation, msg);
  }
  return m;
}

}  // namespace

VeltmanFrame load_frame(std::string_view text) { return parse_structure(text).frame; }

VeltmanModel load_model(std::string_view text) { return parse_structure(text); }

std::string write_frame(const VeltmanFrame& f) {
  std::ostringstream out;
  out << "worlds: " << f.n << "\n";
  out << "R:";
  bool first = true;
  for (int i = 0; i < f.n; ++i)
    for (int j = 0; j < f.n; ++j)
      if (f.rel_r(i, j)) {
        out << (first ? " " : "; ") << i << " " << j;
        first = false;
      }
  out << "\n";
  for (int x = 0; x < f.n; ++x) {
    bool any = false;
    for (int i = 0; i < f.n; ++i) any = any || f.s[x][i];
    if (!any) continue;
    out << "S " << x << ":";
    first = true;
    for (int i = 0; i < f.n; ++i)
      for (int j = 0; j < f.n; ++j)
        if (f.rel_s(x, i, j)) {
          out << (first ? " " : "; ") << i << " " << j;
          first = false;
        }
    out << "\n";
  }
  return out.str();
}

std::string write_model(const VeltmanModel& m) {
  std::string out = write_frame(m.frame);
  for (const auto& [name, mask] : m.val) {
    out += "val " + name + ":";
    for (int w = 0; w < m.frame.n; ++w)
      if ((mask >> w) & 1) out += " " + std::to_string(w);
    out += "\n";
  }
  return out;
}

namespace {

std::uint64_t eval_set(const VeltmanModel& m, const Formula& f,
                       std::unordered_map<const void*, std::uint64_t>& memo) {
  auto hit = memo.find(f.id());
  if (hit != memo.end()) return hit->second;
  const VeltmanFrame& fr = m.frame;
  const std::uint64_t all = fr.all_mask();
  std::uint64_t res = 0;
  switch (f.kind()) {
    case Conn::Var: {
      auto it = m.val.find(f.name());
      res = it == m.val.end() ? 0 : (it->second & all);
      break;
    }
    case Conn::Bot:
      res = 0;
      break;
    case Conn::Not:
      res = all & ~eval_set(m, f.child(), memo);
      break;
    case Conn::And:
      res = eval_set(m, f.lhs(), memo) & eval_set(m, f.rhs(), memo);
      break;
    case Conn::Or:
      res = eval_set(m, f.lhs(), memo) | eval_set(m, f.rhs(), memo);
      break;
    case Conn::Imp:
      res = (all & ~eval_set(m, f.lhs(), memo)) | eval_set(m, f.rhs(), memo);
      break;
    case Conn::Box: {
      const std::uint64_t sub = eval_set(m, f.child(), memo);
      for (int w = 0; w < fr.n; ++w)
        if (!(fr.r[w] & ~sub)) res |= 1ULL << w;
      break;
    }
    case Conn::Rhd: {
      const std::uint64_t la = eval_set(m, f.lhs(), memo);
      const std::uint64_t rb = eval_set(m, f.rhs(), memo);
      for (int w = 0; w < fr.n; ++w) {
        bool ok = true;
        std::uint64_t todo = fr.r[w] & la;
        while (todo) {
          const int u = __builtin_ctzll(todo);
          todo &= todo - 1;
          if (!(fr.s[w][u] & rb)) {
            ok = false;
            break;
          }
        }
        if (ok) res |= 1ULL << w;
      }
      break;
    }
  }
  memo.emplace(f.id(), res);
  return res;
}

}  // namespace

std::uint64_t forcing_set(const VeltmanModel& m, const Formula& f) {
  std::unordered_map<const void*, std::uint64_t> memo;
  return eval_set(m, f, memo);
}

bool forces(const VeltmanModel& m, int world, const Formula& f) {
  if (world < 0 || world >= m.frame.n)
    throw Error(Error::Kind::Precondition, "world out of range");
  return (forcing_set(m, f) >> world) & 1;
}

}  // namespace ilb
