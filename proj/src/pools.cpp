#include <map>

#include "ilb/error.hpp"
#include "ilb/schema.hpp"
#include "ilb/search.hpp"

namespace ilb {

namespace {

Formula F(const char* text) { return parse_formula(text); }

Formula inst(SchemaKind kind, std::map<std::string, Formula> slots, int level = 0) {
  return instantiate(SchemaId{kind, level}, slots);
}

// The pools are fixed and versioned so that "validated within bounds" names
// a reproducible check. Fill-ins stay within the 4-variable instance cap.

InstancePool make_b0_pool() {
  InstancePool pool{"b0-v1", {}};
  const std::vector<Formula> as = {F("[]false"), F("[]p"),        F("~[]p"),
                                   F("<>p"),     F("[]p & <>p"),  F("[]p | []false"),
                                   F("~[]p & <>p"), F("[]p & ~[]p")};
  const std::vector<Formula> bs = {F("p"), F("q")};
  for (const Formula& a : as)
    for (const Formula& b : bs)
      for (const Formula& c : bs)
        pool.instances.push_back(inst(SchemaKind::Bi, {{"A", a}, {"B", b}, {"C", c}}, 0));
  return pool;
}

InstancePool make_z_pool() {
  InstancePool pool{"z-v1", {}};
  const std::vector<std::pair<const char*, const char*>> pairs = {
      {"[]p", "[]p"},           {"[]p", "[]q"},
      {"[]p | []q", "[]q"},     {"[]p & []q", "[]p"},
      {"~[]p", "[]q"},          {"[]p", "~[]q"},
      {"<>p", "<>q"},           {"<>p", "[]q"},
      {"[]p | ~[]p", "[]q"},    {"[]p & ~[]p", "[]q"},
      {"~([]p & []q)", "~[]p"}, {"[]p | []q", "[]p & []q"},
  };
  for (const auto& [a, b] : pairs)
    pool.instances.push_back(inst(SchemaKind::Z, {{"A", F(a)}, {"B", F(b)}}));
  return pool;
}

// Shared triples for R and Rstar; the W pairs are their projections. The R
// pool additionally carries (A, B & []~A, C) so that validity of the W and
// R pools on a frame forces validity of the Rstar pool.
const std::vector<std::pair<const char*, const char*>>& wr_pairs() {
  static const std::vector<std::pair<const char*, const char*>> pairs = {
      {"p", "q"}, {"q", "p"}, {"p", "p"}, {"<>p", "q"}, {"p & q", "q"}, {"p", "false"},
  };
  return pairs;
}

const std::vector<const char*>& wr_cs() {
  static const std::vector<const char*> cs = {"true", "p", "q", "~p"};
  return cs;
}

InstancePool make_w_pool() {
  InstancePool pool{"w-v1", {}};
  for (const auto& [a, b] : wr_pairs())
    pool.instances.push_back(inst(SchemaKind::W, {{"A", F(a)}, {"B", F(b)}}));
  return pool;
}

InstancePool make_r_pool() {
  InstancePool pool{"r-v1", {}};
  for (const auto& [a, b] : wr_pairs())
    for (const char* c : wr_cs()) {
      pool.instances.push_back(inst(SchemaKind::R, {{"A", F(a)}, {"B", F(b)}, {"C", F(c)}}));
      const Formula strong = Formula::conj(F(b), Formula::box(Formula::neg(F(a))));
      pool.instances.push_back(inst(SchemaKind::R, {{"A", F(a)}, {"B", strong}, {"C", F(c)}}));
    }
  pool.instances.push_back(inst(SchemaKind::R, {{"A", F("p")}, {"B", F("q")}, {"C", F("r")}}));
  return pool;
}

InstancePool make_rstar_pool() {
  InstancePool pool{"rstar-v1", {}};
  for (const auto& [a, b] : wr_pairs())
    for (const char* c : wr_cs())
      pool.instances.push_back(
          inst(SchemaKind::Rstar, {{"A", F(a)}, {"B", F(b)}, {"C", F(c)}}));
  pool.instances.push_back(
      inst(SchemaKind::Rstar, {{"A", F("p")}, {"B", F("q")}, {"C", F("r")}}));
  return pool;
}

InstancePool make_m_pool() {
  InstancePool pool{"m-v1", {}};
  for (const auto& [a, b] : wr_pairs())
    for (const char* c : {"p", "q", "true"})
      pool.instances.push_back(inst(SchemaKind::M, {{"A", F(a)}, {"B", F(b)}, {"C", F(c)}}));
  return pool;
}

InstancePool make_m0_pool() {
  InstancePool pool{"m0-v1", {}};
  for (const auto& [a, b] : wr_pairs())
    for (const char* c : {"p", "q", "true"})
      pool.instances.push_back(inst(SchemaKind::M0, {{"A", F(a)}, {"B", F(b)}, {"C", F(c)}}));
  return pool;
}

InstancePool make_p_pool() {
  InstancePool pool{"p-v1", {}};
  for (const auto& [a, b] : wr_pairs())
    pool.instances.push_back(inst(SchemaKind::P, {{"A", F(a)}, {"B", F(b)}}));
  return pool;
}

}  // namespace

InstancePool pool_for_schema(const std::string& schema) {
  if (schema == "B0") return make_b0_pool();
  if (schema == "Z") return make_z_pool();
  if (schema == "W") return make_w_pool();
  if (schema == "R") return make_r_pool();
  if (schema == "Rstar" || schema == "R*") return make_rstar_pool();
  if (schema == "M") return make_m_pool();
  if (schema == "M0") return make_m0_pool();
  if (schema == "P") return make_p_pool();
  throw Error(Error::Kind::Usage, "no instance pool for schema \"" + schema + "\"");
}

std::vector<std::string> pooled_schemas() {
  return {"B0", "Z", "W", "R", "Rstar", "M", "M0", "P"};
}

}  // namespace ilb
