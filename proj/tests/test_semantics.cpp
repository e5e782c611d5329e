#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "ilb/conditions.hpp"
#include "ilb/error.hpp"
#include "ilb/schema.hpp"
#include "ilb/search.hpp"
#include "ilb/veltman.hpp"

using namespace ilb;

namespace {
Formula F(const std::string& s) { return parse_formula(s); }
}

TEST_CASE("load_frame: single world") {
  const VeltmanFrame f = load_frame("worlds: 1\n");
  CHECK(f.n == 1);
  CHECK(f.r[0] == 0);
  CHECK(f.s[0][0] == 0);
  CHECK(validate_frame(f).empty());
}

TEST_CASE("load_frame: cycles are rejected after closure") {
  const char* text =
      "worlds: 2\n"
      "close: r-transitive, s-mandatory\n"
      "R: 0 1; 1 0\n";
  CHECK_THROWS_AS(load_frame(text), Error);
  try {
    load_frame(text);
  } catch (const Error& e) {
    CHECK(e.kind() == Error::Kind::Validation);
    CHECK(std::string(e.what()).find("cycle") != std::string::npos);
  }
}

TEST_CASE("load_frame: zambella fixture closure") {
  const VeltmanModel m = fixture(FixtureId::ZambellaIlp);
  const VeltmanFrame& f = m.frame;
  REQUIRE(f.n == 5);
  // R = {(0,1),(0,2),(1,3),(2,4),(0,3),(0,4)}
  CHECK(f.r[0] == 0b11110);
  CHECK(f.r[1] == 0b01000);
  CHECK(f.r[2] == 0b10000);
  CHECK(f.r[3] == 0);
  CHECK(f.r[4] == 0);
  // S_0 contains the generators plus the mandatory closure
  CHECK(f.rel_s(0, 1, 2));
  CHECK(f.rel_s(0, 2, 1));
  CHECK(f.rel_s(0, 1, 3));
  CHECK(f.rel_s(0, 2, 4));
  CHECK(f.rel_s(0, 1, 4));
  CHECK(f.rel_s(0, 2, 3));
  CHECK_FALSE(f.rel_s(0, 3, 4));
  CHECK_FALSE(f.rel_s(0, 4, 3));
  CHECK(validate_frame(f).empty());
  CHECK(m.val.at("p") == 0b01000);
  CHECK(m.val.at("q") == 0b10000);
}

TEST_CASE("validate_frame: violations carry witnesses") {
  // valid chain with the mandatory family
  {
    VeltmanFrame f(3);
    f.r[0] = 0b110;
    f.r[1] = 0b100;
    s_mandatory_close(f);
    CHECK(validate_frame(f).empty());
  }
  // condition 2: S pair outside the upset
  {
    VeltmanFrame f(3);
    f.r[0] = 0b010;
    s_mandatory_close(f);
    f.s[0][1] |= 0b100;  // 1 S_0 2 but not 0R2
    const auto v = validate_frame(f);
    REQUIRE(!v.empty());
    CHECK(v[0].condition == 2);
  }
  // condition 3: missing reflexive pair
  {
    VeltmanFrame f(2);
    f.r[0] = 0b10;
    const auto v = validate_frame(f);
    REQUIRE(!v.empty());
    CHECK(v[0].condition == 3);
  }
  // condition 4: missing R-pair
  {
    VeltmanFrame f(3);
    f.r[0] = 0b110;
    f.r[1] = 0b100;
    f.s[0][1] = 0b010;
    f.s[0][2] = 0b100;
    f.s[1][2] = 0b100;
    const auto v = validate_frame(f);
    REQUIRE(!v.empty());
    CHECK(v[0].condition == 4);
  }
  // condition 5: S_x not transitive
  {
    VeltmanFrame f(4);
    f.r[0] = 0b1110;
    s_mandatory_close(f);
    f.s[0][1] |= 0b0100;  // 1 S_0 2
    f.s[0][2] |= 0b1000;  // 2 S_0 3, but (1,3) missing
    const auto v = validate_frame(f);
    REQUIRE(!v.empty());
    CHECK(v[0].condition == 5);
  }
}

TEST_CASE("loader: parse errors") {
  CHECK_THROWS_AS(load_frame("R: 0 1\n"), Error);             // worlds first
  CHECK_THROWS_AS(load_frame("worlds: 2\nR: 0 5\n"), Error);  // out of range
  CHECK_THROWS_AS(load_frame("worlds: 2\nbogus: 1\n"), Error);
  CHECK_THROWS_AS(load_frame("worlds: 2\nclose: nonsense\n"), Error);
  CHECK_THROWS_AS(load_frame("worlds: 0\n"), Error);
  // comments, including '#name' valuation variables
  const VeltmanModel m = load_model(
      "# full-line comment\n"
      "worlds: 2  # trailing comment\n"
      "R: 0 1\n"
      "close: s-mandatory\n"
      "val #q: 1\n"
      "val p: 0 1\n");
  CHECK(m.val.at("#q") == 0b10);
  CHECK(m.val.at("p") == 0b11);
}

TEST_CASE("write_model round trip") {
  const VeltmanModel m = fixture(FixtureId::ZambellaIlp);
  const VeltmanModel back = load_model(write_model(m));
  CHECK(back.frame.r == m.frame.r);
  CHECK(back.frame.s == m.frame.s);
  CHECK(back.val == m.val);
}

TEST_CASE("forces: zambella fixture checks") {
  const VeltmanModel m = fixture(FixtureId::ZambellaIlp);
  CHECK(forces(m, 0, F("<>p == <>q")));
  CHECK_FALSE(forces(m, 0, F("p |> p & q")));
  CHECK_FALSE(forces(m, 0, F("false")));
  CHECK_FALSE(forces(m, 3, F("false")));
  // endpoint forces []false vacuously
  CHECK(forces(m, 3, F("[]false")));
  CHECK_FALSE(forces(m, 0, F("[]false")));
  // unknown variables are false everywhere
  CHECK_FALSE(forces(m, 0, F("nosuchvar")));
  CHECK(forces(m, 0, F("~nosuchvar")));
  CHECK_THROWS_AS(forces(m, 7, F("p")), Error);
}

TEST_CASE("frame conditions on the fixtures") {
  const VeltmanFrame zam = fixture(FixtureId::ZambellaIlp).frame;
  CHECK(check_p(zam).holds);
  const VeltmanFrame bnw = fixture(FixtureId::BNotW).frame;
  {
    const ConditionResult w = check_w(bnw);
    CHECK_FALSE(w.holds);
    // the composite cycle runs 2 S_0 1 R 2
    CHECK(w.witness.find("2 S_0 1 R 2") != std::string::npos);
  }
  CHECK(check_r(bnw).holds);
  const VeltmanFrame bwnr = fixture(FixtureId::BWNotR).frame;
  {
    const ConditionResult r = check_r(bwnr);
    CHECK_FALSE(r.holds);
    CHECK(r.witness.find("x=0") != std::string::npos);
  }
  CHECK(check_w(bwnr).holds);
}

TEST_CASE("box is definable as ~A |> false") {
  std::mt19937 rng(77);
  const std::vector<Formula> pool = {F("p"), F("q"), F("p & q"), F("<>p"), F("[]q"),
                                     F("p |> q"), F("~p | q")};
  for (const VeltmanFrame& f : all_frames(3)) {
    VeltmanModel m{f, {}};
    std::uniform_int_distribution<std::uint64_t> mask(0, f.all_mask());
    for (int rep = 0; rep < 4; ++rep) {
      m.val["p"] = mask(rng);
      m.val["q"] = mask(rng);
      for (const Formula& a : pool) {
        const Formula lhs = Formula::box(a);
        const Formula rhs = Formula::rhd(Formula::neg(a), Formula::bot());
        CHECK(forcing_set(m, lhs) == forcing_set(m, rhs));
      }
    }
  }
}

TEST_CASE("box transitivity on validated frames") {
  for (const VeltmanFrame& f : all_frames(3)) {
    VeltmanModel m{f, {}};
    for (std::uint64_t pmask = 0; pmask <= f.all_mask(); ++pmask) {
      m.val["p"] = pmask;
      const std::uint64_t one = forcing_set(m, F("[]p"));
      const std::uint64_t two = forcing_set(m, F("[][]p"));
      CHECK((one & ~two) == 0);
    }
  }
  // on raw non-transitive input the step fails (and validation catches it)
  VeltmanFrame raw(3);
  raw.r[0] = 0b010;
  raw.r[1] = 0b100;
  CHECK_FALSE(validate_frame(raw).empty());
  VeltmanModel m{raw, {{"p", 0b010}}};
  CHECK(forces(m, 0, F("[]p")));
  CHECK_FALSE(forces(m, 0, F("[][]p")));
}

TEST_CASE("IL axioms hold on every enumerated model") {
  const std::vector<Formula> fills = {F("p"), F("q"), F("false"), F("~p"), F("[]p"),
                                      F("<>q"), F("p & q"), F("p |> q")};
  std::vector<std::pair<SchemaId, std::vector<std::string>>> axioms;
  for (const SchemaKind k : {SchemaKind::L1, SchemaKind::L2, SchemaKind::L3, SchemaKind::J1,
                             SchemaKind::J2, SchemaKind::J3, SchemaKind::J4, SchemaKind::J5})
    axioms.emplace_back(SchemaId{k, 0}, schema_metavars({k, 0}));
  // pre-instantiate the pool once
  std::vector<Formula> instances;
  for (const auto& [id, vars] : axioms) {
    if (vars.size() == 1) {
      for (const Formula& a : fills) instances.push_back(instantiate(id, {{"A", a}}));
    } else if (vars.size() == 2) {
      for (const Formula& a : fills)
        for (const Formula& b : fills)
          instances.push_back(instantiate(id, {{"A", a}, {"B", b}}));
    } else {
      for (const Formula& a : fills)
        for (const Formula& b : fills)
          for (const Formula& c : {F("p"), F("q"), F("p & q")})
            instances.push_back(instantiate(id, {{"A", a}, {"B", b}, {"C", c}}));
    }
  }
  long long failures = 0;
  for (const VeltmanFrame& f : all_frames(3)) {
    VeltmanModel m{f, {}};
    const int bits = 2 * f.n;
    for (std::uint64_t combo = 0; combo < (1ULL << bits); ++combo) {
      m.val["p"] = combo & f.all_mask();
      m.val["q"] = (combo >> f.n) & f.all_mask();
      for (const Formula& inst : instances)
        if (forcing_set(m, inst) != f.all_mask()) ++failures;
    }
  }
  CHECK(failures == 0);
}

TEST_CASE("fixture files on disk match the built-in text") {
  for (const FixtureId id : {FixtureId::ZambellaIlp, FixtureId::BNotW, FixtureId::BWNotR}) {
    const std::string path = std::string(ILB_SOURCE_DIR) + "/fixtures/" +
                             fixture_name(id) +
                             (id == FixtureId::ZambellaIlp ? ".vm" : ".vf");
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), path);
    std::ostringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == fixture_text(id));
  }
}
