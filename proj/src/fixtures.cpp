#include "ilb/error.hpp"
#include "ilb/search.hpp"

namespace ilb {

namespace {

// Worlds w,2,3,4,5 of the drawing are 0..4 here: two branches 0-1-3 and
// 0-2-4 with the branch midpoints S_0-linked both ways; p at the top of the
// left branch, q at the top of the right one.
constexpr const char* kZambellaIlp =
    "# Five-world model: Zambella's principle fails at world 0 although the\n"
    "# frame satisfies the P condition.\n"
    "worlds: 5\n"
    "close: r-transitive, s-mandatory\n"
    "R: 0 1; 1 3; 0 2; 2 4\n"
    "S 0: 1 2; 2 1\n"
    "val p: 3\n"
    "val q: 4\n";

// Worlds w,x,y,z are 0..3: a chain 0-1-2 with S_0 linking 1 and 2 both
// ways, plus an endpoint 3 that looks like 2. The S_0 cycle 2,1,2 breaks
// the W condition; the bisimilar endpoint keeps C_B.
constexpr const char* kBNotW =
    "# Four-world frame: the W condition fails (S_0;R has a cycle) while\n"
    "# C_B holds via the endpoint 3, which simulates 2.\n"
    "worlds: 4\n"
    "close: r-transitive, s-mandatory\n"
    "R: 0 1; 1 2; 0 3\n"
    "S 0: 1 2; 2 1; 2 3\n";

// Worlds x,y,z,z',u,v are 0..5: the extra S_0 pair 2 4 creates the R
// violation 0R1R2 S_0 4 R 5 without 2 S_1 5; the arrow 1 5 and the
// bisimilar endpoint 3 keep C_B; W is untouched.
constexpr const char* kBWNotR =
    "# Six-world frame: the R condition fails while W and C_B hold.\n"
    "worlds: 6\n"
    "close: r-transitive, s-mandatory\n"
    "R: 0 1; 1 2; 0 3; 0 4; 4 5; 1 5\n"
    "S 0: 2 4\n";

}  // namespace

const char* fixture_name(FixtureId id) {
  switch (id) {
    case FixtureId::ZambellaIlp: return "zambella_ilp";
    case FixtureId::BNotW: return "b_not_w";
    case FixtureId::BWNotR: return "b_w_not_r";
  }
  return "?";
}

std::optional<FixtureId> parse_fixture_id(std::string_view name) {
  if (name == "zambella_ilp") return FixtureId::ZambellaIlp;
  if (name == "b_not_w") return FixtureId::BNotW;
  if (name == "b_w_not_r") return FixtureId::BWNotR;
  return std::nullopt;
}

const char* fixture_text(FixtureId id) {
  switch (id) {
    case FixtureId::ZambellaIlp: return kZambellaIlp;
    case FixtureId::BNotW: return kBNotW;
    case FixtureId::BWNotR: return kBWNotR;
  }
  throw Error(Error::Kind::Usage, "unknown fixture");
}

VeltmanModel fixture(FixtureId id) { return load_model(fixture_text(id)); }

}  // namespace ilb
