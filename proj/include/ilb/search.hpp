#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ilb/formula.hpp"
#include "ilb/veltman.hpp"

namespace ilb {

// Streams every labelled valid Veltman frame with 1..max_worlds worlds in a
// deterministic order: world count ascending, R relations by bitmask value,
// S-families by per-world mask value. The visitor returns false to stop.
// max_worlds is hard-capped at 5.
void enumerate_frames(int max_worlds,
                      const std::function<bool(const VeltmanFrame&)>& visit);

std::vector<VeltmanFrame> all_frames(int max_worlds);

struct RefutationWitness {
  Valuation valuation;
  int world = 0;
};

struct InstanceCheck {
  bool valid = false;
  std::optional<RefutationWitness> witness;
};

// Exhaustive validity of one instance on a frame over all valuations of its
// variables (at most 4) and all worlds; the first refutation in counting
// order is returned.
InstanceCheck instance_valid_on_frame(const VeltmanFrame& f, const Formula& inst);

// Bundled reproductions of the three countermodels: the five-world model
// refuting Zambella on a P-frame, the four-world frame where W fails but
// C_B holds, and the six-world frame where R fails but W and C_B hold.
enum class FixtureId { ZambellaIlp, BNotW, BWNotR };

const char* fixture_name(FixtureId id);
std::optional<FixtureId> parse_fixture_id(std::string_view name);
const char* fixture_text(FixtureId id);  // the shipped file contents
VeltmanModel fixture(FixtureId id);

// Fixed, versioned instance pools; schema names as in parse_schema_id
// (B0, Z, W, R, Rstar, M, M0, P).
struct InstancePool {
  std::string id;
  std::vector<Formula> instances;
};

InstancePool pool_for_schema(const std::string& schema);
std::vector<std::string> pooled_schemas();

struct SearchBounds {
  int max_worlds = 0;
  int max_vars = 4;
  std::string pool_id;
};

struct SearchReport {
  std::string schema;
  SearchBounds bounds;
  bool found = false;
  VeltmanFrame frame;
  Valuation valuation;
  int world = 0;
  Formula instance;
};

// Scans enumerate_frames for the first frame satisfying `side_condition`
// on which some pool instance is refuted; the countermodel is re-verified
// with an independent forces run before being returned.
std::optional<SearchReport> find_frame_countermodel(
    const std::vector<Formula>& pool, int max_worlds,
    const std::function<bool(const VeltmanFrame&)>& side_condition,
    const std::string& pool_id = "ad-hoc");

// The independence claims with machine-checked witnesses.
struct ClaimResult {
  std::string claim;
  bool pass = false;
  std::string detail;        // one-line description of the witness
  std::string witness_name;  // suggested file name
  std::string witness_text;  // model file reproducing the refutation
};

std::vector<ClaimResult> independence_report(int search_bound = 5);

}  // namespace ilb
