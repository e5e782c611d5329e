#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "ilb/veltman.hpp"

namespace ilb {

// First-order frame conditions plus the simulation-based ones (Ci level i,
// CB), which are dispatched to the simulation module.
enum class ConditionKind { M, M0, P, W, R, Ci, CB };

struct ConditionId {
  ConditionKind kind = ConditionKind::M;
  int level = 0;  // Ci only
};

struct ConditionResult {
  bool holds = false;
  std::string witness;  // empty when the condition holds
};

ConditionResult check_condition(const VeltmanFrame& f, ConditionId c);

// "M", "M0", "P", "W", "R", "C:<i>", "CB"
std::optional<ConditionId> parse_condition_id(std::string_view text);
std::string to_string(ConditionId c);

// The individual universal conditions; witnesses are the lexicographically
// first violating tuples (for W: a cycle of the composed relation S_w;R).
ConditionResult check_m(const VeltmanFrame& f);
ConditionResult check_m0(const VeltmanFrame& f);
ConditionResult check_p(const VeltmanFrame& f);
ConditionResult check_w(const VeltmanFrame& f);
ConditionResult check_r(const VeltmanFrame& f);

}  // namespace ilb
