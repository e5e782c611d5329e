#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ilb/formula.hpp"

namespace ilb {

// Axiom schemata of IL plus the extension principles handled by the kernel.
enum class SchemaKind {
  L1, L2, L3, J1, J2, J3, J4, J5,
  M, M0, P, W, Wstar, R, Rstar,
  B, Bi, Bprime, Z, Zext
};

struct SchemaId {
  SchemaKind kind = SchemaKind::L1;
  int level = 0;  // only meaningful for Bi

  friend auto operator<=>(const SchemaId&, const SchemaId&) = default;
};

std::string to_string(const SchemaId& id);

// Accepts L1..L3, J1..J5, M, M0, P, W, Wstar/W*, R, Rstar/R*, B, B<i>,
// Bprime/B', Z, Zext.
std::optional<SchemaId> parse_schema_id(std::string_view text);

// Metavariable slots of the schema, in template order (A, B, C, A2, B2).
std::vector<std::string> schema_metavars(const SchemaId& id);

// The schema pattern with metavariables as plain variables.
const Formula& schema_template(const SchemaId& id);

// True for L1-L3, J1-J5 (always usable in derivations).
bool is_il_axiom(const SchemaId& id);

// Builds the schema instance. Throws Error(Precondition) if a metavariable
// is missing or a side condition fails (the message names the slot and the
// required class).
Formula instantiate(const SchemaId& id, const std::map<std::string, Formula>& assignment);

// Structural match of `f` against the schema template, ignoring side
// conditions; nullopt when shapes differ.
std::optional<std::map<std::string, Formula>> match_schema(const SchemaId& id,
                                                           const Formula& f);

// Empty when all side conditions hold for the bindings, else a message.
std::optional<std::string> schema_side_condition_error(
    const SchemaId& id, const std::map<std::string, Formula>& bindings);

// Conjunction of disjunctions of boxed formulas (a single box and a single
// clause count).
bool is_boxed_cnf(const Formula& f);

}  // namespace ilb
