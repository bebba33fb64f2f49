// Copyright (c) termi-arith contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "termi/ast.hpp"
#include "termi/linear.hpp"

namespace termi {

// Maps clause variable names to solver variables in the Tmp space.
class ClauseVars {
  public:
    explicit ClauseVars(std::uint32_t first = 1) : next_(first) {}

    VarId id(const std::string& name);
    VarId fresh() { return VarId::tmp(next_++); }
    [[nodiscard]] std::optional<VarId> find(const std::string& name) const;

  private:
    std::map<std::string, VarId> ids_;
    std::uint32_t next_;
};

// Linear integer arithmetic over + - * by constants; anything else is nullopt.
std::optional<LinExpr> linearize(const Term& t, ClauseVars& vars);

// is/2 as an equality, comparisons verbatim; nullopt for user atoms,
// unifications and non-linear arithmetic.
std::optional<LinAtom> literal_constraint(const Literal& lit, ClauseVars& vars);

// arg_k = head argument k for each given 1-based position that linearizes.
Conjunction head_bindings(const UserAtom& head, const std::vector<std::size_t>& positions, ClauseVars& vars);

// Constraint of a clause over its head integer positions and body builtins.
Conjunction clause_constraint(const Clause& c, const std::vector<std::size_t>& positions, ClauseVars& vars);

std::set<VarId> arg_vars(const std::vector<std::size_t>& positions);

} // namespace termi
