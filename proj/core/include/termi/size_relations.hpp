// Copyright (c) termi-arith contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "termi/ast.hpp"
#include "termi/clause_constraints.hpp"
#include "termi/modes.hpp"

namespace termi {

// Term-size norm: a compound counts 1 plus its arguments, constants 0, and a
// variable X contributes the non-negative unknown |X|.
LinExpr term_norm(const Term& t, ClauseVars& vars);
// Non-negativity of the norm variables of the given clause variables.
Conjunction norm_nonnegative(const std::set<std::string>& names, ClauseVars& vars);
std::string norm_name(const std::string& var);

// |arg_i| > |arg_j| (strict) or |arg_i| >= |arg_j| on every answer.
struct SizeRelation {
    std::size_t lhs = 0;
    std::size_t rhs = 0;
    bool strict = false;

    friend auto operator<=>(const SizeRelation&, const SizeRelation&) = default;
    [[nodiscard]] std::string str() const;
};

struct SizeRelations {
    std::map<PredKey, std::vector<SizeRelation>> rels;

    // The relations of the atom's predicate over the norms of its arguments.
    [[nodiscard]] Conjunction instantiate(const UserAtom& atom, ClauseVars& vars) const;
    [[nodiscard]] const std::vector<SizeRelation>& of(const PredKey& p) const;
};

// Largest set of candidate relations over the b positions that is closed
// under the clauses of the given predicates.
SizeRelations infer_size_relations(const Program& program, const ModeAssignment& modes,
                                   const std::set<PredKey>& preds, const SolverLimits& limits = {});

} // namespace termi
