// Copyright (c) termi-arith contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "termi/ast.hpp"
#include "termi/clause_constraints.hpp"
#include "termi/dependency_graph.hpp"
#include "termi/domain.hpp"
#include "termi/modes.hpp"

namespace termi {

struct AnswerEntry {
    // Over arg variables of the predicate's integer positions.
    Conjunction constraint;
    // Non-recursive clause answers are kept unwidened.
    bool precise = false;
    std::vector<std::size_t> elements;
};

struct PredAnswers {
    std::vector<std::size_t> positions;
    PredDomain domain;
    std::vector<AnswerEntry> entries;

    // Domain elements covered by some entry, in domain order.
    [[nodiscard]] std::vector<std::size_t> covered() const;
};

struct AnswerTable {
    std::map<PredKey, PredAnswers> preds;
    bool truncated = false;

    [[nodiscard]] const PredAnswers* find(const PredKey& p) const;
    // One line per covered element: "pred_w(arg1, arg2) :- {...}".
    [[nodiscard]] std::string dump() const;
};

struct AnswerOptions {
    SolverLimits solver;
    std::size_t derivation_cap = 200000;
};

// C~: comparisons of recursive and non-recursive clauses alike.
ComparisonSet tilde_comparisons(const Program& program, const LoopInfo& loop, const ModeAssignment& modes,
                                bool inferred, const SolverLimits& limits = {});

Domain build_d_tilde(const Program& program, const LoopInfo& loop, const ModeAssignment& modes, bool inferred,
                     const DomainLimits& limits = {});

// Single-variable comparisons of the non-recursive clauses of the loop; inferred
// when the heads are not distinct variables.
std::vector<LinAtom> nonrecursive_bounds(const Program& program, const LoopInfo& loop, const ModeAssignment& modes,
                                         const PredKey& p, const SolverLimits& limits = {});

// The entry constraint over the atom's arguments, linked through fresh variables.
Conjunction instantiate_entry(const Conjunction& entry, const UserAtom& atom, ClauseVars& vars);

// Bottom-up fixpoint over every predicate in `preds`, callees first. Predicates
// without a domain get the single element `true`.
AnswerTable compute_abstract_answers(const Program& program, const std::set<PredKey>& preds,
                                     const ModeAssignment& modes, const std::map<PredKey, PredDomain>& domains,
                                     const AnswerOptions& options = {});

} // namespace termi
