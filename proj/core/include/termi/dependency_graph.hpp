// Copyright (c) termi-arith contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "termi/ast.hpp"
#include "termi/modes.hpp"

namespace termi {

struct PredGraph {
    std::set<PredKey> nodes;
    std::set<std::pair<PredKey, PredKey>> arcs;

    [[nodiscard]] std::vector<PredKey> callees(const PredKey& p) const;
};

PredGraph build_dependency_graph(const Program& program);

// Components in reverse topological order: callees before callers.
std::vector<std::vector<PredKey>> strongly_connected_components(const PredGraph& g);

std::set<PredKey> reachable_from(const PredGraph& g, const PredKey& start);

// Whether a component carries a cycle (more than one node, or a self arc).
bool is_recursive_component(const PredGraph& g, const std::vector<PredKey>& scc);

struct LoopInfo {
    std::vector<PredKey> scc;
    std::vector<std::size_t> clauses_S;
    std::vector<std::size_t> support_S1;
    std::vector<std::size_t> recursive_clauses;
    std::vector<std::size_t> nonrecursive_clauses;
    bool is_numerical = false;
    bool is_integer_based = false;
    std::vector<std::string> diagnostics;

    [[nodiscard]] bool contains(const PredKey& p) const;
    [[nodiscard]] std::string name() const;
};

// Clause sets and the numerical flag of one component; no diagnostics.
LoopInfo describe_loop(const Program& program, const PredGraph& g, const std::vector<PredKey>& scc);

// One entry per recursive component reachable from the query, callees first.
std::vector<LoopInfo> find_integer_loops(const Program& program, const QueryPattern& query);
std::vector<LoopInfo> find_integer_loops(const Program& program, const QueryPattern& query, const ModeAnalysis& modes);

} // namespace termi
