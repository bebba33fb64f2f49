// Copyright (c) termi-arith contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "termi/abstract_interp.hpp"
#include "termi/ast.hpp"
#include "termi/domain.hpp"
#include "termi/modes.hpp"
#include "termi/size_relations.hpp"

namespace termi {

// Nodes are Dom(k) for the domain row and Rng(k) for the range row.
struct Relations {
    // Undirected, stored with first < second.
    std::set<std::pair<VarId, VarId>> edges;
    // first > second
    std::set<std::pair<VarId, VarId>> arcs;

    void add_edge(VarId a, VarId b);
    void add_arc(VarId greater, VarId smaller) { arcs.emplace(greater, smaller); }
    [[nodiscard]] bool empty() const { return edges.empty() && arcs.empty(); }
    [[nodiscard]] Conjunction as_constraint() const;

    friend bool operator==(const Relations&, const Relations&) = default;
    friend bool operator<(const Relations& a, const Relations& b) {
        return std::tie(a.edges, a.arcs) < std::tie(b.edges, b.arcs);
    }
};

struct AbstractAtom {
    PredKey pred;
    std::vector<ArgMode> modes;
    std::size_t element = 0;
    // The element itself, over arg variables; determined by the fields above.
    Conjunction constraint;

    [[nodiscard]] std::string str() const;
    friend bool operator==(const AbstractAtom& a, const AbstractAtom& b) {
        return a.pred == b.pred && a.modes == b.modes && a.element == b.element;
    }
    friend bool operator<(const AbstractAtom& a, const AbstractAtom& b) {
        return std::tie(a.pred, a.modes, a.element) < std::tie(b.pred, b.modes, b.element);
    }
};

struct QueryMappingPair {
    AbstractAtom query;
    AbstractAtom range;
    std::vector<ArgMode> domain_modes;
    Relations numeric;
    Relations structural;
    Conjunction domain_constraint; // over Dom variables
    Conjunction range_constraint;  // over Rng variables

    // Not part of the identity of a pair.
    std::vector<std::size_t> clauses;
    std::vector<LinAtom> hints; // guards of the first clause, over Dom variables

    [[nodiscard]] bool same_as(const QueryMappingPair& o) const;
    friend bool operator<(const QueryMappingPair& a, const QueryMappingPair& b);
};

// Pair domains per predicate and set of integer positions, built from a pool
// of comparison atoms; predicates without atoms get the single element `true`.
class PairDomains {
  public:
    PairDomains() = default;
    PairDomains(std::map<PredKey, std::vector<LinAtom>> atoms, DomainLimits limits);

    const PredDomain& domain(const PredKey& p, const std::vector<std::size_t>& positions);
    // Atoms implied by a row projection that may be kept in a row constraint.
    std::vector<LinAtom> pool(const PredKey& p, const std::vector<std::size_t>& positions);

  private:
    std::map<PredKey, std::vector<LinAtom>> atoms_;
    DomainLimits limits_;
    std::map<std::pair<PredKey, std::vector<std::size_t>>, PredDomain> cache_;
    std::map<std::pair<PredKey, std::vector<std::size_t>>, std::vector<LinAtom>> pools_;
};

std::vector<std::size_t> int_positions(const std::vector<ArgMode>& modes);

struct PairOptions {
    bool numeric = true;
    std::size_t pair_cap = 20000;
    std::size_t branch_cap = 512;
    SolverLimits solver;
};

struct PairSet {
    std::vector<QueryMappingPair> pairs;
    bool capped = false;
    std::vector<std::string> diagnostics;
};

// `answers` may be null: preceding subgoals then contribute no numeric facts.
PairSet generate_pairs(const Program& program, const QueryPattern& query, const ModeAnalysis& modes,
                       PairDomains& domains, const AnswerTable* answers, const SizeRelations& sizes,
                       const PairOptions& options = {});

// nullopt when the rows do not match or the composition is infeasible.
std::optional<QueryMappingPair> compose(const QueryMappingPair& a, const QueryMappingPair& b, PairDomains& domains,
                                        const PairOptions& options = {});

PairSet compose_until_fixpoint(const PairSet& basic, PairDomains& domains, const PairOptions& options = {});

bool is_circular(const QueryMappingPair& p);
bool check_forward_positive_cycle(const QueryMappingPair& p);

struct TerminationFunction {
    LinExpr expr; // over arg variables
    Rational lower_bound;
    bool strict = false;

    [[nodiscard]] std::string str() const;
    friend bool operator==(const TerminationFunction&, const TerminationFunction&) = default;
};

std::vector<TerminationFunction> guess_termination_functions(const QueryMappingPair& p, std::size_t cap = 16,
                                                             const SolverLimits& limits = {});
bool verify_decrease(const QueryMappingPair& p, const TerminationFunction& f, const SolverLimits& limits = {});

// Multi-line text form of a pair.
std::string render_pair(const QueryMappingPair& p);

// Transitive closure of edges and arcs; false when some node exceeds itself.
bool close_relations(Relations& r);

} // namespace termi
