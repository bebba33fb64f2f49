// Copyright (c) termi-arith contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "termi/ast.hpp"
#include "termi/dependency_graph.hpp"
#include "termi/linear.hpp"
#include "termi/modes.hpp"

namespace termi {

// Comparison atoms over arg variables, per predicate, in discovery order.
struct ComparisonSet {
    std::map<PredKey, std::vector<LinAtom>> atoms;
    bool weakened = false;

    void add(const PredKey& p, const LinAtom& a);
    void touch(const PredKey& p) { atoms.try_emplace(p); }
    [[nodiscard]] const std::vector<LinAtom>& of(const PredKey& p) const;
    [[nodiscard]] std::size_t size() const;
};

struct PredDomain {
    std::vector<LinAtom> atoms;
    std::vector<Conjunction> elements;
};

struct Domain {
    std::map<PredKey, PredDomain> preds;

    [[nodiscard]] const PredDomain* find(const PredKey& p) const;
    // One element per line: "pred/arity: {...}".
    [[nodiscard]] std::string dump() const;
};

struct DomainLimits {
    std::size_t comparison_cap = 12;
    std::size_t component_cap = 4;
    SolverLimits solver;
};

class DomainTooLarge : public std::runtime_error {
  public:
    DomainTooLarge(const PredKey& p, std::size_t n);
};

enum class ClauseScope : std::uint8_t { Recursive, All };

// nullopt when some head integer position in S is not a distinct variable.
std::optional<ComparisonSet> collect_comparisons(const Program& program, const LoopInfo& loop,
                                                 const ModeAssignment& modes,
                                                 ClauseScope scope = ClauseScope::Recursive);

ComparisonSet infer_comparisons(const Program& program, const LoopInfo& loop, const ModeAssignment& modes,
                                ClauseScope scope = ClauseScope::Recursive, const SolverLimits& limits = {});

// Satisfiable sign assignments over the atoms; throws DomainTooLarge above the cap.
PredDomain build_pred_domain(const PredKey& p, const std::vector<LinAtom>& atoms, const DomainLimits& limits = {});
Domain build_domain(const ComparisonSet& c, const DomainLimits& limits = {});

// Influence components over the integer positions of p, each sorted.
std::vector<std::vector<std::size_t>> influence_components(const Program& program, const LoopInfo& loop,
                                                           const ModeAssignment& modes, const PredKey& p);

// Whether some integer position is unconstrained by the domain but influenced by one that is.
bool needs_propagation(const Program& program, const LoopInfo& loop, const ModeAssignment& modes,
                       const PredKey& p, const PredDomain& d);

struct ExtendResult {
    Domain domain;
    std::vector<std::string> diagnostics;
};

ExtendResult extend_domain(const Domain& d, const Program& program, const LoopInfo& loop,
                           const ModeAssignment& modes, const DomainLimits& limits = {});

// Elements of the domain whose conjunction with c is satisfiable.
std::vector<Conjunction> widen(const Conjunction& c, const PredDomain& d, const SolverLimits& limits = {});
std::vector<std::size_t> widen_indices(const Conjunction& c, const PredDomain& d, const SolverLimits& limits = {});

// Refines every element by each atom and its negation; unsatisfiable pieces are dropped.
PredDomain refine(const PredDomain& d, const std::vector<LinAtom>& atoms, const SolverLimits& limits = {});

// Atoms of the form x rel c or x rel y, equalities split into two bounds.
bool simple_shape(const LinAtom& a);

// Positions of arg variables in an atom set.
std::set<std::size_t> mentioned_positions(const std::vector<LinAtom>& atoms);

// Domain over the atoms that mention only the given positions.
PredDomain restrict_domain(const PredKey& p, const std::vector<LinAtom>& atoms, const std::vector<std::size_t>& positions,
                           const DomainLimits& limits = {});

} // namespace termi
