// Copyright (c) termi-arith contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "termi/ast.hpp"
#include "termi/dependency_graph.hpp"

namespace termi {

using Subst = std::map<std::string, Term>;

Term apply_subst(const Term& t, const Subst& s);
Literal apply_subst(const Literal& l, const Subst& s);
// Extends s to a most general unifier, with occurs check.
bool unify(const Term& a, const Term& b, Subst& s);

class UnfoldError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Resolvents of the clause on the selected body atom, in program clause order.
std::vector<Clause> resolvents(const Program& program, std::size_t clause, std::size_t literal);

// Replaces the clause by its resolvents; throws UnfoldError for built-ins.
Program unfold_once(const Program& program, std::size_t clause, std::size_t literal);

// Unfolds the first recursive body atom of every recursive clause of the
// given loops, repeated `times` times.
Program unfold_loops(const Program& program, const std::vector<std::vector<PredKey>>& loops, std::size_t times);

} // namespace termi
