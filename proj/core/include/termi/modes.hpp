// Copyright (c) termi-arith contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "termi/ast.hpp"

namespace termi {

struct ModeAssignment {
    std::map<PredKey, std::vector<ArgMode>> modes;

    // 1-based position; unknown predicates and positions are f.
    [[nodiscard]] ArgMode at(const PredKey& p, std::size_t pos) const;
    // 1-based positions whose mode is i.
    [[nodiscard]] std::vector<std::size_t> integer_positions(const PredKey& p) const;
};

// An arithmetic operand that is not known to be an integer at that point.
struct OperandIssue {
    std::size_t clause = 0;
    std::size_t literal = 0;
    std::string var;
    ArgMode mode = ArgMode::F;
};

struct ModeOptions {
    // Only predicates reachable from clauses with guessed numeric positions are
    // checked for arithmetic operand issues.
    bool guess_restrict = true;
};

struct ModeAnalysis {
    ModeAssignment assignment;
    std::map<PredKey, std::vector<ArgMode>> call_modes;
    std::map<PredKey, std::vector<ArgMode>> success_modes;
    std::set<std::size_t> reachable_clauses;
    std::vector<OperandIssue> operand_issues;
    std::set<std::pair<PredKey, std::size_t>> guessed;
    std::set<PredKey> relevant;
    std::vector<std::string> diagnostics;
};

ModeAnalysis infer_argument_modes(const Program& program, const QueryPattern& query, const ModeOptions& options = {});

// Left-to-right mode environment over clause variables; absent means f.
using ModeEnv = std::map<std::string, ArgMode>;

ArgMode term_mode(const Term& t, const ModeEnv& env);
std::vector<ArgMode> call_modes_of(const UserAtom& a, const ModeEnv& env);
// False when the head cannot match a call with these modes.
bool bind_head(const UserAtom& head, const std::vector<ArgMode>& modes, ModeEnv& env);
// False when the atom cannot succeed with these success modes.
bool apply_success(const UserAtom& a, const std::vector<ArgMode>& success, ModeEnv& env);
void apply_builtin(const Literal& lit, ModeEnv& env);

} // namespace termi
