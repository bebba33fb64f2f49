// Copyright (c) termi-arith contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "termi/ast.hpp"

namespace termi::testing {

// A step is one successful resolution against a program clause. The query
// atom has depth 1 and each body atom one more than its parent.
struct ExecLimits {
    std::size_t max_steps = 1'000'000;
    std::size_t max_depth = std::numeric_limits<std::size_t>::max();
    std::size_t max_answers = std::numeric_limits<std::size_t>::max();
};

enum class ExecStatus : std::uint8_t { Completed, StepBudget, Error };

struct ExecResult {
    ExecStatus status = ExecStatus::Completed;
    std::size_t steps = 0;
    bool depth_cut = false;
    // Query arguments of each answer, printed.
    std::vector<std::vector<std::string>> answers;
    std::string error;
    // Per call of a user predicate: the arguments as seen at call time.
    std::vector<std::pair<PredKey, std::vector<std::string>>> calls;
};

struct ExecOptions {
    ExecLimits limits;
    bool record_calls = false;
};

// Explores the whole LD-tree of the goal with int64 arithmetic.
ExecResult execute(const Program& program, const UserAtom& goal, const ExecOptions& options = {});

// "42" for an integer, "_" for an unbound variable.
bool is_integer_text(const std::string& s);

} // namespace termi::testing
