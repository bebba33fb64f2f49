// Copyright (c) termi-arith contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "termi/ast.hpp"

namespace termi {

// Splits each numeric disequality into a `>` clause and a `<` clause, turns a
// numeric equality into a `>=`/`=<` pair, turns a non-numeric one into a
// unification, and names compound comparison operands with fresh is/2 literals.
Program normalize_program(const Program& p);

} // namespace termi
