// Copyright (c) termi-arith contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "termi/ast.hpp"

namespace termi {

class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& msg, int line, int column);

    [[nodiscard]] int line() const { return line_; }
    [[nodiscard]] int column() const { return column_; }

  private:
    int line_;
    int column_;
};

Program parse_program(std::string_view source);

// "name(m1,...,mk)" with each mode in {i, b, f}; a bare "name" has arity 0.
QueryPattern parse_query_pattern(std::string_view text);

} // namespace termi
