// Copyright (c) termi-arith contributors.
// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include "corpus.hpp"
#include "termi/modes.hpp"
#include "termi/parser.hpp"

using namespace termi;
using termi::testing::load_program;
using termi::testing::program_from;

namespace {

constexpr ArgMode I = ArgMode::I;
constexpr ArgMode B = ArgMode::B;
constexpr ArgMode F = ArgMode::F;

} // namespace

TEST_SUITE("modes") {
    TEST_CASE("lattice") {
        CHECK(mode_leq(I, B));
        CHECK(mode_leq(B, F));
        CHECK(mode_meet(B, I) == I);
        CHECK(mode_join(I, F) == F);
        CHECK(modes_to_string({I, B, F}) == "(i,b,f)");
    }

    TEST_CASE("both 91 arguments are integers") {
        const ModeAnalysis m = infer_argument_modes(load_program("mc_carthy_91.pl"),
                                                    parse_query_pattern("mc_carthy_91(i,f)"));
        const PredKey mc{"mc_carthy_91", 2};
        CHECK(m.call_modes.at(mc) == std::vector<ArgMode>{I, F});
        CHECK(m.success_modes.at(mc) == std::vector<ArgMode>{I, I});
        CHECK(m.assignment.modes.at(mc) == std::vector<ArgMode>{I, I});
        CHECK(m.assignment.integer_positions(mc) == std::vector<std::size_t>{1, 2});
        CHECK(m.operand_issues.empty());
    }

    TEST_CASE("gcd and mod") {
        const ModeAnalysis m = infer_argument_modes(load_program("gcd.pl"), parse_query_pattern("gcd(i,i,f)"));
        CHECK(m.assignment.modes.at({"mod", 3}) == std::vector<ArgMode>{I, I, I});
        CHECK(m.assignment.modes.at({"gcd", 3}) == std::vector<ArgMode>{I, I, I});
    }

    TEST_CASE("structural and integer positions mix") {
        const ModeAnalysis m = infer_argument_modes(load_program("q3.pl"), parse_query_pattern("q(b,b,i)"));
        const PredKey q{"q", 3};
        CHECK(m.assignment.modes.at(q) == std::vector<ArgMode>{B, B, I});
        CHECK(m.call_modes.at(q) == std::vector<ArgMode>{B, F, I});
    }

    TEST_CASE("unknown positions default to f") {
        ModeAssignment a;
        CHECK(a.at({"nope", 2}, 1) == F);
        CHECK(a.integer_positions({"nope", 2}).empty());
    }

    TEST_CASE("term modes") {
        ModeEnv env{{"X", I}, {"L", B}};
        CHECK(term_mode(Term::var("X"), env) == I);
        CHECK(term_mode(Term::integer(3), env) == I);
        CHECK(term_mode(Term::var("Y"), env) == F);
        CHECK(term_mode(Term::compound("s", {Term::var("L")}), env) == B);
        CHECK(term_mode(Term::compound("s", {Term::var("Y")}), env) == F);
    }

    TEST_CASE("head binding rejects an integer call on a structure") {
        const Program p = program_from("s(f(X)) :- true.\n");
        ModeEnv env;
        CHECK_FALSE(bind_head(p.clause(0).head, {I}, env));
        ModeEnv env2;
        CHECK(bind_head(p.clause(0).head, {B}, env2));
    }

    TEST_CASE("arithmetic on a possibly non-integer operand is reported") {
        const ModeAnalysis m = infer_argument_modes(load_program("float_halve.pl"), parse_query_pattern("p(i)"));
        CHECK_FALSE(m.operand_issues.empty());
    }
}
