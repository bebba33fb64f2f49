// Copyright (c) termi-arith contributors.
// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include "corpus.hpp"
#include "termi/unfold.hpp"

using namespace termi;
using termi::testing::load_program;
using termi::testing::program_from;

TEST_SUITE("unfold") {
    TEST_CASE("unification") {
        Subst s;
        const Term x = Term::var("X");
        const Term fy = Term::compound("f", {Term::var("Y")});
        CHECK(unify(x, fy, s));
        CHECK(apply_subst(x, s) == fy);
        Subst occurs;
        CHECK_FALSE(unify(x, Term::compound("f", {x}), occurs));
        Subst clash;
        CHECK_FALSE(unify(Term::atom("a"), Term::atom("b"), clash));
        Subst ints;
        CHECK(unify(Term::integer(3), Term::integer(3), ints));
        CHECK_FALSE(unify(Term::integer(3), Term::integer(4), ints));
    }

    TEST_CASE("91 unfolds into three clauses") {
        const Program p = load_program("mc_carthy_91.pl");
        const Program u = unfold_loops(p, {{{"mc_carthy_91", 2}}}, 1);
        CHECK(u.size() == 3);
        CHECK(u.clause(0) == p.clause(0));
        for (std::size_t i = 1; i < u.size(); ++i) {
            CHECK(u.clause(i).head.key() == PredKey{"mc_carthy_91", 2});
        }
        CHECK(resolvents(p, 1, 2).size() == 2);
    }

    TEST_CASE("unfolding a builtin is an error") {
        const Program p = load_program("mc_carthy_91.pl");
        CHECK_THROWS_AS((void)unfold_once(p, 1, 0), UnfoldError);
    }

    TEST_CASE("failing resolvents disappear") {
        const Program p = program_from("a(X) :- b(X).\nb(1).\nb(2).\nc :- b(3).\n");
        CHECK(resolvents(p, 0, 0).size() == 2);
        CHECK(resolvents(p, 3, 0).empty());
        const Program u = unfold_once(p, 3, 0);
        CHECK(u.size() == 3);
    }

    TEST_CASE("zero times is the identity") {
        const Program p = load_program("mod.pl");
        CHECK(unfold_loops(p, {{{"mod", 3}}}, 0) == p);
    }
}
