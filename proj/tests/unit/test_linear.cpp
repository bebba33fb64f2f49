// Copyright (c) termi-arith contributors.
// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include "corpus.hpp"
#include "termi/linear.hpp"

using namespace termi;
using termi::testing::arg;
using termi::testing::dom;
using termi::testing::rng;

TEST_SUITE("linear") {
    TEST_CASE("expressions print with positive terms first") {
        CHECK((LinExpr(100L) - arg(1)).to_string() == "100 - arg1");
        CHECK((arg(2) - arg(1)).to_string() == "arg2 - arg1");
        CHECK(LinExpr::var(VarId::dom(3)).to_string() == "V3");
        CHECK(LinExpr::var(VarId::rng(2)).to_string() == "U2");
    }

    TEST_CASE("atoms are canonical") {
        CHECK(LinAtom::gt(arg(1) * Rational(2), LinExpr(4L)) == LinAtom::gt(arg(1), LinExpr(2L)));
        CHECK(LinAtom::eq(arg(1), arg(2)) == LinAtom::eq(arg(2), arg(1)));
        CHECK(LinAtom::gt(arg(1), LinExpr(89L)).to_string() == "arg1 > 89");
        CHECK(LinAtom::le(arg(1), LinExpr(100L)).to_string() == "arg1 =< 100");
    }

    TEST_CASE("satisfiability") {
        CHECK(is_satisfiable(Conjunction{LinAtom::gt(arg(1), LinExpr(0L)), LinAtom::lt(arg(1), LinExpr(5L))}));
        CHECK_FALSE(
            is_satisfiable(Conjunction{LinAtom::gt(arg(1), LinExpr(5L)), LinAtom::lt(arg(1), LinExpr(5L))}));
        CHECK_FALSE(is_satisfiable(Conjunction{LinAtom::gt(arg(1), arg(2)), LinAtom::gt(arg(2), arg(3)),
                                               LinAtom::gt(arg(3), arg(1))}));
        CHECK(is_satisfiable(Conjunction{}));
        CHECK_FALSE(is_satisfiable(Conjunction{LinAtom::falsum()}));
    }

    TEST_CASE("equalities are eliminated") {
        const Conjunction c{LinAtom::eq(arg(2), arg(1) + LinExpr(11L)), LinAtom::le(arg(1), LinExpr(100L)),
                            LinAtom::gt(arg(2), LinExpr(100L))};
        CHECK(implies(c, LinAtom::gt(arg(1), LinExpr(89L))));
        CHECK_FALSE(implies(c, LinAtom::gt(arg(1), LinExpr(90L))));
    }

    TEST_CASE("decrease of arg2 - arg1 across the two-clause pair") {
        const Conjunction c{LinAtom::lt(dom(1), rng(1)), LinAtom::eq(dom(2), rng(2)),
                            LinAtom::gt(dom(1), LinExpr(0L)), LinAtom::gt(rng(1), LinExpr(0L)),
                            LinAtom::lt(dom(1), dom(2)), LinAtom::lt(rng(1), rng(2))};
        CHECK(implies(c, LinAtom::gt(dom(2) - dom(1), rng(2) - rng(1))));
        Conjunction negated = c;
        negated.add(LinAtom::le(dom(2) - dom(1), rng(2) - rng(1)));
        CHECK(check_satisfiable(negated) == Sat::No);
    }

    TEST_CASE("projection") {
        const LinExpr z = LinExpr::var(VarId::tmp(1));
        const Conjunction c{LinAtom::eq(z, arg(1) + LinExpr(11L)), LinAtom::le(arg(1), LinExpr(100L)),
                            LinAtom::gt(z, LinExpr(100L))};
        const Projection p = project(c, {VarId::arg(1)});
        CHECK_FALSE(p.weakened);
        CHECK(equivalent(p.constraint, Conjunction{LinAtom::gt(arg(1), LinExpr(89L)), LinAtom::le(arg(1), LinExpr(100L))}));
        for (const auto& v : p.constraint.vars()) {
            CHECK(v == VarId::arg(1));
        }
    }

    TEST_CASE("redundant atoms are removed") {
        const Conjunction c{LinAtom::gt(arg(1), LinExpr(5L)), LinAtom::gt(arg(1), LinExpr(2L)),
                            LinAtom::lt(arg(1), LinExpr(8L))};
        const Conjunction r = remove_redundant(c);
        CHECK(r.size() == 2);
        CHECK(equivalent(r, c));
        CHECK_FALSE(r.atoms().contains(LinAtom::gt(arg(1), LinExpr(2L))));
    }

    TEST_CASE("atom negation") {
        const auto n = LinAtom::lt(arg(1), LinExpr(2L)).negation();
        REQUIRE(n.size() == 1);
        CHECK(n[0] == LinAtom::ge(arg(1), LinExpr(2L)));
        CHECK(LinAtom::eq(arg(1), LinExpr(0L)).negation().size() == 2);
    }

    TEST_CASE("the atom cap yields unknown") {
        Conjunction c;
        for (std::uint32_t i = 1; i <= 12; ++i) {
            for (std::uint32_t j = 1; j <= 12; ++j) {
                if (i != j) {
                    c.add(LinAtom::le(arg(i) - arg(j), LinExpr(static_cast<long>(i * j))));
                }
            }
        }
        SolverLimits tiny;
        tiny.max_atoms = 20;
        CHECK(check_satisfiable(c, tiny) == Sat::Unknown);
        CHECK(is_satisfiable(c, tiny));
        CHECK_FALSE(implies(c, LinAtom::le(arg(1), LinExpr(1000L)), tiny));
    }
}
