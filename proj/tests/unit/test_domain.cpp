// Copyright (c) termi-arith contributors.
// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include "corpus.hpp"
#include "termi/domain.hpp"
#include "termi/parser.hpp"

using namespace termi;
using termi::testing::arg;
using termi::testing::load_program;

namespace {

struct Loaded {
    Program program;
    ModeAnalysis modes;
    std::vector<LoopInfo> loops;
};

Loaded load(const std::string& file, const std::string& query) {
    Loaded l;
    l.program = load_program(file);
    const QueryPattern q = parse_query_pattern(query);
    l.modes = infer_argument_modes(l.program, q);
    l.loops = find_integer_loops(l.program, q, l.modes);
    return l;
}

bool has_element(const PredDomain& d, const Conjunction& c) {
    for (const auto& e : d.elements) {
        if (equivalent(e, c)) {
            return true;
        }
    }
    return false;
}

} // namespace

TEST_SUITE("domain") {
    TEST_CASE("t/1 collects three atoms and four elements") {
        const Loaded l = load("t.pl", "t(i)");
        REQUIRE(l.loops.size() == 1);
        const auto c = collect_comparisons(l.program, l.loops[0], l.modes.assignment);
        REQUIRE(c.has_value());
        const PredKey t{"t", 1};
        CHECK(c->of(t).size() == 3);
        const Domain d = build_domain(*c);
        const PredDomain& pd = *d.find(t);
        CHECK(pd.elements.size() == 4);
        CHECK(has_element(pd, Conjunction{LinAtom::gt(arg(1), 5), LinAtom::lt(arg(1), 8)}));
        CHECK(has_element(pd, Conjunction{LinAtom::ge(arg(1), 8)}));
        CHECK(has_element(pd, Conjunction{LinAtom::lt(arg(1), 2)}));
        CHECK(has_element(pd, Conjunction{LinAtom::ge(arg(1), 2), LinAtom::le(arg(1), 5)}));
    }

    TEST_CASE("elements are pairwise disjoint") {
        const Loaded l = load("mod.pl", "mod(i,i,f)");
        const auto c = collect_comparisons(l.program, l.loops[0], l.modes.assignment);
        REQUIRE(c.has_value());
        const Domain d = build_domain(*c);
        const PredDomain& pd = *d.find({"mod", 3});
        CHECK(pd.atoms.size() == 2);
        CHECK(pd.elements.size() == 4);
        for (std::size_t i = 0; i < pd.elements.size(); ++i) {
            for (std::size_t j = i + 1; j < pd.elements.size(); ++j) {
                CHECK_FALSE(is_satisfiable(pd.elements[i].conjoin(pd.elements[j])));
            }
        }
    }

    TEST_CASE("collection needs distinct head variables") {
        const Loaded l = load("gcd.pl", "gcd(i,i,f)");
        REQUIRE(l.loops.size() == 2);
        CHECK(collect_comparisons(l.program, l.loops[0], l.modes.assignment).has_value());
        CHECK_FALSE(collect_comparisons(l.program, l.loops[1], l.modes.assignment).has_value());
        const ComparisonSet inferred = infer_comparisons(l.program, l.loops[1], l.modes.assignment);
        CHECK_FALSE(inferred.of({"gcd", 3}).empty());
    }

    TEST_CASE("the mod extension has 44 elements") {
        const Loaded l = load("mod.pl", "mod(i,i,f)");
        const auto c = collect_comparisons(l.program, l.loops[0], l.modes.assignment);
        REQUIRE(c.has_value());
        const Domain d = build_domain(*c);
        const PredKey mod{"mod", 3};
        CHECK(needs_propagation(l.program, l.loops[0], l.modes.assignment, mod, *d.find(mod)));
        const ExtendResult ed = extend_domain(d, l.program, l.loops[0], l.modes.assignment);
        CHECK(ed.domain.find(mod)->elements.size() == 44);
        const auto comps = influence_components(l.program, l.loops[0], l.modes.assignment, mod);
        REQUIRE(comps.size() == 1);
        CHECK(comps[0] == std::vector<std::size_t>{1, 2, 3});
    }

    TEST_CASE("widen picks the overlapping elements") {
        PredDomain d = build_pred_domain({"p", 1}, {LinAtom::gt(arg(1), 100), LinAtom::gt(arg(1), 89)});
        CHECK(d.elements.size() == 3);
        const auto w = widen(Conjunction{LinAtom::gt(arg(1), 95)}, d);
        CHECK(w.size() == 2);
        CHECK(widen(Conjunction{LinAtom::lt(arg(1), 0)}, d).size() == 1);
        CHECK(widen(Conjunction{LinAtom::falsum()}, d).empty());
    }

    TEST_CASE("refine splits elements") {
        const PredDomain d = build_pred_domain({"p", 1}, {LinAtom::gt(arg(1), 0)});
        const PredDomain r = refine(d, {LinAtom::gt(arg(1), 10)});
        CHECK(r.elements.size() == 3);
        CHECK(refine(d, {}).elements.size() == 2);
    }

    TEST_CASE("restrict keeps atoms over the positions") {
        const std::vector<LinAtom> atoms{LinAtom::gt(arg(1), 0), LinAtom::lt(arg(1), arg(2)), LinAtom::gt(arg(3), 4)};
        const PredDomain d = restrict_domain({"p", 3}, atoms, {1, 3});
        CHECK(d.atoms.size() == 2);
        CHECK(d.elements.size() == 4);
        CHECK(mentioned_positions(atoms) == std::set<std::size_t>{1, 2, 3});
    }

    TEST_CASE("simple shapes") {
        CHECK(simple_shape(LinAtom::gt(arg(1), 3)));
        CHECK(simple_shape(LinAtom::le(arg(1), arg(2))));
        CHECK_FALSE(simple_shape(LinAtom::le(arg(1) + arg(2), 3)));
    }

    TEST_CASE("too many comparisons") {
        std::vector<LinAtom> atoms;
        for (long k = 0; k < 13; ++k) {
            atoms.push_back(LinAtom::gt(arg(1), k));
        }
        CHECK_THROWS_AS(build_pred_domain({"p", 1}, atoms), DomainTooLarge);
    }
}
