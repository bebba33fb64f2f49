// Copyright (c) termi-arith contributors.
// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include <random>

#include "corpus.hpp"
#include "meta_interp.hpp"
#include "termi/abstract_interp.hpp"
#include "termi/domain.hpp"
#include "termi/parser.hpp"

using namespace termi;
using termi::testing::arg;

namespace {

struct RandomConj {
    std::vector<std::vector<long>> coeffs;
    std::vector<long> constants;
    std::vector<Rel> rels;
};

RandomConj random_conj(std::mt19937_64& rng, std::size_t nvars) {
    std::uniform_int_distribution<long> coeff(-5, 5);
    std::uniform_int_distribution<long> constant(-10, 10);
    std::uniform_int_distribution<int> rel(0, 2);
    std::uniform_int_distribution<std::size_t> count(1, 3);
    RandomConj r;
    for (std::size_t i = count(rng); i > 0; --i) {
        std::vector<long> row;
        for (std::size_t v = 0; v < nvars; ++v) {
            row.push_back(coeff(rng));
        }
        r.coeffs.push_back(row);
        r.constants.push_back(constant(rng));
        r.rels.push_back(static_cast<Rel>(rel(rng)));
    }
    return r;
}

Conjunction to_conj(const RandomConj& r) {
    Conjunction c;
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) {
        LinExpr e(r.constants[i]);
        for (std::size_t v = 0; v < r.coeffs[i].size(); ++v) {
            e += LinExpr::var(VarId::arg(static_cast<std::uint32_t>(v + 1)), r.coeffs[i][v]);
        }
        c.add(LinAtom(e, r.rels[i]));
    }
    return c;
}

bool holds(const Conjunction& c, const std::vector<long>& point) {
    for (const auto& a : c.atoms()) {
        Rational v = a.expr().constant();
        for (const auto& [id, k] : a.expr().coeffs()) {
            v += k * point.at(id.index - 1);
        }
        if ((a.rel() == Rel::Lt && !(v < 0)) || (a.rel() == Rel::Le && !(v <= 0)) || (a.rel() == Rel::Eq && v != 0)) {
            return false;
        }
    }
    return true;
}

template <typename F> void grid(std::size_t nvars, long lo, long hi, F&& f) {
    std::vector<long> p(nvars, lo);
    for (;;) {
        f(p);
        std::size_t k = 0;
        while (k < nvars && p[k] == hi) {
            p[k++] = lo;
        }
        if (k == nvars) {
            return;
        }
        ++p[k];
    }
}

} // namespace

TEST_SUITE("properties") {
    TEST_CASE("projection keeps every grid solution") {
        std::mt19937_64 rng(7);
        for (int n = 0; n < 60; ++n) {
            const Conjunction c = to_conj(random_conj(rng, 2));
            const Conjunction p = project(c, {VarId::arg(1)}).constraint;
            grid(2, -15, 15, [&](const std::vector<long>& pt) {
                if (holds(c, pt)) {
                    CHECK(holds(p, {pt[0]}));
                }
            });
        }
    }

    TEST_CASE("redundancy removal preserves solutions") {
        std::mt19937_64 rng(11);
        for (int n = 0; n < 60; ++n) {
            const Conjunction c = to_conj(random_conj(rng, 2));
            const Conjunction r = remove_redundant(c);
            CHECK(r.size() <= c.size());
            grid(2, -12, 12, [&](const std::vector<long>& pt) { CHECK(holds(c, pt) == holds(r, pt)); });
        }
    }

    TEST_CASE("widen output is disjoint and intersects the input") {
        std::mt19937_64 rng(3);
        const PredDomain d = build_pred_domain(
            {"p", 2}, {LinAtom::gt(arg(1), 0), LinAtom::lt(arg(1), arg(2)), LinAtom::ge(arg(2), 5)});
        for (int n = 0; n < 40; ++n) {
            const Conjunction c = to_conj(random_conj(rng, 2));
            const auto w = widen(c, d);
            for (std::size_t i = 0; i < w.size(); ++i) {
                CHECK(is_satisfiable(w[i].conjoin(c)));
                for (std::size_t j = i + 1; j < w.size(); ++j) {
                    CHECK_FALSE(is_satisfiable(w[i].conjoin(w[j])));
                }
            }
        }
    }

    TEST_CASE("integer modes hold on concrete calls") {
        for (const auto& e : termi::testing::corpus()) {
            const Program p = termi::testing::load_program(e.file);
            const QueryPattern q = parse_query_pattern(e.query);
            if (!p.defines(q.pred) || q.modes != std::vector<ArgMode>(q.modes.size(), ArgMode::I)) {
                continue;
            }
            const ModeAnalysis m = infer_argument_modes(p, q);
            std::mt19937_64 rng(19);
            std::uniform_int_distribution<long> value(-30, 30);
            for (int n = 0; n < 20; ++n) {
                UserAtom goal{q.pred.name, {}};
                for (std::size_t k = 0; k < q.modes.size(); ++k) {
                    goal.args.push_back(Term::integer(value(rng)));
                }
                termi::testing::ExecOptions o;
                o.record_calls = true;
                o.limits.max_steps = 20000;
                const auto r = termi::testing::execute(p, goal, o);
                for (const auto& [pred, args] : r.calls) {
                    for (std::size_t k : m.assignment.integer_positions(pred)) {
                        CHECK_MESSAGE(termi::testing::is_integer_text(args.at(k - 1)), e.file);
                    }
                }
            }
        }
    }

    TEST_CASE("91 answers are covered by the table") {
        const Program p = termi::testing::load_program("mc_carthy_91.pl");
        const QueryPattern q = parse_query_pattern("mc_carthy_91(i,f)");
        const ModeAnalysis m = infer_argument_modes(p, q);
        const LoopInfo loop = find_integer_loops(p, q, m).at(0);
        const Domain dt = build_d_tilde(p, loop, m.assignment, false);
        const AnswerTable t = compute_abstract_answers(p, {{"mc_carthy_91", 2}}, m.assignment, dt.preds);
        const PredAnswers* pa = t.find({"mc_carthy_91", 2});
        REQUIRE(pa != nullptr);
        for (long x = -5; x <= 150; x += 5) {
            termi::testing::ExecOptions o;
            o.limits.max_depth = 12;
            const auto r = termi::testing::execute(p, {"mc_carthy_91", {Term::integer(x), Term::var("Y")}}, o);
            for (const auto& ans : r.answers) {
                bool covered = false;
                for (const auto& e : pa->entries) {
                    Conjunction c = e.constraint;
                    c.add(LinAtom::eq(arg(1), x));
                    c.add(LinAtom::eq(arg(2), std::stol(ans[1])));
                    covered = covered || is_satisfiable(c);
                }
                CHECK_MESSAGE(covered, x);
            }
        }
    }
}
