// Copyright (c) termi-arith contributors.
// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include "json.hpp"

#include "corpus.hpp"
#include "termi/driver.hpp"
#include "termi/parser.hpp"

using namespace termi;
using termi::testing::corpus;
using termi::testing::load_program;
using termi::testing::program_from;

namespace {

Verdict run(const std::string& file, const std::string& query, const AnalysisOptions& o = {}) {
    return analyse_termination(load_program(file), parse_query_pattern(query), o);
}

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

} // namespace

TEST_SUITE("driver") {
    TEST_CASE("corpus verdicts") {
        for (const auto& e : corpus()) {
            const Verdict v = run(e.file, e.query);
            CHECK_MESSAGE((v.answer == Answer::Yes) == e.yes, e.file);
            CHECK(exit_code(v) == (e.yes ? 0 : 1));
        }
    }

    TEST_CASE("json report") {
        const Verdict v = run("mod.pl", "mod(i,i,f)");
        const auto j = nlohmann::json::parse(render_report(v, ReportFormat::Json));
        CHECK(j.at("answer") == "YES");
        CHECK(j.at("method").is_string());
        REQUIRE(j.at("loops").size() == 1);
        const auto& loop = j.at("loops")[0];
        CHECK(loop.at("predicates")[0] == "mod/3");
        CHECK(loop.at("numerical") == true);
        CHECK(loop.at("integer_based") == true);
        CHECK(loop.at("domain").at("mod/3").is_array());
        for (const auto& p : loop.at("pairs")) {
            CHECK(p.at("proof").is_string());
        }
        CHECK(j.at("diagnostics").is_array());
    }

    TEST_CASE("the 91 report shows the partition and the function") {
        const Verdict v = run("mc_carthy_91.pl", "mc_carthy_91(i,f)");
        REQUIRE(v.answer == Answer::Yes);
        const std::string text = render_report(v, ReportFormat::Text);
        CHECK(contains(text, "100 - arg1"));
        REQUIRE(v.loops.size() == 1);
        CHECK(v.loops[0].domain.at({"mc_carthy_91", 2}).elements.size() == 3);
        REQUIRE(v.answers.has_value());
        CHECK(v.answers->find({"mc_carthy_91", 2})->covered().size() == 4);
    }

    TEST_CASE("a failed proof shows a pair") {
        const Verdict v = run("loop.pl", "loop(i)");
        CHECK(v.answer == Answer::No);
        CHECK(contains(render_report(v, ReportFormat::Text), "NO: no termination proof found"));
        const Verdict p = analyse_termination(program_from("w(X) :- X > 0, Y is X + 1, w(Y).\n"),
                                              parse_query_pattern("w(i)"));
        CHECK(p.answer == Answer::No);
        CHECK(contains(render_report(p, ReportFormat::Text), "first unproven circular pair"));
    }

    TEST_CASE("float loops are not integer-based") {
        const Verdict v = run("float_halve.pl", "p(i)");
        CHECK(v.answer == Answer::No);
        REQUIRE(v.loops.size() == 1);
        CHECK_FALSE(v.loops[0].integer_based);
    }

    TEST_CASE("undefined query predicates terminate") {
        const Verdict v = run("mod.pl", "nothing(i)");
        CHECK(v.answer == Answer::Yes);
        CHECK(v.method == "vacuous");
    }

    TEST_CASE("repeated runs agree") {
        const std::string a = render_report(run("gcd.pl", "gcd(i,i,f)"), ReportFormat::Json);
        const std::string b = render_report(run("gcd.pl", "gcd(i,i,f)"), ReportFormat::Json);
        CHECK(a == b);
    }

    TEST_CASE("a tiny pair cap is a resource limit") {
        AnalysisOptions o;
        o.pair_cap = 2;
        const Verdict v = run("mc_carthy_91.pl", "mc_carthy_91(i,f)", o);
        CHECK(v.answer == Answer::No);
        CHECK(v.resource_limited);
        CHECK(exit_code(v) == 3);
    }

    TEST_CASE("91 needs the answer abstraction") {
        AnalysisOptions o;
        o.answer_abstraction = AnswerMode::Off;
        CHECK(run("mc_carthy_91.pl", "mc_carthy_91(i,f)", o).answer == Answer::No);
    }

    TEST_CASE("structural proofs") {
        const Verdict v = run("append.pl", "app(b,b,f)");
        CHECK(v.answer == Answer::Yes);
        CHECK(v.method == "structural");
        REQUIRE(v.loops.size() == 1);
        for (const auto& p : v.loops[0].pairs) {
            CHECK(p.kind == ProofKind::Structural);
        }
    }
}
