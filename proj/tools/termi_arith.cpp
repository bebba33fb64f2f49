// Copyright (c) termi-arith contributors.
// SPDX-License-Identifier: Apache-2.0
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "termi/driver.hpp"
#include "termi/normalize.hpp"
#include "termi/parser.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Termination analysis for logic programs with integer arithmetic"};
    std::string file;
    std::string query_text;
    std::string format = "text";
    std::string answers = "auto";
    termi::AnalysisOptions options;
    app.add_option("program", file, "Program file")->required();
    app.add_option("--query", query_text, "Query pattern, e.g. \"gcd(i,i,f)\"")->required();
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--max-unfold", options.max_unfold, "Unfolding rounds on the escalation ladder");
    app.add_option("--answers", answers, "Answer abstraction")->check(CLI::IsMember({"on", "off", "auto"}));
    app.add_flag("--trace", options.trace, "Print domains, answers and pairs on stderr");
    app.add_option("--pair-cap", options.pair_cap, "Maximum number of query-mapping pairs")
        ->check(CLI::PositiveNumber);
    app.add_option("--timeout", options.timeout_seconds, "Wall-clock limit in seconds")
        ->check(CLI::NonNegativeNumber);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    options.format = format == "json" ? termi::ReportFormat::Json : termi::ReportFormat::Text;
    options.answer_abstraction = answers == "on"    ? termi::AnswerMode::On
                                 : answers == "off" ? termi::AnswerMode::Off
                                                    : termi::AnswerMode::Auto;

    std::ifstream in(file);
    if (!in) {
        std::cerr << "termi-arith: cannot read " << file << "\n";
        return 2;
    }
    std::stringstream buf;
    buf << in.rdbuf();

    termi::Program program;
    termi::QueryPattern query;
    try {
        program = termi::normalize_program(termi::parse_program(buf.str()));
        query = termi::parse_query_pattern(query_text);
    } catch (const termi::ParseError& e) {
        std::cerr << file << ":" << e.line() << ":" << e.column() << ": " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "termi-arith: " << e.what() << "\n";
        return 2;
    }

    try {
        const termi::Verdict v = termi::analyse_termination(program, query, options);
        if (options.trace) {
            for (const auto& line : v.trace) {
                std::cerr << line << "\n";
            }
        }
        for (const auto& d : v.diagnostics) {
            std::cerr << "termi-arith: " << d << "\n";
        }
        std::cout << termi::render_report(v, options.format);
        return termi::exit_code(v);
    } catch (const std::exception& e) {
        std::cerr << "termi-arith: " << e.what() << "\n";
        return 3;
    }
}
