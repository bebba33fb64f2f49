// Copyright (c) termi-arith contributors.
// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "termi/driver.hpp"
#include "termi/normalize.hpp"
#include "termi/parser.hpp"

namespace {

using namespace termi;

Program load(const std::string& file) {
    std::ifstream in(std::string(TERMI_CORPUS_DIR) + "/" + file);
    std::stringstream ss;
    ss << in.rdbuf();
    return normalize_program(parse_program(ss.str()));
}

void analyse(benchmark::State& state, const std::string& file, const std::string& query) {
    const Program p = load(file);
    const QueryPattern q = parse_query_pattern(query);
    for (auto _ : state) {
        benchmark::DoNotOptimize(analyse_termination(p, q));
    }
}

BENCHMARK_CAPTURE(analyse, mc_carthy_91, "mc_carthy_91.pl", "mc_carthy_91(i,f)")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(analyse, gcd, "gcd.pl", "gcd(i,i,f)")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(analyse, mod, "mod.pl", "mod(i,i,f)")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(analyse, p2, "p2.pl", "p(i,i)")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(analyse, q3, "q3.pl", "q(b,b,i)")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(analyse, append, "append.pl", "app(b,b,f)")->Unit(benchmark::kMillisecond);

// Satisfiability of random conjunctions with the given number of variables.
void solver_sat(benchmark::State& state) {
    const auto nvars = static_cast<std::uint32_t>(state.range(0));
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> coeff(-20, 20);
    std::vector<Conjunction> cs;
    for (int n = 0; n < 64; ++n) {
        Conjunction c;
        for (std::uint32_t k = 0; k < 2 * nvars; ++k) {
            LinExpr e(coeff(rng));
            for (std::uint32_t v = 1; v <= nvars; ++v) {
                e += LinExpr::var(VarId::arg(v), Rational(coeff(rng)));
            }
            c.add(LinAtom(e, Rel::Le));
        }
        cs.push_back(c);
    }
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(check_satisfiable(cs[i++ % cs.size()]));
    }
}
BENCHMARK(solver_sat)->Arg(2)->Arg(4)->Arg(6);

} // namespace

BENCHMARK_MAIN();
