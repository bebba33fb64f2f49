// Copyright (c) termi-arith contributors.
// SPDX-License-Identifier: Apache-2.0
#include "termi/driver.hpp"

#include <algorithm>

#include "termi/size_relations.hpp"
#include "termi/unfold.hpp"

namespace termi {

Deadline::Deadline(double seconds) {
    if (seconds > 0) {
        end_ = std::chrono::steady_clock::now() +
               std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(seconds));
    }
}

bool Deadline::expired() const { return end_ && std::chrono::steady_clock::now() >= *end_; }

std::string PairEvidence::proof() const {
    switch (kind) {
    case ProofKind::Structural: return "structural decrease at arg" + std::to_string(position);
    case ProofKind::Function:
        return function->str() + (function->strict ? " > " : " >= ") + function->lower_bound.str();
    case ProofKind::None: break;
    }
    return "unproven";
}

namespace {

std::size_t structural_position(const QueryMappingPair& p) {
    Relations r = p.structural;
    if (!close_relations(r)) {
        return 0;
    }
    for (std::size_t k = 0; k < p.domain_modes.size() && k < p.range.modes.size(); ++k) {
        if (p.domain_modes[k] == ArgMode::F || p.range.modes[k] == ArgMode::F) {
            continue;
        }
        const auto j = static_cast<std::uint32_t>(k + 1);
        if (r.arcs.contains({VarId::dom(j), VarId::rng(j)})) {
            return k + 1;
        }
    }
    return 0;
}

} // namespace

PairEvidence prove_pair(const QueryMappingPair& p, std::size_t candidate_cap, const SolverLimits& limits) {
    PairEvidence ev;
    ev.pair = p;
    if (check_forward_positive_cycle(p)) {
        ev.kind = ProofKind::Structural;
        ev.position = structural_position(p);
        return ev;
    }
    for (const auto& f : guess_termination_functions(p, candidate_cap, limits)) {
        if (verify_decrease(p, f, limits)) {
            ev.kind = ProofKind::Function;
            ev.function = f;
            return ev;
        }
    }
    return ev;
}

namespace {

enum class Source : std::uint8_t { Collect, Infer };

struct RungSpec {
    Source source = Source::Infer;
    std::size_t unfold = 0;
    bool answers = false;

    [[nodiscard]] std::string name() const {
        std::string s = unfold > 0 ? "unfold " + std::to_string(unfold) + " + " : "";
        s += source == Source::Collect ? "collect" : "infer";
        return s + (answers ? " + answers" : "");
    }
};

struct RunState {
    bool proved = false;
    bool capped = false;
    std::string note;
    ComparisonSet comparisons;
    Domain domain;
    Domain extended;
    bool propagated = false;
    std::map<PredKey, PredDomain> answer_domains;
    std::optional<AnswerTable> answers;
    Program program;
    std::vector<PairEvidence> evidence;
    std::vector<std::string> diagnostics;
    std::vector<std::string> trace;
};

void merge(ComparisonSet& into, const ComparisonSet& from) {
    for (const auto& [p, atoms] : from.atoms) {
        into.touch(p);
        for (const auto& a : atoms) {
            into.add(p, a);
        }
    }
    into.weakened = into.weakened || from.weakened;
}

class Analyzer {
  public:
    Analyzer(const Program& program, const QueryPattern& query, const AnalysisOptions& options)
        : program_(program), query_(query), options_(options), deadline_(options.timeout_seconds) {
        limits_.comparison_cap = options.comparison_cap;
    }

    Verdict run() {
        Verdict v;
        v.analysed = program_;
        if (!program_.defines(query_.pred)) {
            v.answer = Answer::Yes;
            v.method = "vacuous";
            v.diagnostics.push_back(query_.pred.str() + " has no clauses");
            return v;
        }
        const ModeAnalysis modes = infer_argument_modes(program_, query_);
        v.diagnostics.insert(v.diagnostics.end(), modes.diagnostics.begin(), modes.diagnostics.end());
        const std::vector<LoopInfo> loops = find_integer_loops(program_, query_, modes);

        const RunState structural = structural_run(modes);
        v.trace = structural.trace;
        if (structural.proved) {
            finish(v, structural, loops, "structural");
            v.answer = Answer::Yes;
            return v;
        }
        v.diagnostics.insert(v.diagnostics.end(), structural.diagnostics.begin(), structural.diagnostics.end());
        v.resource_limited = structural.capped;

        std::vector<std::vector<PredKey>> numerical;
        bool integer_based = true;
        for (const auto& l : loops) {
            if (!l.is_numerical) {
                continue;
            }
            numerical.push_back(l.scc);
            if (!l.is_integer_based) {
                integer_based = false;
                for (const auto& d : l.diagnostics) {
                    v.diagnostics.push_back("loop " + l.name() + " is not integer-based: " + d);
                }
            }
        }
        if (numerical.empty() || !integer_based) {
            if (numerical.empty()) {
                v.diagnostics.push_back("no numerical loop; the structural test failed");
            }
            finish(v, structural, loops, "none");
            v.answer = Answer::No;
            return v;
        }

        std::optional<RunState> last;
        for (const auto& spec : ladder()) {
            if (deadline_.expired()) {
                v.resource_limited = true;
                v.diagnostics.push_back("timeout after " + std::to_string(options_.timeout_seconds) + " s");
                break;
            }
            RunState s = numeric_run(spec, numerical);
            v.rungs.push_back({spec.name(), spec.answers, s.proved, s.note});
            v.trace.push_back("rung " + spec.name() + ": " + (s.proved ? "proved" : "failed") +
                              (s.note.empty() ? "" : " (" + s.note + ")"));
            v.trace.insert(v.trace.end(), s.trace.begin(), s.trace.end());
            if (s.proved) {
                finish(v, s, loops, "numeric");
                v.answer = Answer::Yes;
                v.resource_limited = false;
                return v;
            }
            v.resource_limited = v.resource_limited || s.capped;
            for (const auto& d : s.diagnostics) {
                if (std::find(v.diagnostics.begin(), v.diagnostics.end(), d) == v.diagnostics.end()) {
                    v.diagnostics.push_back(d);
                }
            }
            if (!s.evidence.empty() || !last) {
                last = std::move(s);
            }
        }
        finish(v, last ? *last : structural, loops, "none");
        v.answer = Answer::No;
        return v;
    }

  private:
    std::vector<RungSpec> ladder() const {
        const bool answers = options_.answer_abstraction == AnswerMode::On;
        std::vector<RungSpec> out{{Source::Collect, 0, answers}};
        if (options_.use_inference) {
            out.push_back({Source::Infer, 0, answers});
        }
        for (std::size_t k = 1; k <= options_.max_unfold; ++k) {
            out.push_back({options_.use_inference ? Source::Infer : Source::Collect, k, answers});
        }
        // Auto mode re-runs the most refined rung once with answers.
        if (options_.answer_abstraction == AnswerMode::Auto) {
            RungSpec last = out.back();
            last.answers = true;
            out.push_back(last);
        }
        return out;
    }

    void prove_all(const PairSet& closure, RunState& s) {
        s.capped = s.capped || closure.capped;
        s.diagnostics.insert(s.diagnostics.end(), closure.diagnostics.begin(), closure.diagnostics.end());
        bool all = !closure.capped;
        for (const auto& p : closure.pairs) {
            if (!is_circular(p)) {
                continue;
            }
            if (deadline_.expired()) {
                s.capped = true;
                all = false;
                break;
            }
            PairEvidence ev = prove_pair(p, options_.candidate_cap, limits_.solver);
            all = all && ev.proved();
            if (options_.trace) {
                s.trace.push_back("circular pair, " + ev.proof() + ":\n" + render_pair(p));
            }
            s.evidence.push_back(std::move(ev));
        }
        s.proved = all;
    }

    RunState structural_run(const ModeAnalysis& modes) {
        RunState s;
        s.program = program_;
        const SizeRelations sizes =
            infer_size_relations(program_, modes.assignment, program_.predicates(), limits_.solver);
        PairDomains domains;
        PairOptions po;
        po.numeric = false;
        po.pair_cap = options_.pair_cap;
        po.solver = limits_.solver;
        const PairSet basic = generate_pairs(program_, query_, modes, domains, nullptr, sizes, po);
        prove_all(compose_until_fixpoint(basic, domains, po), s);
        if (options_.trace) {
            s.trace.insert(s.trace.begin(), "structural run: " + std::string(s.proved ? "proved" : "failed"));
        }
        return s;
    }

    RunState numeric_run(const RungSpec& spec, const std::vector<std::vector<PredKey>>& numerical) {
        RunState s;
        try {
            s.program = spec.unfold > 0 ? unfold_loops(program_, numerical, spec.unfold) : program_;
        } catch (const UnfoldError& e) {
            s.note = std::string("unfolding failed: ") + e.what();
            return s;
        }
        const Program& prog = s.program;
        const ModeAnalysis modes = infer_argument_modes(prog, query_);
        const std::vector<LoopInfo> loops = find_integer_loops(prog, query_, modes);
        std::map<PredKey, bool> inferred;
        try {
            for (const auto& loop : loops) {
                std::optional<ComparisonSet> c;
                if (spec.source == Source::Collect) {
                    c = collect_comparisons(prog, loop, modes.assignment);
                    if (!c) {
                        s.note += (s.note.empty() ? "" : "; ") + ("collection not applicable to " + loop.name());
                    }
                }
                if (!c) {
                    c = infer_comparisons(prog, loop, modes.assignment, ClauseScope::Recursive, limits_.solver);
                }
                for (const auto& p : loop.scc) {
                    inferred[p] = spec.source == Source::Infer || !collect_comparisons(prog, loop, modes.assignment);
                }
                merge(s.comparisons, *c);
                const Domain d = build_domain(*c, limits_);
                ExtendResult ed = extend_domain(d, prog, loop, modes.assignment, limits_);
                s.diagnostics.insert(s.diagnostics.end(), ed.diagnostics.begin(), ed.diagnostics.end());
                bool propagated = false;
                for (const auto& [p, pd] : d.preds) {
                    propagated = propagated || needs_propagation(prog, loop, modes.assignment, p, pd);
                }
                s.propagated = s.propagated || propagated;
                for (const auto& [p, pd] : d.preds) {
                    s.domain.preds[p] = pd;
                }
                for (const auto& [p, pd] : ed.domain.preds) {
                    s.extended.preds[p] = pd;
                }
                if (spec.answers) {
                    if (propagated) {
                        for (const auto& [p, pd] : ed.domain.preds) {
                            s.answer_domains[p] =
                                refine(pd, nonrecursive_bounds(prog, loop, modes.assignment, p, limits_.solver),
                                       limits_.solver);
                        }
                    } else {
                        const Domain dt =
                            build_d_tilde(prog, loop, modes.assignment, inferred[loop.scc.front()], limits_);
                        for (const auto& [p, pd] : dt.preds) {
                            s.answer_domains[p] = pd;
                        }
                    }
                }
            }
        } catch (const DomainTooLarge& e) {
            s.capped = true;
            s.note += (s.note.empty() ? "" : "; ") + std::string(e.what());
            s.diagnostics.emplace_back(e.what());
            return s;
        }

        const AnswerTable* answers = nullptr;
        if (spec.answers) {
            const PredGraph g = build_dependency_graph(prog);
            AnswerOptions ao;
            ao.solver = limits_.solver;
            s.answers = compute_abstract_answers(prog, reachable_from(g, query_.pred), modes.assignment,
                                                 s.answer_domains, ao);
            if (s.answers->truncated) {
                s.capped = true;
                s.diagnostics.emplace_back("answer derivation cap reached; answers dropped");
                s.answers.reset();
            } else {
                answers = &*s.answers;
            }
        }

        std::map<PredKey, std::vector<LinAtom>> atoms;
        for (const auto& [p, pd] : s.extended.preds) {
            atoms[p] = pd.atoms;
        }
        PairDomains domains(atoms, limits_);
        const SizeRelations sizes = infer_size_relations(prog, modes.assignment, prog.predicates(), limits_.solver);
        PairOptions po;
        po.pair_cap = options_.pair_cap;
        po.solver = limits_.solver;
        try {
            const PairSet basic = generate_pairs(prog, query_, modes, domains, answers, sizes, po);
            prove_all(compose_until_fixpoint(basic, domains, po), s);
        } catch (const DomainTooLarge& e) {
            s.capped = true;
            s.proved = false;
            s.diagnostics.emplace_back(e.what());
        }
        if (options_.trace) {
            std::vector<std::string> head{"domain:\n" + s.domain.dump()};
            if (s.answers) {
                head.push_back("answers:\n" + s.answers->dump());
            }
            s.trace.insert(s.trace.begin(), head.begin(), head.end());
        }
        return s;
    }

    void finish(Verdict& v, const RunState& s, const std::vector<LoopInfo>& loops, const std::string& method) const {
        v.method = method;
        v.comparisons = s.comparisons;
        v.domain = s.domain;
        v.extended = s.extended;
        v.propagated = s.propagated;
        v.answer_domains = s.answer_domains;
        v.answers = s.answers;
        v.analysed = s.program;
        v.evidence = s.evidence;
        for (const auto& l : loops) {
            LoopReport r;
            r.predicates = l.scc;
            r.numerical = l.is_numerical;
            r.integer_based = l.is_integer_based;
            for (const auto& p : l.scc) {
                if (const PredDomain* d = s.domain.find(p)) {
                    r.domain[p] = *d;
                }
            }
            for (const auto& ev : s.evidence) {
                if (l.contains(ev.pair.query.pred)) {
                    r.pairs.push_back(ev);
                }
            }
            v.loops.push_back(std::move(r));
        }
    }

    const Program& program_;
    const QueryPattern& query_;
    const AnalysisOptions& options_;
    Deadline deadline_;
    DomainLimits limits_;
};

} // namespace

Verdict analyse_termination(const Program& program, const QueryPattern& query, const AnalysisOptions& options) {
    return Analyzer(program, query, options).run();
}

int exit_code(const Verdict& v) {
    if (v.answer == Answer::Yes) {
        return 0;
    }
    return v.resource_limited ? 3 : 1;
}

} // namespace termi
