// Copyright (c) termi-arith contributors.
// SPDX-License-Identifier: Apache-2.0
#include "termi/abstract_interp.hpp"

#include <algorithm>

namespace termi {

std::vector<std::size_t> PredAnswers::covered() const {
    std::set<std::size_t> seen;
    for (const auto& e : entries) {
        seen.insert(e.elements.begin(), e.elements.end());
    }
    return {seen.begin(), seen.end()};
}

const PredAnswers* AnswerTable::find(const PredKey& p) const {
    auto it = preds.find(p);
    return it == preds.end() ? nullptr : &it->second;
}

std::string AnswerTable::dump() const {
    std::string out;
    for (const auto& [p, a] : preds) {
        std::string args;
        for (std::size_t k = 1; k <= p.arity; ++k) {
            args += (k > 1 ? ", arg" : "arg") + std::to_string(k);
        }
        for (std::size_t i : a.covered()) {
            out += p.name + "_w(" + args + ") :- " + a.domain.elements[i].to_string() + "\n";
        }
    }
    return out;
}

ComparisonSet tilde_comparisons(const Program& program, const LoopInfo& loop, const ModeAssignment& modes,
                                bool inferred, const SolverLimits& limits) {
    if (!inferred) {
        if (auto c = collect_comparisons(program, loop, modes, ClauseScope::All)) {
            return *c;
        }
    }
    return infer_comparisons(program, loop, modes, ClauseScope::All, limits);
}

Domain build_d_tilde(const Program& program, const LoopInfo& loop, const ModeAssignment& modes, bool inferred,
                     const DomainLimits& limits) {
    return build_domain(tilde_comparisons(program, loop, modes, inferred, limits.solver), limits);
}

std::vector<LinAtom> nonrecursive_bounds(const Program& program, const LoopInfo& loop, const ModeAssignment& modes,
                                         const PredKey& p, const SolverLimits& limits) {
    LoopInfo only = loop;
    only.recursive_clauses.clear();
    only.clauses_S = loop.nonrecursive_clauses;
    auto collected = collect_comparisons(program, only, modes, ClauseScope::All);
    const ComparisonSet c =
        collected ? *collected : infer_comparisons(program, only, modes, ClauseScope::All, limits);
    std::vector<LinAtom> out;
    for (const auto& a : c.of(p)) {
        if (a.vars().size() == 1) {
            out.push_back(a);
        }
    }
    return out;
}

Conjunction instantiate_entry(const Conjunction& entry, const UserAtom& atom, ClauseVars& vars) {
    std::map<std::uint32_t, VarId> link;
    Conjunction out;
    for (const auto& v : entry.vars()) {
        if (v.space != VarSpace::Arg || link.contains(v.index)) {
            continue;
        }
        if (auto e = linearize(atom.args.at(v.index - 1), vars)) {
            const VarId t = vars.fresh();
            link.emplace(v.index, t);
            out.add(LinAtom::eq(LinExpr::var(t), *e));
        }
    }
    for (const auto& a : entry.atoms()) {
        const auto vs = a.vars();
        const bool linked = std::all_of(vs.begin(), vs.end(), [&](VarId v) { return link.contains(v.index); });
        if (linked) {
            out.add(a.rename([&](VarId v) { return link.at(v.index); }));
        }
    }
    return out;
}

namespace {

class Fixpoint {
  public:
    Fixpoint(const Program& program, const AnswerOptions& options, AnswerTable& table)
        : program_(program), options_(options), table_(table) {}

    // Projections of the clause's answers onto its head integer positions.
    std::vector<Conjunction> derive(const Clause& c) {
        std::vector<Conjunction> out;
        const PredAnswers& head = table_.preds.at(c.head.key());
        ClauseVars vars;
        const Conjunction base = clause_constraint(c, head.positions, vars);
        if (!is_satisfiable(base, options_.solver)) {
            return out;
        }
        std::vector<const UserAtom*> atoms;
        for (const auto& lit : c.body) {
            if (const auto* a = lit.user_atom()) {
                atoms.push_back(a);
            }
        }
        const std::set<VarId> keep = arg_vars(head.positions);
        auto recurse = [&](auto& self, std::size_t i, const Conjunction& acc, ClauseVars cv) -> void {
            if (++derivations_ > options_.derivation_cap) {
                table_.truncated = true;
                return;
            }
            if (i == atoms.size()) {
                Projection p = project(acc, keep, options_.solver);
                out.push_back(remove_redundant(p.constraint, options_.solver));
                return;
            }
            const PredAnswers* callee = table_.find(atoms[i]->key());
            if (callee == nullptr) {
                return;
            }
            for (const auto& e : callee->entries) {
                ClauseVars local = cv;
                Conjunction next = acc.conjoin(instantiate_entry(e.constraint, *atoms[i], local));
                if (is_satisfiable(next, options_.solver)) {
                    self(self, i + 1, next, local);
                }
            }
        };
        recurse(recurse, 0, base, vars);
        return out;
    }

    void run_component(const std::vector<PredKey>& scc) {
        auto in_scc = [&](const Clause& c) {
            return std::any_of(c.body.begin(), c.body.end(), [&](const Literal& l) {
                const auto* a = l.user_atom();
                return a != nullptr && std::find(scc.begin(), scc.end(), a->key()) != scc.end();
            });
        };
        std::vector<const Clause*> recursive;
        for (const auto& p : scc) {
            for (std::size_t ci : program_.clauses_of(p)) {
                const Clause& c = program_.clause(ci);
                if (in_scc(c)) {
                    recursive.push_back(&c);
                    continue;
                }
                for (auto& d : derive(c)) {
                    add(p, std::move(d), true);
                }
            }
        }
        bool changed = true;
        while (changed && !table_.truncated) {
            changed = false;
            for (const Clause* c : recursive) {
                for (auto& d : derive(*c)) {
                    changed = add(c->head.key(), std::move(d), false) || changed;
                }
            }
        }
    }

  private:
    bool add(const PredKey& p, Conjunction c, bool precise) {
        PredAnswers& pa = table_.preds.at(p);
        const auto elements = widen_indices(c, pa.domain, options_.solver);
        if (precise) {
            for (const auto& e : pa.entries) {
                if (e.precise && e.constraint == c) {
                    return false;
                }
            }
            pa.entries.push_back({std::move(c), true, elements});
            return true;
        }
        bool changed = false;
        for (std::size_t i : elements) {
            const bool known = std::any_of(pa.entries.begin(), pa.entries.end(), [&](const AnswerEntry& e) {
                return !e.precise && e.elements.front() == i;
            });
            if (!known) {
                pa.entries.push_back({pa.domain.elements[i], false, {i}});
                changed = true;
            }
        }
        return changed;
    }

    const Program& program_;
    const AnswerOptions& options_;
    AnswerTable& table_;
    std::size_t derivations_ = 0;
};

} // namespace

AnswerTable compute_abstract_answers(const Program& program, const std::set<PredKey>& preds,
                                     const ModeAssignment& modes, const std::map<PredKey, PredDomain>& domains,
                                     const AnswerOptions& options) {
    AnswerTable table;
    for (const auto& p : preds) {
        PredAnswers pa;
        pa.positions = modes.integer_positions(p);
        auto it = domains.find(p);
        if (it != domains.end()) {
            pa.domain = it->second;
        } else {
            pa.domain.elements.push_back(Conjunction{});
        }
        table.preds.emplace(p, std::move(pa));
    }
    Fixpoint fp(program, options, table);
    const PredGraph g = build_dependency_graph(program);
    for (const auto& scc : strongly_connected_components(g)) {
        std::vector<PredKey> mine;
        for (const auto& p : scc) {
            if (preds.contains(p)) {
                mine.push_back(p);
            }
        }
        if (!mine.empty()) {
            fp.run_component(mine);
        }
    }
    return table;
}

} // namespace termi
