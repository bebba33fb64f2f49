// Copyright (c) termi-arith contributors.
// SPDX-License-Identifier: Apache-2.0
#include "termi/dependency_graph.hpp"

#include <algorithm>
#include <map>

namespace termi {

std::vector<PredKey> PredGraph::callees(const PredKey& p) const {
    std::vector<PredKey> out;
    for (auto it = arcs.lower_bound({p, PredKey{}}); it != arcs.end() && it->first == p; ++it) {
        out.push_back(it->second);
    }
    return out;
}

PredGraph build_dependency_graph(const Program& program) {
    PredGraph g;
    for (const auto& c : program.clauses()) {
        const PredKey head = c.head.key();
        g.nodes.insert(head);
        for (const auto& lit : c.body) {
            if (const auto* a = lit.user_atom()) {
                g.nodes.insert(a->key());
                g.arcs.emplace(head, a->key());
            }
        }
    }
    return g;
}

std::vector<std::vector<PredKey>> strongly_connected_components(const PredGraph& g) {
    std::vector<PredKey> nodes(g.nodes.begin(), g.nodes.end());
    std::map<PredKey, std::size_t> id;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        id[nodes[i]] = i;
    }
    std::vector<std::vector<std::size_t>> succ(nodes.size());
    for (const auto& [a, b] : g.arcs) {
        succ[id.at(a)].push_back(id.at(b));
    }

    constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(nodes.size(), unvisited);
    std::vector<std::size_t> low(nodes.size(), 0);
    std::vector<bool> on_stack(nodes.size(), false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<PredKey>> out;
    std::size_t counter = 0;

    // Iterative Tarjan: frames hold (node, next successor slot).
    for (std::size_t root = 0; root < nodes.size(); ++root) {
        if (index[root] != unvisited) {
            continue;
        }
        std::vector<std::pair<std::size_t, std::size_t>> frames{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            auto& [v, slot] = frames.back();
            if (slot < succ[v].size()) {
                const std::size_t w = succ[v][slot++];
                if (index[w] == unvisited) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            const std::size_t done = v;
            frames.pop_back();
            if (!frames.empty()) {
                low[frames.back().first] = std::min(low[frames.back().first], low[done]);
            }
            if (low[done] == index[done]) {
                std::vector<PredKey> comp;
                std::size_t w = 0;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp.push_back(nodes[w]);
                } while (w != done);
                std::sort(comp.begin(), comp.end());
                out.push_back(std::move(comp));
            }
        }
    }
    return out;
}

std::set<PredKey> reachable_from(const PredGraph& g, const PredKey& start) {
    std::set<PredKey> seen{start};
    std::vector<PredKey> work{start};
    while (!work.empty()) {
        PredKey p = work.back();
        work.pop_back();
        for (const auto& q : g.callees(p)) {
            if (seen.insert(q).second) {
                work.push_back(q);
            }
        }
    }
    return seen;
}

bool is_recursive_component(const PredGraph& g, const std::vector<PredKey>& scc) {
    if (scc.size() > 1) {
        return true;
    }
    return !scc.empty() && g.arcs.contains({scc.front(), scc.front()});
}

bool LoopInfo::contains(const PredKey& p) const { return std::find(scc.begin(), scc.end(), p) != scc.end(); }

std::string LoopInfo::name() const {
    std::string out;
    for (const auto& p : scc) {
        out += (out.empty() ? "" : ", ") + p.str();
    }
    return out;
}

namespace {

bool head_argument(const Clause& c, const std::string& var) {
    return std::any_of(c.head.args.begin(), c.head.args.end(),
                       [&](const Term& t) { return t.is_var() && t.var_name() == var; });
}

bool numerical_clause(const Clause& c) {
    for (const auto& lit : c.body) {
        const auto* is = lit.is_lit();
        if (is == nullptr) {
            continue;
        }
        if (is->lhs.is_var() && head_argument(c, is->lhs.var_name())) {
            return true;
        }
        for (const auto& v : term_vars(is->rhs)) {
            if (head_argument(c, v)) {
                return true;
            }
        }
    }
    return false;
}

std::string where(const Clause& c) { return "line " + std::to_string(c.pos.line); }

void float_diagnostics(const Clause& c, std::vector<std::string>& out) {
    auto check = [&](const Term& t, const std::string& context) {
        std::vector<const Term*> work{&t};
        while (!work.empty()) {
            const Term* cur = work.back();
            work.pop_back();
            if (cur->is_float()) {
                out.push_back(where(c) + ": non-integer constant " + std::get<FloatConst>(cur->node).text + " in `" +
                              context + "`");
            } else if (cur->is_compound()) {
                for (const auto& a : cur->as_compound().args) {
                    work.push_back(&a);
                }
            }
        }
    };
    for (const auto& a : c.head.args) {
        check(a, to_string(c.head));
    }
    for (const auto& lit : c.body) {
        const std::string text = to_string(lit);
        if (const auto* a = lit.user_atom()) {
            for (const auto& t : a->args) {
                check(t, text);
            }
        } else if (const auto* is = lit.is_lit()) {
            check(is->lhs, text);
            check(is->rhs, text);
        } else if (const auto* cmp = lit.comparison()) {
            check(cmp->lhs, text);
            check(cmp->rhs, text);
        } else if (const auto* u = lit.unify()) {
            check(u->lhs, text);
            check(u->rhs, text);
        }
    }
}

void operator_diagnostics(const Clause& c, std::vector<std::string>& out) {
    for (const auto& lit : c.body) {
        if (const auto* is = lit.is_lit()) {
            for (const auto& op : non_integer_operators(is->rhs)) {
                out.push_back(where(c) + ": operator '" + op + "' in `" + to_string(lit) + "`");
            }
        }
    }
}

} // namespace

LoopInfo describe_loop(const Program& program, const PredGraph& g, const std::vector<PredKey>& scc) {
    LoopInfo loop;
    loop.scc = scc;
    std::set<PredKey> support;
    for (const auto& p : scc) {
        const auto r = reachable_from(g, p);
        support.insert(r.begin(), r.end());
    }
    for (std::size_t i = 0; i < program.size(); ++i) {
        const Clause& c = program.clause(i);
        const PredKey head = c.head.key();
        if (loop.contains(head)) {
            loop.clauses_S.push_back(i);
            const bool recursive = std::any_of(c.body.begin(), c.body.end(), [&](const Literal& l) {
                return l.user_atom() != nullptr && loop.contains(l.user_atom()->key());
            });
            (recursive ? loop.recursive_clauses : loop.nonrecursive_clauses).push_back(i);
            loop.is_numerical = loop.is_numerical || numerical_clause(c);
        }
        if (support.contains(head)) {
            loop.support_S1.push_back(i);
        }
    }
    return loop;
}

std::vector<LoopInfo> find_integer_loops(const Program& program, const QueryPattern& query) {
    return find_integer_loops(program, query, infer_argument_modes(program, query));
}

std::vector<LoopInfo> find_integer_loops(const Program& program, const QueryPattern& query, const ModeAnalysis& modes) {
    const PredGraph g = build_dependency_graph(program);
    if (!g.nodes.contains(query.pred)) {
        return {};
    }
    const std::set<PredKey> reach = reachable_from(g, query.pred);
    std::vector<LoopInfo> loops;
    for (const auto& scc : strongly_connected_components(g)) {
        if (!reach.contains(scc.front()) || !is_recursive_component(g, scc)) {
            continue;
        }
        LoopInfo loop = describe_loop(program, g, scc);
        for (std::size_t i : loop.support_S1) {
            const Clause& c = program.clause(i);
            float_diagnostics(c, loop.diagnostics);
            operator_diagnostics(c, loop.diagnostics);
        }
        for (const auto& issue : modes.operand_issues) {
            if (std::binary_search(loop.support_S1.begin(), loop.support_S1.end(), issue.clause)) {
                const Clause& c = program.clause(issue.clause);
                loop.diagnostics.push_back(where(c) + ": `" + to_string(c.body.at(issue.literal)) +
                                           "` may receive non-integer " + issue.var + " (mode " +
                                           std::string(1, to_char(issue.mode)) + ")");
            }
        }
        loop.is_integer_based = loop.diagnostics.empty();
        loops.push_back(std::move(loop));
    }
    return loops;
}

} // namespace termi
