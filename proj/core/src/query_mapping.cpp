// Copyright (c) termi-arith contributors.
// SPDX-License-Identifier: Apache-2.0
#include "termi/query_mapping.hpp"

#include <algorithm>
#include <deque>

#include "termi/clause_constraints.hpp"

namespace termi {

void Relations::add_edge(VarId a, VarId b) {
    if (b < a) {
        std::swap(a, b);
    }
    edges.emplace(a, b);
}

Conjunction Relations::as_constraint() const {
    Conjunction out;
    for (const auto& [a, b] : edges) {
        out.add(LinAtom::eq(LinExpr::var(a), LinExpr::var(b)));
    }
    for (const auto& [a, b] : arcs) {
        out.add(LinAtom::gt(LinExpr::var(a), LinExpr::var(b)));
    }
    return out;
}

std::string AbstractAtom::str() const { return pred.name + modes_to_string(modes) + " " + constraint.to_string(); }

bool QueryMappingPair::same_as(const QueryMappingPair& o) const { return !(*this < o) && !(o < *this); }

bool operator<(const QueryMappingPair& a, const QueryMappingPair& b) {
    return std::tie(a.query, a.range, a.domain_modes, a.numeric, a.structural, a.domain_constraint,
                    a.range_constraint) < std::tie(b.query, b.range, b.domain_modes, b.numeric, b.structural,
                                                   b.domain_constraint, b.range_constraint);
}

std::vector<std::size_t> int_positions(const std::vector<ArgMode>& modes) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < modes.size(); ++k) {
        if (modes[k] == ArgMode::I) {
            out.push_back(k + 1);
        }
    }
    return out;
}

PairDomains::PairDomains(std::map<PredKey, std::vector<LinAtom>> atoms, DomainLimits limits)
    : atoms_(std::move(atoms)), limits_(limits) {}

const PredDomain& PairDomains::domain(const PredKey& p, const std::vector<std::size_t>& positions) {
    const auto key = std::make_pair(p, positions);
    auto it = cache_.find(key);
    if (it != cache_.end()) {
        return it->second;
    }
    auto src = atoms_.find(p);
    PredDomain d = src == atoms_.end() ? build_pred_domain(p, {}, limits_)
                                       : restrict_domain(p, src->second, positions, limits_);
    return cache_.emplace(key, std::move(d)).first->second;
}

std::vector<LinAtom> PairDomains::pool(const PredKey& p, const std::vector<std::size_t>& positions) {
    const auto key = std::make_pair(p, positions);
    auto it = pools_.find(key);
    if (it != pools_.end()) {
        return it->second;
    }
    std::set<Rational> constants{Rational(0)};
    auto src = atoms_.find(p);
    if (src != atoms_.end()) {
        for (const auto& a : src->second) {
            const auto& coeffs = a.expr().coeffs();
            if (coeffs.size() == 1) {
                const Rational& k = coeffs.begin()->second;
                constants.insert(-a.expr().constant() / k);
            }
        }
    }
    std::vector<LinAtom> out;
    for (std::size_t x : positions) {
        const LinExpr vx = LinExpr::var(VarId::arg(static_cast<std::uint32_t>(x)));
        for (const auto& c : constants) {
            out.push_back(LinAtom::ge(vx, LinExpr(c)));
            out.push_back(LinAtom::gt(vx, LinExpr(c)));
            out.push_back(LinAtom::le(vx, LinExpr(c)));
            out.push_back(LinAtom::lt(vx, LinExpr(c)));
        }
        for (std::size_t y : positions) {
            if (x != y) {
                const LinExpr vy = LinExpr::var(VarId::arg(static_cast<std::uint32_t>(y)));
                out.push_back(LinAtom::ge(vx, vy));
                out.push_back(LinAtom::gt(vx, vy));
            }
        }
    }
    return pools_.emplace(key, std::move(out)).first->second;
}

namespace {

VarRenamer to_space(VarSpace from, VarSpace to) {
    return [from, to](VarId v) { return v.space == from ? VarId{to, v.index} : v; };
}

Conjunction in_space(const Conjunction& c, VarSpace from, VarSpace to) { return c.rename(to_space(from, to)); }

std::set<VarId> row_vars(VarSpace space, const std::vector<std::size_t>& positions) {
    std::set<VarId> out;
    for (std::size_t k : positions) {
        out.insert(VarId{space, static_cast<std::uint32_t>(k)});
    }
    return out;
}

std::set<VarId> vars_in(const Conjunction& c, VarSpace space) {
    std::set<VarId> out;
    for (const auto& v : c.vars()) {
        if (v.space == space) {
            out.insert(v);
        }
    }
    return out;
}

// The base element plus every pool atom implied by the projection.
Conjunction strengthen(const Conjunction& projection, const Conjunction& base, const std::vector<LinAtom>& pool,
                       VarSpace space, const SolverLimits& limits) {
    Conjunction out = base;
    bool grew = false;
    for (const auto& a : pool) {
        const LinAtom r = a.rename(to_space(VarSpace::Arg, space));
        if (out.atoms().contains(r) || implies(out, r, limits)) {
            continue;
        }
        if (implies(projection, r, limits)) {
            out.add(r);
            grew = true;
        }
    }
    return grew ? remove_redundant(out, limits) : out;
}

Relations relations_between(const Conjunction& c, const std::set<VarId>& nodes, const SolverLimits& limits) {
    Relations r;
    if (nodes.size() < 2) {
        return r;
    }
    const Conjunction proj = project(c, nodes, limits).constraint;
    const std::vector<VarId> ns(nodes.begin(), nodes.end());
    for (std::size_t i = 0; i < ns.size(); ++i) {
        for (std::size_t j = i + 1; j < ns.size(); ++j) {
            const LinExpr a = LinExpr::var(ns[i]);
            const LinExpr b = LinExpr::var(ns[j]);
            if (implies(proj, LinAtom::eq(a, b), limits)) {
                r.add_edge(ns[i], ns[j]);
            } else if (implies(proj, LinAtom::gt(a, b), limits)) {
                r.add_arc(ns[i], ns[j]);
            } else if (implies(proj, LinAtom::gt(b, a), limits)) {
                r.add_arc(ns[j], ns[i]);
            }
        }
    }
    return r;
}

class Explorer {
  public:
    Explorer(const Program& program, const ModeAnalysis& modes, PairDomains& domains, const AnswerTable* answers,
             const SizeRelations& sizes, const PairOptions& options)
        : program_(program), modes_(modes), domains_(domains), answers_(answers), sizes_(sizes), options_(options) {}

    PairSet run(const QueryPattern& query) {
        const auto qpos = positions(query.modes);
        const PredDomain& d = domains_.domain(query.pred, qpos);
        for (std::size_t e = 0; e < d.elements.size(); ++e) {
            enqueue({query.pred, query.modes, e, d.elements[e]});
        }
        while (!queue_.empty() && !out_.capped) {
            const AbstractAtom q = queue_.front();
            queue_.pop_front();
            explore(q);
        }
        return std::move(out_);
    }

  private:
    std::vector<std::size_t> positions(const std::vector<ArgMode>& modes) const {
        return options_.numeric ? int_positions(modes) : std::vector<std::size_t>{};
    }

    void enqueue(const AbstractAtom& a) {
        if (seen_.insert(a).second) {
            queue_.push_back(a);
        }
    }

    void add(QueryMappingPair p) {
        if (!index_.insert(p).second) {
            return;
        }
        if (out_.pairs.size() >= options_.pair_cap) {
            out_.capped = true;
            return;
        }
        enqueue(p.range);
        out_.pairs.push_back(std::move(p));
    }

    void explore(const AbstractAtom& q) {
        for (std::size_t ci : program_.clauses_of(q.pred)) {
            const Clause& c = program_.clause(ci);
            ModeEnv env;
            if (!bind_head(c.head, q.modes, env)) {
                continue;
            }
            std::vector<ArgMode> dm(q.modes.size());
            for (std::size_t k = 0; k < dm.size(); ++k) {
                dm[k] = q.modes[k] != ArgMode::F ? q.modes[k] : term_mode(c.head.args[k], env);
            }
            const auto dpos = positions(dm);
            ClauseVars vars;
            Conjunction base = in_space(q.constraint, VarSpace::Arg, VarSpace::Dom);
            for (std::size_t k : dpos) {
                if (auto e = linearize(c.head.args[k - 1], vars)) {
                    base.add(LinAtom::eq(LinExpr::var(VarId::dom(static_cast<std::uint32_t>(k))), *e));
                }
            }
            if (options_.numeric && !is_satisfiable(base, options_.solver)) {
                continue;
            }
            Conjunction sbase = norm_nonnegative(c.vars(), vars);
            for (std::size_t k = 0; k < dm.size(); ++k) {
                if (dm[k] == ArgMode::B) {
                    sbase.add(LinAtom::eq(LinExpr::var(VarId::dom(static_cast<std::uint32_t>(k + 1))),
                                          term_norm(c.head.args[k], vars)));
                }
            }
            std::vector<Conjunction> states{base};
            for (const auto& lit : c.body) {
                if (const auto* a = lit.user_atom()) {
                    const auto rmodes = call_modes_of(*a, env);
                    if (program_.defines(a->key())) {
                        emit(q, dm, ci, *a, rmodes, states, sbase, vars);
                    }
                    auto succ = modes_.success_modes.find(a->key());
                    if (succ == modes_.success_modes.end() || !apply_success(*a, succ->second, env)) {
                        break;
                    }
                    sbase.add_all(sizes_.instantiate(*a, vars));
                    if (!after_success(*a, states, vars)) {
                        break;
                    }
                    continue;
                }
                if (const auto* u = lit.unify(); u != nullptr && !u->negated) {
                    sbase.add(LinAtom::eq(term_norm(u->lhs, vars), term_norm(u->rhs, vars)));
                }
                if (options_.numeric) {
                    if (auto at = literal_constraint(lit, vars)) {
                        std::vector<Conjunction> next;
                        for (auto& s : states) {
                            s.add(*at);
                            if (is_satisfiable(s, options_.solver)) {
                                next.push_back(std::move(s));
                            }
                        }
                        states = std::move(next);
                    }
                }
                if (states.empty()) {
                    break;
                }
                apply_builtin(lit, env);
            }
        }
    }

    // Adds the answer facts of a solved subgoal; false when it cannot succeed.
    bool after_success(const UserAtom& a, std::vector<Conjunction>& states, ClauseVars& vars) {
        if (!options_.numeric || answers_ == nullptr) {
            return true;
        }
        const PredAnswers* pa = answers_->find(a.key());
        if (pa == nullptr) {
            return true;
        }
        if (pa->entries.empty()) {
            return false;
        }
        if (pa->positions.empty()) {
            return true;
        }
        std::vector<Conjunction> next;
        for (const auto& s : states) {
            for (const auto& e : pa->entries) {
                ClauseVars local = vars;
                Conjunction n = s.conjoin(instantiate_entry(e.constraint, a, local));
                vars = local;
                if (is_satisfiable(n, options_.solver)) {
                    next.push_back(std::move(n));
                }
            }
        }
        if (next.size() > options_.branch_cap) {
            out_.diagnostics.push_back("answer branching for " + a.key().str() + " exceeds cap; facts dropped");
            return true;
        }
        states = std::move(next);
        return !states.empty();
    }

    void emit(const AbstractAtom& q, const std::vector<ArgMode>& dm, std::size_t ci, const UserAtom& a,
              const std::vector<ArgMode>& rmodes, const std::vector<Conjunction>& states, const Conjunction& sbase,
              ClauseVars& vars) {
        const auto dpos = positions(dm);
        const auto rpos = positions(rmodes);
        const PredDomain& rdomain = domains_.domain(a.key(), rpos);

        Conjunction sconj = sbase;
        std::set<VarId> snodes;
        for (std::size_t k = 0; k < dm.size(); ++k) {
            if (dm[k] == ArgMode::B) {
                snodes.insert(VarId::dom(static_cast<std::uint32_t>(k + 1)));
            }
        }
        for (std::size_t j = 0; j < rmodes.size(); ++j) {
            if (rmodes[j] == ArgMode::B) {
                const VarId r = VarId::rng(static_cast<std::uint32_t>(j + 1));
                snodes.insert(r);
                sconj.add(LinAtom::eq(LinExpr::var(r), term_norm(a.args[j], vars)));
            }
        }
        const Relations srel = relations_between(sconj, snodes, options_.solver);

        if (!options_.numeric) {
            QueryMappingPair p;
            p.query = q;
            p.range = {a.key(), rmodes, 0, rdomain.elements.front()};
            p.domain_modes = dm;
            p.structural = srel;
            p.clauses = {ci};
            add(std::move(p));
            return;
        }

        std::set<VarId> nodes = row_vars(VarSpace::Dom, dpos);
        const std::set<VarId> rnodes = row_vars(VarSpace::Rng, rpos);
        nodes.insert(rnodes.begin(), rnodes.end());
        const std::vector<LinAtom> dpool = domains_.pool(q.pred, dpos);
        const std::vector<LinAtom> rpool = domains_.pool(a.key(), rpos);
        const Conjunction qbase = in_space(q.constraint, VarSpace::Arg, VarSpace::Dom);

        for (const auto& s : states) {
            Conjunction withr = s;
            for (std::size_t j : rpos) {
                if (auto e = linearize(a.args[j - 1], vars)) {
                    withr.add(LinAtom::eq(LinExpr::var(VarId::rng(static_cast<std::uint32_t>(j))), *e));
                }
            }
            const Conjunction proj = project(withr, nodes, options_.solver).constraint;
            const Conjunction rproj = project(proj, rnodes, options_.solver).constraint;
            std::vector<LinAtom> hints;
            const Conjunction guards = project(s, row_vars(VarSpace::Dom, dpos), options_.solver).constraint;
            for (const auto& h : guards.atoms()) {
                hints.push_back(h);
            }
            for (std::size_t ri : widen_indices(in_space(rproj, VarSpace::Rng, VarSpace::Arg), rdomain,
                                                options_.solver)) {
                const Conjunction relem = in_space(rdomain.elements[ri], VarSpace::Arg, VarSpace::Rng);
                const Conjunction full = proj.conjoin(relem);
                if (!is_satisfiable(full, options_.solver)) {
                    continue;
                }
                QueryMappingPair p;
                p.query = q;
                p.range = {a.key(), rmodes, ri, rdomain.elements[ri]};
                p.domain_modes = dm;
                p.numeric = relations_between(full, nodes, options_.solver);
                p.structural = srel;
                const auto dv = row_vars(VarSpace::Dom, dpos);
                p.domain_constraint = strengthen(project(full, dv, options_.solver).constraint, qbase, dpool,
                                                 VarSpace::Dom, options_.solver);
                p.range_constraint = strengthen(project(full, rnodes, options_.solver).constraint, relem, rpool,
                                                VarSpace::Rng, options_.solver);
                p.clauses = {ci};
                p.hints = hints;
                add(std::move(p));
            }
        }
    }

    const Program& program_;
    const ModeAnalysis& modes_;
    PairDomains& domains_;
    const AnswerTable* answers_;
    const SizeRelations& sizes_;
    const PairOptions& options_;
    std::deque<AbstractAtom> queue_;
    std::set<AbstractAtom> seen_;
    std::set<QueryMappingPair> index_;
    PairSet out_;
};

Relations restrict_rows(const Relations& r) {
    auto outer = [](VarId v) { return v.space == VarSpace::Dom || v.space == VarSpace::Rng; };
    Relations out;
    for (const auto& [a, b] : r.edges) {
        if (outer(a) && outer(b)) {
            out.add_edge(a, b);
        }
    }
    for (const auto& [a, b] : r.arcs) {
        if (outer(a) && outer(b)) {
            out.add_arc(a, b);
        }
    }
    return out;
}

Relations rename_relations(const Relations& r, const VarRenamer& f) {
    Relations out;
    for (const auto& [a, b] : r.edges) {
        out.add_edge(f(a), f(b));
    }
    for (const auto& [a, b] : r.arcs) {
        out.add_arc(f(a), f(b));
    }
    return out;
}

Relations merged(const Relations& a, const Relations& b) {
    Relations out = a;
    out.edges.insert(b.edges.begin(), b.edges.end());
    out.arcs.insert(b.arcs.begin(), b.arcs.end());
    return out;
}

} // namespace

bool close_relations(Relations& r) {
    std::set<VarId> node_set;
    for (const auto& [a, b] : r.edges) {
        node_set.insert(a);
        node_set.insert(b);
    }
    for (const auto& [a, b] : r.arcs) {
        node_set.insert(a);
        node_set.insert(b);
    }
    const std::vector<VarId> nodes(node_set.begin(), node_set.end());
    const std::size_t n = nodes.size();
    auto at = [&](VarId v) {
        return static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), v) - nodes.begin());
    };
    // 0: unknown, 1: equal, 2: greater.
    std::vector<std::vector<int>> rel(n, std::vector<int>(n, 0));
    for (const auto& [a, b] : r.edges) {
        rel[at(a)][at(b)] = std::max(rel[at(a)][at(b)], 1);
        rel[at(b)][at(a)] = std::max(rel[at(b)][at(a)], 1);
    }
    for (const auto& [a, b] : r.arcs) {
        rel[at(a)][at(b)] = 2;
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (rel[i][k] == 0) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                if (rel[k][j] != 0) {
                    rel[i][j] = std::max({rel[i][j], rel[i][k], rel[k][j]});
                }
            }
        }
    }
    Relations out;
    for (std::size_t i = 0; i < n; ++i) {
        if (rel[i][i] == 2) {
            return false;
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) {
                continue;
            }
            if (rel[i][j] == 2) {
                out.add_arc(nodes[i], nodes[j]);
            } else if (rel[i][j] == 1 && i < j) {
                out.add_edge(nodes[i], nodes[j]);
            }
        }
    }
    r = std::move(out);
    return true;
}

PairSet generate_pairs(const Program& program, const QueryPattern& query, const ModeAnalysis& modes,
                       PairDomains& domains, const AnswerTable* answers, const SizeRelations& sizes,
                       const PairOptions& options) {
    if (!program.defines(query.pred)) {
        return {};
    }
    return Explorer(program, modes, domains, answers, sizes, options).run(query);
}

std::optional<QueryMappingPair> compose(const QueryMappingPair& a, const QueryMappingPair& b, PairDomains& domains,
                                        const PairOptions& options) {
    if (!(a.range == b.query)) {
        return std::nullopt;
    }
    const VarRenamer ra = to_space(VarSpace::Rng, VarSpace::Mid);
    const VarRenamer rb = to_space(VarSpace::Dom, VarSpace::Mid);
    const Relations an = rename_relations(a.numeric, ra);
    const Relations bn = rename_relations(b.numeric, rb);
    Relations num = merged(an, bn);
    Relations str = merged(rename_relations(a.structural, ra), rename_relations(b.structural, rb));
    if (!close_relations(num) || !close_relations(str)) {
        return std::nullopt;
    }
    QueryMappingPair out;
    out.query = a.query;
    out.range = b.range;
    out.domain_modes = a.domain_modes;
    out.numeric = restrict_rows(num);
    out.structural = restrict_rows(str);
    out.clauses = a.clauses;
    out.clauses.insert(out.clauses.end(), b.clauses.begin(), b.clauses.end());
    out.hints = a.hints;
    out.domain_constraint = a.domain_constraint;
    out.range_constraint = b.range_constraint;
    if (!options.numeric) {
        return out;
    }
    Conjunction all = a.domain_constraint;
    all.add_all(a.range_constraint.rename(ra));
    all.add_all(b.domain_constraint.rename(rb));
    all.add_all(b.range_constraint);
    all.add_all(an.as_constraint());
    all.add_all(bn.as_constraint());
    if (!is_satisfiable(all, options.solver)) {
        return std::nullopt;
    }
    const auto dpos = int_positions(a.domain_modes);
    const auto rpos = int_positions(b.range.modes);
    const auto dv = row_vars(VarSpace::Dom, dpos);
    const auto rv = row_vars(VarSpace::Rng, rpos);
    out.domain_constraint = strengthen(project(all, dv, options.solver).constraint, a.domain_constraint,
                                       domains.pool(a.query.pred, dpos), VarSpace::Dom, options.solver);
    out.range_constraint = strengthen(project(all, rv, options.solver).constraint, b.range_constraint,
                                      domains.pool(b.range.pred, rpos), VarSpace::Rng, options.solver);
    return out;
}

PairSet compose_until_fixpoint(const PairSet& basic, PairDomains& domains, const PairOptions& options) {
    PairSet out;
    out.diagnostics = basic.diagnostics;
    out.capped = basic.capped;
    std::set<QueryMappingPair> seen;
    std::map<AbstractAtom, std::vector<std::size_t>> by_query;
    std::map<AbstractAtom, std::vector<std::size_t>> by_range;
    std::deque<std::size_t> work;
    auto insert = [&](QueryMappingPair p) {
        if (out.capped || !seen.insert(p).second) {
            return;
        }
        if (out.pairs.size() >= options.pair_cap) {
            out.capped = true;
            out.diagnostics.push_back("pair cap of " + std::to_string(options.pair_cap) + " reached");
            return;
        }
        const std::size_t i = out.pairs.size();
        by_query[p.query].push_back(i);
        by_range[p.range].push_back(i);
        out.pairs.push_back(std::move(p));
        work.push_back(i);
    };
    for (const auto& p : basic.pairs) {
        insert(p);
    }
    while (!work.empty() && !out.capped) {
        const std::size_t i = work.front();
        work.pop_front();
        const std::vector<std::size_t> after = by_query[out.pairs[i].range];
        for (std::size_t j : after) {
            if (auto c = compose(out.pairs[i], out.pairs[j], domains, options)) {
                insert(std::move(*c));
            }
        }
        const std::vector<std::size_t> before = by_range[out.pairs[i].query];
        for (std::size_t j : before) {
            if (auto c = compose(out.pairs[j], out.pairs[i], domains, options)) {
                insert(std::move(*c));
            }
        }
    }
    return out;
}

bool is_circular(const QueryMappingPair& p) { return p.range == p.query; }

bool check_forward_positive_cycle(const QueryMappingPair& p) {
    Relations r = p.structural;
    if (!close_relations(r)) {
        return true;
    }
    for (std::size_t k = 0; k < p.domain_modes.size() && k < p.range.modes.size(); ++k) {
        if (p.domain_modes[k] == ArgMode::F || p.range.modes[k] == ArgMode::F) {
            continue;
        }
        const auto j = static_cast<std::uint32_t>(k + 1);
        if (r.arcs.contains({VarId::dom(j), VarId::rng(j)})) {
            return true;
        }
    }
    return false;
}

std::string TerminationFunction::str() const { return expr.to_string(); }

namespace {

bool integral(const LinExpr& e) {
    if (boost::multiprecision::denominator(e.constant()) != 1) {
        return false;
    }
    return std::all_of(e.coeffs().begin(), e.coeffs().end(),
                       [](const auto& kv) { return boost::multiprecision::denominator(kv.second) == 1; });
}

} // namespace

std::vector<TerminationFunction> guess_termination_functions(const QueryMappingPair& p, std::size_t cap,
                                                             const SolverLimits& limits) {
    std::vector<LinAtom> sources(p.domain_constraint.atoms().begin(), p.domain_constraint.atoms().end());
    for (const auto& v : vars_in(p.domain_constraint, VarSpace::Dom)) {
        const Conjunction bound = project(p.domain_constraint, {v}, limits).constraint;
        for (const auto& a : bound.atoms()) {
            sources.push_back(a);
        }
    }
    sources.insert(sources.end(), p.hints.begin(), p.hints.end());

    std::vector<TerminationFunction> out;
    auto offer = [&](const LinExpr& e, bool strict) {
        if (e.is_constant() || !integral(e)) {
            return;
        }
        const LinExpr f = e.rename(to_space(VarSpace::Dom, VarSpace::Arg));
        if (std::any_of(out.begin(), out.end(), [&](const TerminationFunction& t) { return t.expr == f; })) {
            return;
        }
        out.push_back({f, Rational(0), strict});
    };
    for (const auto& a : sources) {
        // e rel 0 bounds -e from below by 0.
        switch (a.rel()) {
        case Rel::Lt: offer(-a.expr(), true); break;
        case Rel::Le: offer(-a.expr(), false); break;
        case Rel::Eq:
            offer(-a.expr(), false);
            offer(a.expr(), false);
            break;
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const TerminationFunction& x, const TerminationFunction& y) {
        return x.expr.coeffs().size() < y.expr.coeffs().size();
    });
    if (out.size() > cap) {
        out.resize(cap);
    }
    return out;
}

bool verify_decrease(const QueryMappingPair& p, const TerminationFunction& f, const SolverLimits& limits) {
    Conjunction ctx = p.numeric.as_constraint();
    ctx.add_all(p.domain_constraint);
    ctx.add_all(p.range_constraint);
    const LinExpr fv = f.expr.rename(to_space(VarSpace::Arg, VarSpace::Dom));
    const LinExpr fu = f.expr.rename(to_space(VarSpace::Arg, VarSpace::Rng));
    return implies(ctx, LinAtom::gt(fv, fu), limits) && implies(ctx, LinAtom::ge(fv, LinExpr(f.lower_bound)), limits);
}

std::string render_pair(const QueryMappingPair& p) {
    auto rels = [](const Relations& r) {
        std::string s;
        for (const auto& [a, b] : r.edges) {
            s += (s.empty() ? "" : ", ") + default_var_name(a) + " = " + default_var_name(b);
        }
        for (const auto& [a, b] : r.arcs) {
            s += (s.empty() ? "" : ", ") + default_var_name(a) + " > " + default_var_name(b);
        }
        return s.empty() ? std::string("none") : s;
    };
    std::string clauses;
    for (std::size_t c : p.clauses) {
        clauses += (clauses.empty() ? "" : " ") + std::to_string(c + 1);
    }
    std::string out;
    out += "  query:      " + p.query.str() + "\n";
    out += "  domain:     " + p.query.pred.name + modes_to_string(p.domain_modes) + " " +
           p.domain_constraint.to_string() + "\n";
    out += "  range:      " + p.range.pred.name + modes_to_string(p.range.modes) + " " +
           p.range_constraint.to_string() + "\n";
    out += "  numeric:    " + rels(p.numeric) + "\n";
    out += "  structural: " + rels(p.structural) + "\n";
    out += "  clauses:    " + clauses + "\n";
    return out;
}

} // namespace termi
