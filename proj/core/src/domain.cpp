// Copyright (c) termi-arith contributors.
// SPDX-License-Identifier: Apache-2.0
#include "termi/domain.hpp"

#include <algorithm>

#include "termi/clause_constraints.hpp"

namespace termi {

void ComparisonSet::add(const PredKey& p, const LinAtom& a) {
    auto& v = atoms[p];
    if (std::find(v.begin(), v.end(), a) == v.end()) {
        v.push_back(a);
    }
}

const std::vector<LinAtom>& ComparisonSet::of(const PredKey& p) const {
    static const std::vector<LinAtom> empty;
    auto it = atoms.find(p);
    return it == atoms.end() ? empty : it->second;
}

std::size_t ComparisonSet::size() const {
    std::size_t n = 0;
    for (const auto& [_, v] : atoms) {
        n += v.size();
    }
    return n;
}

const PredDomain* Domain::find(const PredKey& p) const {
    auto it = preds.find(p);
    return it == preds.end() ? nullptr : &it->second;
}

std::string Domain::dump() const {
    std::string out;
    for (const auto& [p, d] : preds) {
        for (const auto& e : d.elements) {
            out += p.str() + ": " + e.to_string() + "\n";
        }
    }
    return out;
}

DomainTooLarge::DomainTooLarge(const PredKey& p, std::size_t n)
    : std::runtime_error("comparison set for " + p.str() + " has " + std::to_string(n) +
                         " atoms; simplify the domain or raise the cap") {}

namespace {

using HeadMap = std::map<std::string, VarId>;

std::optional<LinExpr> over_head(const Term& t, const HeadMap& head) {
    if (t.is_int()) {
        return LinExpr(Rational(t.int_value()));
    }
    if (t.is_var()) {
        auto it = head.find(t.var_name());
        if (it != head.end()) {
            return LinExpr::var(it->second);
        }
    }
    return std::nullopt;
}

std::vector<LinAtom> comparison_atoms(const Comparison& cmp, const LinExpr& l, const LinExpr& r) {
    switch (cmp.op) {
    case CmpOp::Lt: return {LinAtom::lt(l, r)};
    case CmpOp::Le: return {LinAtom::le(l, r)};
    case CmpOp::Ge: return {LinAtom::ge(l, r)};
    case CmpOp::Gt: return {LinAtom::gt(l, r)};
    case CmpOp::Eq: return {LinAtom::le(l, r), LinAtom::ge(l, r)};
    case CmpOp::Ne: return {};
    }
    return {};
}

// Head variables at integer positions, first position wins.
HeadMap head_map(const Clause& c, const std::vector<std::size_t>& positions) {
    HeadMap m;
    for (std::size_t k : positions) {
        const Term& t = c.head.args.at(k - 1);
        if (t.is_var()) {
            m.try_emplace(t.var_name(), VarId::arg(static_cast<std::uint32_t>(k)));
        }
    }
    return m;
}

void direct_comparisons(const Clause& c, const HeadMap& head, ComparisonSet& out) {
    for (const auto& lit : c.body) {
        const auto* cmp = lit.comparison();
        if (cmp == nullptr) {
            continue;
        }
        auto l = over_head(cmp->lhs, head);
        auto r = over_head(cmp->rhs, head);
        if (!l || !r) {
            continue;
        }
        for (const auto& a : comparison_atoms(*cmp, *l, *r)) {
            if (!a.is_ground()) {
                out.add(c.head.key(), a);
            }
        }
    }
}

std::uint32_t position_of(VarId v) { return v.index; }

} // namespace

bool simple_shape(const LinAtom& a) {
    const auto& coeffs = a.expr().coeffs();
    const Rational& c = a.expr().constant();
    if (coeffs.size() == 1) {
        const Rational& k = coeffs.begin()->second;
        return (k == 1 || k == -1) && boost::multiprecision::denominator(c) == 1;
    }
    if (coeffs.size() == 2) {
        auto it = coeffs.begin();
        const Rational& k1 = it->second;
        const Rational& k2 = std::next(it)->second;
        return c == 0 && k1 == -k2 && (k1 == 1 || k1 == -1);
    }
    return false;
}

std::set<std::size_t> mentioned_positions(const std::vector<LinAtom>& atoms) {
    std::set<std::size_t> out;
    for (const auto& a : atoms) {
        for (const auto& v : a.vars()) {
            if (v.space == VarSpace::Arg) {
                out.insert(position_of(v));
            }
        }
    }
    return out;
}

std::optional<ComparisonSet> collect_comparisons(const Program& program, const LoopInfo& loop,
                                                 const ModeAssignment& modes, ClauseScope scope) {
    for (std::size_t i : loop.clauses_S) {
        const Clause& c = program.clause(i);
        std::set<std::string> seen;
        for (std::size_t k : modes.integer_positions(c.head.key())) {
            const Term& t = c.head.args.at(k - 1);
            if (!t.is_var() || !seen.insert(t.var_name()).second) {
                return std::nullopt;
            }
        }
    }
    ComparisonSet out;
    for (const auto& p : loop.scc) {
        out.touch(p);
    }
    for (std::size_t i : scope == ClauseScope::All ? loop.clauses_S : loop.recursive_clauses) {
        const Clause& c = program.clause(i);
        direct_comparisons(c, head_map(c, modes.integer_positions(c.head.key())), out);
    }
    return out;
}

ComparisonSet infer_comparisons(const Program& program, const LoopInfo& loop, const ModeAssignment& modes,
                                ClauseScope scope, const SolverLimits& limits) {
    ComparisonSet out;
    for (const auto& p : loop.scc) {
        out.touch(p);
    }
    const auto& clauses = scope == ClauseScope::All ? loop.clauses_S : loop.recursive_clauses;
    for (std::size_t i : clauses) {
        const Clause& c = program.clause(i);
        const PredKey p = c.head.key();
        const auto positions = modes.integer_positions(p);
        if (positions.empty()) {
            continue;
        }
        direct_comparisons(c, head_map(c, positions), out);

        ClauseVars vars;
        const Conjunction body = clause_constraint(c, positions, vars);
        const std::set<VarId> keep = arg_vars(positions);
        const Projection proj = project(body, keep, limits);
        out.weakened = out.weakened || proj.weakened;
        if (proj.constraint.has_ground_falsum() || !is_satisfiable(proj.constraint, limits)) {
            continue;
        }
        for (const auto& a : proj.constraint.atoms()) {
            for (const auto& piece : a.as_inequalities()) {
                if (simple_shape(piece)) {
                    out.add(p, piece);
                }
            }
        }
        for (std::size_t x = 0; x < positions.size(); ++x) {
            for (std::size_t y = x + 1; y < positions.size(); ++y) {
                const LinExpr a = LinExpr::var(VarId::arg(static_cast<std::uint32_t>(positions[x])));
                const LinExpr b = LinExpr::var(VarId::arg(static_cast<std::uint32_t>(positions[y])));
                if (implies(proj.constraint, LinAtom::eq(a, b), limits)) {
                    out.add(p, LinAtom::le(a, b));
                    out.add(p, LinAtom::ge(a, b));
                    continue;
                }
                for (const auto& cand : {LinAtom::lt(a, b), LinAtom::le(a, b), LinAtom::gt(a, b), LinAtom::ge(a, b)}) {
                    if (implies(proj.constraint, cand, limits)) {
                        out.add(p, cand);
                        break;
                    }
                }
            }
        }
    }
    return out;
}

PredDomain build_pred_domain(const PredKey& p, const std::vector<LinAtom>& atoms, const DomainLimits& limits) {
    if (atoms.size() > limits.comparison_cap) {
        throw DomainTooLarge(p, atoms.size());
    }
    PredDomain out;
    out.atoms = atoms;
    // Depth-first with the atom branch explored before its negations.
    std::vector<Conjunction> leaves;
    auto recurse = [&](auto& self, std::size_t i, const Conjunction& c) -> void {
        if (i == atoms.size()) {
            leaves.push_back(remove_redundant(c, limits.solver));
            return;
        }
        Conjunction with = c;
        with.add(atoms[i]);
        if (is_satisfiable(with, limits.solver)) {
            self(self, i + 1, with);
        }
        for (const auto& n : atoms[i].negation()) {
            Conjunction without = c;
            without.add(n);
            if (is_satisfiable(without, limits.solver)) {
                self(self, i + 1, without);
            }
        }
    };
    recurse(recurse, 0, Conjunction{});
    out.elements = std::move(leaves);
    return out;
}

Domain build_domain(const ComparisonSet& c, const DomainLimits& limits) {
    Domain d;
    for (const auto& [p, atoms] : c.atoms) {
        d.preds.emplace(p, build_pred_domain(p, atoms, limits));
    }
    return d;
}

namespace {

struct UnionFind {
    std::map<std::size_t, std::size_t> parent;

    std::size_t find(std::size_t x) {
        auto [it, inserted] = parent.try_emplace(x, x);
        if (it->second == x) {
            return x;
        }
        const std::size_t r = find(it->second);
        parent[x] = r;
        return r;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) {
            parent[std::max(a, b)] = std::min(a, b);
        }
    }
};

std::vector<std::string> literal_vars(const Literal& lit) {
    std::vector<std::string> out;
    auto add = [&](const Term& t) { collect_vars(t, out); };
    if (const auto* a = lit.user_atom()) {
        for (const auto& t : a->args) {
            add(t);
        }
    } else if (const auto* is = lit.is_lit()) {
        add(is->lhs);
        add(is->rhs);
    } else if (const auto* cmp = lit.comparison()) {
        add(cmp->lhs);
        add(cmp->rhs);
    } else if (const auto* u = lit.unify()) {
        add(u->lhs);
        add(u->rhs);
    }
    return out;
}

std::vector<std::vector<std::size_t>> groups(UnionFind& uf, const std::vector<std::size_t>& positions) {
    std::map<std::size_t, std::vector<std::size_t>> by_root;
    for (std::size_t k : positions) {
        by_root[uf.find(k)].push_back(k);
    }
    std::vector<std::vector<std::size_t>> out;
    for (auto& [_, g] : by_root) {
        std::sort(g.begin(), g.end());
        out.push_back(std::move(g));
    }
    std::sort(out.begin(), out.end());
    return out;
}

UnionFind position_links(const Program& program, const LoopInfo& loop, const PredKey& p,
                         const std::vector<std::size_t>& positions) {
    UnionFind pos_uf;
    for (std::size_t k : positions) {
        pos_uf.find(k);
    }
    for (std::size_t ci : loop.clauses_S) {
        const Clause& c = program.clause(ci);
        if (c.head.key() != p) {
            continue;
        }
        std::map<std::string, std::size_t> ids;
        auto id = [&](const std::string& v) { return ids.try_emplace(v, ids.size()).first->second; };
        UnionFind var_uf;
        for (const auto& lit : c.body) {
            const auto vs = literal_vars(lit);
            for (std::size_t j = 1; j < vs.size(); ++j) {
                var_uf.unite(id(vs[0]), id(vs[j]));
            }
        }
        std::map<std::size_t, std::vector<std::size_t>> by_root;
        for (std::size_t k : positions) {
            for (const auto& v : term_vars(c.head.args.at(k - 1))) {
                by_root[var_uf.find(id(v))].push_back(k);
            }
        }
        for (const auto& [_, ks] : by_root) {
            for (std::size_t j = 1; j < ks.size(); ++j) {
                pos_uf.unite(ks[0], ks[j]);
            }
        }
    }
    return pos_uf;
}

// Conjunctions of one element from each list, keeping the satisfiable ones.
std::vector<Conjunction> product(const std::vector<std::vector<Conjunction>>& factors, const SolverLimits& limits) {
    std::vector<Conjunction> acc{Conjunction{}};
    for (const auto& f : factors) {
        std::vector<Conjunction> next;
        for (const auto& a : acc) {
            for (const auto& e : f) {
                Conjunction c = a.conjoin(e);
                if (is_satisfiable(c, limits)) {
                    next.push_back(std::move(c));
                }
            }
        }
        acc = std::move(next);
    }
    return acc;
}

} // namespace

std::vector<std::vector<std::size_t>> influence_components(const Program& program, const LoopInfo& loop,
                                                           const ModeAssignment& modes, const PredKey& p) {
    const auto positions = modes.integer_positions(p);
    UnionFind uf = position_links(program, loop, p, positions);
    return groups(uf, positions);
}

bool needs_propagation(const Program& program, const LoopInfo& loop, const ModeAssignment& modes,
                       const PredKey& p, const PredDomain& d) {
    const auto mentioned = mentioned_positions(d.atoms);
    if (mentioned.empty()) {
        return false;
    }
    for (const auto& comp : influence_components(program, loop, modes, p)) {
        const bool some = std::any_of(comp.begin(), comp.end(), [&](std::size_t k) { return mentioned.contains(k); });
        const bool all = std::all_of(comp.begin(), comp.end(), [&](std::size_t k) { return mentioned.contains(k); });
        if (some && !all) {
            return true;
        }
    }
    return false;
}

ExtendResult extend_domain(const Domain& d, const Program& program, const LoopInfo& loop,
                           const ModeAssignment& modes, const DomainLimits& limits) {
    ExtendResult out;
    for (const auto& [p, pd] : d.preds) {
        const auto positions = modes.integer_positions(p);
        UnionFind uf = position_links(program, loop, p, positions);
        for (const auto& a : pd.atoms) {
            const auto ks = mentioned_positions({a});
            for (std::size_t k : ks) {
                uf.unite(*ks.begin(), k);
            }
        }
        std::vector<std::vector<Conjunction>> factors;
        std::vector<LinAtom> all_atoms;
        for (const auto& comp : groups(uf, positions)) {
            std::vector<LinAtom> local;
            for (const auto& a : pd.atoms) {
                const auto ks = mentioned_positions({a});
                if (!ks.empty() && std::binary_search(comp.begin(), comp.end(), *ks.begin())) {
                    local.push_back(a);
                }
            }
            if (local.empty()) {
                continue;
            }
            if (comp.size() > limits.component_cap) {
                out.diagnostics.push_back("propagation skipped for " + p.str() + ": component of " +
                                          std::to_string(comp.size()) + " positions exceeds cap " +
                                          std::to_string(limits.component_cap));
                factors.push_back(build_pred_domain(p, local, limits).elements);
                all_atoms.insert(all_atoms.end(), local.begin(), local.end());
                continue;
            }
            std::set<std::set<LinAtom>> seen;
            std::vector<std::size_t> perm = comp;
            do {
                std::map<std::uint32_t, std::uint32_t> to;
                for (std::size_t j = 0; j < comp.size(); ++j) {
                    to[static_cast<std::uint32_t>(comp[j])] = static_cast<std::uint32_t>(perm[j]);
                }
                const VarRenamer rn = [&](VarId v) {
                    if (v.space == VarSpace::Arg && to.contains(v.index)) {
                        return VarId::arg(to.at(v.index));
                    }
                    return v;
                };
                std::vector<LinAtom> renamed;
                for (const auto& a : local) {
                    renamed.push_back(a.rename(rn));
                }
                if (!seen.insert(std::set<LinAtom>(renamed.begin(), renamed.end())).second) {
                    continue;
                }
                factors.push_back(build_pred_domain(p, renamed, limits).elements);
                for (const auto& a : renamed) {
                    if (std::find(all_atoms.begin(), all_atoms.end(), a) == all_atoms.end()) {
                        all_atoms.push_back(a);
                    }
                }
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        PredDomain ed;
        ed.atoms = std::move(all_atoms);
        for (const auto& e : product(factors, limits.solver)) {
            ed.elements.push_back(remove_redundant(e, limits.solver));
        }
        out.domain.preds.emplace(p, std::move(ed));
    }
    return out;
}

std::vector<std::size_t> widen_indices(const Conjunction& c, const PredDomain& d, const SolverLimits& limits) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < d.elements.size(); ++i) {
        if (is_satisfiable(c.conjoin(d.elements[i]), limits)) {
            out.push_back(i);
        }
    }
    return out;
}

std::vector<Conjunction> widen(const Conjunction& c, const PredDomain& d, const SolverLimits& limits) {
    std::vector<Conjunction> out;
    for (std::size_t i : widen_indices(c, d, limits)) {
        out.push_back(d.elements[i]);
    }
    return out;
}

PredDomain refine(const PredDomain& d, const std::vector<LinAtom>& atoms, const SolverLimits& limits) {
    PredDomain out;
    out.atoms = d.atoms;
    std::vector<Conjunction> cur = d.elements;
    for (const auto& a : atoms) {
        if (std::find(out.atoms.begin(), out.atoms.end(), a) == out.atoms.end()) {
            out.atoms.push_back(a);
        }
        std::vector<Conjunction> next;
        for (const auto& e : cur) {
            Conjunction with = e;
            with.add(a);
            if (is_satisfiable(with, limits)) {
                next.push_back(with);
            }
            for (const auto& n : a.negation()) {
                Conjunction without = e;
                without.add(n);
                if (is_satisfiable(without, limits)) {
                    next.push_back(without);
                }
            }
        }
        cur = std::move(next);
    }
    for (const auto& e : cur) {
        out.elements.push_back(remove_redundant(e, limits));
    }
    return out;
}

PredDomain restrict_domain(const PredKey& p, const std::vector<LinAtom>& atoms, const std::vector<std::size_t>& positions,
                           const DomainLimits& limits) {
    std::vector<LinAtom> kept;
    for (const auto& a : atoms) {
        const auto ks = mentioned_positions({a});
        if (std::all_of(ks.begin(), ks.end(),
                        [&](std::size_t k) { return std::find(positions.begin(), positions.end(), k) != positions.end(); })) {
            kept.push_back(a);
        }
    }
    return build_pred_domain(p, kept, limits);
}

} // namespace termi
