// Copyright (c) termi-arith contributors.
// SPDX-License-Identifier: Apache-2.0
#include "termi/size_relations.hpp"

namespace termi {

std::string norm_name(const std::string& var) { return "|" + var + "|"; }

LinExpr term_norm(const Term& t, ClauseVars& vars) {
    if (t.is_var()) {
        return LinExpr::var(vars.id(norm_name(t.var_name())));
    }
    if (t.is_compound()) {
        LinExpr e(1L);
        for (const auto& a : t.as_compound().args) {
            e += term_norm(a, vars);
        }
        return e;
    }
    return LinExpr(0L);
}

Conjunction norm_nonnegative(const std::set<std::string>& names, ClauseVars& vars) {
    Conjunction out;
    for (const auto& n : names) {
        out.add(LinAtom::ge(LinExpr::var(vars.id(norm_name(n))), LinExpr(0L)));
    }
    return out;
}

std::string SizeRelation::str() const {
    return "|arg" + std::to_string(lhs) + (strict ? "| > |arg" : "| >= |arg") + std::to_string(rhs) + "|";
}

const std::vector<SizeRelation>& SizeRelations::of(const PredKey& p) const {
    static const std::vector<SizeRelation> none;
    auto it = rels.find(p);
    return it == rels.end() ? none : it->second;
}

Conjunction SizeRelations::instantiate(const UserAtom& atom, ClauseVars& vars) const {
    Conjunction out;
    for (const auto& r : of(atom.key())) {
        const LinExpr l = term_norm(atom.args.at(r.lhs - 1), vars);
        const LinExpr rr = term_norm(atom.args.at(r.rhs - 1), vars);
        out.add(r.strict ? LinAtom::gt(l, rr) : LinAtom::ge(l, rr));
    }
    return out;
}

namespace {

std::vector<std::size_t> b_positions(const ModeAssignment& modes, const PredKey& p) {
    std::vector<std::size_t> out;
    auto it = modes.modes.find(p);
    if (it != modes.modes.end()) {
        for (std::size_t k = 0; k < it->second.size(); ++k) {
            if (it->second[k] == ArgMode::B) {
                out.push_back(k + 1);
            }
        }
    }
    return out;
}

} // namespace

SizeRelations infer_size_relations(const Program& program, const ModeAssignment& modes,
                                   const std::set<PredKey>& preds, const SolverLimits& limits) {
    SizeRelations cur;
    for (const auto& p : preds) {
        const auto bs = b_positions(modes, p);
        auto& v = cur.rels[p];
        for (std::size_t i : bs) {
            for (std::size_t j : bs) {
                if (i != j) {
                    v.push_back({i, j, true});
                    v.push_back({i, j, false});
                }
            }
        }
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& p : preds) {
            auto& candidates = cur.rels[p];
            if (candidates.empty()) {
                continue;
            }
            for (std::size_t ci : program.clauses_of(p)) {
                const Clause& c = program.clause(ci);
                ClauseVars vars;
                Conjunction ctx = norm_nonnegative(c.vars(), vars);
                for (const auto& lit : c.body) {
                    if (const auto* a = lit.user_atom()) {
                        ctx.add_all(cur.instantiate(*a, vars));
                    }
                }
                std::vector<SizeRelation> kept;
                for (const auto& r : candidates) {
                    const LinExpr l = term_norm(c.head.args.at(r.lhs - 1), vars);
                    const LinExpr rr = term_norm(c.head.args.at(r.rhs - 1), vars);
                    if (implies(ctx, r.strict ? LinAtom::gt(l, rr) : LinAtom::ge(l, rr), limits)) {
                        kept.push_back(r);
                    }
                }
                if (kept.size() != candidates.size()) {
                    candidates = std::move(kept);
                    changed = true;
                }
                if (candidates.empty()) {
                    break;
                }
            }
        }
    }
    return cur;
}

} // namespace termi
