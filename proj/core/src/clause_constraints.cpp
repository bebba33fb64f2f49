// Copyright (c) termi-arith contributors.
// SPDX-License-Identifier: Apache-2.0
#include "termi/clause_constraints.hpp"

namespace termi {

VarId ClauseVars::id(const std::string& name) {
    auto it = ids_.find(name);
    if (it != ids_.end()) {
        return it->second;
    }
    const VarId v = fresh();
    ids_.emplace(name, v);
    return v;
}

std::optional<VarId> ClauseVars::find(const std::string& name) const {
    auto it = ids_.find(name);
    if (it == ids_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::optional<LinExpr> linearize(const Term& t, ClauseVars& vars) {
    if (t.is_var()) {
        return LinExpr::var(vars.id(t.var_name()));
    }
    if (t.is_int()) {
        return LinExpr(Rational(t.int_value()));
    }
    if (!t.is_compound()) {
        return std::nullopt;
    }
    const auto& c = t.as_compound();
    if (c.args.size() == 1 && c.functor == "-") {
        auto e = linearize(c.args[0], vars);
        if (!e) {
            return std::nullopt;
        }
        return -*e;
    }
    if (c.args.size() != 2) {
        return std::nullopt;
    }
    auto a = linearize(c.args[0], vars);
    auto b = linearize(c.args[1], vars);
    if (!a || !b) {
        return std::nullopt;
    }
    if (c.functor == "+") {
        return *a + *b;
    }
    if (c.functor == "-") {
        return *a - *b;
    }
    if (c.functor == "*") {
        if (a->is_constant()) {
            return *b * a->constant();
        }
        if (b->is_constant()) {
            return *a * b->constant();
        }
    }
    return std::nullopt;
}

std::optional<LinAtom> literal_constraint(const Literal& lit, ClauseVars& vars) {
    if (const auto* is = lit.is_lit()) {
        auto l = linearize(is->lhs, vars);
        auto r = linearize(is->rhs, vars);
        if (!l || !r) {
            return std::nullopt;
        }
        return LinAtom::eq(*l, *r);
    }
    if (const auto* cmp = lit.comparison()) {
        auto l = linearize(cmp->lhs, vars);
        auto r = linearize(cmp->rhs, vars);
        if (!l || !r) {
            return std::nullopt;
        }
        switch (cmp->op) {
        case CmpOp::Lt: return LinAtom::lt(*l, *r);
        case CmpOp::Le: return LinAtom::le(*l, *r);
        case CmpOp::Ge: return LinAtom::ge(*l, *r);
        case CmpOp::Gt: return LinAtom::gt(*l, *r);
        case CmpOp::Eq: return LinAtom::eq(*l, *r);
        case CmpOp::Ne: return std::nullopt;
        }
    }
    return std::nullopt;
}

Conjunction head_bindings(const UserAtom& head, const std::vector<std::size_t>& positions, ClauseVars& vars) {
    Conjunction out;
    for (std::size_t k : positions) {
        if (auto e = linearize(head.args.at(k - 1), vars)) {
            out.add(LinAtom::eq(LinExpr::var(VarId::arg(static_cast<std::uint32_t>(k))), *e));
        }
    }
    return out;
}

Conjunction clause_constraint(const Clause& c, const std::vector<std::size_t>& positions, ClauseVars& vars) {
    Conjunction out = head_bindings(c.head, positions, vars);
    for (const auto& lit : c.body) {
        if (auto a = literal_constraint(lit, vars)) {
            out.add(*a);
        }
    }
    return out;
}

std::set<VarId> arg_vars(const std::vector<std::size_t>& positions) {
    std::set<VarId> out;
    for (std::size_t k : positions) {
        out.insert(VarId::arg(static_cast<std::uint32_t>(k)));
    }
    return out;
}

} // namespace termi
