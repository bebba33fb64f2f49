// Copyright (c) termi-arith contributors.
// SPDX-License-Identifier: Apache-2.0
#include "termi/unfold.hpp"

#include <algorithm>

namespace termi {

namespace {

const Term* walk(const Term* t, const Subst& s) {
    while (t->is_var()) {
        auto it = s.find(t->var_name());
        if (it == s.end()) {
            break;
        }
        t = &it->second;
    }
    return t;
}

bool occurs(const std::string& v, const Term& t, const Subst& s) {
    const Term* w = walk(&t, s);
    if (w->is_var()) {
        return w->var_name() == v;
    }
    if (w->is_compound()) {
        for (const auto& a : w->as_compound().args) {
            if (occurs(v, a, s)) {
                return true;
            }
        }
    }
    return false;
}

Term rename_term(const Term& t, const std::map<std::string, std::string>& names) {
    if (t.is_var()) {
        return Term::var(names.at(t.var_name()));
    }
    if (t.is_compound()) {
        const auto& c = t.as_compound();
        std::vector<Term> args;
        for (const auto& a : c.args) {
            args.push_back(rename_term(a, names));
        }
        return Term::compound(c.functor, std::move(args));
    }
    return t;
}

Literal map_literal(const Literal& l, const std::function<Term(const Term&)>& f) {
    Literal out = l;
    std::visit(
        [&](auto& n) {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, UserAtom>) {
                for (auto& a : n.args) {
                    a = f(a);
                }
            } else if constexpr (std::is_same_v<N, IsLit> || std::is_same_v<N, Comparison> ||
                                 std::is_same_v<N, Unify>) {
                n.lhs = f(n.lhs);
                n.rhs = f(n.rhs);
            }
        },
        out.node);
    return out;
}

Clause rename_apart(const Clause& c, const std::set<std::string>& avoid) {
    const auto vars = c.vars();
    for (std::size_t n = 1;; ++n) {
        std::map<std::string, std::string> names;
        bool clash = false;
        for (const auto& v : vars) {
            std::string fresh = v + "_" + std::to_string(n);
            clash = clash || avoid.contains(fresh);
            names.emplace(v, std::move(fresh));
        }
        if (clash) {
            continue;
        }
        Clause out = c;
        for (auto& a : out.head.args) {
            a = rename_term(a, names);
        }
        for (auto& l : out.body) {
            l = map_literal(l, [&](const Term& t) { return rename_term(t, names); });
        }
        return out;
    }
}

} // namespace

Term apply_subst(const Term& t, const Subst& s) {
    const Term* w = walk(&t, s);
    if (w->is_compound()) {
        const auto& c = w->as_compound();
        std::vector<Term> args;
        args.reserve(c.args.size());
        for (const auto& a : c.args) {
            args.push_back(apply_subst(a, s));
        }
        return Term::compound(c.functor, std::move(args));
    }
    return *w;
}

Literal apply_subst(const Literal& l, const Subst& s) {
    return map_literal(l, [&](const Term& t) { return apply_subst(t, s); });
}

bool unify(const Term& a, const Term& b, Subst& s) {
    const Term* x = walk(&a, s);
    const Term* y = walk(&b, s);
    if (x->is_var() && y->is_var() && x->var_name() == y->var_name()) {
        return true;
    }
    if (x->is_var()) {
        if (occurs(x->var_name(), *y, s)) {
            return false;
        }
        s.emplace(x->var_name(), *y);
        return true;
    }
    if (y->is_var()) {
        return unify(*y, *x, s);
    }
    if (x->is_compound() && y->is_compound()) {
        const auto& cx = x->as_compound();
        const auto& cy = y->as_compound();
        if (cx.functor != cy.functor || cx.args.size() != cy.args.size()) {
            return false;
        }
        for (std::size_t i = 0; i < cx.args.size(); ++i) {
            if (!unify(cx.args[i], cy.args[i], s)) {
                return false;
            }
        }
        return true;
    }
    return *x == *y;
}

std::vector<Clause> resolvents(const Program& program, std::size_t clause, std::size_t literal) {
    const Clause& c = program.clause(clause);
    const UserAtom* selected = c.body.at(literal).user_atom();
    if (selected == nullptr) {
        throw UnfoldError("literal " + std::to_string(literal + 1) + " of clause " + std::to_string(clause + 1) +
                          " is a built-in");
    }
    const auto avoid = c.vars();
    std::vector<Clause> out;
    for (std::size_t di : program.clauses_of(selected->key())) {
        const Clause d = rename_apart(program.clause(di), avoid);
        Subst s;
        bool ok = true;
        for (std::size_t k = 0; ok && k < d.head.args.size(); ++k) {
            ok = unify(d.head.args[k], selected->args[k], s);
        }
        if (!ok) {
            continue;
        }
        Clause r;
        r.pos = c.pos;
        r.head = c.head;
        for (auto& a : r.head.args) {
            a = apply_subst(a, s);
        }
        for (std::size_t j = 0; j < literal; ++j) {
            r.body.push_back(apply_subst(c.body[j], s));
        }
        for (const auto& l : d.body) {
            r.body.push_back(apply_subst(l, s));
        }
        for (std::size_t j = literal + 1; j < c.body.size(); ++j) {
            r.body.push_back(apply_subst(c.body[j], s));
        }
        out.push_back(std::move(r));
    }
    return out;
}

Program unfold_once(const Program& program, std::size_t clause, std::size_t literal) {
    auto rs = resolvents(program, clause, literal);
    Program out;
    for (std::size_t i = 0; i < program.size(); ++i) {
        if (i == clause) {
            for (auto& r : rs) {
                out.add(std::move(r));
            }
        } else {
            out.add(program.clause(i));
        }
    }
    return out;
}

Program unfold_loops(const Program& program, const std::vector<std::vector<PredKey>>& loops, std::size_t times) {
    Program cur = program;
    for (std::size_t round = 0; round < times; ++round) {
        Program next;
        for (std::size_t i = 0; i < cur.size(); ++i) {
            const Clause& c = cur.clause(i);
            const std::vector<PredKey>* loop = nullptr;
            for (const auto& l : loops) {
                if (std::find(l.begin(), l.end(), c.head.key()) != l.end()) {
                    loop = &l;
                }
            }
            std::optional<std::size_t> target;
            if (loop != nullptr) {
                for (std::size_t j = 0; j < c.body.size() && !target; ++j) {
                    const auto* a = c.body[j].user_atom();
                    if (a != nullptr && std::find(loop->begin(), loop->end(), a->key()) != loop->end()) {
                        target = j;
                    }
                }
            }
            if (!target) {
                next.add(c);
                continue;
            }
            for (auto& r : resolvents(cur, i, *target)) {
                next.add(std::move(r));
            }
        }
        cur = std::move(next);
    }
    return cur;
}

} // namespace termi
