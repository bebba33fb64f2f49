// Copyright (c) termi-arith contributors.
// SPDX-License-Identifier: Apache-2.0
#include "termi/normalize.hpp"

namespace termi {
namespace {

class FreshNames {
  public:
    explicit FreshNames(std::set<std::string> taken) : taken_(std::move(taken)) {}

    std::string next() {
        while (true) {
            std::string name = "_N" + std::to_string(++counter_);
            if (taken_.insert(name).second) {
                return name;
            }
        }
    }

  private:
    std::set<std::string> taken_;
    int counter_ = 0;
};

bool simple_operand(const Term& t) { return t.is_var() || t.is_int(); }

// Replaces a compound operand by a fresh variable bound with is/2 first.
Term name_operand(const Term& t, const SourcePos& pos, FreshNames& names, std::vector<Literal>& prefix) {
    if (simple_operand(t)) {
        return t;
    }
    Term v = Term::var(names.next());
    prefix.push_back(Literal{IsLit{v, t}, pos});
    return v;
}

Literal comparison(Term lhs, CmpOp op, Term rhs, bool from_eq, const SourcePos& pos) {
    return Literal{Comparison{std::move(lhs), op, std::move(rhs), from_eq}, pos};
}

} // namespace

Program normalize_program(const Program& p) {
    Program out;
    for (const auto& c : p.clauses()) {
        FreshNames names(c.vars());
        std::vector<std::vector<Literal>> bodies(1);
        auto append = [&](const std::vector<Literal>& lits) {
            for (auto& b : bodies) {
                b.insert(b.end(), lits.begin(), lits.end());
            }
        };
        for (const auto& lit : c.body) {
            const auto* cmp = lit.comparison();
            if (cmp == nullptr) {
                append({lit});
                continue;
            }
            const bool numeric = is_arith_shaped(cmp->lhs) && is_arith_shaped(cmp->rhs);
            if ((cmp->op == CmpOp::Eq || cmp->op == CmpOp::Ne) && !numeric) {
                append({Literal{Unify{cmp->lhs, cmp->rhs, cmp->op == CmpOp::Ne}, lit.pos}});
                continue;
            }
            std::vector<Literal> prefix;
            Term l = name_operand(cmp->lhs, lit.pos, names, prefix);
            Term r = name_operand(cmp->rhs, lit.pos, names, prefix);
            if (cmp->op == CmpOp::Eq) {
                prefix.push_back(comparison(l, CmpOp::Ge, r, true, lit.pos));
                prefix.push_back(comparison(l, CmpOp::Le, r, true, lit.pos));
                append(prefix);
            } else if (cmp->op == CmpOp::Ne) {
                append(prefix);
                std::vector<std::vector<Literal>> split;
                for (const auto& b : bodies) {
                    for (CmpOp op : {CmpOp::Gt, CmpOp::Lt}) {
                        split.push_back(b);
                        split.back().push_back(comparison(l, op, r, false, lit.pos));
                    }
                }
                bodies = std::move(split);
            } else {
                prefix.push_back(comparison(l, cmp->op, r, cmp->from_equality, lit.pos));
                append(prefix);
            }
        }
        for (auto& b : bodies) {
            out.add(Clause{c.head, std::move(b), c.pos});
        }
    }
    return out;
}

} // namespace termi
