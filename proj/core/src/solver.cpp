// Copyright (c) termi-arith contributors.
// SPDX-License-Identifier: Apache-2.0
#include <optional>

#include "termi/linear.hpp"

namespace termi {
namespace {

// Inequalities are kept as  sum(coef * x) + c  (< | <=)  0, keyed by their
// coefficient vector scaled so that the first coefficient has magnitude 1.
// Only the tightest constant per key survives.
struct Bound {
    Rational c;
    bool strict = false;
};

using Coeffs = std::map<VarId, Rational>;

class Eliminator {
  public:
    explicit Eliminator(const SolverLimits& limits) : limits_(limits) {}

    bool infeasible() const { return infeasible_; }

    void add_inequality(const LinExpr& e, bool strict) {
        if (e.is_constant()) {
            check_constant(e.constant(), strict);
            return;
        }
        const Rational scale = abs(e.coeffs().begin()->second);
        Coeffs key;
        for (const auto& [v, c] : e.coeffs()) {
            key.emplace(v, c / scale);
        }
        insert(rows_, std::move(key), Bound{e.constant() / scale, strict});
    }

    // Gaussian elimination of equalities. Variables in `keep` are substituted
    // only when the equality mentions nothing else; such equalities are kept.
    void add_equalities(std::vector<LinExpr> eqs, const std::set<VarId>* keep) {
        while (!eqs.empty() && !infeasible_) {
            LinExpr e = std::move(eqs.back());
            eqs.pop_back();
            if (e.is_constant()) {
                if (e.constant() != 0) {
                    infeasible_ = true;
                }
                continue;
            }
            std::optional<VarId> pivot;
            for (const auto& [v, _] : e.coeffs()) {
                if (keep == nullptr || !keep->contains(v)) {
                    pivot = v;
                    break;
                }
            }
            if (!pivot) {
                kept_equalities_.push_back(e);
                continue;
            }
            const Rational a = e.coeff(*pivot);
            LinExpr rest = e;
            rest.add_term(*pivot, -a);
            const LinExpr solution = rest * (Rational(-1) / a);
            for (auto& other : eqs) {
                other = other.substitute(*pivot, solution);
            }
            for (auto& other : kept_equalities_) {
                other = other.substitute(*pivot, solution);
            }
            substitutions_.emplace_back(*pivot, solution);
        }
    }

    // Applies the equality substitutions to an inequality before insertion.
    LinExpr apply_substitutions(LinExpr e) const {
        for (const auto& [v, sol] : substitutions_) {
            e = e.substitute(v, sol);
        }
        return e;
    }

    // Eliminates every variable not in `keep` (all variables when keep is null).
    // Returns false when the atom cap was hit.
    bool eliminate(const std::set<VarId>* keep) {
        while (!infeasible_) {
            std::optional<VarId> best;
            std::size_t best_cost = 0;
            std::map<VarId, std::pair<std::size_t, std::size_t>> counts;
            for (const auto& [key, _] : rows_) {
                for (const auto& [v, c] : key) {
                    if (keep != nullptr && keep->contains(v)) {
                        continue;
                    }
                    auto& [pos, neg] = counts[v];
                    (c > 0 ? pos : neg)++;
                }
            }
            for (const auto& [v, pn] : counts) {
                const auto [pos, neg] = pn;
                const std::size_t cost = pos * neg + rows_.size();
                if (!best || cost < best_cost) {
                    best = v;
                    best_cost = cost;
                }
            }
            if (!best) {
                return true;
            }
            if (!eliminate_one(*best)) {
                return false;
            }
        }
        return true;
    }

    // Drops every row that still mentions a variable outside `keep`.
    void drop_foreign(const std::set<VarId>& keep) {
        for (auto it = rows_.begin(); it != rows_.end();) {
            bool foreign = false;
            for (const auto& [v, _] : it->first) {
                foreign = foreign || !keep.contains(v);
            }
            it = foreign ? rows_.erase(it) : std::next(it);
        }
    }

    Conjunction result() const {
        Conjunction out;
        if (infeasible_) {
            out.add(LinAtom::falsum());
            return out;
        }
        for (const auto& e : kept_equalities_) {
            out.add(LinAtom(e, Rel::Eq));
        }
        for (const auto& [key, b] : rows_) {
            LinExpr e(b.c);
            for (const auto& [v, c] : key) {
                e.add_term(v, c);
            }
            out.add(LinAtom(e, b.strict ? Rel::Lt : Rel::Le));
        }
        return out;
    }

  private:
    void check_constant(const Rational& c, bool strict) {
        if (strict ? !(c < 0) : !(c <= 0)) {
            infeasible_ = true;
        }
    }

    void insert(std::map<Coeffs, Bound>& rows, Coeffs key, Bound b) {
        auto [it, inserted] = rows.try_emplace(std::move(key), b);
        if (inserted) {
            return;
        }
        Bound& cur = it->second;
        if (b.c > cur.c || (b.c == cur.c && b.strict && !cur.strict)) {
            cur = b;
        }
    }

    bool eliminate_one(VarId x) {
        std::vector<std::pair<const Coeffs*, const Bound*>> pos;
        std::vector<std::pair<const Coeffs*, const Bound*>> neg;
        std::map<Coeffs, Bound> next;
        for (const auto& [key, b] : rows_) {
            auto it = key.find(x);
            if (it == key.end()) {
                next.emplace(key, b);
            } else if (it->second > 0) {
                pos.emplace_back(&key, &b);
            } else {
                neg.emplace_back(&key, &b);
            }
        }
        for (const auto& [pk, pb] : pos) {
            const Rational a = pk->at(x);
            for (const auto& [nk, nb] : neg) {
                const Rational m = -nk->at(x);
                LinExpr e(Rational(pb->c * m + nb->c * a));
                for (const auto& [v, c] : *pk) {
                    e.add_term(v, c * m);
                }
                for (const auto& [v, c] : *nk) {
                    e.add_term(v, c * a);
                }
                const bool strict = pb->strict || nb->strict;
                if (e.is_constant()) {
                    check_constant(e.constant(), strict);
                    if (infeasible_) {
                        rows_.clear();
                        return true;
                    }
                    continue;
                }
                const Rational scale = abs(e.coeffs().begin()->second);
                Coeffs key;
                for (const auto& [v, c] : e.coeffs()) {
                    key.emplace(v, c / scale);
                }
                insert(next, std::move(key), Bound{e.constant() / scale, strict});
                if (next.size() > limits_.max_atoms) {
                    return false;
                }
            }
        }
        rows_ = std::move(next);
        return true;
    }

    SolverLimits limits_;
    bool infeasible_ = false;
    std::map<Coeffs, Bound> rows_;
    std::vector<LinExpr> kept_equalities_;
    std::vector<std::pair<VarId, LinExpr>> substitutions_;
};

// Loads a conjunction into an eliminator: equalities first, then the
// inequalities rewritten through the equality solutions.
void load(Eliminator& el, const Conjunction& c, const std::set<VarId>* keep) {
    std::vector<LinExpr> eqs;
    for (const auto& a : c.atoms()) {
        if (a.rel() == Rel::Eq) {
            eqs.push_back(a.expr());
        }
    }
    el.add_equalities(std::move(eqs), keep);
    for (const auto& a : c.atoms()) {
        if (a.rel() != Rel::Eq && !el.infeasible()) {
            el.add_inequality(el.apply_substitutions(a.expr()), a.rel() == Rel::Lt);
        }
    }
}

} // namespace

Sat check_satisfiable(const Conjunction& c, const SolverLimits& limits) {
    if (c.has_ground_falsum()) {
        return Sat::No;
    }
    Eliminator el(limits);
    load(el, c, nullptr);
    if (el.infeasible()) {
        return Sat::No;
    }
    if (!el.eliminate(nullptr)) {
        return Sat::Unknown;
    }
    return el.infeasible() ? Sat::No : Sat::Yes;
}

bool is_satisfiable(const Conjunction& c, const SolverLimits& limits) {
    return check_satisfiable(c, limits) != Sat::No;
}

bool implies(const Conjunction& c, const LinAtom& a, const SolverLimits& limits) {
    if (a.is_ground() && a.holds_ground()) {
        return true;
    }
    for (const auto& part : a.as_inequalities()) {
        Conjunction probe = c;
        probe.add(part.negation().front());
        if (check_satisfiable(probe, limits) != Sat::No) {
            return false;
        }
    }
    return true;
}

bool implies_all(const Conjunction& c, const Conjunction& d, const SolverLimits& limits) {
    for (const auto& a : d.atoms()) {
        if (!implies(c, a, limits)) {
            return false;
        }
    }
    return true;
}

bool equivalent(const Conjunction& a, const Conjunction& b, const SolverLimits& limits) {
    return implies_all(a, b, limits) && implies_all(b, a, limits);
}

Projection project(const Conjunction& c, const std::set<VarId>& keep, const SolverLimits& limits) {
    Projection out;
    if (c.has_ground_falsum()) {
        out.constraint.add(LinAtom::falsum());
        return out;
    }
    Eliminator el(limits);
    load(el, c, &keep);
    if (!el.infeasible() && !el.eliminate(&keep)) {
        el.drop_foreign(keep);
        out.weakened = true;
    }
    out.constraint = remove_redundant(el.result(), limits);
    return out;
}

Conjunction remove_redundant(const Conjunction& c, const SolverLimits& limits) {
    if (c.has_ground_falsum()) {
        return Conjunction{LinAtom::falsum()};
    }
    std::vector<LinAtom> kept(c.atoms().begin(), c.atoms().end());
    for (std::size_t i = 0; i < kept.size();) {
        Conjunction others;
        for (std::size_t j = 0; j < kept.size(); ++j) {
            if (j != i) {
                others.add(kept[j]);
            }
        }
        if (implies(others, kept[i], limits)) {
            kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
            ++i;
        }
    }
    return Conjunction(kept);
}

} // namespace termi
