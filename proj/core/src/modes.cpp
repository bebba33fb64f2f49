// Copyright (c) termi-arith contributors.
// SPDX-License-Identifier: Apache-2.0
#include "termi/modes.hpp"

#include <optional>

#include "termi/dependency_graph.hpp"

namespace termi {

ArgMode ModeAssignment::at(const PredKey& p, std::size_t pos) const {
    auto it = modes.find(p);
    if (it == modes.end() || pos == 0 || pos > it->second.size()) {
        return ArgMode::F;
    }
    return it->second[pos - 1];
}

std::vector<std::size_t> ModeAssignment::integer_positions(const PredKey& p) const {
    std::vector<std::size_t> out;
    auto it = modes.find(p);
    if (it != modes.end()) {
        for (std::size_t k = 0; k < it->second.size(); ++k) {
            if (it->second[k] == ArgMode::I) {
                out.push_back(k + 1);
            }
        }
    }
    return out;
}

namespace {

ArgMode lookup(const ModeEnv& env, const std::string& v) {
    auto it = env.find(v);
    return it == env.end() ? ArgMode::F : it->second;
}

void strengthen(ModeEnv& env, const std::string& v, ArgMode m) {
    if (m == ArgMode::F) {
        return;
    }
    auto [it, inserted] = env.try_emplace(v, m);
    if (!inserted) {
        it->second = mode_meet(it->second, m);
    }
}

void ground_all(const Term& t, ModeEnv& env) {
    for (const auto& v : term_vars(t)) {
        strengthen(env, v, ArgMode::B);
    }
}

// Result mode of evaluating an arithmetic expression.
ArgMode eval_mode(const Term& rhs, const ModeEnv& env) {
    bool all_int = !contains_float(rhs) && non_integer_operators(rhs).empty() && is_arith_shaped(rhs);
    for (const auto& v : term_vars(rhs)) {
        const ArgMode m = lookup(env, v);
        if (m == ArgMode::F) {
            return ArgMode::F;
        }
        all_int = all_int && m == ArgMode::I;
    }
    return all_int ? ArgMode::I : ArgMode::B;
}

void unify_modes(const Term& l, const Term& r, ModeEnv& env) {
    const ArgMode ml = term_mode(l, env);
    const ArgMode mr = term_mode(r, env);
    if (l.is_var()) {
        strengthen(env, l.var_name(), mr);
    } else if (mr != ArgMode::F) {
        ground_all(l, env);
    }
    if (r.is_var()) {
        strengthen(env, r.var_name(), ml);
    } else if (ml != ArgMode::F) {
        ground_all(r, env);
    }
}

} // namespace

ArgMode term_mode(const Term& t, const ModeEnv& env) {
    if (t.is_var()) {
        return lookup(env, t.var_name());
    }
    if (t.is_int()) {
        return ArgMode::I;
    }
    if (!t.is_compound()) {
        return ArgMode::B;
    }
    for (const auto& v : term_vars(t)) {
        if (lookup(env, v) == ArgMode::F) {
            return ArgMode::F;
        }
    }
    return ArgMode::B;
}

std::vector<ArgMode> call_modes_of(const UserAtom& a, const ModeEnv& env) {
    std::vector<ArgMode> out;
    out.reserve(a.args.size());
    for (const auto& t : a.args) {
        out.push_back(term_mode(t, env));
    }
    return out;
}

bool bind_head(const UserAtom& head, const std::vector<ArgMode>& modes, ModeEnv& env) {
    for (std::size_t k = 0; k < head.args.size() && k < modes.size(); ++k) {
        const Term& t = head.args[k];
        switch (modes[k]) {
        case ArgMode::I:
            if (t.is_var()) {
                strengthen(env, t.var_name(), ArgMode::I);
            } else if (!t.is_int()) {
                return false;
            }
            break;
        case ArgMode::B: ground_all(t, env); break;
        case ArgMode::F: break;
        }
    }
    return true;
}

bool apply_success(const UserAtom& a, const std::vector<ArgMode>& success, ModeEnv& env) {
    return bind_head(a, success, env);
}

void apply_builtin(const Literal& lit, ModeEnv& env) {
    if (const auto* is = lit.is_lit()) {
        const ArgMode m = eval_mode(is->rhs, env);
        if (is->lhs.is_var()) {
            strengthen(env, is->lhs.var_name(), m);
        }
    } else if (const auto* cmp = lit.comparison()) {
        if (cmp->from_equality) {
            unify_modes(cmp->lhs, cmp->rhs, env);
        }
    } else if (const auto* u = lit.unify()) {
        if (!u->negated) {
            unify_modes(u->lhs, u->rhs, env);
        }
    }
}

namespace {

class Analyzer {
  public:
    Analyzer(const Program& p, ModeAnalysis& out) : program_(p), out_(out) {}

    void run(const QueryPattern& q, bool guess_restrict) {
        out_.call_modes[q.pred] = q.modes;
        bool changed = true;
        while (changed) {
            changed_ = false;
            const auto calls = out_.call_modes;
            for (const auto& [pred, modes] : calls) {
                for (std::size_t ci : program_.clauses_of(pred)) {
                    auto success = analyze(ci, modes, false);
                    if (success) {
                        join_success(pred, *success);
                    }
                }
            }
            changed = changed_;
        }
        for (const auto& [pred, modes] : out_.call_modes) {
            const bool record = !guess_restrict || out_.relevant.contains(pred);
            for (std::size_t ci : program_.clauses_of(pred)) {
                recording_ = record;
                (void)analyze(ci, modes, true);
            }
        }
        recording_ = false;
    }

  private:
    void join_success(const PredKey& pred, const std::vector<ArgMode>& s) {
        auto [it, inserted] = out_.success_modes.try_emplace(pred, s);
        if (inserted) {
            changed_ = true;
            return;
        }
        for (std::size_t k = 0; k < s.size(); ++k) {
            const ArgMode j = mode_join(it->second[k], s[k]);
            if (j != it->second[k]) {
                it->second[k] = j;
                changed_ = true;
            }
        }
    }

    void join_call(const PredKey& pred, const std::vector<ArgMode>& m) {
        auto [it, inserted] = out_.call_modes.try_emplace(pred, m);
        if (inserted) {
            changed_ = true;
            return;
        }
        for (std::size_t k = 0; k < m.size(); ++k) {
            const ArgMode j = mode_join(it->second[k], m[k]);
            if (j != it->second[k]) {
                it->second[k] = j;
                changed_ = true;
            }
        }
    }

    void check_operands(std::size_t ci, std::size_t li, const Term& t, const ModeEnv& env) {
        for (const auto& v : term_vars(t)) {
            const ArgMode m = lookup(env, v);
            if (m != ArgMode::I) {
                out_.operand_issues.push_back({ci, li, v, m});
            }
        }
    }

    std::optional<std::vector<ArgMode>> analyze(std::size_t ci, const std::vector<ArgMode>& modes, bool final_pass) {
        const Clause& c = program_.clause(ci);
        ModeEnv env;
        if (!bind_head(c.head, modes, env)) {
            return std::nullopt;
        }
        if (final_pass) {
            out_.reachable_clauses.insert(ci);
        }
        for (std::size_t li = 0; li < c.body.size(); ++li) {
            const Literal& lit = c.body[li];
            if (const auto* a = lit.user_atom()) {
                join_call(a->key(), call_modes_of(*a, env));
                auto it = out_.success_modes.find(a->key());
                if (it == out_.success_modes.end() || !apply_success(*a, it->second, env)) {
                    return std::nullopt;
                }
                continue;
            }
            if (final_pass && recording_) {
                if (const auto* is = lit.is_lit()) {
                    check_operands(ci, li, is->rhs, env);
                } else if (const auto* cmp = lit.comparison(); cmp != nullptr && !cmp->from_equality) {
                    check_operands(ci, li, cmp->lhs, env);
                    check_operands(ci, li, cmp->rhs, env);
                }
            }
            apply_builtin(lit, env);
        }
        return call_modes_of(c.head, env);
    }

    const Program& program_;
    ModeAnalysis& out_;
    bool changed_ = false;
    bool recording_ = false;
};

void guess_numeric_positions(const Program& p, ModeAnalysis& out) {
    for (const auto& c : p.clauses()) {
        std::set<std::string> numeric;
        for (const auto& lit : c.body) {
            if (const auto* is = lit.is_lit()) {
                auto v = term_vars(is->lhs);
                numeric.insert(v.begin(), v.end());
                v = term_vars(is->rhs);
                numeric.insert(v.begin(), v.end());
            } else if (const auto* cmp = lit.comparison()) {
                auto v = term_vars(cmp->lhs);
                numeric.insert(v.begin(), v.end());
                v = term_vars(cmp->rhs);
                numeric.insert(v.begin(), v.end());
            }
        }
        for (std::size_t k = 0; k < c.head.args.size(); ++k) {
            const Term& t = c.head.args[k];
            if (t.is_var() && numeric.contains(t.var_name())) {
                out.guessed.emplace(c.head.key(), k + 1);
            }
        }
    }
    const PredGraph g = build_dependency_graph(p);
    for (const auto& [pred, _] : out.guessed) {
        const auto r = reachable_from(g, pred);
        out.relevant.insert(r.begin(), r.end());
    }
}

void mode_conflicts(const Program& p, const QueryPattern& q, ModeAnalysis& out) {
    const auto& clauses = p.clauses_of(q.pred);
    if (clauses.empty()) {
        return;
    }
    for (std::size_t k = 0; k < q.modes.size(); ++k) {
        if (q.modes[k] != ArgMode::I) {
            continue;
        }
        bool all_non_integer = true;
        for (std::size_t ci : clauses) {
            const Term& t = p.clause(ci).head.args[k];
            all_non_integer = all_non_integer && !(t.is_var() || t.is_int());
        }
        if (all_non_integer) {
            out.diagnostics.push_back("mode conflict: " + q.pred.str() + " argument " + std::to_string(k + 1) +
                                      " is declared i but every clause head binds it to a non-integer term");
        }
    }
}

} // namespace

ModeAnalysis infer_argument_modes(const Program& program, const QueryPattern& query, const ModeOptions& options) {
    ModeAnalysis out;
    guess_numeric_positions(program, out);
    Analyzer(program, out).run(query, options.guess_restrict);
    for (const auto& [pred, call] : out.call_modes) {
        std::vector<ArgMode> m = call;
        auto it = out.success_modes.find(pred);
        if (it != out.success_modes.end()) {
            for (std::size_t k = 0; k < m.size(); ++k) {
                m[k] = mode_meet(m[k], it->second[k]);
            }
        }
        out.assignment.modes[pred] = std::move(m);
    }
    mode_conflicts(program, query, out);
    return out;
}

} // namespace termi
