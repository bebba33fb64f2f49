// Copyright (c) termi-arith contributors.
// SPDX-License-Identifier: Apache-2.0
#include "meta_interp.hpp"

#include <map>
#include <optional>
#include <stdexcept>

namespace termi::testing {

namespace {

struct CTerm {
    enum class Kind : std::uint8_t { Var, Int, Atom, Str, Float };
    Kind kind = Kind::Atom;
    std::int64_t value = 0; // var index, integer, atom or functor id
    std::vector<CTerm> args;
};

struct CLit {
    enum class Kind : std::uint8_t { User, Is, Cmp, Unify, True };
    Kind kind = Kind::True;
    std::size_t pred = 0;
    std::vector<CTerm> args;
    CTerm lhs;
    CTerm rhs;
    CmpOp op = CmpOp::Lt;
    bool from_equality = false;
    bool negated = false;
};

struct CClause {
    std::size_t nvars = 0;
    std::vector<CTerm> head;
    std::vector<CLit> body;
};

class ExecError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class Machine {
  public:
    Machine(const Program& program, const UserAtom& goal, const ExecOptions& options) : options_(options) {
        for (const auto& p : program.predicates()) {
            pred_id(p);
        }
        for (const auto& c : program.clauses()) {
            std::map<std::string, std::int64_t> vars;
            CClause cc;
            for (const auto& a : c.head.args) {
                cc.head.push_back(compile(a, vars));
            }
            for (const auto& l : c.body) {
                cc.body.push_back(compile(l, vars));
            }
            cc.nvars = vars.size();
            clauses_[pred_id(c.head.key())].push_back(std::move(cc));
        }
        std::map<std::string, std::int64_t> qvars;
        Literal ql;
        ql.node = goal;
        query_ = compile(ql, qvars);
        query_base_ = alloc_vars(qvars.size());
    }

    ExecResult run() {
        ExecResult out;
        try {
            solve(out);
        } catch (const ExecError& e) {
            out.status = ExecStatus::Error;
            out.error = e.what();
        }
        out.steps = steps_;
        out.depth_cut = depth_cut_;
        return out;
    }

  private:
    enum class Tag : std::uint8_t { Ref, Int, Atom, Str, Fun };
    struct Cell {
        Tag tag;
        std::int64_t v;
    };
    struct Frame {
        const CLit* lit;
        std::size_t base;
        std::size_t depth;
        std::int64_t next;
    };
    struct Choice {
        std::int64_t goal;
        std::size_t next_clause;
        std::size_t heap;
        std::size_t trail;
        std::size_t frames;
    };

    std::size_t pred_id(const PredKey& p) {
        auto [it, fresh] = preds_.try_emplace(p, preds_.size());
        if (fresh) {
            pred_keys_.push_back(p);
            clauses_.emplace_back();
        }
        return it->second;
    }

    std::int64_t symbol(const std::string& name, std::size_t arity) {
        auto [it, fresh] = symbols_.try_emplace({name, arity}, static_cast<std::int64_t>(symbol_names_.size()));
        if (fresh) {
            symbol_names_.emplace_back(name, arity);
        }
        return it->second;
    }

    CTerm compile(const Term& t, std::map<std::string, std::int64_t>& vars) {
        CTerm c;
        if (t.is_var()) {
            c.kind = CTerm::Kind::Var;
            c.value = vars.try_emplace(t.var_name(), static_cast<std::int64_t>(vars.size())).first->second;
        } else if (t.is_int()) {
            c.kind = CTerm::Kind::Int;
            if (t.int_value() > std::numeric_limits<std::int64_t>::max() ||
                t.int_value() < std::numeric_limits<std::int64_t>::min()) {
                throw std::invalid_argument("integer constant out of int64 range");
            }
            c.value = t.int_value().convert_to<std::int64_t>();
        } else if (t.is_float()) {
            c.kind = CTerm::Kind::Float;
        } else if (t.is_atom()) {
            c.kind = CTerm::Kind::Atom;
            c.value = symbol(std::get<AtomConst>(t.node).name, 0);
        } else {
            const Compound& k = t.as_compound();
            c.kind = CTerm::Kind::Str;
            c.value = symbol(k.functor, k.args.size());
            for (const auto& a : k.args) {
                c.args.push_back(compile(a, vars));
            }
        }
        return c;
    }

    CLit compile(const Literal& l, std::map<std::string, std::int64_t>& vars) {
        CLit c;
        if (const auto* a = l.user_atom()) {
            c.kind = CLit::Kind::User;
            c.pred = pred_id(a->key());
            for (const auto& t : a->args) {
                c.args.push_back(compile(t, vars));
            }
        } else if (const auto* is = l.is_lit()) {
            c.kind = CLit::Kind::Is;
            c.lhs = compile(is->lhs, vars);
            c.rhs = compile(is->rhs, vars);
        } else if (const auto* cmp = l.comparison()) {
            c.kind = CLit::Kind::Cmp;
            c.lhs = compile(cmp->lhs, vars);
            c.rhs = compile(cmp->rhs, vars);
            c.op = cmp->op;
            c.from_equality = cmp->from_equality;
        } else if (const auto* u = l.unify()) {
            c.kind = CLit::Kind::Unify;
            c.lhs = compile(u->lhs, vars);
            c.rhs = compile(u->rhs, vars);
            c.negated = u->negated;
        }
        return c;
    }

    std::size_t alloc_vars(std::size_t n) {
        const std::size_t base = heap_.size();
        for (std::size_t k = 0; k < n; ++k) {
            heap_.push_back({Tag::Ref, static_cast<std::int64_t>(base + k)});
        }
        return base;
    }

    std::size_t push(Tag tag, std::int64_t v) {
        heap_.push_back({tag, v});
        return heap_.size() - 1;
    }

    std::size_t deref(std::size_t i) const {
        while (heap_[i].tag == Tag::Ref && static_cast<std::size_t>(heap_[i].v) != i) {
            i = static_cast<std::size_t>(heap_[i].v);
        }
        return i;
    }

    bool unbound(std::size_t i) const { return heap_[i].tag == Tag::Ref; }

    void bind(std::size_t var, std::size_t to) {
        heap_[var].v = static_cast<std::int64_t>(to);
        trail_.push_back(var);
    }

    std::size_t build(const CTerm& t, std::size_t base) {
        switch (t.kind) {
        case CTerm::Kind::Var: return base + static_cast<std::size_t>(t.value);
        case CTerm::Kind::Int: return push(Tag::Int, t.value);
        case CTerm::Kind::Atom: return push(Tag::Atom, t.value);
        case CTerm::Kind::Float: throw ExecError("floating point values are not supported");
        case CTerm::Kind::Str: break;
        }
        const std::size_t fun = push(Tag::Fun, t.value);
        const std::size_t first = heap_.size();
        for (std::size_t k = 0; k < t.args.size(); ++k) {
            push(Tag::Ref, 0);
        }
        for (std::size_t k = 0; k < t.args.size(); ++k) {
            const std::size_t a = build(t.args[k], base);
            heap_[first + k] = {Tag::Ref, static_cast<std::int64_t>(a)};
        }
        return push(Tag::Str, static_cast<std::int64_t>(fun));
    }

    bool unify(std::size_t a, std::size_t b) {
        a = deref(a);
        b = deref(b);
        if (a == b) {
            return true;
        }
        if (unbound(a)) {
            bind(a, b);
            return true;
        }
        if (unbound(b)) {
            bind(b, a);
            return true;
        }
        if (heap_[a].tag != heap_[b].tag) {
            return false;
        }
        if (heap_[a].tag != Tag::Str) {
            return heap_[a].v == heap_[b].v;
        }
        const auto fa = static_cast<std::size_t>(heap_[a].v);
        const auto fb = static_cast<std::size_t>(heap_[b].v);
        if (heap_[fa].v != heap_[fb].v) {
            return false;
        }
        const std::size_t arity = symbol_names_[static_cast<std::size_t>(heap_[fa].v)].second;
        for (std::size_t k = 1; k <= arity; ++k) {
            if (!unify(fa + k, fb + k)) {
                return false;
            }
        }
        return true;
    }

    // Unifies a heap term with a clause term without building matching parts.
    bool unify_ct(std::size_t h, const CTerm& t, std::size_t base) {
        if (t.kind == CTerm::Kind::Var) {
            return unify(h, base + static_cast<std::size_t>(t.value));
        }
        h = deref(h);
        if (unbound(h)) {
            bind(h, build(t, base));
            return true;
        }
        switch (t.kind) {
        case CTerm::Kind::Int: return heap_[h].tag == Tag::Int && heap_[h].v == t.value;
        case CTerm::Kind::Atom: return heap_[h].tag == Tag::Atom && heap_[h].v == t.value;
        case CTerm::Kind::Float: throw ExecError("floating point values are not supported");
        default: break;
        }
        if (heap_[h].tag != Tag::Str) {
            return false;
        }
        const auto f = static_cast<std::size_t>(heap_[h].v);
        if (heap_[f].v != t.value) {
            return false;
        }
        for (std::size_t k = 0; k < t.args.size(); ++k) {
            if (!unify_ct(f + 1 + k, t.args[k], base)) {
                return false;
            }
        }
        return true;
    }

    std::int64_t eval(std::size_t h) {
        h = deref(h);
        switch (heap_[h].tag) {
        case Tag::Int: return heap_[h].v;
        case Tag::Ref: throw ExecError("instantiation error in arithmetic");
        case Tag::Str: break;
        default: throw ExecError("type error in arithmetic");
        }
        const auto f = static_cast<std::size_t>(heap_[h].v);
        const auto& [name, arity] = symbol_names_[static_cast<std::size_t>(heap_[f].v)];
        std::vector<std::int64_t> xs;
        for (std::size_t k = 1; k <= arity; ++k) {
            xs.push_back(eval(f + k));
        }
        return apply(name, xs);
    }

    std::int64_t eval_ct(const CTerm& t, std::size_t base) {
        switch (t.kind) {
        case CTerm::Kind::Var: return eval(base + static_cast<std::size_t>(t.value));
        case CTerm::Kind::Int: return t.value;
        case CTerm::Kind::Str: break;
        default: throw ExecError("type error in arithmetic");
        }
        std::vector<std::int64_t> xs;
        for (const auto& a : t.args) {
            xs.push_back(eval_ct(a, base));
        }
        return apply(symbol_names_[static_cast<std::size_t>(t.value)].first, xs);
    }

    static std::int64_t apply(const std::string& f, const std::vector<std::int64_t>& xs) {
        std::int64_t r = 0;
        bool overflow = false;
        if (xs.size() == 1 && f == "-") {
            overflow = __builtin_sub_overflow(std::int64_t{0}, xs[0], &r);
        } else if (xs.size() == 2 && f == "+") {
            overflow = __builtin_add_overflow(xs[0], xs[1], &r);
        } else if (xs.size() == 2 && f == "-") {
            overflow = __builtin_sub_overflow(xs[0], xs[1], &r);
        } else if (xs.size() == 2 && f == "*") {
            overflow = __builtin_mul_overflow(xs[0], xs[1], &r);
        } else if (xs.size() == 2 && f == "//") {
            if (xs[1] == 0) {
                throw ExecError("division by zero");
            }
            r = xs[0] / xs[1];
        } else {
            throw ExecError("unsupported arithmetic functor " + f);
        }
        if (overflow) {
            throw ExecError("integer overflow");
        }
        return r;
    }

    static bool compare(std::int64_t a, CmpOp op, std::int64_t b) {
        switch (op) {
        case CmpOp::Lt: return a < b;
        case CmpOp::Le: return a <= b;
        case CmpOp::Ge: return a >= b;
        case CmpOp::Gt: return a > b;
        case CmpOp::Eq: return a == b;
        case CmpOp::Ne: return a != b;
        }
        return false;
    }

    bool free_var(const CTerm& t, std::size_t base) const {
        return t.kind == CTerm::Kind::Var && unbound(deref(base + static_cast<std::size_t>(t.value)));
    }

    bool builtin(const CLit& l, std::size_t base) {
        switch (l.kind) {
        case CLit::Kind::True: return true;
        case CLit::Kind::Is: return unify_ct(push(Tag::Int, eval_ct(l.rhs, base)), l.lhs, base);
        case CLit::Kind::Cmp:
            if (l.from_equality && free_var(l.lhs, base)) {
                return unify_ct(push(Tag::Int, eval_ct(l.rhs, base)), l.lhs, base);
            }
            if (l.from_equality && free_var(l.rhs, base)) {
                return unify_ct(push(Tag::Int, eval_ct(l.lhs, base)), l.rhs, base);
            }
            return compare(eval_ct(l.lhs, base), l.op, eval_ct(l.rhs, base));
        case CLit::Kind::Unify: {
            const std::size_t trail = trail_.size();
            const bool ok = unify_ct(build(l.lhs, base), l.rhs, base);
            if (!l.negated) {
                return ok;
            }
            undo(trail);
            return !ok;
        }
        case CLit::Kind::User: break;
        }
        return false;
    }

    void undo(std::size_t trail) {
        while (trail_.size() > trail) {
            const std::size_t v = trail_.back();
            trail_.pop_back();
            heap_[v] = {Tag::Ref, static_cast<std::int64_t>(v)};
        }
    }

    std::string text(std::size_t h) const {
        h = deref(h);
        switch (heap_[h].tag) {
        case Tag::Ref: return "_";
        case Tag::Int: return std::to_string(heap_[h].v);
        case Tag::Atom: return symbol_names_[static_cast<std::size_t>(heap_[h].v)].first;
        default: break;
        }
        const auto f = static_cast<std::size_t>(heap_[h].v);
        const auto& [name, arity] = symbol_names_[static_cast<std::size_t>(heap_[f].v)];
        std::string out = name + "(";
        for (std::size_t k = 1; k <= arity; ++k) {
            out += (k > 1 ? "," : "") + text(f + k);
        }
        return out + ")";
    }

    std::vector<std::string> args_text(const CLit& l, std::size_t base) {
        std::vector<std::string> out;
        for (const auto& a : l.args) {
            out.push_back(text(build(a, base)));
        }
        return out;
    }

    // Resolves the goal frame with the first matching clause from `start`;
    // returns the continuation or -2 on failure.
    std::int64_t resolve(std::int64_t goal, std::size_t start) {
        const Frame f = frames_[static_cast<std::size_t>(goal)];
        const auto& candidates = clauses_[f.lit->pred];
        for (std::size_t i = start; i < candidates.size(); ++i) {
            const CClause& c = candidates[i];
            const Choice saved{goal, i + 1, heap_.size(), trail_.size(), frames_.size()};
            const std::size_t base = alloc_vars(c.nvars);
            bool ok = true;
            for (std::size_t k = 0; ok && k < c.head.size(); ++k) {
                const CTerm& a = f.lit->args[k];
                const std::size_t h = a.kind == CTerm::Kind::Var ? f.base + static_cast<std::size_t>(a.value)
                                                                 : build(a, f.base);
                ok = unify_ct(h, c.head[k], base);
            }
            if (!ok) {
                restore(saved);
                continue;
            }
            if (i + 1 < candidates.size()) {
                choices_.push_back(saved);
            }
            ++steps_;
            std::int64_t next = f.next;
            for (auto it = c.body.rbegin(); it != c.body.rend(); ++it) {
                frames_.push_back({&*it, base, f.depth + 1, next});
                next = static_cast<std::int64_t>(frames_.size() - 1);
            }
            return next;
        }
        return -2;
    }

    void restore(const Choice& c) {
        undo(c.trail);
        heap_.resize(c.heap);
        frames_.resize(c.frames);
    }

    // Next goal after backtracking, or -2 when the tree is exhausted.
    std::int64_t backtrack() {
        while (!choices_.empty()) {
            const Choice c = choices_.back();
            choices_.pop_back();
            restore(c);
            const std::int64_t next = resolve(c.goal, c.next_clause);
            if (next != -2) {
                return next;
            }
        }
        return -2;
    }

    void solve(ExecResult& out) {
        frames_.push_back({&query_, query_base_, 1, -1});
        std::int64_t cur = 0;
        for (;;) {
            if (steps_ > options_.limits.max_steps) {
                out.status = ExecStatus::StepBudget;
                return;
            }
            if (cur == -2) {
                return;
            }
            if (cur == -1) {
                std::vector<std::string> answer;
                for (const auto& a : query_.args) {
                    answer.push_back(text(build(a, query_base_)));
                }
                out.answers.push_back(std::move(answer));
                if (out.answers.size() >= options_.limits.max_answers) {
                    return;
                }
                cur = backtrack();
                continue;
            }
            const Frame f = frames_[static_cast<std::size_t>(cur)];
            if (f.lit->kind == CLit::Kind::User) {
                if (f.depth > options_.limits.max_depth) {
                    depth_cut_ = true;
                    cur = backtrack();
                    continue;
                }
                if (options_.record_calls) {
                    out.calls.emplace_back(pred_keys_[f.lit->pred], args_text(*f.lit, f.base));
                }
                const std::int64_t next = resolve(cur, 0);
                cur = next == -2 ? backtrack() : next;
                continue;
            }
            cur = builtin(*f.lit, f.base) ? f.next : backtrack();
        }
    }

    const ExecOptions& options_;
    std::map<PredKey, std::size_t> preds_;
    std::vector<PredKey> pred_keys_;
    std::vector<std::vector<CClause>> clauses_;
    std::map<std::pair<std::string, std::size_t>, std::int64_t> symbols_;
    std::vector<std::pair<std::string, std::size_t>> symbol_names_;
    CLit query_;
    std::size_t query_base_ = 0;
    std::vector<Cell> heap_;
    std::vector<std::size_t> trail_;
    std::vector<Frame> frames_;
    std::vector<Choice> choices_;
    std::size_t steps_ = 0;
    bool depth_cut_ = false;
};

} // namespace

ExecResult execute(const Program& program, const UserAtom& goal, const ExecOptions& options) {
    return Machine(program, goal, options).run();
}

bool is_integer_text(const std::string& s) {
    if (s.empty()) {
        return false;
    }
    const std::size_t start = s[0] == '-' ? 1 : 0;
    return start < s.size() && s.find_first_not_of("0123456789", start) == std::string::npos;
}

} // namespace termi::testing
