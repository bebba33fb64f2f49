// Copyright (c) termi-arith contributors.
// SPDX-License-Identifier: Apache-2.0
#include "termi/ast.hpp"

#include <cctype>
#include <sstream>

namespace termi {

Term Term::compound(std::string functor, std::vector<Term> args) {
    return Term{Compound{std::move(functor), std::move(args)}};
}

std::strong_ordering compare(const Term& a, const Term& b) {
    if (a.node.index() != b.node.index()) {
        return a.node.index() <=> b.node.index();
    }
    switch (a.node.index()) {
    case 0: return a.var_name() <=> b.var_name();
    case 1: {
        const auto& x = a.int_value();
        const auto& y = b.int_value();
        return x < y ? std::strong_ordering::less : (y < x ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    case 2: return std::get<FloatConst>(a.node).text <=> std::get<FloatConst>(b.node).text;
    case 3: return std::get<AtomConst>(a.node).name <=> std::get<AtomConst>(b.node).name;
    default: {
        const auto& x = a.as_compound();
        const auto& y = b.as_compound();
        if (auto c = x.functor <=> y.functor; c != 0) {
            return c;
        }
        if (auto c = x.args.size() <=> y.args.size(); c != 0) {
            return c;
        }
        for (std::size_t i = 0; i < x.args.size(); ++i) {
            if (auto c = compare(x.args[i], y.args[i]); c != 0) {
                return c;
            }
        }
        return std::strong_ordering::equal;
    }
    }
}

bool operator==(const Term& a, const Term& b) { return compare(a, b) == 0; }

void collect_vars(const Term& t, std::vector<std::string>& out) {
    if (t.is_var()) {
        out.push_back(t.var_name());
    } else if (t.is_compound()) {
        for (const auto& a : t.as_compound().args) {
            collect_vars(a, out);
        }
    }
}

std::set<std::string> term_vars(const Term& t) {
    std::vector<std::string> v;
    collect_vars(t, v);
    return {v.begin(), v.end()};
}

bool contains_float(const Term& t) {
    if (t.is_float()) {
        return true;
    }
    if (t.is_compound()) {
        for (const auto& a : t.as_compound().args) {
            if (contains_float(a)) {
                return true;
            }
        }
    }
    return false;
}

bool is_arith_functor(const std::string& f, std::size_t arity) {
    if (arity == 2) {
        return f == "+" || f == "-" || f == "*" || f == "/" || f == "//";
    }
    return arity == 1 && f == "-";
}

bool is_arith_shaped(const Term& t) {
    if (t.is_var() || t.is_int() || t.is_float()) {
        return true;
    }
    if (!t.is_compound()) {
        return false;
    }
    const auto& c = t.as_compound();
    if (!is_arith_functor(c.functor, c.args.size())) {
        return false;
    }
    for (const auto& a : c.args) {
        if (!is_arith_shaped(a)) {
            return false;
        }
    }
    return true;
}

std::vector<std::string> non_integer_operators(const Term& t) {
    std::vector<std::string> out;
    if (!t.is_compound()) {
        return out;
    }
    const auto& c = t.as_compound();
    const bool integral = (c.args.size() == 2 && (c.functor == "+" || c.functor == "-" || c.functor == "*")) ||
                          (c.args.size() == 1 && c.functor == "-");
    if (!integral) {
        out.push_back(c.functor);
    }
    for (const auto& a : c.args) {
        auto sub = non_integer_operators(a);
        out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
}

namespace {

bool plain_atom_name(const std::string& s) {
    if (s == "[]") {
        return true;
    }
    if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) {
        return false;
    }
    for (char ch : s) {
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') {
            return false;
        }
    }
    return true;
}

std::string quote_atom(const std::string& s) {
    if (plain_atom_name(s)) {
        return s;
    }
    std::string out = "'";
    for (char ch : s) {
        if (ch == '\'' || ch == '\\') {
            out += '\\';
        }
        out += ch;
    }
    return out + "'";
}

int precedence(const Term& t) {
    if (t.is_compound()) {
        const auto& c = t.as_compound();
        if (c.args.size() == 2 && (c.functor == "+" || c.functor == "-")) {
            return 500;
        }
        if (c.args.size() == 2 && (c.functor == "*" || c.functor == "/" || c.functor == "//")) {
            return 400;
        }
        if (c.args.size() == 1 && c.functor == "-") {
            return 200;
        }
    }
    if (t.is_int() && t.int_value() < 0) {
        return 200;
    }
    return 0;
}

void print(std::ostream& out, const Term& t);

void print_operand(std::ostream& out, const Term& t, bool parenthesize) {
    if (parenthesize) {
        out << "(";
        print(out, t);
        out << ")";
    } else {
        print(out, t);
    }
}

void print(std::ostream& out, const Term& t) {
    if (t.is_var()) {
        out << t.var_name();
        return;
    }
    if (t.is_int()) {
        out << t.int_value().str();
        return;
    }
    if (t.is_float()) {
        out << std::get<FloatConst>(t.node).text;
        return;
    }
    if (t.is_atom()) {
        out << quote_atom(std::get<AtomConst>(t.node).name);
        return;
    }
    const auto& c = t.as_compound();
    if (c.functor == "." && c.args.size() == 2) {
        out << "[";
        print(out, c.args[0]);
        const Term* tail = &c.args[1];
        while (tail->is_compound() && tail->as_compound().functor == "." && tail->as_compound().args.size() == 2) {
            out << ", ";
            print(out, tail->as_compound().args[0]);
            tail = &tail->as_compound().args[1];
        }
        if (!(tail->is_atom() && std::get<AtomConst>(tail->node).name == "[]")) {
            out << "|";
            print(out, *tail);
        }
        out << "]";
        return;
    }
    const int p = precedence(t);
    if (p == 500 || p == 400) {
        print_operand(out, c.args[0], precedence(c.args[0]) > p);
        out << " " << c.functor << " ";
        print_operand(out, c.args[1], precedence(c.args[1]) >= p);
        return;
    }
    if (p == 200) {
        out << "-";
        // -(5) stays a compound, -5 is an integer literal
        print_operand(out, c.args[0], precedence(c.args[0]) != 0 || c.args[0].is_int());
        return;
    }
    out << quote_atom(c.functor) << "(";
    for (std::size_t i = 0; i < c.args.size(); ++i) {
        out << (i == 0 ? "" : ", ");
        print(out, c.args[i]);
    }
    out << ")";
}

} // namespace

std::string to_string(const Term& t) {
    std::ostringstream out;
    print(out, t);
    return out.str();
}

std::string to_string(CmpOp op) {
    switch (op) {
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "=<";
    case CmpOp::Ge: return ">=";
    case CmpOp::Gt: return ">";
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "\\=";
    }
    return "?";
}

bool operator==(const UserAtom& a, const UserAtom& b) { return a.name == b.name && a.args == b.args; }

bool operator==(const Literal& a, const Literal& b) {
    if (a.node.index() != b.node.index()) {
        return false;
    }
    if (const auto* x = a.user_atom()) {
        return *x == *b.user_atom();
    }
    if (const auto* x = a.is_lit()) {
        return x->lhs == b.is_lit()->lhs && x->rhs == b.is_lit()->rhs;
    }
    if (const auto* x = a.comparison()) {
        const auto* y = b.comparison();
        return x->op == y->op && x->lhs == y->lhs && x->rhs == y->rhs && x->from_equality == y->from_equality;
    }
    if (const auto* x = a.unify()) {
        const auto* y = b.unify();
        return x->negated == y->negated && x->lhs == y->lhs && x->rhs == y->rhs;
    }
    return true;
}

std::string to_string(const UserAtom& a) {
    if (a.args.empty()) {
        return quote_atom(a.name);
    }
    return to_string(Term::compound(a.name, a.args));
}

std::string to_string(const Literal& l) {
    if (const auto* a = l.user_atom()) {
        return to_string(*a);
    }
    if (const auto* is = l.is_lit()) {
        return to_string(is->lhs) + " is " + to_string(is->rhs);
    }
    if (const auto* c = l.comparison()) {
        return to_string(c->lhs) + " " + to_string(c->op) + " " + to_string(c->rhs);
    }
    if (const auto* u = l.unify()) {
        return to_string(u->lhs) + (u->negated ? " \\= " : " = ") + to_string(u->rhs);
    }
    return "true";
}

std::set<std::string> Clause::vars() const {
    std::vector<std::string> v;
    for (const auto& a : head.args) {
        collect_vars(a, v);
    }
    for (const auto& l : body) {
        if (const auto* a = l.user_atom()) {
            for (const auto& t : a->args) {
                collect_vars(t, v);
            }
        } else if (const auto* is = l.is_lit()) {
            collect_vars(is->lhs, v);
            collect_vars(is->rhs, v);
        } else if (const auto* c = l.comparison()) {
            collect_vars(c->lhs, v);
            collect_vars(c->rhs, v);
        } else if (const auto* u = l.unify()) {
            collect_vars(u->lhs, v);
            collect_vars(u->rhs, v);
        }
    }
    return {v.begin(), v.end()};
}

bool operator==(const Clause& a, const Clause& b) { return a.head == b.head && a.body == b.body; }

std::string to_string(const Clause& c) {
    std::string out = to_string(c.head);
    for (std::size_t i = 0; i < c.body.size(); ++i) {
        out += (i == 0 ? " :- " : ", ");
        out += to_string(c.body[i]);
    }
    return out + ".";
}

Program::Program(std::vector<Clause> clauses) {
    for (auto& c : clauses) {
        add(std::move(c));
    }
}

void Program::add(Clause c) {
    index_[c.head.key()].push_back(clauses_.size());
    clauses_.push_back(std::move(c));
}

const std::vector<std::size_t>& Program::clauses_of(const PredKey& p) const {
    static const std::vector<std::size_t> none;
    auto it = index_.find(p);
    return it == index_.end() ? none : it->second;
}

std::set<PredKey> Program::predicates() const {
    std::set<PredKey> out;
    for (const auto& [k, _] : index_) {
        out.insert(k);
    }
    return out;
}

std::string to_string(const Program& p) {
    std::string out;
    for (const auto& c : p.clauses()) {
        out += to_string(c) + "\n";
    }
    return out;
}

char to_char(ArgMode m) {
    switch (m) {
    case ArgMode::I: return 'i';
    case ArgMode::B: return 'b';
    case ArgMode::F: return 'f';
    }
    return '?';
}

std::string modes_to_string(const std::vector<ArgMode>& modes) {
    if (modes.empty()) {
        return "";
    }
    std::string out = "(";
    for (std::size_t i = 0; i < modes.size(); ++i) {
        out += (i == 0 ? "" : ",");
        out += to_char(modes[i]);
    }
    return out + ")";
}

} // namespace termi
