// Copyright (c) termi-arith contributors.
// SPDX-License-Identifier: Apache-2.0
#include "termi/parser.hpp"

#include <cctype>
#include <optional>

namespace termi {

ParseError::ParseError(const std::string& msg, int line, int column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg), line_(line),
      column_(column) {}

namespace {

enum class Tok { Var, Atom, QuotedAtom, Int, Float, Punct, End, Eof };

struct Token {
    Tok kind = Tok::Eof;
    std::string text;
    int line = 1;
    int column = 1;
};

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_layout();
        Token t;
        t.line = line_;
        t.column = column_;
        if (at_end()) {
            t.kind = Tok::Eof;
            return t;
        }
        const char ch = peek();
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            return number(t);
        }
        if (std::isupper(static_cast<unsigned char>(ch)) || ch == '_') {
            t.kind = Tok::Var;
            t.text = identifier();
            return t;
        }
        if (std::islower(static_cast<unsigned char>(ch))) {
            t.kind = Tok::Atom;
            t.text = identifier();
            return t;
        }
        if (ch == '\'') {
            return quoted(t);
        }
        if (ch == '.') {
            const char after = peek(1);
            if (after == '\0' || std::isspace(static_cast<unsigned char>(after)) || after == '%') {
                advance();
                t.kind = Tok::End;
                t.text = ".";
                return t;
            }
        }
        static const char* const multi[] = {":-", "=:=", "=\\=", "\\==", "\\=", "=<", ">=", "\\+", "->", "//", "=="};
        for (const char* op : multi) {
            const std::string_view sv(op);
            if (src_.substr(pos_, sv.size()) == sv) {
                for (std::size_t i = 0; i < sv.size(); ++i) {
                    advance();
                }
                t.kind = Tok::Punct;
                t.text = std::string(sv);
                return t;
            }
        }
        static const std::string single = "()[]|,+-*/<>=!;";
        if (single.find(ch) != std::string::npos) {
            advance();
            t.kind = Tok::Punct;
            t.text = std::string(1, ch);
            return t;
        }
        throw ParseError(std::string("unexpected character '") + ch + "'", line_, column_);
    }

  private:
    bool at_end() const { return pos_ >= src_.size(); }
    char peek(std::size_t k = 0) const { return pos_ + k < src_.size() ? src_[pos_ + k] : '\0'; }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_layout() {
        while (!at_end()) {
            const char ch = peek();
            if (std::isspace(static_cast<unsigned char>(ch))) {
                advance();
            } else if (ch == '%') {
                while (!at_end() && peek() != '\n') {
                    advance();
                }
            } else if (ch == '/' && peek(1) == '*') {
                const int l = line_;
                const int c = column_;
                advance();
                advance();
                while (!at_end() && !(peek() == '*' && peek(1) == '/')) {
                    advance();
                }
                if (at_end()) {
                    throw ParseError("unterminated block comment", l, c);
                }
                advance();
                advance();
            } else {
                return;
            }
        }
    }

    std::string identifier() {
        std::string out;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
            out += peek();
            advance();
        }
        return out;
    }

    Token number(Token t) {
        std::string out;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            out += peek();
            advance();
        }
        bool is_float = false;
        if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
            is_float = true;
            out += peek();
            advance();
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                out += peek();
                advance();
            }
        }
        if ((peek() == 'e' || peek() == 'E') &&
            (std::isdigit(static_cast<unsigned char>(peek(1))) ||
             ((peek(1) == '-' || peek(1) == '+') && std::isdigit(static_cast<unsigned char>(peek(2)))))) {
            is_float = true;
            out += peek();
            advance();
            out += peek();
            advance();
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                out += peek();
                advance();
            }
        }
        t.kind = is_float ? Tok::Float : Tok::Int;
        t.text = out;
        return t;
    }

    Token quoted(Token t) {
        advance();
        std::string out;
        while (true) {
            if (at_end()) {
                throw ParseError("unterminated quoted atom", t.line, t.column);
            }
            char ch = peek();
            advance();
            if (ch == '\'') {
                if (peek() == '\'') {
                    out += '\'';
                    advance();
                    continue;
                }
                break;
            }
            if (ch == '\\' && !at_end()) {
                ch = peek();
                advance();
            }
            out += ch;
        }
        t.kind = Tok::QuotedAtom;
        t.text = out;
        return t;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

class Parser {
  public:
    explicit Parser(std::string_view src) : lex_(src) { cur_ = lex_.next(); }

    Program program() {
        Program p;
        while (cur_.kind != Tok::Eof) {
            p.add(clause());
        }
        return p;
    }

    QueryPattern query() {
        QueryPattern q;
        if (cur_.kind != Tok::Atom && cur_.kind != Tok::QuotedAtom) {
            fail("expected a predicate name");
        }
        q.pred.name = cur_.text;
        bump();
        if (is_punct("(")) {
            bump();
            while (true) {
                if (cur_.kind != Tok::Atom || cur_.text.size() != 1 || std::string("ibf").find(cur_.text) == std::string::npos) {
                    fail("unknown mode '" + cur_.text + "' (expected i, b or f)");
                }
                q.modes.push_back(cur_.text == "i" ? ArgMode::I : (cur_.text == "b" ? ArgMode::B : ArgMode::F));
                bump();
                if (is_punct(",")) {
                    bump();
                    continue;
                }
                expect(")");
                break;
            }
        }
        if (cur_.kind == Tok::End) {
            bump();
        }
        if (cur_.kind != Tok::Eof) {
            fail("trailing input after query pattern");
        }
        q.pred.arity = q.modes.size();
        return q;
    }

  private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, cur_.line, cur_.column); }

    bool is_punct(const char* p) const { return cur_.kind == Tok::Punct && cur_.text == p; }

    void bump() { cur_ = lex_.next(); }

    void expect(const char* p) {
        if (!is_punct(p)) {
            fail(std::string("expected '") + p + "'");
        }
        bump();
    }

    std::string fresh_anonymous() { return "_G" + std::to_string(++anon_); }

    Clause clause() {
        Clause c;
        c.pos = {cur_.line, cur_.column};
        if (is_punct(":-")) {
            fail("directives are not supported");
        }
        last_line_ = cur_.line;
        last_column_ = cur_.column;
        Term head = expression();
        c.head = callable(head, "clause head");
        if (is_punct(":-")) {
            bump();
            while (true) {
                c.body.push_back(literal());
                if (is_punct(",")) {
                    bump();
                    continue;
                }
                break;
            }
        }
        if (cur_.kind != Tok::End) {
            if (is_punct(";") || is_punct("->")) {
                fail("disjunction and if-then-else are not supported");
            }
            fail("expected '.' at end of clause");
        }
        bump();
        return c;
    }

    UserAtom callable(const Term& t, const char* what) const {
        if (t.is_atom()) {
            return UserAtom{std::get<AtomConst>(t.node).name, {}};
        }
        if (t.is_compound()) {
            const auto& c = t.as_compound();
            return UserAtom{c.functor, c.args};
        }
        throw ParseError(std::string(what) + " must be an atom or compound term", last_line_, last_column_);
    }

    Literal literal() {
        Literal lit;
        lit.pos = {cur_.line, cur_.column};
        if (is_punct("!")) {
            fail("cut is not supported");
        }
        if (is_punct("\\+")) {
            fail("negation is not supported");
        }
        last_line_ = cur_.line;
        last_column_ = cur_.column;
        Term lhs = expression();
        if ((cur_.kind == Tok::Atom && cur_.text == "is")) {
            bump();
            lit.node = IsLit{std::move(lhs), expression()};
            return lit;
        }
        if (cur_.kind == Tok::Punct) {
            std::optional<CmpOp> op;
            const std::string& p = cur_.text;
            if (p == "<") op = CmpOp::Lt;
            else if (p == "=<") op = CmpOp::Le;
            else if (p == ">=") op = CmpOp::Ge;
            else if (p == ">") op = CmpOp::Gt;
            else if (p == "=" || p == "=:=") op = CmpOp::Eq;
            else if (p == "\\=" || p == "=\\=") op = CmpOp::Ne;
            else if (p == "==" || p == "\\==") fail("term comparison '" + p + "' is not supported");
            if (op) {
                bump();
                lit.node = Comparison{std::move(lhs), *op, expression(), false};
                return lit;
            }
        }
        if (lhs.is_atom() && std::get<AtomConst>(lhs.node).name == "true") {
            lit.node = TrueLit{};
            return lit;
        }
        UserAtom a = callable(lhs, "body literal");
        static const std::set<std::string> unsupported = {
            "findall", "bagof", "setof", "assert", "asserta", "assertz", "retract", "call", "not", "fail",
        };
        if (unsupported.contains(a.name)) {
            throw ParseError("built-in '" + a.name + "' is not supported", lit.pos.line, lit.pos.column);
        }
        if (a.name == "is" || (is_arith_functor(a.name, a.args.size()) && a.args.size() > 0)) {
            throw ParseError("arithmetic expression used as a goal", lit.pos.line, lit.pos.column);
        }
        lit.node = std::move(a);
        return lit;
    }

    Term expression() {
        Term t = product();
        while (is_punct("+") || is_punct("-")) {
            std::string op = cur_.text;
            bump();
            t = Term::compound(op, {std::move(t), product()});
        }
        return t;
    }

    Term product() {
        Term t = unary();
        while (is_punct("*") || is_punct("/") || is_punct("//")) {
            std::string op = cur_.text;
            bump();
            t = Term::compound(op, {std::move(t), unary()});
        }
        return t;
    }

    Term unary() {
        if (is_punct("-")) {
            bump();
            if (cur_.kind == Tok::Int) {
                Term t = Term::integer(-BigInt(cur_.text));
                bump();
                return t;
            }
            if (cur_.kind == Tok::Float) {
                Term t = Term::floating("-" + cur_.text);
                bump();
                return t;
            }
            return Term::compound("-", {unary()});
        }
        return primary();
    }

    Term primary() {
        switch (cur_.kind) {
        case Tok::Int: {
            Term t = Term::integer(BigInt(cur_.text));
            bump();
            return t;
        }
        case Tok::Float: {
            Term t = Term::floating(cur_.text);
            bump();
            return t;
        }
        case Tok::Var: {
            std::string name = cur_.text == "_" ? fresh_anonymous() : cur_.text;
            bump();
            return Term::var(std::move(name));
        }
        case Tok::Atom:
        case Tok::QuotedAtom: {
            std::string name = cur_.text;
            bump();
            if (is_punct("(")) {
                bump();
                std::vector<Term> args;
                while (true) {
                    args.push_back(expression());
                    if (is_punct(",")) {
                        bump();
                        continue;
                    }
                    expect(")");
                    break;
                }
                return Term::compound(std::move(name), std::move(args));
            }
            return Term::atom(std::move(name));
        }
        case Tok::Punct:
            if (is_punct("(")) {
                bump();
                Term t = expression();
                expect(")");
                return t;
            }
            if (is_punct("[")) {
                return list();
            }
            if (is_punct("!")) {
                fail("cut is not supported");
            }
            if (is_punct("\\+")) {
                fail("negation is not supported");
            }
            fail("unexpected '" + cur_.text + "'");
        case Tok::End: fail("unexpected end of clause");
        case Tok::Eof: fail("unexpected end of input");
        }
        fail("unexpected token");
    }

    Term list() {
        expect("[");
        if (is_punct("]")) {
            bump();
            return Term::atom("[]");
        }
        std::vector<Term> items;
        items.push_back(expression());
        while (is_punct(",")) {
            bump();
            items.push_back(expression());
        }
        Term tail = Term::atom("[]");
        if (is_punct("|")) {
            bump();
            tail = expression();
        }
        expect("]");
        for (auto it = items.rbegin(); it != items.rend(); ++it) {
            tail = Term::compound(".", {std::move(*it), std::move(tail)});
        }
        return tail;
    }

    Lexer lex_;
    Token cur_;
    int anon_ = 0;
    int last_line_ = 1;
    int last_column_ = 1;
};

} // namespace

Program parse_program(std::string_view source) {
    Parser p(source);
    Program prog = p.program();
    return prog;
}

QueryPattern parse_query_pattern(std::string_view text) {
    Parser p(text);
    return p.query();
}

} // namespace termi
