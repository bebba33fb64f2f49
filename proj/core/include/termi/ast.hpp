// Copyright (c) termi-arith contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "termi/linear.hpp"

namespace termi {

struct Term;

struct Variable {
    std::string name;
};

struct IntConst {
    BigInt value;
};

// A numeric literal that is not an integer, kept verbatim.
struct FloatConst {
    std::string text;
};

struct AtomConst {
    std::string name;
};

struct Compound {
    std::string functor;
    std::vector<Term> args;
};

struct Term {
    std::variant<Variable, IntConst, FloatConst, AtomConst, Compound> node;

    static Term var(std::string name) { return Term{Variable{std::move(name)}}; }
    static Term integer(BigInt v) { return Term{IntConst{std::move(v)}}; }
    static Term floating(std::string text) { return Term{FloatConst{std::move(text)}}; }
    static Term atom(std::string name) { return Term{AtomConst{std::move(name)}}; }
    static Term compound(std::string functor, std::vector<Term> args);

    [[nodiscard]] bool is_var() const { return std::holds_alternative<Variable>(node); }
    [[nodiscard]] bool is_int() const { return std::holds_alternative<IntConst>(node); }
    [[nodiscard]] bool is_float() const { return std::holds_alternative<FloatConst>(node); }
    [[nodiscard]] bool is_atom() const { return std::holds_alternative<AtomConst>(node); }
    [[nodiscard]] bool is_compound() const { return std::holds_alternative<Compound>(node); }

    [[nodiscard]] const std::string& var_name() const { return std::get<Variable>(node).name; }
    [[nodiscard]] const BigInt& int_value() const { return std::get<IntConst>(node).value; }
    [[nodiscard]] const Compound& as_compound() const { return std::get<Compound>(node); }
};

bool operator==(const Term& a, const Term& b);
std::strong_ordering compare(const Term& a, const Term& b);

void collect_vars(const Term& t, std::vector<std::string>& out);
std::set<std::string> term_vars(const Term& t);
bool contains_float(const Term& t);

// Arithmetic functors recognised inside is/2 and comparisons.
bool is_arith_functor(const std::string& f, std::size_t arity);
// Var, integer, float, or a compound built only from arithmetic functors.
bool is_arith_shaped(const Term& t);
// Operators used in an arithmetic term that fall outside {+, -, *}.
std::vector<std::string> non_integer_operators(const Term& t);

std::string to_string(const Term& t);

struct PredKey {
    std::string name;
    std::size_t arity = 0;

    [[nodiscard]] std::string str() const { return name + "/" + std::to_string(arity); }
    friend auto operator<=>(const PredKey&, const PredKey&) = default;
};

struct SourcePos {
    int line = 0;
    int column = 0;
};

enum class CmpOp : std::uint8_t { Lt, Le, Ge, Gt, Eq, Ne };

std::string to_string(CmpOp op);

struct UserAtom {
    std::string name;
    std::vector<Term> args;

    [[nodiscard]] PredKey key() const { return {name, args.size()}; }
};

struct IsLit {
    Term lhs;
    Term rhs;
};

struct Comparison {
    Term lhs;
    CmpOp op = CmpOp::Lt;
    Term rhs;
    // Set on the >=/=< pair produced from a numeric `=`; the pair still binds
    // like a unification.
    bool from_equality = false;
};

// Syntactic (non-numeric) `=` or `\=` between terms.
struct Unify {
    Term lhs;
    Term rhs;
    bool negated = false;
};

struct TrueLit {};

struct Literal {
    std::variant<UserAtom, IsLit, Comparison, Unify, TrueLit> node;
    SourcePos pos;

    [[nodiscard]] const UserAtom* user_atom() const { return std::get_if<UserAtom>(&node); }
    [[nodiscard]] const IsLit* is_lit() const { return std::get_if<IsLit>(&node); }
    [[nodiscard]] const Comparison* comparison() const { return std::get_if<Comparison>(&node); }
    [[nodiscard]] const Unify* unify() const { return std::get_if<Unify>(&node); }
};

bool operator==(const UserAtom& a, const UserAtom& b);
bool operator==(const Literal& a, const Literal& b);

std::string to_string(const UserAtom& a);
std::string to_string(const Literal& l);

struct Clause {
    UserAtom head;
    std::vector<Literal> body;
    SourcePos pos;

    [[nodiscard]] std::set<std::string> vars() const;
};

bool operator==(const Clause& a, const Clause& b);
std::string to_string(const Clause& c);

class Program {
  public:
    Program() = default;
    explicit Program(std::vector<Clause> clauses);

    void add(Clause c);

    [[nodiscard]] const std::vector<Clause>& clauses() const { return clauses_; }
    [[nodiscard]] const Clause& clause(std::size_t i) const { return clauses_.at(i); }
    [[nodiscard]] std::size_t size() const { return clauses_.size(); }
    [[nodiscard]] const std::vector<std::size_t>& clauses_of(const PredKey& p) const;
    [[nodiscard]] bool defines(const PredKey& p) const { return index_.contains(p); }
    [[nodiscard]] std::set<PredKey> predicates() const;

    friend bool operator==(const Program& a, const Program& b) { return a.clauses_ == b.clauses_; }

  private:
    std::vector<Clause> clauses_;
    std::map<PredKey, std::vector<std::size_t>> index_;
};

std::string to_string(const Program& p);

enum class ArgMode : std::uint8_t { I, B, F };

char to_char(ArgMode m);
// Lattice i <= b <= f.
inline bool mode_leq(ArgMode a, ArgMode b) { return static_cast<int>(a) <= static_cast<int>(b); }
inline ArgMode mode_join(ArgMode a, ArgMode b) { return mode_leq(a, b) ? b : a; }
inline ArgMode mode_meet(ArgMode a, ArgMode b) { return mode_leq(a, b) ? a : b; }
std::string modes_to_string(const std::vector<ArgMode>& modes);

struct QueryPattern {
    PredKey pred;
    std::vector<ArgMode> modes;

    [[nodiscard]] std::string str() const { return pred.name + modes_to_string(modes); }
};

} // namespace termi
