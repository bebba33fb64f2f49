// Copyright (c) termi-arith contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace termi {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

std::string to_string(const Rational& q);

// Variables live in disjoint spaces so that head positions, the two rows of a
// query-mapping pair and clause temporaries never collide.
enum class VarSpace : std::uint8_t { Arg, Dom, Rng, Mid, Tmp };

struct VarId {
    VarSpace space = VarSpace::Tmp;
    std::uint32_t index = 0;

    static VarId arg(std::uint32_t k) { return {VarSpace::Arg, k}; }
    static VarId dom(std::uint32_t k) { return {VarSpace::Dom, k}; }
    static VarId rng(std::uint32_t k) { return {VarSpace::Rng, k}; }
    static VarId mid(std::uint32_t k) { return {VarSpace::Mid, k}; }
    static VarId tmp(std::uint32_t k) { return {VarSpace::Tmp, k}; }

    friend auto operator<=>(const VarId&, const VarId&) = default;
};

// arg1, V1, U1, M1, _T1
std::string default_var_name(VarId v);

using VarNamer = std::function<std::string(VarId)>;
using VarRenamer = std::function<VarId(VarId)>;

class LinExpr {
  public:
    LinExpr() = default;
    LinExpr(const Rational& constant) : constant_(constant) {} // NOLINT
    LinExpr(long constant) : constant_(constant) {}            // NOLINT

    static LinExpr var(VarId v, const Rational& coeff = Rational(1));

    [[nodiscard]] const std::map<VarId, Rational>& coeffs() const { return coeffs_; }
    [[nodiscard]] const Rational& constant() const { return constant_; }
    [[nodiscard]] Rational coeff(VarId v) const;
    [[nodiscard]] bool is_constant() const { return coeffs_.empty(); }
    [[nodiscard]] bool mentions(VarId v) const { return coeffs_.contains(v); }
    [[nodiscard]] std::set<VarId> vars() const;

    void add_term(VarId v, const Rational& c);

    LinExpr& operator+=(const LinExpr& o);
    LinExpr& operator-=(const LinExpr& o);
    LinExpr& operator*=(const Rational& k);

    friend LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
    friend LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
    friend LinExpr operator*(LinExpr a, const Rational& k) { return a *= k; }
    friend LinExpr operator*(const Rational& k, LinExpr a) { return a *= k; }
    LinExpr operator-() const;

    [[nodiscard]] LinExpr substitute(VarId v, const LinExpr& replacement) const;
    [[nodiscard]] LinExpr rename(const VarRenamer& f) const;

    // Readable form: positive terms first, e.g. "100 - arg1", "arg2 - arg1".
    [[nodiscard]] std::string to_string(const VarNamer& namer = default_var_name) const;

    friend bool operator==(const LinExpr&, const LinExpr&) = default;
    friend int compare(const LinExpr& a, const LinExpr& b);
    friend bool operator<(const LinExpr& a, const LinExpr& b) { return compare(a, b) < 0; }

  private:
    std::map<VarId, Rational> coeffs_;
    Rational constant_;
};

// expr rel 0
enum class Rel : std::uint8_t { Lt, Le, Eq };

class LinAtom {
  public:
    // Canonicalizes: variable coefficients scaled to coprime integers, and the
    // leading coefficient of an equality made positive.
    LinAtom(LinExpr expr, Rel rel);

    static LinAtom lt(const LinExpr& a, const LinExpr& b) { return {a - b, Rel::Lt}; }
    static LinAtom le(const LinExpr& a, const LinExpr& b) { return {a - b, Rel::Le}; }
    static LinAtom gt(const LinExpr& a, const LinExpr& b) { return {b - a, Rel::Lt}; }
    static LinAtom ge(const LinExpr& a, const LinExpr& b) { return {b - a, Rel::Le}; }
    static LinAtom eq(const LinExpr& a, const LinExpr& b) { return {a - b, Rel::Eq}; }
    static LinAtom falsum() { return {LinExpr(1), Rel::Le}; }

    [[nodiscard]] const LinExpr& expr() const { return expr_; }
    [[nodiscard]] Rel rel() const { return rel_; }
    [[nodiscard]] bool is_ground() const { return expr_.is_constant(); }
    [[nodiscard]] bool holds_ground() const; // only meaningful when is_ground()
    [[nodiscard]] std::set<VarId> vars() const { return expr_.vars(); }

    // The complement as a disjunction of atoms (two strict atoms for an equality).
    [[nodiscard]] std::vector<LinAtom> negation() const;
    // An equality as the pair of non-strict inequalities; other atoms unchanged.
    [[nodiscard]] std::vector<LinAtom> as_inequalities() const;

    [[nodiscard]] LinAtom rename(const VarRenamer& f) const { return {expr_.rename(f), rel_}; }
    [[nodiscard]] LinAtom substitute(VarId v, const LinExpr& e) const { return {expr_.substitute(v, e), rel_}; }

    // Source comparison syntax, e.g. "arg1 > 89", "arg1 =< arg2".
    [[nodiscard]] std::string to_string(const VarNamer& namer = default_var_name) const;

    friend bool operator==(const LinAtom&, const LinAtom&) = default;
    friend bool operator<(const LinAtom& a, const LinAtom& b);

  private:
    LinExpr expr_;
    Rel rel_;
};

class Conjunction {
  public:
    Conjunction() = default;
    Conjunction(std::initializer_list<LinAtom> atoms);
    explicit Conjunction(const std::vector<LinAtom>& atoms);

    void add(const LinAtom& a);
    void add_all(const Conjunction& c);

    [[nodiscard]] const std::set<LinAtom>& atoms() const { return atoms_; }
    [[nodiscard]] bool empty() const { return atoms_.empty(); }
    [[nodiscard]] std::size_t size() const { return atoms_.size(); }
    [[nodiscard]] std::set<VarId> vars() const;
    [[nodiscard]] bool has_ground_falsum() const;

    [[nodiscard]] Conjunction rename(const VarRenamer& f) const;
    [[nodiscard]] Conjunction conjoin(const Conjunction& o) const;

    // "{arg1 > 89, arg1 =< 100}" or "true"
    [[nodiscard]] std::string to_string(const VarNamer& namer = default_var_name) const;

    friend bool operator==(const Conjunction&, const Conjunction&) = default;
    friend bool operator<(const Conjunction& a, const Conjunction& b) { return a.atoms_ < b.atoms_; }

  private:
    std::set<LinAtom> atoms_;
};

// ---------------------------------------------------------------------------
// Fourier-Motzkin over exact rationals.
// ---------------------------------------------------------------------------

enum class Sat : std::uint8_t { Yes, No, Unknown };

struct SolverLimits {
    std::size_t max_atoms = 10000;
};

[[nodiscard]] Sat check_satisfiable(const Conjunction& c, const SolverLimits& limits = {});

// Unknown counts as satisfiable.
[[nodiscard]] bool is_satisfiable(const Conjunction& c, const SolverLimits& limits = {});

// Unknown counts as not implied.
[[nodiscard]] bool implies(const Conjunction& c, const LinAtom& a, const SolverLimits& limits = {});
[[nodiscard]] bool implies_all(const Conjunction& c, const Conjunction& d, const SolverLimits& limits = {});
[[nodiscard]] bool equivalent(const Conjunction& a, const Conjunction& b, const SolverLimits& limits = {});

struct Projection {
    Conjunction constraint;
    bool weakened = false;
};

[[nodiscard]] Projection project(const Conjunction& c, const std::set<VarId>& keep, const SolverLimits& limits = {});

// Drops atoms implied by the remaining ones, scanning in atom order.
[[nodiscard]] Conjunction remove_redundant(const Conjunction& c, const SolverLimits& limits = {});

} // namespace termi
