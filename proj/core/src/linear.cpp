// Copyright (c) termi-arith contributors.
// SPDX-License-Identifier: Apache-2.0
#include "termi/linear.hpp"

#include <sstream>

namespace termi {

std::string to_string(const Rational& q) {
    if (denominator(q) == 1) {
        return numerator(q).str();
    }
    return numerator(q).str() + "/" + denominator(q).str();
}

std::string default_var_name(VarId v) {
    const auto k = std::to_string(v.index);
    switch (v.space) {
    case VarSpace::Arg: return "arg" + k;
    case VarSpace::Dom: return "V" + k;
    case VarSpace::Rng: return "U" + k;
    case VarSpace::Mid: return "M" + k;
    case VarSpace::Tmp: return "_T" + k;
    }
    return "?";
}

LinExpr LinExpr::var(VarId v, const Rational& coeff) {
    LinExpr e;
    e.add_term(v, coeff);
    return e;
}

Rational LinExpr::coeff(VarId v) const {
    auto it = coeffs_.find(v);
    return it == coeffs_.end() ? Rational(0) : it->second;
}

std::set<VarId> LinExpr::vars() const {
    std::set<VarId> out;
    for (const auto& [v, _] : coeffs_) {
        out.insert(v);
    }
    return out;
}

void LinExpr::add_term(VarId v, const Rational& c) {
    if (c == 0) {
        return;
    }
    auto [it, inserted] = coeffs_.try_emplace(v, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) {
            coeffs_.erase(it);
        }
    }
}

LinExpr& LinExpr::operator+=(const LinExpr& o) {
    for (const auto& [v, c] : o.coeffs_) {
        add_term(v, c);
    }
    constant_ += o.constant_;
    return *this;
}

LinExpr& LinExpr::operator-=(const LinExpr& o) {
    for (const auto& [v, c] : o.coeffs_) {
        add_term(v, -c);
    }
    constant_ -= o.constant_;
    return *this;
}

LinExpr& LinExpr::operator*=(const Rational& k) {
    if (k == 0) {
        coeffs_.clear();
        constant_ = 0;
        return *this;
    }
    for (auto& [_, c] : coeffs_) {
        c *= k;
    }
    constant_ *= k;
    return *this;
}

LinExpr LinExpr::operator-() const {
    LinExpr e = *this;
    e *= Rational(-1);
    return e;
}

LinExpr LinExpr::substitute(VarId v, const LinExpr& replacement) const {
    auto it = coeffs_.find(v);
    if (it == coeffs_.end()) {
        return *this;
    }
    const Rational k = it->second;
    LinExpr out = *this;
    out.coeffs_.erase(v);
    out += replacement * k;
    return out;
}

LinExpr LinExpr::rename(const VarRenamer& f) const {
    LinExpr out(constant_);
    for (const auto& [v, c] : coeffs_) {
        out.add_term(f(v), c);
    }
    return out;
}

namespace {

std::string term_text(const Rational& magnitude, const std::string& name) {
    if (magnitude == 1) {
        return name;
    }
    return to_string(magnitude) + "*" + name;
}

} // namespace

std::string LinExpr::to_string(const VarNamer& namer) const {
    std::vector<std::pair<bool, std::string>> parts; // (negative, text)
    for (const auto& [v, c] : coeffs_) {
        if (c > 0) {
            parts.emplace_back(false, term_text(c, namer(v)));
        }
    }
    if (constant_ > 0) {
        parts.emplace_back(false, termi::to_string(constant_));
    }
    for (const auto& [v, c] : coeffs_) {
        if (c < 0) {
            parts.emplace_back(true, term_text(-c, namer(v)));
        }
    }
    if (constant_ < 0) {
        parts.emplace_back(true, termi::to_string(Rational(-constant_)));
    }
    if (parts.empty()) {
        return "0";
    }
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto& [neg, text] = parts[i];
        if (i == 0) {
            out += neg ? "-" + text : text;
        } else {
            out += neg ? " - " : " + ";
            out += text;
        }
    }
    return out;
}

int compare(const LinExpr& a, const LinExpr& b) {
    auto ia = a.coeffs_.begin();
    auto ib = b.coeffs_.begin();
    for (; ia != a.coeffs_.end() && ib != b.coeffs_.end(); ++ia, ++ib) {
        if (ia->first != ib->first) {
            return ia->first < ib->first ? -1 : 1;
        }
        if (ia->second != ib->second) {
            return ia->second < ib->second ? -1 : 1;
        }
    }
    if (ia != a.coeffs_.end()) {
        return 1;
    }
    if (ib != b.coeffs_.end()) {
        return -1;
    }
    if (a.constant_ != b.constant_) {
        return a.constant_ < b.constant_ ? -1 : 1;
    }
    return 0;
}

LinAtom::LinAtom(LinExpr expr, Rel rel) : expr_(std::move(expr)), rel_(rel) {
    if (expr_.is_constant()) {
        const Rational& c = expr_.constant();
        expr_ = LinExpr(c > 0 ? 1L : (c < 0 ? -1L : 0L));
        return;
    }
    BigInt den_lcm = 1;
    for (const auto& [_, c] : expr_.coeffs()) {
        den_lcm = boost::multiprecision::lcm(den_lcm, denominator(c));
    }
    BigInt num_gcd = 0;
    for (const auto& [_, c] : expr_.coeffs()) {
        BigInt scaled = numerator(c) * (den_lcm / denominator(c));
        num_gcd = boost::multiprecision::gcd(num_gcd, abs(scaled));
    }
    Rational factor(den_lcm, num_gcd);
    if (rel_ == Rel::Eq && expr_.coeffs().begin()->second < 0) {
        factor = -factor;
    }
    if (factor != 1) {
        expr_ *= factor;
    }
}

bool LinAtom::holds_ground() const {
    const Rational& c = expr_.constant();
    switch (rel_) {
    case Rel::Lt: return c < 0;
    case Rel::Le: return c <= 0;
    case Rel::Eq: return c == 0;
    }
    return false;
}

std::vector<LinAtom> LinAtom::negation() const {
    switch (rel_) {
    case Rel::Lt: return {LinAtom(-expr_, Rel::Le)};
    case Rel::Le: return {LinAtom(-expr_, Rel::Lt)};
    case Rel::Eq: return {LinAtom(expr_, Rel::Lt), LinAtom(-expr_, Rel::Lt)};
    }
    return {};
}

std::vector<LinAtom> LinAtom::as_inequalities() const {
    if (rel_ != Rel::Eq) {
        return {*this};
    }
    return {LinAtom(expr_, Rel::Le), LinAtom(-expr_, Rel::Le)};
}

std::string LinAtom::to_string(const VarNamer& namer) const {
    if (is_ground()) {
        return holds_ground() ? "true" : "false";
    }
    LinExpr e = expr_;
    bool has_positive = false;
    for (const auto& [_, c] : e.coeffs()) {
        has_positive = has_positive || c > 0;
    }
    std::string op;
    if (rel_ == Rel::Eq) {
        op = "=";
    } else if (has_positive) {
        op = rel_ == Rel::Lt ? "<" : "=<";
    } else {
        e = -e;
        op = rel_ == Rel::Lt ? ">" : ">=";
    }
    LinExpr lhs;
    LinExpr rhs(Rational(-e.constant()));
    for (const auto& [v, c] : e.coeffs()) {
        if (c > 0) {
            lhs.add_term(v, c);
        } else {
            rhs.add_term(v, -c);
        }
    }
    return lhs.to_string(namer) + " " + op + " " + rhs.to_string(namer);
}

bool operator<(const LinAtom& a, const LinAtom& b) {
    const int c = compare(a.expr_, b.expr_);
    if (c != 0) {
        return c < 0;
    }
    return a.rel_ < b.rel_;
}

Conjunction::Conjunction(std::initializer_list<LinAtom> atoms) {
    for (const auto& a : atoms) {
        add(a);
    }
}

Conjunction::Conjunction(const std::vector<LinAtom>& atoms) {
    for (const auto& a : atoms) {
        add(a);
    }
}

void Conjunction::add(const LinAtom& a) {
    if (a.is_ground() && a.holds_ground()) {
        return;
    }
    atoms_.insert(a);
}

void Conjunction::add_all(const Conjunction& c) {
    atoms_.insert(c.atoms_.begin(), c.atoms_.end());
}

std::set<VarId> Conjunction::vars() const {
    std::set<VarId> out;
    for (const auto& a : atoms_) {
        for (const auto& [v, _] : a.expr().coeffs()) {
            out.insert(v);
        }
    }
    return out;
}

bool Conjunction::has_ground_falsum() const {
    for (const auto& a : atoms_) {
        if (a.is_ground() && !a.holds_ground()) {
            return true;
        }
    }
    return false;
}

Conjunction Conjunction::rename(const VarRenamer& f) const {
    Conjunction out;
    for (const auto& a : atoms_) {
        out.add(a.rename(f));
    }
    return out;
}

Conjunction Conjunction::conjoin(const Conjunction& o) const {
    Conjunction out = *this;
    out.add_all(o);
    return out;
}

std::string Conjunction::to_string(const VarNamer& namer) const {
    if (atoms_.empty()) {
        return "true";
    }
    std::ostringstream out;
    out << "{";
    bool first = true;
    for (const auto& a : atoms_) {
        out << (first ? "" : ", ") << a.to_string(namer);
        first = false;
    }
    out << "}";
    return out.str();
}

} // namespace termi
