#pragma once

#include "twistrank/exact/cyclo.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace twistrank::exact {

/// Ordered variable names. Position in the list is the variable's rank in the
/// term order (later = larger).
class VarSet {
public:
    explicit VarSet(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    std::optional<std::size_t> index_of(const std::string& name) const;
    const std::vector<std::string>& names() const { return names_; }

private:
    std::vector<std::string> names_;
};

using VarsPtr = std::shared_ptr<const VarSet>;

VarsPtr make_vars(std::vector<std::string> names);

using Exponent = std::vector<std::uint32_t>;

/// Graded lexicographic order; ties in total degree are broken on the
/// largest-ranked variable first.
struct GrlexLess {
    bool operator()(const Exponent& a, const Exponent& b) const;
};

/// Sparse multivariate polynomial over Q(zeta_s).
class MPoly {
public:
    using TermMap = std::map<Exponent, CycloElem, GrlexLess>;

    MPoly() = default;
    MPoly(VarsPtr vars, FieldPtr field);

    static MPoly constant(VarsPtr vars, FieldPtr field, const CycloElem& c);
    static MPoly constant(VarsPtr vars, FieldPtr field, const Rat& c);
    static MPoly variable(VarsPtr vars, FieldPtr field, std::size_t index, std::uint32_t power = 1);
    static MPoly monomial(VarsPtr vars, FieldPtr field, Exponent e, const CycloElem& c);

    /// A polynomial of the same ring with value c.
    MPoly lift(const CycloElem& c) const { return constant(vars_, field_, c); }
    MPoly lift(const Rat& c) const { return constant(vars_, field_, c); }
    MPoly zero() const { return MPoly(vars_, field_); }
    MPoly one() const { return lift(Rat(1)); }

    const VarsPtr& vars() const { return vars_; }
    const FieldPtr& field() const { return field_; }
    const TermMap& terms() const { return terms_; }
    std::size_t arity() const { return vars_->size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Constant term (zero if absent).
    CycloElem constant_term() const;

    std::uint32_t degree_in(std::size_t var) const;
    std::uint32_t total_degree() const;
    bool involves(std::size_t var) const { return degree_in(var) > 0; }
    /// Indices of variables that occur with positive exponent.
    std::vector<std::size_t> support() const;

    /// Largest term under GrlexLess. Undefined on zero.
    const Exponent& leading_exponent() const { return terms_.rbegin()->first; }
    const CycloElem& leading_coeff() const { return terms_.rbegin()->second; }

    /// Adds c * x^e in place.
    void add_term(const Exponent& e, const CycloElem& c);

    MPoly operator-() const;
    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    MPoly& operator*=(const MPoly& o);
    MPoly& operator*=(const CycloElem& c);
    MPoly& operator*=(const Rat& c);

    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    friend MPoly operator*(MPoly a, const CycloElem& c) { return a *= c; }
    friend MPoly operator*(MPoly a, const Rat& c) { return a *= c; }
    friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }

    MPoly pow(unsigned e) const;

    /// Replaces variable `var` by `value` (same ring).
    MPoly substitute(std::size_t var, const MPoly& value) const;
    /// Re-expresses this polynomial in another ring. var_map[i] is the target
    /// index for source variable i.
    MPoly map_vars(VarsPtr target, const std::vector<std::size_t>& var_map) const;
    MPoly derivative(std::size_t var) const;
    /// Coefficients with respect to `var`: degree -> polynomial free of `var`.
    std::map<std::uint32_t, MPoly> coefficients_in(std::size_t var) const;
    /// Divides by the leading coefficient. Zero stays zero.
    MPoly monic() const;

    /// Canonical rendering: terms in descending grlex order with explicit `^`.
    std::string to_string() const;

private:
    VarsPtr vars_;
    FieldPtr field_;
    TermMap terms_;
};

/// Exact quotient a / b if b divides a, otherwise nullopt.
std::optional<MPoly> divide_exact(const MPoly& a, const MPoly& b);

/// Monic multivariate gcd (recursive primitive remainder sequences).
MPoly gcd(const MPoly& a, const MPoly& b);

/// Monic gcd of two univariate polynomials in the same variable.
/// Throws std::invalid_argument on multivariate input or mismatched variables.
MPoly poly_gcd(const MPoly& a, const MPoly& b);

/// gcd(f, f') == 1 for univariate f. Throws std::invalid_argument on multivariate input.
bool squarefree_check(const MPoly& f);

/// Univariate polynomial in a single variable named `name` over Q(zeta_s),
/// from rational coefficients listed constant term first.
MPoly univariate(const std::vector<Rat>& coeffs, FieldPtr field, const std::string& name = "x");

/// Rational coefficients of a univariate polynomial, constant term first.
/// Throws std::domain_error if some coefficient is irrational.
std::vector<Rat> rational_coefficients(const MPoly& f);

/// Distinct rational roots of a univariate polynomial with rational coefficients.
std::vector<Rat> rational_roots(const std::vector<Rat>& coeffs);

/// Horner evaluation of a rational univariate polynomial.
Rat evaluate(const std::vector<Rat>& coeffs, const Rat& x);

}  // namespace twistrank::exact
