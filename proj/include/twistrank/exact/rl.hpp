#pragma once

#include "twistrank/exact/mpoly.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace twistrank::exact {

class RLElem;

/// The ambient ring R_L = Q(zeta_s)(x_1..x_n)[y_1..y_n] / (y_i^s - g_i(x_i)).
///
/// Variable layout: x_1..x_n, y_1..y_n, then any extra formal symbols (used
/// for equations such as the twist in x, z, u). Each y_i^s is rewritten to the
/// y-free polynomial g_i; no other rewriting happens.
class QuotientRing : public std::enable_shared_from_this<QuotientRing> {
public:
    QuotientRing(unsigned s, unsigned n, FieldPtr field, VarsPtr vars, std::vector<MPoly> power_rhs);

    unsigned s() const { return s_; }
    unsigned n() const { return n_; }
    const FieldPtr& field() const { return field_; }
    const VarsPtr& vars() const { return vars_; }

    /// Variable indices (1-based i).
    std::size_t x_index(unsigned i) const { return i - 1; }
    std::size_t y_index(unsigned i) const { return n_ + i - 1; }
    bool is_y(std::size_t var) const { return var >= n_ && var < 2 * n_; }
    std::size_t extra_index(const std::string& name) const;

    /// Right-hand side g_i of y_i^s = g_i.
    const MPoly& power_rhs(unsigned i) const { return rhs_.at(i - 1); }

    MPoly poly(const Rat& c) const { return MPoly::constant(vars_, field_, c); }
    MPoly var(std::size_t index) const { return MPoly::variable(vars_, field_, index); }

    /// Rewrites y_i^s -> g_i until every y-exponent is below s.
    MPoly reduce(const MPoly& p) const;
    bool is_reduced(const MPoly& p) const;
    bool is_y_free(const MPoly& p) const;

    /// Canonical element num/den. `den` must be nonzero and free of y.
    RLElem normal_form(const MPoly& num) const;
    RLElem normal_form(const MPoly& num, const MPoly& den) const;

    RLElem element(const Rat& c) const;
    RLElem element(const CycloElem& c) const;
    RLElem x(unsigned i) const;
    RLElem y(unsigned i) const;
    RLElem extra(const std::string& name) const;

private:
    unsigned s_;
    unsigned n_;
    FieldPtr field_;
    VarsPtr vars_;
    std::vector<MPoly> rhs_;
};

using RingPtr = std::shared_ptr<const QuotientRing>;

/// Builds the standard ring for y^s = f(x): g_i = f(x_i), with extras x, z, u.
RingPtr make_standard_ring(unsigned s, unsigned n, const MPoly& f);

/// Normal-form element of R_L (with y-free denominators).
///
/// Canonical: numerator reduced, gcd(numerator, denominator) = 1 and the
/// denominator has leading coefficient 1. Structural equality is equality.
class RLElem {
public:
    RLElem() = default;

    const RingPtr& ring() const { return ring_; }
    const MPoly& numerator() const { return num_; }
    const MPoly& denominator() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }

    RLElem operator-() const;
    friend RLElem operator+(const RLElem& a, const RLElem& b);
    friend RLElem operator-(const RLElem& a, const RLElem& b);
    friend RLElem operator*(const RLElem& a, const RLElem& b);
    friend bool operator==(const RLElem& a, const RLElem& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    RLElem pow(unsigned e) const;
    /// Division by a y-free element.
    RLElem divided_by(const RLElem& d) const;
    /// Inverse of c * y_1^e_1 ... y_n^e_n with c y-free; throws std::domain_error otherwise.
    RLElem inverse() const;

    /// gamma^k: fixes every x_j (and extras), sends y_j -> zeta^k y_j.
    RLElem galois(long k = 1) const;
    bool is_galois_invariant() const { return galois(1) == *this; }

    /// Substitutes an RL element for a variable (extras or x's).
    RLElem substitute(std::size_t var, const RLElem& value) const;

    std::string to_string() const;

private:
    friend class QuotientRing;
    RLElem(RingPtr ring, MPoly num, MPoly den) : ring_(std::move(ring)), num_(std::move(num)), den_(std::move(den)) {}

    RingPtr ring_;
    MPoly num_;
    MPoly den_;
};

/// Evaluates a polynomial with rational coefficients at integer residues mod p.
/// `values` holds one residue per ring variable.
std::uint64_t evaluate_mod(const MPoly& p, const std::vector<std::uint64_t>& values, std::uint64_t prime);

/// Evaluates num/den mod p; nullopt when the denominator vanishes.
std::optional<std::uint64_t> evaluate_mod(const RLElem& e, const std::vector<std::uint64_t>& values,
                                          std::uint64_t prime);

/// Evaluates a polynomial with rational coefficients at rational values.
Rat evaluate(const MPoly& p, const std::vector<Rat>& values);

}  // namespace twistrank::exact
