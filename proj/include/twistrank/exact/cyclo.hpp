#pragma once

#include "twistrank/exact/rat.hpp"

#include <memory>
#include <string>
#include <vector>

namespace twistrank::exact {

/// Coefficients of Phi_s(t), constant term first. Monic of degree phi(s).
std::vector<Integer> cyclotomic_polynomial(unsigned s);

/// Euler's totient.
unsigned euler_phi(unsigned s);

/// The field Q(zeta_s) = Q[t]/(Phi_s). Immutable once built; shared by its elements.
class CycloField {
public:
    explicit CycloField(unsigned order);

    unsigned order() const { return order_; }
    unsigned degree() const { return static_cast<unsigned>(modulus_.size()) - 1; }
    /// Phi_s as rationals, constant term first.
    const std::vector<Rat>& modulus() const { return modulus_; }

private:
    unsigned order_;
    std::vector<Rat> modulus_;
};

using FieldPtr = std::shared_ptr<const CycloField>;

FieldPtr make_cyclo_field(unsigned order);

/// Element of Q(zeta_s), stored as its residue of degree < phi(s).
class CycloElem {
public:
    CycloElem() = default;
    CycloElem(FieldPtr field, const Rat& scalar);
    CycloElem(FieldPtr field, std::vector<Rat> coeffs);  // reduces mod Phi_s

    static CycloElem zero(FieldPtr field) { return {std::move(field), Rat(0)}; }
    static CycloElem one(FieldPtr field) { return {std::move(field), Rat(1)}; }
    /// zeta^k for any integer k.
    static CycloElem zeta(FieldPtr field, long k = 1);

    const FieldPtr& field() const { return field_; }
    const std::vector<Rat>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    bool is_one() const;
    /// True when the element lies in Q.
    bool is_rational() const;
    /// The rational value; throws std::domain_error unless is_rational().
    const Rat& rational() const;

    CycloElem operator-() const;
    CycloElem& operator+=(const CycloElem& o);
    CycloElem& operator-=(const CycloElem& o);
    CycloElem& operator*=(const CycloElem& o);
    CycloElem& operator*=(const Rat& r);

    friend CycloElem operator+(CycloElem a, const CycloElem& b) { return a += b; }
    friend CycloElem operator-(CycloElem a, const CycloElem& b) { return a -= b; }
    friend CycloElem operator*(CycloElem a, const CycloElem& b) { return a *= b; }
    friend CycloElem operator*(CycloElem a, const Rat& b) { return a *= b; }
    friend bool operator==(const CycloElem& a, const CycloElem& b);

    CycloElem pow(long e) const;

    /// Rendered as a polynomial in `zeta`, highest power first.
    std::string to_string() const;

private:
    FieldPtr field_;
    std::vector<Rat> coeffs_;
};

/// Multiplicative inverse by the extended Euclidean algorithm against Phi_s.
/// Throws std::domain_error on zero.
CycloElem cyclo_invert(const CycloElem& a);

}  // namespace twistrank::exact
