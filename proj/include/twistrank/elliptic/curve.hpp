#pragma once

#include "twistrank/exact/modular.hpp"
#include "twistrank/exact/rat.hpp"

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

namespace twistrank::elliptic {

using exact::Integer;
using exact::Rat;

/// Element of the prime field F_p. Carries its modulus; mixing moduli is a logic error.
class Fp {
public:
    Fp() = default;
    Fp(std::uint64_t value, std::uint64_t prime) : v_(value % prime), p_(prime) {}
    static Fp from_rat(const Rat& r, std::uint64_t prime);

    std::uint64_t value() const { return v_; }
    std::uint64_t prime() const { return p_; }
    bool is_zero() const { return v_ == 0; }

    Fp operator-() const { return {v_ == 0 ? 0 : p_ - v_, p_}; }
    friend Fp operator+(Fp a, Fp b) { return {exact::add_mod(a.v_, b.v_, a.p_), a.p_}; }
    friend Fp operator-(Fp a, Fp b) { return {exact::sub_mod(a.v_, b.v_, a.p_), a.p_}; }
    friend Fp operator*(Fp a, Fp b) { return {exact::mul_mod(a.v_, b.v_, a.p_), a.p_}; }
    friend Fp operator*(Fp a, long k) {
        const long m = static_cast<long>(a.p_);
        return a * Fp(static_cast<std::uint64_t>(((k % m) + m) % m), a.p_);
    }
    friend Fp operator/(Fp a, Fp b) {
        if (b.is_zero()) throw std::domain_error("division by zero in F_p");
        return a * Fp(exact::inv_mod(b.v_, b.p_), a.p_);
    }
    friend bool operator==(Fp a, Fp b) { return a.v_ == b.v_ && a.p_ == b.p_; }

    std::string to_string() const { return std::to_string(v_); }

private:
    std::uint64_t v_ = 0;
    std::uint64_t p_ = 0;
};

inline bool is_zero(const Rat& r) { return r.is_zero(); }
inline bool is_zero(const Fp& r) { return r.is_zero(); }
inline std::string to_text(const Rat& r) { return r.to_string(); }
inline std::string to_text(const Fp& r) { return r.to_string(); }

/// A point of a short Weierstrass curve, or the point at infinity.
template <class T>
struct ECPoint {
    bool infinity = true;
    T x{};
    T y{};

    static ECPoint at_infinity() { return {}; }
    static ECPoint affine(T x, T y) { return {false, std::move(x), std::move(y)}; }

    friend bool operator==(const ECPoint& a, const ECPoint& b) {
        if (a.infinity || b.infinity) return a.infinity == b.infinity;
        return a.x == b.x && a.y == b.y;
    }

    std::string to_string() const {
        if (infinity) return "infinity";
        return "(" + to_text(x) + ", " + to_text(y) + ")";
    }
};

/// Y^2 = X^3 + a X + b with nonzero discriminant -16(4a^3 + 27b^2).
template <class T>
class WeierstrassCurve {
public:
    WeierstrassCurve(T a, T b) : a_(std::move(a)), b_(std::move(b)) {
        if (is_zero(discriminant())) throw std::domain_error("singular Weierstrass curve");
    }

    const T& a() const { return a_; }
    const T& b() const { return b_; }
    T discriminant() const { return (a_ * a_ * a_ * 4 + b_ * b_ * 27) * (-16L); }

    T rhs(const T& x) const { return (x * x + a_) * x + b_; }
    bool contains(const ECPoint<T>& p) const { return p.infinity || p.y * p.y == rhs(p.x); }

    ECPoint<T> point(T x, T y) const {
        auto p = ECPoint<T>::affine(std::move(x), std::move(y));
        if (!contains(p)) throw std::domain_error("point is not on the curve");
        return p;
    }

    std::string to_string() const {
        std::ostringstream os;
        os << "Y^2 = X^3";
        if (!is_zero(a_)) os << " + (" << to_text(a_) << ")*X";
        if (!is_zero(b_)) os << " + (" << to_text(b_) << ")";
        return os.str();
    }

private:
    T a_;
    T b_;
};

template <class T>
ECPoint<T> ec_neg(const ECPoint<T>& p) {
    if (p.infinity) return p;
    return ECPoint<T>::affine(p.x, -p.y);
}

template <class T>
ECPoint<T> ec_double(const WeierstrassCurve<T>& e, const ECPoint<T>& p) {
    if (p.infinity || is_zero(p.y)) return ECPoint<T>::at_infinity();
    const T lambda = (p.x * p.x * 3L + e.a()) / (p.y * 2L);
    const T x3 = lambda * lambda - p.x * 2L;
    const T y3 = lambda * (p.x - x3) - p.y;
    return ECPoint<T>::affine(x3, y3);
}

/// Chord-tangent addition; vertical chords give infinity.
template <class T>
ECPoint<T> ec_add(const WeierstrassCurve<T>& e, const ECPoint<T>& p, const ECPoint<T>& q) {
    if (p.infinity) return q;
    if (q.infinity) return p;
    if (p.x == q.x) {
        if (is_zero(p.y + q.y)) return ECPoint<T>::at_infinity();
        return ec_double(e, p);
    }
    const T lambda = (q.y - p.y) / (q.x - p.x);
    const T x3 = lambda * lambda - p.x - q.x;
    const T y3 = lambda * (p.x - x3) - p.y;
    return ECPoint<T>::affine(x3, y3);
}

template <class T>
ECPoint<T> ec_sub(const WeierstrassCurve<T>& e, const ECPoint<T>& p, const ECPoint<T>& q) {
    return ec_add(e, p, ec_neg(q));
}

/// k * P by double-and-add; negative k multiplies -P.
template <class T>
ECPoint<T> ec_mul(const WeierstrassCurve<T>& e, ECPoint<T> p, long k) {
    if (k < 0) {
        p = ec_neg(p);
        k = -k;
    }
    ECPoint<T> acc = ECPoint<T>::at_infinity();
    while (k > 0) {
        if (k & 1) acc = ec_add(e, acc, p);
        k >>= 1;
        if (k > 0) p = ec_double(e, p);
    }
    return acc;
}

using QCurve = WeierstrassCurve<Rat>;
using QPoint = ECPoint<Rat>;
using FpCurve = WeierstrassCurve<Fp>;
using FpPoint = ECPoint<Fp>;

}  // namespace twistrank::elliptic
