#pragma once

#include "twistrank/elliptic/curve.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace twistrank::elliptic {

class ModelError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Weierstrass form of d z^2 = c3 x^3 + c2 x^2 + c1 x + c0.
///
/// With h = c2/(3 c3) and x~ = x + h the cubic is c3 (x~^3 + p x~ + q). Put
/// A = p c3^2, B = q c3^3 and D = d c3^2; then
///   X = D c3 x~,  Y = D^2 z
/// maps onto Y^2 = X^3 + A D^2 X + B D^3. For monic f this is X = d x~, Y = d^2 z.
template <class T>
class CubicTwistModel {
public:
    /// coeffs = {c0, c1, c2, c3}, constant term first.
    CubicTwistModel(const std::vector<T>& coeffs, const T& d)
        : c3_(coeffs.at(3)), d_(d), curve_(build(coeffs, d)) {}

    const WeierstrassCurve<T>& curve() const { return curve_; }
    const T& d() const { return d_; }
    const T& shift() const { return shift_; }
    const T& depressed_a() const { return a_; }
    const T& depressed_b() const { return b_; }

    /// (x, z) on d z^2 = f(x) to E_d.
    ECPoint<T> forward(const T& x, const T& z) const {
        return ECPoint<T>::affine(scale_ * c3_ * (x + shift_), scale_ * scale_ * z);
    }

    /// Affine point of E_d back to (x, z); infinity has no affine preimage.
    std::optional<std::pair<T, T>> backward(const ECPoint<T>& p) const {
        if (p.infinity) return std::nullopt;
        return std::make_pair(p.x / (scale_ * c3_) - shift_, p.y / (scale_ * scale_));
    }

private:
    WeierstrassCurve<T> build(const std::vector<T>& c, const T& d) {
        if (c.size() != 4 || is_zero(c[3])) throw ModelError("f must be a cubic");
        if (is_zero(d)) throw ModelError("singular specialization: d = 0");
        const T& c0 = c[0];
        const T& c1 = c[1];
        const T& c2 = c[2];
        const T c3 = c[3];
        shift_ = c2 / (c3 * 3L);
        const T p = c1 / c3 - c2 * c2 / (c3 * c3 * 3L);
        const T q = c2 * c2 * c2 * 2L / (c3 * c3 * c3 * 27L) - c2 * c1 / (c3 * c3 * 3L) + c0 / c3;
        a_ = p * c3 * c3;
        b_ = q * c3 * c3 * c3;
        scale_ = d * c3 * c3;
        const T ea = a_ * scale_ * scale_;
        const T eb = b_ * scale_ * scale_ * scale_;
        if (is_zero(ea * ea * ea * 4L + eb * eb * 27L)) throw ModelError("f is not squarefree");
        return WeierstrassCurve<T>(ea, eb);
    }

    T c3_;
    T d_;
    T shift_{};
    T a_{};
    T b_{};
    T scale_{};
    WeierstrassCurve<T> curve_;
};

/// Weierstrass model of d z^2 = f(x) over Q for a squarefree cubic, or a
/// squarefree quartic with a rational root alpha. In the quartic case
/// x = alpha + 1/w, z = z' / w^2 turns the equation into d z'^2 = g(w) with
/// g(w) = w^4 f(alpha + 1/w) cubic, which then goes through the cubic model.
class TwistModel {
public:
    const QCurve& curve() const { return cubic_.curve(); }
    const CubicTwistModel<Rat>& cubic() const { return cubic_; }
    const std::vector<Rat>& f() const { return f_; }
    const Rat& d() const { return cubic_.d(); }
    const std::optional<Rat>& quartic_root() const { return alpha_; }

    /// Points with x = alpha (quartic case) go to infinity.
    QPoint forward(const Rat& x, const Rat& z) const;
    /// nullopt for points with no affine preimage on d z^2 = f(x).
    std::optional<std::pair<Rat, Rat>> backward(const QPoint& p) const;

private:
    friend TwistModel to_weierstrass(const std::vector<Rat>&, const Rat&);
    TwistModel(std::vector<Rat> f, std::optional<Rat> alpha, CubicTwistModel<Rat> cubic)
        : f_(std::move(f)), alpha_(std::move(alpha)), cubic_(std::move(cubic)) {}

    std::vector<Rat> f_;
    std::optional<Rat> alpha_;
    CubicTwistModel<Rat> cubic_;
};

/// Throws ModelError for d = 0, a non-squarefree f, or f neither cubic nor a
/// quartic with a rational root.
TwistModel to_weierstrass(const std::vector<Rat>& f, const Rat& d);

}  // namespace twistrank::elliptic
