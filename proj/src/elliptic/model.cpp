#include "twistrank/elliptic/model.hpp"

#include "twistrank/exact/mpoly.hpp"

namespace twistrank::elliptic {

Fp Fp::from_rat(const Rat& r, std::uint64_t prime) {
    const auto v = exact::rat_mod(r, prime);
    if (!v) throw std::domain_error("denominator vanishes mod p");
    return {*v, prime};
}

namespace {

std::vector<Rat> trimmed(std::vector<Rat> f) {
    while (!f.empty() && f.back().is_zero()) f.pop_back();
    return f;
}

bool squarefree(const std::vector<Rat>& f) {
    return exact::squarefree_check(exact::univariate(f, exact::make_cyclo_field(2)));
}

// Taylor coefficients of f at alpha: f(alpha + t) = sum out[k] t^k.
std::vector<Rat> taylor_shift(const std::vector<Rat>& f, const Rat& alpha) {
    std::vector<Rat> out = f;
    const std::size_t n = out.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j > i; --j) out[j - 1] += alpha * out[j];
    return out;
}

}  // namespace

QPoint TwistModel::forward(const Rat& x, const Rat& z) const {
    if (!alpha_) return cubic_.forward(x, z);
    if (x == *alpha_) return QPoint::at_infinity();
    const Rat w = (x - *alpha_).inverse();
    return cubic_.forward(w, z * w * w);
}

std::optional<std::pair<Rat, Rat>> TwistModel::backward(const QPoint& p) const {
    if (!alpha_) return cubic_.backward(p);
    if (p.infinity) return std::make_pair(*alpha_, Rat(0));
    const auto wz = cubic_.backward(p);
    if (wz->first.is_zero()) return std::nullopt;
    const Rat& w = wz->first;
    return std::make_pair(*alpha_ + w.inverse(), wz->second / (w * w));
}

TwistModel to_weierstrass(const std::vector<Rat>& f_in, const Rat& d) {
    const auto f = trimmed(f_in);
    if (d.is_zero()) throw ModelError("singular specialization: d = 0");
    if (f.size() != 4 && f.size() != 5) throw ModelError("f must be a cubic (or a quartic with a rational root)");
    if (!squarefree(f)) throw ModelError("f is not squarefree");
    if (f.size() == 4) return TwistModel(f, std::nullopt, CubicTwistModel<Rat>(f, d));

    const auto roots = exact::rational_roots(f);
    if (roots.empty()) throw ModelError("quartic f without a rational root is not supported");
    const Rat alpha = roots.front();
    // w^4 f(alpha + 1/w) = sum_k t_k w^(4-k) with t = Taylor coefficients; t_0 = f(alpha) = 0.
    const auto t = taylor_shift(f, alpha);
    const std::vector<Rat> g = {t[4], t[3], t[2], t[1]};
    return TwistModel(f, alpha, CubicTwistModel<Rat>(g, d));
}

}  // namespace twistrank::elliptic
