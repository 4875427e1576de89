#include "twistrank/elliptic/fp.hpp"

#include <algorithm>
#include <stdexcept>

namespace twistrank::elliptic {

using exact::mul_mod;
using exact::pow_mod;

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r && composite; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) composite = false;
        }
        if (composite) return false;
    }
    return true;
}

std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) return 0;
    if (p == 2) return a;
    if (pow_mod(a, (p - 1) / 2, p) != 1) return std::nullopt;
    std::uint64_t q = p - 1;
    unsigned s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    std::uint64_t z = 2;
    while (pow_mod(z, (p - 1) / 2, p) != p - 1) ++z;
    std::uint64_t m = s;
    std::uint64_t c = pow_mod(z, q, p);
    std::uint64_t t = pow_mod(a, q, p);
    std::uint64_t r = pow_mod(a, (q + 1) / 2, p);
    while (t != 1) {
        std::uint64_t i = 0;
        std::uint64_t t2 = t;
        while (t2 != 1) {
            t2 = mul_mod(t2, t2, p);
            ++i;
        }
        std::uint64_t b = c;
        for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = mul_mod(b, b, p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    return r;
}

FpCurve curve_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    if (p < 3 || !is_prime(p)) throw std::domain_error("modulus must be an odd prime");
    const Fp fa(a, p);
    const Fp fb(b, p);
    if ((fa * fa * fa * 4L + fb * fb * 27L).is_zero()) throw std::domain_error("p divides the discriminant");
    return FpCurve(fa, fb);
}

FpCurve reduce_mod(const QCurve& e, std::uint64_t p) {
    if (p < 3 || !is_prime(p)) throw std::domain_error("modulus must be an odd prime");
    const auto a = exact::rat_mod(e.a(), p);
    const auto b = exact::rat_mod(e.b(), p);
    if (!a || !b) throw std::domain_error("p divides a coefficient denominator");
    return curve_mod(*a, *b, p);
}

std::vector<FpPoint> ec_points_mod_p(const FpCurve& e) {
    const std::uint64_t p = e.a().prime();
    std::vector<FpPoint> out{FpPoint::at_infinity()};
    for (std::uint64_t x = 0; x < p; ++x) {
        const Fp fx(x, p);
        const auto r = sqrt_mod(e.rhs(fx).value(), p);
        if (!r) continue;
        if (*r == 0) {
            out.push_back(FpPoint::affine(fx, Fp(0, p)));
        } else {
            const std::uint64_t lo = std::min(*r, p - *r);
            out.push_back(FpPoint::affine(fx, Fp(lo, p)));
            out.push_back(FpPoint::affine(fx, Fp(p - lo, p)));
        }
    }
    return out;
}

std::uint64_t group_order(const FpCurve& e) { return ec_points_mod_p(e).size(); }

std::uint64_t point_order(const FpCurve& e, const FpPoint& p, std::uint64_t bound) {
    FpPoint acc = p;
    for (std::uint64_t k = 1; k <= bound; ++k) {
        if (acc.infinity) return k;
        acc = ec_add(e, acc, p);
    }
    throw std::runtime_error("point order exceeds bound");
}

}  // namespace twistrank::elliptic
