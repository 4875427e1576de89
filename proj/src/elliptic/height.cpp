#include "twistrank/elliptic/height.hpp"

#include "twistrank/elliptic/factor.hpp"
#include "twistrank/exact/mpoly.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace twistrank::elliptic {

namespace {

constexpr unsigned kMaxTerms = 200;

Decimal to_decimal(const Integer& v) { return Decimal(v.get_str()); }

Decimal log_integer(const Integer& v) { return boost::multiprecision::log(to_decimal(abs(v))); }

// Bareiss fraction-free determinant.
Integer integer_determinant(std::vector<std::vector<Integer>> m) {
    const std::size_t n = m.size();
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m[swap][k] == 0) ++swap;
            if (swap == n) return 0;
            std::swap(m[k], m[swap]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

// Resultant of two binary quartic forms given by coefficients of X^4 .. Z^4.
Integer binary_resultant(const std::vector<Integer>& f, const std::vector<Integer>& g) {
    std::vector<std::vector<Integer>> syl(8, std::vector<Integer>(8, 0));
    for (std::size_t row = 0; row < 4; ++row)
        for (std::size_t k = 0; k < 5; ++k) {
            syl[row][row + k] = f[k];
            syl[row + 4][row + k] = g[k];
        }
    return integer_determinant(syl);
}

template <class T>
struct Duplication {
    T a, b, a2;

    std::pair<T, T> operator()(const T& x, const T& z) const {
        const T x2 = x * x;
        const T z2 = z * z;
        const T z3 = z2 * z;
        const T phi = x2 * x2 - 2 * a * x2 * z2 - 8 * b * x * z3 + a2 * z2 * z2;
        const T psi = 4 * x2 * x * z + 4 * a * x * z3 + 4 * b * z3 * z;
        return {phi, psi};
    }
};

template <class T>
T max_abs(const T& u, const T& v) {
    using std::abs;
    using boost::multiprecision::abs;
    return std::max(abs(u), abs(v));
}

struct Interval {
    long double lo, hi;
};

Interval operator+(Interval a, Interval b) { return {a.lo + b.lo, a.hi + b.hi}; }
Interval operator*(Interval a, Interval b) {
    const long double c[] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}
Interval operator*(long double k, Interval a) { return k >= 0 ? Interval{k * a.lo, k * a.hi} : Interval{k * a.hi, k * a.lo}; }
Interval square(Interval a) {
    if (a.lo >= 0) return {a.lo * a.lo, a.hi * a.hi};
    if (a.hi <= 0) return {a.hi * a.hi, a.lo * a.lo};
    return {0, std::max(a.lo * a.lo, a.hi * a.hi)};
}
long double abs_min(Interval a) { return (a.lo <= 0 && a.hi >= 0) ? 0 : std::min(std::abs(a.lo), std::abs(a.hi)); }

// Lower bound for max(|Phi|, |Psi Z|) over a piece of the boundary of the unit
// square, by interval evaluation and bisection. `on_z` selects the edge Z = 1
// (t = X) or X = 1 (t = Z); even degree makes the opposite edges redundant.
long double edge_lower_bound(long double a, long double b, bool on_z, long double t0, long double t1, int depth) {
    const Interval t{t0, t1};
    const Interval one{1, 1};
    const Interval x = on_z ? t : one;
    const Interval z = on_z ? one : t;
    const Interval x2 = square(x);
    const Interval z2 = square(z);
    const Interval phi = square(x2) + (-2 * a) * (x2 * z2) + (-8 * b) * (x * (z2 * z)) + (a * a) * square(z2);
    const Interval psi = 4 * (x2 * x * z) + (4 * a) * (x * z2 * z) + (4 * b) * square(z2);
    const long double bound = std::max(abs_min(phi), abs_min(psi));

    const long double m = (t0 + t1) / 2;
    const long double xm = on_z ? m : 1;
    const long double zm = on_z ? 1 : m;
    const long double at_mid = std::max(std::abs(xm * xm * xm * xm - 2 * a * xm * xm * zm * zm - 8 * b * xm * zm * zm * zm + a * a * zm * zm * zm * zm),
                                        std::abs(4 * xm * xm * xm * zm + 4 * a * xm * zm * zm * zm + 4 * b * zm * zm * zm * zm));
    if (bound > 0 && (bound >= at_mid / 4 || depth >= 40)) return bound;
    if (depth >= 60) return 0;
    return std::min(edge_lower_bound(a, b, on_z, t0, m, depth + 1), edge_lower_bound(a, b, on_z, m, t1, depth + 1));
}

double duplication_lower_bound(long double a, long double b) {
    const long double lb = std::min(edge_lower_bound(a, b, true, -1, 1, 0), edge_lower_bound(a, b, false, -1, 1, 0));
    return static_cast<double>(lb * (1 - 1e-9L));
}

}  // namespace

std::string to_string(const Decimal& d, int digits) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(digits - 1) << d;
    return os.str();
}

Decimal naive_height(const QPoint& p) {
    if (p.infinity) return 0;
    const Integer num = abs(p.x.num());
    const Integer den = p.x.den();
    return log_integer(num > den ? num : den);
}

HeightCalculator::HeightCalculator(const QCurve& curve) : curve_(curve) {
    scale_ = exact::lcm(curve.a().den(), curve.b().den());
    const Rat ua = curve.a() * Rat(exact::pow(scale_, 4));
    const Rat ub = curve.b() * Rat(exact::pow(scale_, 6));
    a_ = ua.num();
    b_ = ub.num();
    const Integer a2 = a_ * a_;
    resultant_ = binary_resultant({1, 0, -2 * a_, -8 * b_, a2}, {0, 4, 0, 4 * a_, 4 * b_});
    if (resultant_ == 0) throw HeightError("duplication map is degenerate");
    primes_ = factor_integer(resultant_);

    const double fa = std::abs(a_.get_d());
    const double fb = std::abs(b_.get_d());
    const double upper = std::log(std::max(1 + 2 * fa + 8 * fb + fa * fa, 4 + 4 * fa + 4 * fb));
    const double lower = duplication_lower_bound(static_cast<long double>(a_.get_d()),
                                                 static_cast<long double>(b_.get_d()));
    if (!(lower > 0)) throw HeightError("could not bound the archimedean local term; try a different specialization");
    arch_bound_ = Decimal(std::max(upper, -std::log(lower)) + 1e-6);
}

HeightValue HeightCalculator::height(const QPoint& p, const Decimal& tol) const {
    if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
    if (!curve_.contains(p)) throw std::domain_error("point is not on the curve");
    const Decimal rounding("1e-30");
    if (p.infinity) return {0, rounding};

    const Decimal total_bound = arch_bound_ + log_integer(resultant_);
    unsigned terms = 1;
    Decimal tail = total_bound / 12;
    while (tail + rounding > tol) {
        if (++terms > kMaxTerms) throw HeightError("tolerance not reachable within the iteration budget");
        tail /= 4;
    }

    const Rat x = p.x * Rat(Integer(scale_ * scale_));
    const Integer a0 = x.num();
    const Integer b0 = x.den();
    const Duplication<Integer> dup{a_, b_, a_ * a_};
    const Duplication<Decimal> real_dup{to_decimal(a_), to_decimal(b_), to_decimal(a_ * a_)};

    // Archimedean part.
    Decimal value = log_integer(abs(a0) > b0 ? abs(a0) : b0);
    {
        const Decimal m = to_decimal(abs(a0) > b0 ? abs(a0) : b0);
        Decimal xr = to_decimal(a0) / m;
        Decimal zr = to_decimal(b0) / m;
        Decimal weight = 1;
        for (unsigned k = 0; k < terms; ++k) {
            weight /= 4;
            auto [xn, zn] = real_dup(xr, zr);
            const Decimal mx = max_abs(xn, zn);
            value += weight * boost::multiprecision::log(mx);
            xr = xn / mx;
            zr = zn / mx;
        }
    }

    // Non-archimedean parts.
    for (const auto& [prime, v] : primes_) {
        const unsigned long precision = static_cast<unsigned long>(terms + 1) * v + 1;
        unsigned long digits = precision;
        Integer modulus = exact::pow(prime, digits);
        auto reduce = [&](Integer t) {
            mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), modulus.get_mpz_t());
            return t;
        };
        Integer xi = reduce(a0);
        Integer zi = reduce(b0);
        Rat lost = 0;
        Rat weight = 1;
        for (unsigned k = 0; k < terms; ++k) {
            weight = weight / 4;
            auto [xn, zn] = dup(xi, zi);
            xn = reduce(xn);
            zn = reduce(zn);
            const unsigned long gx = xn == 0 ? digits : valuation(xn, prime);
            const unsigned long gz = zn == 0 ? digits : valuation(zn, prime);
            const unsigned long g = std::min(gx, gz);
            if (g > v || g >= digits) throw HeightError("p-adic precision exhausted");
            const Integer pg = exact::pow(prime, g);
            digits -= g;
            modulus = exact::pow(prime, digits);
            xi = reduce(xn / pg);
            zi = reduce(zn / pg);
            lost += weight * Rat(Integer(g));
        }
        if (!lost.is_zero())
            value -= to_decimal(lost.num()) / to_decimal(lost.den()) * log_integer(prime);
    }
    return {value, tail + rounding};
}

HeightValue canonical_height(const QCurve& curve, const QPoint& p, const Decimal& tol) {
    return HeightCalculator(curve).height(p, tol);
}

Decimal determinant(std::vector<std::vector<Decimal>> m) {
    const std::size_t n = m.size();
    Decimal det = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (abs(m[i][k]) > abs(m[piv][k])) piv = i;
        if (m[piv][k] == 0) return 0;
        if (piv != k) {
            std::swap(m[piv], m[k]);
            det = -det;
        }
        det *= m[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            const Decimal f = m[i][k] / m[k][k];
            for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    return det;
}

GramMatrix height_pairing_matrix(const HeightCalculator& calc, const std::vector<QPoint>& points, const Decimal& tol) {
    const std::size_t n = points.size();
    const auto& e = calc.curve();
    std::vector<Decimal> single(n);
    for (std::size_t i = 0; i < n; ++i) single[i] = calc.height(points[i], tol).value;
    GramMatrix g;
    g.entries.assign(n, std::vector<Decimal>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const Decimal sum = calc.height(ec_add(e, points[i], points[j]), tol).value;
            g.entries[i][j] = (sum - single[i] - single[j]) / 2;
            g.entries[j][i] = g.entries[i][j];
        }
    g.entry_error = tol * 3 / 2;
    g.determinant = determinant(g.entries);

    const Decimal row_error = boost::multiprecision::sqrt(Decimal(n)) * g.entry_error;
    Decimal exact_prod = 1;
    Decimal perturbed_prod = 1;
    for (const auto& row : g.entries) {
        Decimal norm = 0;
        for (const auto& v : row) norm += v * v;
        norm = boost::multiprecision::sqrt(norm);
        exact_prod *= norm;
        perturbed_prod *= norm + row_error;
    }
    g.determinant_error = perturbed_prod - exact_prod + Decimal("1e-25");
    return g;
}

GramMatrix height_pairing_matrix(const QCurve& curve, const std::vector<QPoint>& points, const Decimal& tol) {
    return height_pairing_matrix(HeightCalculator(curve), points, tol);
}

TorsionResult torsion_test(const QCurve& curve, const QPoint& p) {
    if (!curve.contains(p)) throw std::domain_error("point is not on the curve");
    QPoint acc = p;
    for (unsigned k = 1; k <= 12; ++k) {
        if (acc.infinity && k != 11) return {true, k};
        acc = ec_add(curve, acc, p);
    }
    return {false, 0};
}

std::string to_string(TwoTorsion t) {
    switch (t) {
        case TwoTorsion::Trivial: return "trivial";
        case TwoTorsion::Z2: return "Z/2";
        case TwoTorsion::Z2xZ2: return "(Z/2)^2";
    }
    return "";
}

TwoTorsion two_torsion(const std::vector<Rat>& f_in) {
    auto f = f_in;
    while (!f.empty() && f.back().is_zero()) f.pop_back();
    if (f.size() != 4) throw std::invalid_argument("f must be a cubic");
    if (!exact::squarefree_check(exact::univariate(f, exact::make_cyclo_field(2))))
        throw std::invalid_argument("f is not squarefree");
    const auto roots = exact::rational_roots(f).size();
    return roots == 0 ? TwoTorsion::Trivial : (roots == 1 ? TwoTorsion::Z2 : TwoTorsion::Z2xZ2);
}

}  // namespace twistrank::elliptic
