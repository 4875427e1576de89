#pragma once

#include "twistrank/elliptic/curve.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace twistrank::elliptic {

using Decimal = boost::multiprecision::cpp_bin_float_50;

/// Significant digits used when rendering a Decimal.
constexpr int kDecimalDigits = 30;
std::string to_string(const Decimal& d, int digits = kDecimalDigits);

class HeightError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// value with |value - exact| <= tolerance.
struct HeightValue {
    Decimal value;
    Decimal tolerance;
};

/// log max(|num X|, den X); infinity has height 0.
Decimal naive_height(const QPoint& p);

/// Canonical height normalized as lim h(X(2^k P)) / 4^k, h the naive height above.
///
/// Computed as a sum of local terms along the orbit of the duplication map
/// X -> Phi(X, Z) / (Psi(X, Z) Z) on an integral model. The archimedean term
/// sums log max(|X'|, |Z'|) / 4^(k+1) over normalized real iterates; at each
/// prime dividing the resultant of the map, exact iterates are tracked modulo
/// a power of p and the lost content v_p(gcd) is subtracted. The number of
/// terms is chosen from explicit bounds on the local terms.
class HeightCalculator {
public:
    /// Factors the resultant; throws FactorizationError when that fails.
    explicit HeightCalculator(const QCurve& curve);

    const QCurve& curve() const { return curve_; }
    const Integer& resultant() const { return resultant_; }
    const std::map<Integer, unsigned>& bad_primes() const { return primes_; }

    /// Throws HeightError if the tolerance needs more than 200 terms.
    HeightValue height(const QPoint& p, const Decimal& tol) const;

private:
    QCurve curve_;
    Integer scale_;  // u with (u^4 a, u^6 b) integral
    Integer a_;
    Integer b_;
    Integer resultant_;
    std::map<Integer, unsigned> primes_;
    Decimal arch_bound_;  // sup |log max(|Phi|, |Psi Z|)| on normalized inputs
};

HeightValue canonical_height(const QCurve& curve, const QPoint& p, const Decimal& tol);

struct GramMatrix {
    std::vector<std::vector<Decimal>> entries;
    Decimal entry_error;  // bound on each entry's absolute error
    Decimal determinant;
    Decimal determinant_error;
};

/// G[i][j] = (h(P_i + P_j) - h(P_i) - h(P_j)) / 2, determinant by Gaussian
/// elimination with a Hadamard-type error bound.
GramMatrix height_pairing_matrix(const HeightCalculator& calc, const std::vector<QPoint>& points, const Decimal& tol);
GramMatrix height_pairing_matrix(const QCurve& curve, const std::vector<QPoint>& points, const Decimal& tol);

/// Determinant of a square matrix of decimals (partial pivoting).
Decimal determinant(std::vector<std::vector<Decimal>> m);

struct TorsionResult {
    bool torsion = false;
    unsigned order = 0;  // 0 for non-torsion
};

/// Checks kP for k in 1..10 and 12; otherwise non-torsion.
TorsionResult torsion_test(const QCurve& curve, const QPoint& p);

enum class TwoTorsion { Trivial, Z2, Z2xZ2 };
std::string to_string(TwoTorsion t);

/// Rational 2-torsion of y^2 = f(x) from the rational roots of the squarefree cubic f.
TwoTorsion two_torsion(const std::vector<Rat>& f);

}  // namespace twistrank::elliptic
