#pragma once

#include "twistrank/elliptic/curve.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace twistrank::elliptic {

bool is_prime(std::uint64_t n);

/// Square root modulo an odd prime (Tonelli-Shanks); nullopt for non-residues.
std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t p);

/// Reduction of Y^2 = X^3 + aX + b at p. Throws std::domain_error when p is
/// not an odd prime, divides a denominator, or divides the discriminant.
FpCurve reduce_mod(const QCurve& e, std::uint64_t p);
FpCurve curve_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p);

/// Every point of E(F_p), infinity first, then by X and Y.
std::vector<FpPoint> ec_points_mod_p(const FpCurve& e);
std::uint64_t group_order(const FpCurve& e);

/// Smallest k >= 1 with kP = infinity (brute force up to bound).
std::uint64_t point_order(const FpCurve& e, const FpPoint& p, std::uint64_t bound);

}  // namespace twistrank::elliptic
