#pragma once

#include "twistrank/exact/rat.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>

namespace twistrank::elliptic {

using exact::Integer;

class FactorizationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Prime factorization of |n| (n != 0): trial division to 10^6, then
/// Pollard-Brent rho with at most `rho_iterations` steps per split.
/// Throws FactorizationError when a composite cofactor resists.
std::map<Integer, unsigned> factor_integer(const Integer& n, std::uint64_t rho_iterations = 2'000'000);

/// p-adic valuation of a nonzero integer.
unsigned valuation(const Integer& n, const Integer& p);

}  // namespace twistrank::elliptic
