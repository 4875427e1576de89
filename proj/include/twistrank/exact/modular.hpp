#pragma once

#include "twistrank/exact/rat.hpp"

#include <cstdint>
#include <optional>

namespace twistrank::exact {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    const std::uint64_t s = a + b;
    return (s >= m || s < a) ? s - m : s;
}

inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return a >= b ? a - b : m - (b - a);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    base %= m;
    while (e > 0) {
        if (e & 1u) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        e >>= 1u;
    }
    return r;
}

/// Inverse modulo a prime; requires a != 0 mod m.
inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) { return pow_mod(a, m - 2, m); }

/// Residue of an integer modulo m in [0, m).
inline std::uint64_t integer_mod(const Integer& v, std::uint64_t m) {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), m);
    return r.get_ui();
}

/// Residue of a rational modulo a prime; nullopt when p divides the denominator.
inline std::optional<std::uint64_t> rat_mod(const Rat& v, std::uint64_t p) {
    const std::uint64_t d = integer_mod(v.den(), p);
    if (d == 0) return std::nullopt;
    return mul_mod(integer_mod(v.num(), p), inv_mod(d, p), p);
}

}  // namespace twistrank::exact
