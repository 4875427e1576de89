#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace twistrank::exact {

using Integer = mpz_class;

/// Exact rational number in lowest terms with a positive denominator.
///
/// Backed by GMP's mpq_class; every constructor and arithmetic result is
/// canonicalized so that structural equality coincides with numeric equality.
class Rat {
public:
    Rat() = default;
    Rat(long v) : q_(v) {}                       // NOLINT(google-explicit-constructor)
    Rat(int v) : q_(v) {}                        // NOLINT(google-explicit-constructor)
    Rat(const Integer& v) : q_(v) {}             // NOLINT(google-explicit-constructor)
    Rat(const Integer& num, const Integer& den);
    explicit Rat(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    /// Parses "p", "-p", "p/q" (decimal digits only). Throws std::invalid_argument.
    static Rat parse(std::string_view text);

    Integer num() const { return q_.get_num(); }
    Integer den() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_one() const { return q_ == 1; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    Rat operator-() const { return Rat(mpq_class(-q_)); }
    Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
    Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
    Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    Rat inverse() const;
    Rat pow(long e) const;
    Rat abs() const { return Rat(mpq_class(::abs(q_))); }

    /// "p" for integers, "p/q" otherwise.
    std::string to_string() const;

private:
    mpq_class q_{0};
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

/// Exact r-th root if r-th power of a rational, otherwise false.
bool exact_root(const Rat& value, unsigned r, Rat& root);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
Integer pow(const Integer& base, unsigned long e);

}  // namespace twistrank::exact
