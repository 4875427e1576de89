#include "twistrank/exact/rat.hpp"

#include <cctype>
#include <stdexcept>

namespace twistrank::exact {

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        negative = text[i] == '-';
        ++i;
    }
    if (i == text.size())
        throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    for (std::size_t j = i; j < text.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(text[j])))
            throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    Integer v(std::string(text.substr(i)), 10);
    return negative ? Integer(-v) : v;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Rat::Rat(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rat Rat::parse(std::string_view text) {
    const std::string_view t = trim(text);
    const auto slash = t.find('/');
    if (slash == std::string_view::npos) return Rat(parse_integer(t, text));
    const Integer num = parse_integer(trim(t.substr(0, slash)), text);
    const Integer den = parse_integer(trim(t.substr(slash + 1)), text);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rat(num, den);
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw std::domain_error("division by zero rational");
    q_ /= o.q_;
    return *this;
}

Rat Rat::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero rational");
    return Rat(mpq_class(1) / q_);
}

Rat Rat::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Integer n, d;
    mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(e));
    return Rat(n, d);
}

std::string Rat::to_string() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.to_string(); }

bool exact_root(const Rat& value, unsigned r, Rat& root) {
    if (r == 0) return false;
    Integer n = value.num();
    const Integer d = value.den();
    const bool negative = n < 0;
    if (negative) {
        if (r % 2 == 0) return false;
        n = -n;
    }
    Integer rn, rd;
    if (mpz_root(rn.get_mpz_t(), n.get_mpz_t(), r) == 0) return false;
    if (mpz_root(rd.get_mpz_t(), d.get_mpz_t(), r) == 0) return false;
    root = Rat(negative ? Integer(-rn) : rn, rd);
    return true;
}

Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Integer lcm(const Integer& a, const Integer& b) {
    Integer g;
    mpz_lcm(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Integer pow(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

}  // namespace twistrank::exact
