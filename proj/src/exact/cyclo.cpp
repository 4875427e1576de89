#include "twistrank/exact/cyclo.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace twistrank::exact {

namespace {

using QPoly = std::vector<Rat>;  // constant term first

void trim(QPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

void trim(std::vector<Integer>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Division by a monic integer polynomial; remainder must vanish.
std::vector<Integer> exact_div_monic(std::vector<Integer> num, const std::vector<Integer>& den) {
    const std::size_t dd = den.size() - 1;
    if (num.size() < den.size()) throw std::logic_error("exact_div_monic: degree");
    std::vector<Integer> quot(num.size() - dd, 0);
    for (std::size_t k = num.size(); k-- > dd;) {
        const Integer c = num[k];
        if (c == 0) continue;
        quot[k - dd] = c;
        for (std::size_t j = 0; j <= dd; ++j) num[k - dd + j] -= c * den[j];
    }
    trim(num);
    if (!num.empty()) throw std::logic_error("exact_div_monic: nonzero remainder");
    return quot;
}

QPoly mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly out(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    trim(out);
    return out;
}

QPoly sub(QPoly a, const QPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rat(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

std::pair<QPoly, QPoly> divmod(QPoly num, const QPoly& den) {
    if (den.empty()) throw std::domain_error("polynomial division by zero");
    const std::size_t dd = den.size() - 1;
    if (num.size() <= dd) return {QPoly{}, std::move(num)};
    QPoly quot(num.size() - dd, Rat(0));
    const Rat lead_inv = den.back().inverse();
    for (std::size_t k = num.size(); k-- > dd;) {
        if (num[k].is_zero()) continue;
        const Rat c = num[k] * lead_inv;
        quot[k - dd] = c;
        for (std::size_t j = 0; j <= dd; ++j) num[k - dd + j] -= c * den[j];
    }
    trim(quot);
    num.resize(dd);
    trim(num);
    return {std::move(quot), std::move(num)};
}

// In-place reduction modulo a monic modulus.
void reduce_mod(QPoly& p, const QPoly& modulus) {
    const std::size_t dd = modulus.size() - 1;
    for (std::size_t k = p.size(); k-- > dd;) {
        if (p[k].is_zero()) continue;
        const Rat c = p[k];
        for (std::size_t j = 0; j <= dd; ++j) p[k - dd + j] -= c * modulus[j];
    }
    p.resize(std::min(p.size(), dd));
}

}  // namespace

unsigned euler_phi(unsigned s) {
    unsigned result = s;
    unsigned m = s;
    for (unsigned p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        while (m % p == 0) m /= p;
        result -= result / p;
    }
    if (m > 1) result -= result / m;
    return result;
}

std::vector<Integer> cyclotomic_polynomial(unsigned s) {
    if (s == 0) throw std::invalid_argument("cyclotomic_polynomial: s must be >= 1");
    std::vector<Integer> p(s + 1, 0);
    p[0] = -1;
    p[s] = 1;
    for (unsigned d = 1; d < s; ++d)
        if (s % d == 0) p = exact_div_monic(std::move(p), cyclotomic_polynomial(d));
    return p;
}

CycloField::CycloField(unsigned order) : order_(order) {
    if (order < 1) throw std::invalid_argument("cyclotomic field order must be >= 1");
    for (const auto& c : cyclotomic_polynomial(order)) modulus_.emplace_back(c);
}

FieldPtr make_cyclo_field(unsigned order) { return std::make_shared<const CycloField>(order); }

CycloElem::CycloElem(FieldPtr field, const Rat& scalar)
    : field_(std::move(field)), coeffs_(field_->degree(), Rat(0)) {
    coeffs_[0] = scalar;
}

CycloElem::CycloElem(FieldPtr field, std::vector<Rat> coeffs) : field_(std::move(field)) {
    reduce_mod(coeffs, field_->modulus());
    coeffs.resize(field_->degree(), Rat(0));
    coeffs_ = std::move(coeffs);
}

CycloElem CycloElem::zeta(FieldPtr field, long k) {
    const long s = field->order();
    const long e = ((k % s) + s) % s;
    std::vector<Rat> c(static_cast<std::size_t>(e) + 1, Rat(0));
    c.back() = Rat(1);
    return {std::move(field), std::move(c)};
}

bool CycloElem::is_zero() const {
    for (const auto& c : coeffs_)
        if (!c.is_zero()) return false;
    return true;
}

bool CycloElem::is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (!coeffs_[i].is_zero()) return false;
    return true;
}

bool CycloElem::is_one() const { return is_rational() && coeffs_[0].is_one(); }

const Rat& CycloElem::rational() const {
    if (!is_rational()) throw std::domain_error("cyclotomic element is not rational");
    return coeffs_[0];
}

CycloElem CycloElem::operator-() const {
    CycloElem r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

CycloElem& CycloElem::operator+=(const CycloElem& o) {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
}

CycloElem& CycloElem::operator-=(const CycloElem& o) {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
}

CycloElem& CycloElem::operator*=(const Rat& r) {
    for (auto& c : coeffs_) c *= r;
    return *this;
}

CycloElem& CycloElem::operator*=(const CycloElem& o) {
    if (coeffs_.size() == 1) {
        coeffs_[0] *= o.coeffs_[0];
        return *this;
    }
    QPoly prod = mul(coeffs_, o.coeffs_);
    reduce_mod(prod, field_->modulus());
    prod.resize(field_->degree(), Rat(0));
    coeffs_ = std::move(prod);
    return *this;
}

bool operator==(const CycloElem& a, const CycloElem& b) { return a.coeffs_ == b.coeffs_; }

CycloElem CycloElem::pow(long e) const {
    if (e < 0) return cyclo_invert(*this).pow(-e);
    CycloElem result = one(field_);
    CycloElem base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e > 0) base *= base;
    }
    return result;
}

std::string CycloElem::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
        const Rat& c = coeffs_[k];
        if (c.is_zero()) continue;
        Rat mag = c.abs();
        if (first) {
            if (c.sign() < 0) os << "-";
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        first = false;
        if (k == 0) {
            os << mag;
            continue;
        }
        if (!mag.is_one()) os << mag << "*";
        os << "zeta";
        if (k > 1) os << "^" << k;
    }
    if (first) return "0";
    return os.str();
}

CycloElem cyclo_invert(const CycloElem& a) {
    if (a.is_zero()) throw std::domain_error("cyclo_invert: zero has no inverse");
    const FieldPtr& field = a.field();
    if (a.is_rational()) return {field, a.rational().inverse()};

    // Extended Euclid on (Phi_s, a): track u with u*a = r (mod Phi_s).
    QPoly r0 = field->modulus();
    QPoly r1 = a.coeffs();
    trim(r1);
    QPoly u0{}, u1{Rat(1)};
    while (r1.size() > 1) {
        auto [q, rem] = divmod(r0, r1);
        QPoly u2 = sub(u0, mul(q, u1));
        r0 = std::move(r1);
        r1 = std::move(rem);
        u0 = std::move(u1);
        u1 = std::move(u2);
    }
    if (r1.empty()) throw std::logic_error("cyclo_invert: Phi_s not irreducible?");
    const Rat scale = r1[0].inverse();
    for (auto& c : u1) c *= scale;
    return {field, std::move(u1)};
}

}  // namespace twistrank::exact
