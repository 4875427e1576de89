#include "twistrank/exact/rl.hpp"

#include "twistrank/exact/modular.hpp"

#include <map>
#include <stdexcept>

namespace twistrank::exact {

QuotientRing::QuotientRing(unsigned s, unsigned n, FieldPtr field, VarsPtr vars, std::vector<MPoly> power_rhs)
    : s_(s), n_(n), field_(std::move(field)), vars_(std::move(vars)), rhs_(std::move(power_rhs)) {
    if (s_ < 2) throw std::invalid_argument("quotient ring needs s >= 2");
    if (n_ < 1) throw std::invalid_argument("quotient ring needs n >= 1");
    if (vars_->size() < 2 * n_) throw std::invalid_argument("quotient ring: too few variables");
    if (rhs_.size() != n_) throw std::invalid_argument("quotient ring: need one relation per y_i");
    for (const auto& g : rhs_)
        if (!is_y_free(g)) throw std::invalid_argument("relation right-hand side must be free of y");
}

std::size_t QuotientRing::extra_index(const std::string& name) const {
    const auto idx = vars_->index_of(name);
    if (!idx || *idx < 2 * n_) throw std::invalid_argument("unknown extra symbol '" + name + "'");
    return *idx;
}

bool QuotientRing::is_y_free(const MPoly& p) const {
    for (unsigned i = 1; i <= n_; ++i)
        if (p.involves(y_index(i))) return false;
    return true;
}

bool QuotientRing::is_reduced(const MPoly& p) const {
    for (unsigned i = 1; i <= n_; ++i)
        if (p.degree_in(y_index(i)) >= s_) return false;
    return true;
}

MPoly QuotientRing::reduce(const MPoly& p) const {
    if (is_reduced(p)) return p;
    std::map<std::pair<unsigned, std::uint32_t>, MPoly> powers;
    auto rhs_pow = [&](unsigned i, std::uint32_t q) -> const MPoly& {
        auto it = powers.find({i, q});
        if (it == powers.end()) it = powers.emplace(std::pair{i, q}, power_rhs(i).pow(q)).first;
        return it->second;
    };
    MPoly out(vars_, field_);
    for (const auto& [e, c] : p.terms()) {
        Exponent kept = e;
        MPoly factor = MPoly::constant(vars_, field_, c);
        for (unsigned i = 1; i <= n_; ++i) {
            const std::size_t yi = y_index(i);
            const std::uint32_t q = e[yi] / s_;
            if (q == 0) continue;
            kept[yi] = e[yi] % s_;
            factor *= rhs_pow(i, q);
        }
        out += factor * MPoly::monomial(vars_, field_, kept, CycloElem::one(field_));
    }
    return out;
}

RLElem QuotientRing::normal_form(const MPoly& num) const { return normal_form(num, poly(Rat(1))); }

RLElem QuotientRing::normal_form(const MPoly& num, const MPoly& den) const {
    if (den.is_zero()) throw std::domain_error("RL element with zero denominator");
    if (!is_y_free(den)) throw std::invalid_argument("RL denominators must be free of y");
    RingPtr self = shared_from_this();
    MPoly n = reduce(num);
    if (n.is_zero()) return {self, n, poly(Rat(1))};
    MPoly d = den;
    if (!d.is_constant()) {
        const MPoly g = gcd(n, d);
        if (!g.is_constant()) {
            n = *divide_exact(n, g);
            d = *divide_exact(d, g);
        }
    }
    const CycloElem inv = cyclo_invert(d.leading_coeff());
    n *= inv;
    d *= inv;
    return {self, std::move(n), std::move(d)};
}

RLElem QuotientRing::element(const Rat& c) const { return normal_form(poly(c)); }
RLElem QuotientRing::element(const CycloElem& c) const {
    return normal_form(MPoly::constant(vars_, field_, c));
}
RLElem QuotientRing::x(unsigned i) const { return normal_form(var(x_index(i))); }
RLElem QuotientRing::y(unsigned i) const { return normal_form(var(y_index(i))); }
RLElem QuotientRing::extra(const std::string& name) const { return normal_form(var(extra_index(name))); }

RingPtr make_standard_ring(unsigned s, unsigned n, const MPoly& f) {
    if (f.arity() != 1) throw std::invalid_argument("make_standard_ring: f must be univariate");
    std::vector<std::string> names;
    for (unsigned i = 1; i <= n; ++i) names.push_back("x_" + std::to_string(i));
    for (unsigned i = 1; i <= n; ++i) names.push_back("y_" + std::to_string(i));
    for (const char* extra : {"x", "z", "u"}) names.emplace_back(extra);
    VarsPtr vars = make_vars(std::move(names));
    std::vector<MPoly> rhs;
    for (unsigned i = 1; i <= n; ++i) rhs.push_back(f.map_vars(vars, {i - 1}));
    return std::make_shared<const QuotientRing>(s, n, f.field(), vars, std::move(rhs));
}

namespace {

void require_same_ring(const RLElem& a, const RLElem& b) {
    if (a.ring() != b.ring()) throw std::invalid_argument("RL elements from different rings");
}

}  // namespace

RLElem RLElem::operator-() const { return {ring_, -num_, den_}; }

RLElem operator+(const RLElem& a, const RLElem& b) {
    require_same_ring(a, b);
    if (a.den_ == b.den_) return a.ring_->normal_form(a.num_ + b.num_, a.den_);
    return a.ring_->normal_form(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RLElem operator-(const RLElem& a, const RLElem& b) { return a + (-b); }

RLElem operator*(const RLElem& a, const RLElem& b) {
    require_same_ring(a, b);
    return a.ring_->normal_form(a.num_ * b.num_, a.den_ * b.den_);
}

RLElem RLElem::pow(unsigned e) const {
    RLElem result = ring_->element(Rat(1));
    RLElem base = *this;
    while (e > 0) {
        if (e & 1u) result = result * base;
        e >>= 1u;
        if (e > 0) base = base * base;
    }
    return result;
}

RLElem RLElem::divided_by(const RLElem& d) const {
    require_same_ring(*this, d);
    if (d.is_zero()) throw std::domain_error("RL division by zero");
    if (!ring_->is_y_free(d.num_)) throw std::domain_error("RL division only by y-free elements");
    return ring_->normal_form(num_ * d.den_, den_ * d.num_);
}

RLElem RLElem::inverse() const {
    if (is_zero()) throw std::domain_error("RL inverse of zero");
    // num = c(x) * prod y_i^e_i is required: split off the y-part of every term.
    const QuotientRing& R = *ring_;
    std::optional<Exponent> ypart;
    MPoly c = R.poly(Rat(0));
    for (const auto& [e, coef] : num_.terms()) {
        Exponent y(e.size(), 0), rest = e;
        for (unsigned i = 1; i <= R.n(); ++i) {
            y[R.y_index(i)] = e[R.y_index(i)];
            rest[R.y_index(i)] = 0;
        }
        if (ypart && *ypart != y) throw std::domain_error("RL inverse: numerator is not c(x) times a y-monomial");
        ypart = y;
        c.add_term(rest, coef);
    }
    // (c * prod y_i^e_i)^{-1} = prod y_i^{s-e_i} / (c * prod g_i), for e_i > 0.
    MPoly num = den_;
    MPoly den = c;
    for (unsigned i = 1; i <= R.n(); ++i) {
        const std::uint32_t e = (*ypart)[R.y_index(i)];
        if (e == 0) continue;
        num *= MPoly::variable(R.vars(), R.field(), R.y_index(i), R.s() - e);
        den *= R.power_rhs(i);
    }
    return R.normal_form(num, den);
}

RLElem RLElem::galois(long k) const {
    const QuotientRing& R = *ring_;
    const long s = R.s();
    std::vector<CycloElem> zeta_pows;
    for (long j = 0; j < s; ++j) zeta_pows.push_back(CycloElem::zeta(R.field(), j));
    const long kk = ((k % s) + s) % s;
    MPoly out(R.vars(), R.field());
    for (const auto& [e, c] : num_.terms()) {
        long ydeg = 0;
        for (unsigned i = 1; i <= R.n(); ++i) ydeg += e[R.y_index(i)];
        out.add_term(e, c * zeta_pows[static_cast<std::size_t>((kk * ydeg) % s)]);
    }
    return {ring_, std::move(out), den_};
}

RLElem RLElem::substitute(std::size_t var, const RLElem& value) const {
    require_same_ring(*this, value);
    if (ring_->is_y(var)) throw std::invalid_argument("RL substitute: y variables are not substitutable");
    // Clear value's denominator: num(var -> a/b) = sum c_k a^k b^{D-k} / b^D.
    const auto groups = num_.coefficients_in(var);
    const std::uint32_t top = groups.empty() ? 0 : groups.rbegin()->first;
    const RLElem a = ring_->normal_form(value.num_);
    const RLElem b = ring_->normal_form(value.den_);
    RLElem acc = ring_->element(Rat(0));
    for (const auto& [k, coeff] : groups)
        acc = acc + ring_->normal_form(coeff) * a.pow(k) * b.pow(top - k);
    const RLElem scaled_den = ring_->normal_form(den_) * b.pow(top);
    const auto& R = *ring_;
    return R.normal_form(acc.num_ * scaled_den.den_, acc.den_ * scaled_den.num_);
}

std::string RLElem::to_string() const {
    if (den_.is_constant()) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

std::uint64_t evaluate_mod(const MPoly& p, const std::vector<std::uint64_t>& values, std::uint64_t prime) {
    if (values.size() != p.arity()) throw std::invalid_argument("evaluate_mod: one value per variable");
    std::uint64_t acc = 0;
    for (const auto& [e, c] : p.terms()) {
        const auto cm = rat_mod(c.rational(), prime);
        if (!cm) throw std::domain_error("evaluate_mod: coefficient denominator divisible by p");
        std::uint64_t term = *cm;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) term = mul_mod(term, pow_mod(values[i], e[i], prime), prime);
        acc = add_mod(acc, term, prime);
    }
    return acc;
}

std::optional<std::uint64_t> evaluate_mod(const RLElem& e, const std::vector<std::uint64_t>& values,
                                          std::uint64_t prime) {
    const std::uint64_t d = evaluate_mod(e.denominator(), values, prime);
    if (d == 0) return std::nullopt;
    return mul_mod(evaluate_mod(e.numerator(), values, prime), inv_mod(d, prime), prime);
}

Rat evaluate(const MPoly& p, const std::vector<Rat>& values) {
    if (values.size() != p.arity()) throw std::invalid_argument("evaluate: one value per variable");
    Rat acc(0);
    for (const auto& [e, c] : p.terms()) {
        Rat term = c.rational();
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) term *= values[i].pow(e[i]);
        acc += term;
    }
    return acc;
}

}  // namespace twistrank::exact
