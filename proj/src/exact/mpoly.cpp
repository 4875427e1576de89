#include "twistrank/exact/mpoly.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace twistrank::exact {

VarSet::VarSet(std::vector<std::string> names) : names_(std::move(names)) {
    std::set<std::string> seen(names_.begin(), names_.end());
    if (seen.size() != names_.size()) throw std::invalid_argument("duplicate variable names");
}

std::optional<std::size_t> VarSet::index_of(const std::string& name) const {
    const auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
}

VarsPtr make_vars(std::vector<std::string> names) {
    return std::make_shared<const VarSet>(std::move(names));
}

bool GrlexLess::operator()(const Exponent& a, const Exponent& b) const {
    const auto da = std::accumulate(a.begin(), a.end(), std::uint64_t{0});
    const auto db = std::accumulate(b.begin(), b.end(), std::uint64_t{0});
    if (da != db) return da < db;
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

MPoly::MPoly(VarsPtr vars, FieldPtr field) : vars_(std::move(vars)), field_(std::move(field)) {}

MPoly MPoly::constant(VarsPtr vars, FieldPtr field, const CycloElem& c) {
    MPoly p(std::move(vars), std::move(field));
    p.add_term(Exponent(p.arity(), 0), c);
    return p;
}

MPoly MPoly::constant(VarsPtr vars, FieldPtr field, const Rat& c) {
    CycloElem e(field, c);
    return constant(std::move(vars), std::move(field), e);
}

MPoly MPoly::variable(VarsPtr vars, FieldPtr field, std::size_t index, std::uint32_t power) {
    MPoly p(std::move(vars), std::move(field));
    if (index >= p.arity()) throw std::out_of_range("variable index");
    Exponent e(p.arity(), 0);
    e[index] = power;
    p.add_term(e, CycloElem::one(p.field_));
    return p;
}

MPoly MPoly::monomial(VarsPtr vars, FieldPtr field, Exponent e, const CycloElem& c) {
    MPoly p(std::move(vars), std::move(field));
    if (e.size() != p.arity()) throw std::invalid_argument("exponent arity mismatch");
    p.add_term(e, c);
    return p;
}

bool MPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](std::uint32_t v) { return v == 0; });
}

CycloElem MPoly::constant_term() const {
    const auto it = terms_.find(Exponent(arity(), 0));
    return it == terms_.end() ? CycloElem::zero(field_) : it->second;
}

std::uint32_t MPoly::degree_in(std::size_t var) const {
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
}

std::uint32_t MPoly::total_degree() const {
    return terms_.empty() ? 0
                          : std::accumulate(leading_exponent().begin(), leading_exponent().end(),
                                            std::uint32_t{0});
}

std::vector<std::size_t> MPoly::support() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < arity(); ++i)
        if (involves(i)) out.push_back(i);
    return out;
}

void MPoly::add_term(const Exponent& e, const CycloElem& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

MPoly MPoly::operator-() const {
    MPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

MPoly& MPoly::operator+=(const MPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly out(a.vars_, a.field_);
    Exponent e(a.arity(), 0);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

MPoly& MPoly::operator*=(const MPoly& o) { return *this = *this * o; }

MPoly& MPoly::operator*=(const CycloElem& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

MPoly& MPoly::operator*=(const Rat& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

MPoly MPoly::pow(unsigned e) const {
    MPoly result = one();
    MPoly base = *this;
    while (e > 0) {
        if (e & 1u) result *= base;
        e >>= 1u;
        if (e > 0) base *= base;
    }
    return result;
}

MPoly MPoly::substitute(std::size_t var, const MPoly& value) const {
    // Group by the exponent of `var`, then Horner in descending powers.
    auto groups = coefficients_in(var);
    MPoly out = zero();
    std::uint32_t current = groups.empty() ? 0 : groups.rbegin()->first;
    for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
        out *= value.pow(current - it->first);
        out += it->second;
        current = it->first;
    }
    if (current > 0) out *= value.pow(current);
    return out;
}

MPoly MPoly::map_vars(VarsPtr target, const std::vector<std::size_t>& var_map) const {
    if (var_map.size() != arity()) throw std::invalid_argument("map_vars: map size");
    MPoly out(target, field_);
    for (const auto& [e, c] : terms_) {
        Exponent t(target->size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) t.at(var_map[i]) += e[i];
        out.add_term(t, c);
    }
    return out;
}

MPoly MPoly::derivative(std::size_t var) const {
    MPoly out = zero();
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponent d = e;
        --d[var];
        out.add_term(d, c * Rat(static_cast<long>(e[var])));
    }
    return out;
}

std::map<std::uint32_t, MPoly> MPoly::coefficients_in(std::size_t var) const {
    std::map<std::uint32_t, MPoly> out;
    for (const auto& [e, c] : terms_) {
        Exponent rest = e;
        rest[var] = 0;
        auto it = out.try_emplace(e[var], vars_, field_).first;
        it->second.add_term(rest, c);
    }
    return out;
}

MPoly MPoly::monic() const {
    if (is_zero() || leading_coeff().is_one()) return *this;
    return *this * cyclo_invert(leading_coeff());
}

namespace {

std::string render_monomial(const VarSet& vars, const Exponent& e) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!first) os << "*";
        first = false;
        os << vars.name(i);
        if (e[i] > 1) os << "^" << e[i];
    }
    return os.str();
}

}  // namespace

std::string MPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        const std::string mono = render_monomial(*vars_, e);
        if (c.is_rational()) {
            const Rat& v = c.rational();
            if (first)
                os << (v.sign() < 0 ? "-" : "");
            else
                os << (v.sign() < 0 ? " - " : " + ");
            const Rat mag = v.abs();
            if (mono.empty())
                os << mag;
            else if (mag.is_one())
                os << mono;
            else
                os << mag << "*" << mono;
        } else {
            if (!first) os << " + ";
            os << "(" << c.to_string() << ")";
            if (!mono.empty()) os << "*" << mono;
        }
        first = false;
    }
    return os.str();
}

std::optional<MPoly> divide_exact(const MPoly& a, const MPoly& b) {
    if (b.is_zero()) throw std::domain_error("divide_exact: division by zero polynomial");
    MPoly quot = a.zero();
    MPoly rem = a;
    const Exponent& lb = b.leading_exponent();
    const CycloElem lb_inv = cyclo_invert(b.leading_coeff());
    Exponent shift(a.arity(), 0);
    while (!rem.is_zero()) {
        const Exponent& lr = rem.leading_exponent();
        for (std::size_t i = 0; i < lr.size(); ++i) {
            if (lr[i] < lb[i]) return std::nullopt;
            shift[i] = lr[i] - lb[i];
        }
        const CycloElem c = rem.leading_coeff() * lb_inv;
        quot.add_term(shift, c);
        rem -= MPoly::monomial(a.vars(), a.field(), shift, c) * b;
    }
    return quot;
}

namespace {

MPoly exact_or_throw(const MPoly& a, const MPoly& b) {
    auto q = divide_exact(a, b);
    if (!q) throw std::logic_error("gcd: expected exact division");
    return *std::move(q);
}

MPoly content_in(const MPoly& p, std::size_t var) {
    MPoly g = p.zero();
    for (const auto& [d, c] : p.coefficients_in(var)) {
        g = gcd(g, c);
        if (g.is_constant()) break;
    }
    return g;
}

MPoly primitive_in(const MPoly& p, std::size_t var) {
    if (p.is_zero()) return p;
    return exact_or_throw(p, content_in(p, var));
}

MPoly coeff_of(const MPoly& p, std::size_t var, std::uint32_t d) {
    auto cs = p.coefficients_in(var);
    const auto it = cs.find(d);
    return it == cs.end() ? p.zero() : it->second;
}

MPoly pseudo_remainder(MPoly a, const MPoly& b, std::size_t var) {
    const std::uint32_t db = b.degree_in(var);
    const MPoly lb = coeff_of(b, var, db);
    while (!a.is_zero()) {
        const std::uint32_t da = a.degree_in(var);
        if (da < db) break;
        const MPoly la = coeff_of(a, var, da);
        a = a * lb - la * MPoly::variable(a.vars(), a.field(), var, da - db) * b;
    }
    return a;
}

}  // namespace

MPoly gcd(const MPoly& a, const MPoly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return a.one();

    std::size_t var = 0;
    for (const std::size_t i : a.support()) var = std::max(var, i);
    for (const std::size_t i : b.support()) var = std::max(var, i);
    if (!a.involves(var)) return gcd(a, content_in(b, var));
    if (!b.involves(var)) return gcd(content_in(a, var), b);

    const MPoly ca = content_in(a, var);
    const MPoly cb = content_in(b, var);
    MPoly pa = exact_or_throw(a, ca);
    MPoly pb = exact_or_throw(b, cb);
    const MPoly c = gcd(ca, cb);
    if (pa.degree_in(var) < pb.degree_in(var)) std::swap(pa, pb);
    while (true) {
        MPoly r = pseudo_remainder(pa, pb, var);
        if (r.is_zero()) break;
        if (!r.involves(var)) {
            pb = a.one();
            break;
        }
        pa = std::move(pb);
        pb = primitive_in(r, var);
    }
    return (c * primitive_in(pb, var)).monic();
}

namespace {

std::optional<std::size_t> univariate_var(const MPoly& p) {
    const auto sup = p.support();
    if (sup.size() > 1) throw std::invalid_argument("expected a univariate polynomial, got " + p.to_string());
    if (sup.empty()) return std::nullopt;
    return sup.front();
}

}  // namespace

MPoly poly_gcd(const MPoly& a, const MPoly& b) {
    const auto va = univariate_var(a);
    const auto vb = univariate_var(b);
    if (va && vb && *va != *vb) throw std::invalid_argument("poly_gcd: polynomials in different variables");
    // Plain Euclid: the coefficient ring is a field.
    MPoly r0 = a, r1 = b;
    while (!r1.is_zero()) {
        const std::size_t v = va ? *va : (vb ? *vb : 0);
        MPoly rem = r0;
        const std::uint32_t d1 = r1.degree_in(v);
        const CycloElem inv = cyclo_invert(r1.leading_coeff());
        while (!rem.is_zero() && rem.degree_in(v) >= d1) {
            const std::uint32_t dr = rem.degree_in(v);
            const CycloElem c = rem.leading_coeff() * inv;
            rem -= MPoly::variable(a.vars(), a.field(), v, dr - d1) * c * r1;
        }
        r0 = std::move(r1);
        r1 = std::move(rem);
    }
    return r0.monic();
}

bool squarefree_check(const MPoly& f) {
    const auto v = univariate_var(f);
    if (f.is_zero()) return false;
    if (!v) return true;
    return poly_gcd(f, f.derivative(*v)).is_constant();
}

MPoly univariate(const std::vector<Rat>& coeffs, FieldPtr field, const std::string& name) {
    auto vars = make_vars({name});
    MPoly p(vars, field);
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        p.add_term(Exponent{static_cast<std::uint32_t>(k)}, CycloElem(field, coeffs[k]));
    return p;
}

std::vector<Rat> rational_coefficients(const MPoly& f) {
    const auto v = univariate_var(f);
    const std::size_t var = v.value_or(0);
    std::vector<Rat> out(f.is_zero() ? 0 : f.degree_in(var) + 1, Rat(0));
    for (const auto& [e, c] : f.terms()) out[f.arity() == 0 ? 0 : e[var]] = c.rational();
    return out;
}

Rat evaluate(const std::vector<Rat>& coeffs, const Rat& x) {
    Rat acc(0);
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
    return acc;
}

namespace {

std::vector<Integer> positive_divisors(Integer n) {
    if (n < 0) n = -n;
    std::vector<Integer> small, large;
    for (Integer d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        small.push_back(d);
        if (d * d != n) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

}  // namespace

std::vector<Rat> rational_roots(const std::vector<Rat>& coeffs) {
    std::vector<Rat> c = coeffs;
    while (!c.empty() && c.back().is_zero()) c.pop_back();
    if (c.size() <= 1) return {};
    // Clear denominators.
    Integer den = 1;
    for (const auto& v : c) den = lcm(den, v.den());
    std::vector<Integer> z;
    for (const auto& v : c) z.push_back(v.num() * (den / v.den()));

    std::vector<Rat> roots;
    std::size_t low = 0;
    while (z[low] == 0) ++low;
    if (low > 0) roots.emplace_back(0);
    for (const Integer& p : positive_divisors(z[low])) {
        for (const Integer& q : positive_divisors(z.back())) {
            if (gcd(p, q) != 1) continue;
            for (const int sign : {1, -1}) {
                const Rat cand(Integer(p * sign), q);
                if (evaluate(c, cand).is_zero()) roots.push_back(cand);
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

}  // namespace twistrank::exact
