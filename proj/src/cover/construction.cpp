#include "twistrank/cover/construction.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace twistrank::cover {

using exact::Exponent;
using exact::QuotientRing;

namespace {

RingPtr ring_from_relations(unsigned s, unsigned n, const MPoly& any, const std::vector<MPoly>& relations) {
    std::vector<MPoly> rhs;
    for (unsigned i = 1; i <= n; ++i) {
        const MPoly yi_s = MPoly::variable(any.vars(), any.field(), n + i - 1, s);
        rhs.push_back(yi_s - relations.at(i - 1));
    }
    return std::make_shared<const QuotientRing>(s, n, any.field(), any.vars(), std::move(rhs));
}

// f re-expressed in the ring variable with index `var`.
MPoly f_at(const ConstructionSpec& spec, std::size_t var) { return spec.f.map_vars(spec.ring->vars(), {var}); }

std::string parenthesized(const MPoly& p) { return "(" + p.to_string() + ")"; }

}  // namespace

std::string ConstructionSpec::twist_equation() const {
    std::ostringstream os;
    os << parenthesized(f_at(*this, ring->x_index(1))) << "*z^" << s << " = " << twist_rhs.to_string();
    return os.str();
}

std::string ConstructionSpec::product_relation_text(unsigned i) const {
    const MPoly yi_s = MPoly::variable(ring->vars(), ring->field(), ring->y_index(i), s);
    std::ostringstream os;
    os << "y_" << i << "^" << s << " = " << (yi_s - product_relations.at(i - 1)).to_string();
    return os.str();
}

std::string ConstructionSpec::quotient_relation_text(unsigned i) const {
    std::ostringstream os;
    os << "z_" << i << "^" << s << " = " << parenthesized(f_at(*this, ring->x_index(1)));
    if (s > 2) os << "^" << (s - 1);
    os << "*" << parenthesized(f_at(*this, ring->x_index(i + 1)));
    return os.str();
}

std::string ConstructionSpec::curve_equation() const {
    std::ostringstream os;
    os << "y^" << s << " = " << f.to_string();
    return os.str();
}

std::optional<BasePoint> find_base_point(unsigned s, const MPoly& f, unsigned bound) {
    std::vector<Rat> coeffs;
    try {
        coeffs = exact::rational_coefficients(f);
    } catch (const std::domain_error&) {
        return std::nullopt;  // search is over Q only
    }
    auto try_candidate = [&](const Rat& a) -> std::optional<BasePoint> {
        Rat b;
        if (exact::exact_root(exact::evaluate(coeffs, a), s, b)) return BasePoint{a, b};
        return std::nullopt;
    };
    if (auto hit = try_candidate(Rat(0))) return hit;
    for (long h = 1; h <= static_cast<long>(bound); ++h) {
        // Height exactly h: max(|p|, q) == h with gcd(p, q) == 1.
        for (long q = 1; q <= h; ++q) {
            for (long p = -h; p <= h; ++p) {
                if (std::max(std::labs(p), q) != h || std::gcd(p, q) != 1) continue;
                if (auto hit = try_candidate(Rat(exact::Integer(p), exact::Integer(q)))) return hit;
            }
        }
    }
    return std::nullopt;
}

ConstructionSpec build_construction(unsigned s, const MPoly& f, unsigned n, bool strict) {
    if (f.arity() != 1) throw ConstructionError("f must be a univariate polynomial");
    if (f.is_zero()) throw ConstructionError("f must be nonzero");
    const unsigned r = f.degree_in(0);
    if (s < 2) throw ConstructionError("s must be at least 2");
    if (n < 1) throw ConstructionError("n must be at least 1");
    if (f.field()->order() != s) throw ConstructionError("coefficient field must be Q(zeta_s)");
    if (s > r) throw ConstructionError("s exceeds deg f");
    if (!exact::squarefree_check(f)) throw ConstructionError("f is not squarefree");
    if (strict && n < r) throw ConstructionError("strict mode requires n >= deg f (use --no-strict to override)");

    ConstructionSpec spec;
    spec.s = s;
    spec.r = r;
    spec.n = n;
    spec.strict = strict;
    spec.f = f;
    const RingPtr standard = exact::make_standard_ring(s, n, f);
    const auto& vars = standard->vars();
    const auto& field = standard->field();
    auto var = [&](std::size_t idx, std::uint32_t power = 1) { return MPoly::variable(vars, field, idx, power); };
    auto f_in = [&](std::size_t idx) { return f.map_vars(vars, {idx}); };

    for (unsigned i = 1; i <= n; ++i)
        spec.product_relations.push_back(var(standard->y_index(i), s) - f_in(standard->x_index(i)));

    const MPoly f_x1 = f_in(standard->x_index(1));
    for (unsigned i = 1; i + 1 <= n; ++i) {
        const MPoly z_i = var(standard->y_index(1), s - 1) * var(standard->y_index(i + 1));
        spec.quotient_relations.push_back(z_i.pow(s) - f_x1.pow(s - 1) * f_in(standard->x_index(i + 1)));
    }

    spec.twist_lhs = f_x1 * var(standard->extra_index("z"), s);
    spec.twist_rhs = f_in(standard->extra_index("x"));
    spec.ring = ring_from_relations(s, n, spec.twist_lhs, spec.product_relations);
    spec.base_point = find_base_point(s, f);
    return spec;
}

ConstructionSpec build_construction(unsigned s, const std::vector<Rat>& f_coeffs, unsigned n, bool strict) {
    if (s < 2) throw ConstructionError("s must be at least 2");
    return build_construction(s, exact::univariate(f_coeffs, exact::make_cyclo_field(s)), n, strict);
}

RLElem normal_form(const RLElem& e, const ConstructionSpec& spec) {
    return spec.ring->normal_form(e.numerator(), e.denominator());
}

std::vector<FunctionFieldPoint> twist_points(const ConstructionSpec& spec) {
    const QuotientRing& R = *spec.ring;
    std::vector<FunctionFieldPoint> points;
    points.push_back({1, R.x(1), R.element(Rat(1)), 1, std::nullopt});
    const MPoly f_x1 = f_at(spec, R.x_index(1));
    for (unsigned i = 1; i + 1 <= spec.n; ++i) {
        const MPoly z_i = R.var(R.y_index(1)).pow(spec.s - 1) * R.var(R.y_index(i + 1));
        points.push_back({i + 1, R.x(i + 1), R.normal_form(z_i, f_x1), i + 1, i});
    }
    return points;
}

namespace {

RLElem twist_difference(const ConstructionSpec& spec) {
    const QuotientRing& R = *spec.ring;
    return R.normal_form(spec.twist_lhs) - R.normal_form(spec.twist_rhs);
}

}  // namespace

TwistCheck verify_point_on_twist(const ConstructionSpec& spec, const FunctionFieldPoint& p) {
    const QuotientRing& R = *spec.ring;
    const RLElem at_point = twist_difference(spec)
                                .substitute(R.extra_index("z"), normal_form(p.z, spec))
                                .substitute(R.extra_index("x"), normal_form(p.x, spec));
    return {p.label, at_point.is_zero(), at_point.numerator()};
}

std::vector<RelationCheck> verify_quotient_relations(const ConstructionSpec& spec) {
    std::vector<RelationCheck> out;
    for (unsigned i = 1; i <= spec.quotient_relations.size(); ++i) {
        const RLElem reduced = spec.ring->normal_form(spec.quotient_relations[i - 1]);
        out.push_back({spec.quotient_relation_text(i), reduced.is_zero(), reduced.numerator()});
    }
    return out;
}

bool GaloisReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const GaloisCheck& c) { return c.passed; });
}

GaloisReport check_galois(const ConstructionSpec& spec) {
    const QuotientRing& R = *spec.ring;
    GaloisReport report;
    auto add = [&](std::string item, bool ok) { report.checks.push_back({std::move(item), ok}); };

    auto iterate = [&](const RLElem& e) {
        RLElem cur = e;
        for (unsigned k = 0; k < spec.s; ++k) cur = cur.galois(1);
        return cur;
    };
    for (unsigned j = 1; j <= spec.n; ++j) {
        const std::string idx = std::to_string(j);
        add("gamma^" + std::to_string(spec.s) + "(x_" + idx + ") = x_" + idx, iterate(R.x(j)) == R.x(j));
        add("gamma^" + std::to_string(spec.s) + "(y_" + idx + ") = y_" + idx, iterate(R.y(j)) == R.y(j));
    }
    for (unsigned i = 1; i + 1 <= spec.n; ++i) {
        const RLElem z_i = R.y(1).pow(spec.s - 1) * R.y(i + 1);
        add("z_" + std::to_string(i) + " invariant", z_i.is_galois_invariant());
    }
    for (const auto& p : twist_points(spec)) {
        const std::string label = "P_" + std::to_string(p.label);
        add(label + " x-coordinate invariant", p.x.is_galois_invariant());
        add(label + " z-coordinate invariant", p.z.is_galois_invariant());
    }
    const RLElem y1 = R.y(1);
    const RLElem zeta_y1 = R.element(CycloElem::zeta(R.field())) * y1;
    add("gamma(y_1) = zeta*y_1", y1.galois(1) == zeta_y1);
    add("y_1 not invariant", !y1.is_galois_invariant());
    return report;
}

bool TrivializationReport::all_passed() const {
    return equation_reduces &&
           std::all_of(points.begin(), points.end(), [](const TrivializedPoint& p) { return p.matches; });
}

TrivializationReport trivialize_over_L(const ConstructionSpec& spec) {
    const QuotientRing& R = *spec.ring;
    TrivializationReport report;
    const RLElem u = R.extra("u");
    const RLElem y1 = R.y(1);
    const RLElem z_of_u = u * y1.inverse();
    report.reduced_equation = twist_difference(spec).substitute(R.extra_index("z"), z_of_u);
    const RLElem expected = u.pow(spec.s) - R.normal_form(spec.twist_rhs);
    report.equation_reduces = report.reduced_equation == expected;

    for (const auto& p : twist_points(spec)) {
        TrivializedPoint tp;
        tp.label = p.label;
        tp.x = p.x;
        tp.u = normal_form(p.z, spec) * y1;
        tp.matches = tp.x == R.x(p.label) && tp.u == R.y(p.label);
        report.points.push_back(std::move(tp));
    }
    return report;
}

unsigned genus(unsigned s, unsigned r) {
    if (s < 2 || s > r) throw std::invalid_argument("genus requires 2 <= s <= r");
    const unsigned twice = (r - 1) * (s - 1) + 1 - std::gcd(s, r);
    return twice / 2;
}

unsigned prym_dimension(const ConstructionSpec& spec) { return spec.n * genus(spec.s, spec.r); }

EndIdentityReport end_identity_check(unsigned s) {
    if (s < 2) throw std::invalid_argument("end_identity_check requires s >= 2");
    auto field = exact::make_cyclo_field(s);
    CycloElem sum = CycloElem::zero(field);
    for (unsigned j = 0; j < s; ++j) sum += CycloElem::zeta(field, j);
    return {s, sum, sum.is_zero()};
}

RankBoundReport rank_bound_report(const ConstructionSpec& spec, unsigned end_rank) {
    if (end_rank < 1) throw std::invalid_argument("end_rank must be at least 1");
    RankBoundReport rep;
    rep.n = spec.n;
    rep.end_rank = end_rank;
    rep.bound = spec.n * end_rank;
    rep.genus = genus(spec.s, spec.r);
    rep.prym_dimension = prym_dimension(spec);
    rep.jacobian_power_dimension = spec.n * rep.genus;
    rep.torsion = "not computed";
    if (spec.s == 2 && spec.r == 3) {
        try {
            const auto roots = exact::rational_roots(exact::rational_coefficients(spec.f));
            rep.torsion = roots.empty() ? "trivial" : (roots.size() == 1 ? "Z/2" : "(Z/2)^2");
        } catch (const std::domain_error&) {
        }
    }
    return rep;
}

ConstructionSpec with_relation_sign_flipped(const ConstructionSpec& spec, RelationKind kind, unsigned index) {
    ConstructionSpec out = spec;
    const QuotientRing& R = *spec.ring;
    switch (kind) {
    case RelationKind::Product: {
        MPoly& rel = out.product_relations.at(index - 1);
        const MPoly yi_s = MPoly::variable(R.vars(), R.field(), R.y_index(index), spec.s);
        rel = yi_s + (yi_s - rel);
        out.ring = ring_from_relations(spec.s, spec.n, rel, out.product_relations);
        break;
    }
    case RelationKind::Quotient: {
        MPoly& rel = out.quotient_relations.at(index - 1);
        const MPoly z_s = (R.var(R.y_index(1)).pow(spec.s - 1) * R.var(R.y_index(index + 1))).pow(spec.s);
        rel = z_s + (z_s - rel);
        break;
    }
    case RelationKind::Twist:
        out.twist_rhs = -spec.twist_rhs;
        break;
    }
    return out;
}

}  // namespace twistrank::cover
