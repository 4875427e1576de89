#include <doctest.h>

#include "twistrank/cover/construction.hpp"

#include <numeric>

using namespace twistrank;
using namespace twistrank::cover;
using exact::Rat;

namespace {

std::vector<Rat> x3_minus_x() { return {0, -1, 0, 1}; }
std::vector<Rat> x4_plus_1() { return {1, 0, 0, 0, 1}; }

// Riemann-Hurwitz for y^s = f(x), f squarefree of degree r: each finite
// branch point is totally ramified; over infinity there are gcd(s, r) points
// of index s / gcd(s, r). 2g - 2 = s(0 - 2) + sum (e_P - 1).
int riemann_hurwitz_genus(int s, int r) {
    const int d = std::gcd(s, r);
    const int ramification = r * (s - 1) + d * (s / d - 1);
    const int twice_g_minus_2 = -2 * s + ramification;
    REQUIRE((twice_g_minus_2 + 2) % 2 == 0);
    return (twice_g_minus_2 + 2) / 2;
}

}  // namespace

TEST_CASE("build_construction for s=2, f=x^3-x, n=3") {
    const auto spec = build_construction(2, x3_minus_x(), 3);
    CHECK(spec.r == 3);
    CHECK(spec.twist_equation() == "(x_1^3 - x_1)*z^2 = x^3 - x");
    REQUIRE(spec.product_relations.size() == 3);
    REQUIRE(spec.quotient_relations.size() == 2);
    CHECK(spec.product_relation_text(2) == "y_2^2 = x_2^3 - x_2");
    CHECK(spec.quotient_relation_text(1) == "z_1^2 = (x_1^3 - x_1)*(x_2^3 - x_2)");
    CHECK(spec.quotient_relation_text(2) == "z_2^2 = (x_1^3 - x_1)*(x_3^3 - x_3)");
    for (const auto& c : verify_quotient_relations(spec)) CHECK(c.zero);
    REQUIRE(spec.base_point.has_value());
    CHECK(spec.base_point->a == Rat(0));
    CHECK(spec.base_point->b == Rat(0));
}

TEST_CASE("build_construction for s=3, f=x^4+1, n=4") {
    const auto spec = build_construction(3, x4_plus_1(), 4);
    CHECK(spec.twist_equation() == "(x_1^4 + 1)*z^3 = x^4 + 1");
    CHECK(spec.quotient_relation_text(1) == "z_1^3 = (x_1^4 + 1)^2*(x_2^4 + 1)");
    for (const auto& c : verify_quotient_relations(spec)) CHECK(c.zero);
    // a = 0 gives f(0) = 1 = 1^3.
    REQUIRE(spec.base_point.has_value());
    CHECK(spec.base_point->b == Rat(1));
}

TEST_CASE("build_construction rejects bad parameters") {
    CHECK_THROWS_WITH_AS(build_construction(2, {0, 0, -1, 1}, 3), "f is not squarefree", ConstructionError);
    CHECK_THROWS_WITH_AS(build_construction(4, {1, 1, 1}, 4), "s exceeds deg f", ConstructionError);
    CHECK_THROWS_AS(build_construction(2, x3_minus_x(), 2), ConstructionError);
    CHECK_NOTHROW(build_construction(2, x3_minus_x(), 2, false));
    CHECK_NOTHROW(build_construction(2, x3_minus_x(), 1, false));
    CHECK_THROWS_AS(build_construction(2, x3_minus_x(), 0, false), ConstructionError);
}

TEST_CASE("base point search reports not found without failing") {
    // y^2 = x^3 + x + 3 has no rational point of small height? a = -1 gives 1 = 1^2.
    const auto spec = build_construction(2, {3, 1, 0, 1}, 3);
    REQUIRE(spec.base_point.has_value());
    CHECK(spec.base_point->a == Rat(-1));
    // x^4 + 2 is never a cube at small height: f(a) = 2 + a^4 > 0 and 3 is out of reach.
    const auto none = find_base_point(3, exact::univariate({2, 0, 0, 0, 1}, exact::make_cyclo_field(3)), 10);
    CHECK_FALSE(none.has_value());
}

TEST_CASE("twist points and their coordinates") {
    const auto spec = build_construction(2, x3_minus_x(), 3);
    const auto pts = twist_points(spec);
    REQUIRE(pts.size() == 3);
    CHECK(pts[0].x.to_string() == "x_1");
    CHECK(pts[0].z.to_string() == "1");
    CHECK(pts[1].x.to_string() == "x_2");
    CHECK(pts[1].z.to_string() == "(y_1*y_2)/(x_1^3 - x_1)");
    CHECK(pts[2].z.to_string() == "(y_1*y_3)/(x_1^3 - x_1)");

    const auto single = twist_points(build_construction(2, x3_minus_x(), 1, false));
    CHECK(single.size() == 1);

    const auto s3 = build_construction(3, x4_plus_1(), 4);
    CHECK(twist_points(s3)[1].z.to_string() == "(y_1^2*y_2)/(x_1^4 + 1)");
}

TEST_CASE("verify_point_on_twist") {
    const auto spec = build_construction(2, x3_minus_x(), 3);
    for (const auto& p : twist_points(spec)) {
        const auto check = verify_point_on_twist(spec, p);
        CHECK(check.zero);
        CHECK(check.witness.is_zero());
    }

    // Tampered point (x_2, 1): the witness is f(x_1) - f(x_2).
    FunctionFieldPoint tampered{2, spec.ring->x(2), spec.ring->element(Rat(1)), 2, std::nullopt};
    const auto bad = verify_point_on_twist(spec, tampered);
    CHECK_FALSE(bad.zero);
    const auto& R = *spec.ring;
    const auto fx1 = R.var(R.x_index(1)).pow(3) - R.var(R.x_index(1));
    const auto fx2 = R.var(R.x_index(2)).pow(3) - R.var(R.x_index(2));
    CHECK(bad.witness == fx1 - fx2);
}

TEST_CASE("mutated relations give nonzero witnesses") {
    const auto spec = build_construction(2, x3_minus_x(), 3);
    auto any_nonzero = [](const ConstructionSpec& s) {
        bool found = false;
        for (const auto& p : twist_points(s)) found = found || !verify_point_on_twist(s, p).zero;
        return found;
    };
    for (unsigned i = 1; i <= 3; ++i)
        CHECK(any_nonzero(with_relation_sign_flipped(spec, RelationKind::Product, i)));
    CHECK(any_nonzero(with_relation_sign_flipped(spec, RelationKind::Twist)));
    for (unsigned i = 1; i <= 2; ++i) {
        const auto checks = verify_quotient_relations(with_relation_sign_flipped(spec, RelationKind::Quotient, i));
        CHECK_FALSE(checks[i - 1].zero);
    }
}

TEST_CASE("galois action") {
    for (unsigned s : {2u, 3u}) {
        const auto spec = s == 2 ? build_construction(2, x3_minus_x(), 3) : build_construction(3, x4_plus_1(), 4);
        const auto report = check_galois(spec);
        CHECK(report.all_passed());
        const auto& R = *spec.ring;
        CHECK_FALSE(R.y(1).is_galois_invariant());
        const auto z1 = R.y(1).pow(s - 1) * R.y(2);
        CHECK(z1.galois(1) == z1);
    }
}

TEST_CASE("trivialization over L") {
    for (unsigned s : {2u, 3u}) {
        const auto spec = s == 2 ? build_construction(2, x3_minus_x(), 3) : build_construction(3, x4_plus_1(), 4);
        const auto report = trivialize_over_L(spec);
        CHECK(report.equation_reduces);
        REQUIRE(report.points.size() == spec.n);
        for (const auto& p : report.points) {
            CAPTURE(p.label);
            CHECK(p.matches);
            CHECK(p.u == spec.ring->y(p.label));
        }
        CHECK(report.all_passed());
    }
}

TEST_CASE("genus and prym dimension") {
    CHECK(genus(2, 3) == 1);
    CHECK(genus(2, 4) == 1);
    CHECK(genus(2, 5) == 2);
    CHECK(genus(3, 4) == 3);
    CHECK(genus(4, 5) == 6);
    CHECK_THROWS_AS(genus(3, 2), std::invalid_argument);
    CHECK_THROWS_AS(genus(1, 3), std::invalid_argument);
    for (unsigned s = 2; s <= 8; ++s) {
        unsigned prev = 0;
        for (unsigned r = s; r <= 12; ++r) {
            CAPTURE(s);
            CAPTURE(r);
            CHECK(static_cast<int>(genus(s, r)) == riemann_hurwitz_genus(static_cast<int>(s), static_cast<int>(r)));
            CHECK(genus(s, r) >= prev);
            prev = genus(s, r);
        }
    }
    CHECK(prym_dimension(build_construction(2, x3_minus_x(), 3)) == 3);
    CHECK(prym_dimension(build_construction(3, x4_plus_1(), 4)) == 12);
    CHECK(prym_dimension(build_construction(2, {1, 0, 0, 0, 0, 1}, 1, false)) == 2);
}

TEST_CASE("end identity") {
    for (unsigned s = 2; s <= 12; ++s) CHECK(end_identity_check(s).vanishes);
    CHECK(end_identity_check(6).sum.is_zero());
}

TEST_CASE("rank bound report") {
    const auto spec = build_construction(2, x3_minus_x(), 3);
    const auto rep = rank_bound_report(spec);
    CHECK(rep.bound == 3);
    CHECK(rep.torsion == "(Z/2)^2");
    CHECK(rep.genus == 1);
    CHECK(rep.prym_dimension == rep.jacobian_power_dimension);
    CHECK(rank_bound_report(build_construction(2, x3_minus_x(), 2, false), 2).bound == 4);
    CHECK(rank_bound_report(build_construction(2, {-2, 0, 0, 1}, 3)).torsion == "trivial");
    CHECK(rank_bound_report(build_construction(2, {0, 1, 0, 1}, 3)).torsion == "Z/2");
    CHECK(rank_bound_report(build_construction(3, x4_plus_1(), 4)).torsion == "not computed");
    CHECK_THROWS_AS(rank_bound_report(spec, 0), std::invalid_argument);
}
