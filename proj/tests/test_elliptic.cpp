#include <doctest.h>

#include "twistrank/elliptic/certify.hpp"
#include "twistrank/elliptic/factor.hpp"
#include "twistrank/elliptic/fp.hpp"
#include "twistrank/elliptic/height.hpp"
#include "twistrank/elliptic/model.hpp"

#include <random>
#include <set>

using namespace twistrank;
using namespace twistrank::elliptic;

namespace {

const QCurve e36(Rat(-36), Rat(0));
const QPoint p12 = QPoint::affine(12, 36);

Decimal dec(const char* s) { return Decimal(s); }

// Exact doubling: h(X(2^k P)) / 4^k with h = log max(|num|, den).
Decimal doubling_height(const QCurve& e, QPoint p, unsigned k) {
    for (unsigned i = 0; i < k; ++i) p = ec_double(e, p);
    Decimal scale = 1;
    for (unsigned i = 0; i < k; ++i) scale *= 4;
    return naive_height(p) / scale;
}

// Brute force over every (x, y) in F_p^2.
std::size_t count_pairs(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::size_t count = 1;
    for (std::uint64_t x = 0; x < p; ++x)
        for (std::uint64_t y = 0; y < p; ++y)
            if ((y * y) % p == (x * x % p * x + a * x + b) % p) ++count;
    return count;
}

std::vector<Rat> x3_minus_x() { return {0, -1, 0, 1}; }

}  // namespace

TEST_CASE("to_weierstrass examples") {
    const auto m = to_weierstrass(x3_minus_x(), 6);
    CHECK(m.curve().a() == Rat(-36));
    CHECK(m.curve().b() == Rat(0));
    CHECK(m.forward(2, 1) == QPoint::affine(12, 36));
    CHECK(m.curve().contains(QPoint::affine(12, 36)));

    const auto trivial = to_weierstrass(x3_minus_x(), 1);
    CHECK(trivial.curve().a() == Rat(-1));
    CHECK(trivial.curve().b() == Rat(0));

    CHECK_THROWS_AS(to_weierstrass(x3_minus_x(), 0), ModelError);
    CHECK_THROWS_AS(to_weierstrass({1, 1, 1}, 1), ModelError);
    CHECK_THROWS_AS(to_weierstrass({0, 0, -1, 1}, 1), ModelError);
    CHECK_THROWS_AS(to_weierstrass({2, 0, 0, 0, 1}, 1), ModelError);
}

TEST_CASE("to_weierstrass maps are mutually inverse on seeded points") {
    std::mt19937_64 rng(2024);
    const std::vector<std::vector<Rat>> polys = {
        x3_minus_x(), {5, -1, 3, 2}, {Rat(1, 3), 0, Rat(-7, 2), Rat(5, 4)}, {0, -1, 0, 0, 1}, {-4, 1, 0, 0, 3}};
    int checked = 0;
    for (const auto& f : polys) {
        for (int done = 0; done < 10;) {
            // d = f(x0) puts (x0, 1) on d z^2 = f(x).
            Rat x0(Integer(static_cast<long>(rng() % 41) - 20), Integer(static_cast<long>(rng() % 7) + 1));
            const Rat d = exact::evaluate(f, x0);
            if (d.is_zero()) continue;
            const auto m = to_weierstrass(f, d);
            const auto p = m.forward(x0, 1);
            CHECK(m.curve().contains(p));
            const auto back = m.backward(p);
            REQUIRE(back.has_value());
            CHECK(back->first == x0);
            CHECK(back->second == Rat(1));
            CHECK(m.forward(back->first, back->second) == p);
            // Multiples of the point map back onto the twist.
            const auto q = ec_mul(m.curve(), p, 3);
            if (auto tw = m.backward(q)) {
                CHECK(d * tw->second * tw->second == exact::evaluate(f, tw->first));
                CHECK(m.forward(tw->first, tw->second) == q);
            }
            ++checked;
            ++done;
        }
    }
    CHECK(checked == 50);
}

TEST_CASE("group law over Q") {
    CHECK(ec_add(e36, p12, QPoint::at_infinity()) == p12);
    CHECK(ec_add(e36, p12, QPoint::affine(12, -36)).infinity);
    const auto two = ec_double(e36, p12);
    CHECK(two == QPoint::affine(Rat(25, 4), Rat(-35, 8)));
    CHECK(ec_mul(e36, p12, 2) == two);
    CHECK(ec_add(e36, p12, p12) == two);
    CHECK(ec_mul(e36, p12, -1) == ec_neg(p12));
    CHECK(ec_mul(e36, p12, 0).infinity);

    const QPoint t = QPoint::affine(0, 0);
    std::vector<QPoint> derived = {p12, two, t, ec_add(e36, p12, t), ec_mul(e36, p12, 3), QPoint::affine(-6, 0)};
    for (const auto& a : derived) {
        CHECK(e36.contains(a));
        CHECK(ec_add(e36, a, ec_neg(a)).infinity);
        for (const auto& b : derived) {
            CHECK(ec_add(e36, a, b) == ec_add(e36, b, a));
            for (const auto& c : derived) {
                const auto lhs = ec_add(e36, ec_add(e36, a, b), c);
                CHECK(lhs == ec_add(e36, a, ec_add(e36, b, c)));
                CHECK(e36.contains(lhs));
            }
        }
    }
}

TEST_CASE("points over F_p") {
    const auto e5 = curve_mod(4, 0, 5);  // X^3 - X
    const auto pts = ec_points_mod_p(e5);
    REQUIRE(pts.size() == 8);
    std::set<std::pair<std::uint64_t, std::uint64_t>> affine;
    for (const auto& p : pts)
        if (!p.infinity) affine.insert({p.x.value(), p.y.value()});
    const std::set<std::pair<std::uint64_t, std::uint64_t>> expected = {{0, 0}, {1, 0}, {4, 0}, {2, 1},
                                                                        {2, 4}, {3, 2}, {3, 3}};
    CHECK(affine == expected);
    CHECK(group_order(curve_mod(10, 0, 11)) == 12);

    for (std::uint64_t p : {5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull})
        for (std::uint64_t a = 0; a < 4; ++a)
            for (std::uint64_t b = 0; b < 4; ++b) {
                const std::uint64_t disc = (4 * a * a * a + 27 * b * b) % p;
                if (disc == 0) {
                    CHECK_THROWS_AS(curve_mod(a, b, p), std::domain_error);
                    continue;
                }
                const auto e = curve_mod(a, b, p);
                const auto all = ec_points_mod_p(e);
                CHECK(all.size() == count_pairs(a, b, p));
                for (const auto& q : all) CHECK(all.size() % point_order(e, q, all.size()) == 0);
            }
    CHECK_THROWS_AS(curve_mod(1, 0, 9), std::domain_error);
}

TEST_CASE("sqrt mod p agrees with brute force") {
    for (std::uint64_t p : {3ull, 5ull, 13ull, 17ull, 41ull, 97ull, 257ull, 65537ull}) {
        for (std::uint64_t a = 0; a < std::min<std::uint64_t>(p, 300); ++a) {
            bool residue = false;
            for (std::uint64_t y = 0; y < p && !residue; ++y) residue = (y * y) % p == a;
            const auto r = sqrt_mod(a, p);
            CHECK(r.has_value() == residue);
            if (r) CHECK((*r * *r) % p == a);
        }
    }
}

TEST_CASE("associativity on 100 seeded triples over F_p") {
    std::mt19937_64 rng(7);
    int triples = 0;
    for (std::uint64_t p : {101ull, 1009ull, 10007ull, 65521ull}) {
        const auto e = curve_mod(p - 36, 0, p);
        const auto pts = ec_points_mod_p(e);
        for (int i = 0; i < 25; ++i) {
            const auto& a = pts[rng() % pts.size()];
            const auto& b = pts[rng() % pts.size()];
            const auto& c = pts[rng() % pts.size()];
            const auto lhs = ec_add(e, ec_add(e, a, b), c);
            CHECK(lhs == ec_add(e, a, ec_add(e, b, c)));
            CHECK(e.contains(lhs));
            CHECK(ec_add(e, a, ec_neg(a)).infinity);
            ++triples;
        }
    }
    CHECK(triples == 100);
}

TEST_CASE("factorization") {
    auto product = [](const std::map<Integer, unsigned>& f) {
        Integer r = 1;
        for (const auto& [p, e] : f) {
            CHECK(mpz_probab_prime_p(p.get_mpz_t(), 30) > 0);
            r *= exact::pow(p, e);
        }
        return r;
    };
    CHECK(product(factor_integer(Integer(-746496))) == 746496);
    const Integer semiprime = Integer(1000003) * Integer(1000033);
    const auto fs = factor_integer(semiprime);
    CHECK(fs.size() == 2);
    CHECK(product(fs) == semiprime);
    const Integer big = Integer("18446744073709551557") * Integer(1000037) * Integer(1000037) * 1024;
    CHECK(product(factor_integer(big)) == big);
    CHECK(valuation(Integer(1296), Integer(2)) == 4);
    CHECK_THROWS_AS(factor_integer(Integer(0)), std::domain_error);
}

TEST_CASE("naive height") {
    CHECK(naive_height(QPoint::at_infinity()) == 0);
    CHECK(abs(naive_height(p12) - log(Decimal(12))) < dec("1e-40"));
    CHECK(abs(naive_height(QPoint::affine(Rat(25, 4), Rat(-35, 8))) - log(Decimal(25))) < dec("1e-40"));
}

TEST_CASE("canonical height against exact doubling") {
    const Decimal tol("1e-8");
    const HeightCalculator calc(e36);
    const auto h = calc.height(p12, tol);
    CHECK(h.tolerance <= tol);
    CHECK(h.value > 10 * tol);
    const Decimal oracle = doubling_height(e36, p12, 8);
    CHECK(abs(h.value - oracle) < dec("1e-3"));

    // Mordell curve y^2 = x^3 + 17.
    const QCurve e17(0, 17);
    const QPoint a = QPoint::affine(-2, 3);
    CHECK(abs(canonical_height(e17, a, tol).value - doubling_height(e17, a, 8)) < dec("1e-3"));

    // Model independence: scaling by u = 2 maps (x, y) to (4x, 8y).
    const QCurve scaled(Rat(-36, 16), Rat(0));
    const QPoint ps = QPoint::affine(Rat(12, 4), Rat(36, 8));
    CHECK(abs(canonical_height(scaled, ps, tol).value - h.value) <= 2 * tol);
}

TEST_CASE("canonical height identities") {
    const Decimal tol("1e-8");
    const HeightCalculator calc(e36);
    const auto h1 = calc.height(p12, tol).value;
    for (long m : {2L, 3L}) {
        const auto hm = calc.height(ec_mul(e36, p12, m), tol).value;
        CHECK(abs(hm - Decimal(m * m) * h1) <= Decimal(m * m + 1) * tol);
    }
    CHECK(calc.height(QPoint::affine(0, 0), tol).value <= tol);
    CHECK(abs(calc.height(QPoint::affine(6, 0), tol).value) <= tol);

    const QCurve e17(0, 17);
    const HeightCalculator c17(e17);
    const QPoint p = QPoint::affine(-2, 3);
    const QPoint q = QPoint::affine(-1, 4);
    const auto lhs = c17.height(ec_add(e17, p, q), tol).value + c17.height(ec_sub(e17, p, q), tol).value;
    const auto rhs = 2 * c17.height(p, tol).value + 2 * c17.height(q, tol).value;
    CHECK(abs(lhs - rhs) <= 6 * tol);

    CHECK_THROWS_AS(calc.height(QPoint::affine(1, 1), tol), std::domain_error);
    CHECK_THROWS_AS(calc.height(p12, dec("1e-200")), HeightError);
}

TEST_CASE("height pairing matrix") {
    const Decimal tol("1e-8");
    const auto one = height_pairing_matrix(e36, {p12}, tol);
    CHECK(one.entries.size() == 1);
    CHECK(one.determinant > 0);
    CHECK(abs(one.determinant - canonical_height(e36, p12, tol).value) <= 2 * tol);

    const auto dep = height_pairing_matrix(e36, {p12, ec_double(e36, p12)}, tol);
    CHECK(abs(dep.determinant) <= dec("1e-6"));
    CHECK(abs(dep.determinant) <= dep.determinant_error);
    CHECK(dep.entries[0][1] == dep.entries[1][0]);

    const QCurve e17(0, 17);
    const auto indep = height_pairing_matrix(e17, {QPoint::affine(-2, 3), QPoint::affine(-1, 4)}, tol);
    CHECK(indep.determinant > 20 * tol);
    CHECK(indep.determinant > indep.determinant_error);
}

TEST_CASE("torsion test and two-torsion") {
    CHECK(torsion_test(e36, QPoint::affine(0, 0)).order == 2);
    CHECK_FALSE(torsion_test(e36, p12).torsion);
    const auto inf = torsion_test(e36, QPoint::at_infinity());
    CHECK(inf.torsion);
    CHECK(inf.order == 1);
    // y^2 = x^3 + 1 has (2, 3) of order 6.
    CHECK(torsion_test(QCurve(0, 1), QPoint::affine(2, 3)).order == 6);

    CHECK(two_torsion(x3_minus_x()) == TwoTorsion::Z2xZ2);
    CHECK(two_torsion({-2, 0, 0, 1}) == TwoTorsion::Trivial);
    CHECK(two_torsion({0, 1, 0, 1}) == TwoTorsion::Z2);
    CHECK_THROWS_AS(two_torsion({1, -1, -1, 1}), std::invalid_argument);
    CHECK(to_string(TwoTorsion::Z2xZ2) == "(Z/2)^2");
}

TEST_CASE("coefficient vectors") {
    CHECK(coefficient_vectors(2, 5).size() == 120);
    CHECK(coefficient_vectors(1, 1) == std::vector<std::vector<long>>{{-1}, {1}});
}

TEST_CASE("F_p refutation certificates") {
    const auto spec1 = cover::build_construction(2, x3_minus_x(), 1, false);
    FpOptions o1;
    o1.M = 1;
    o1.primes = {11};
    const auto c1 = certify_no_small_relation(spec1, o1);
    CHECK(c1.kind == CertificateKind::FpRefutation);
    CHECK(c1.certified_bound == 1);
    CHECK(replay_certificate(spec1, c1).ok);

    const auto spec2 = cover::build_construction(2, x3_minus_x(), 2, false);
    FpOptions o2;
    const auto c2 = certify_no_small_relation(spec2, o2);
    CHECK(c2.kind == CertificateKind::FpRefutation);
    CHECK(c2.certified_bound == 2);
    REQUIRE(c2.fp.has_value());
    CHECK(c2.fp->refutations.size() == 120);
    CHECK(c2.fp->unrefuted.empty());
    const auto replay = replay_certificate(spec2, c2);
    CHECK(replay.ok);

    // Same seed, same certificate; threads do not change the outcome.
    o2.threads = 4;
    const auto c2b = certify_no_small_relation(spec2, o2);
    REQUIRE(c2b.fp.has_value());
    for (std::size_t i = 0; i < 120; ++i) {
        CHECK(c2b.fp->refutations[i].sample == c2.fp->refutations[i].sample);
        CHECK(c2b.fp->refutations[i].image == c2.fp->refutations[i].image);
    }

    // Tampered evidence fails replay.
    auto forged = c2;
    forged.fp->refutations.pop_back();
    CHECK_FALSE(replay_certificate(spec2, forged).ok);
    auto wrong_image = c2;
    wrong_image.fp->refutations[0].image = "(1, 1)";
    CHECK_FALSE(replay_certificate(spec2, wrong_image).ok);
}

TEST_CASE("F_p refutation negative control and errors") {
    const auto spec2 = cover::build_construction(2, x3_minus_x(), 2, false);
    FpOptions o;
    o.copy_specialization = std::make_pair(1u, 2u);
    const auto c = certify_no_small_relation(spec2, o);
    CHECK(c.kind == CertificateKind::Indeterminate);
    CHECK(c.certified_bound == 0);
    REQUIRE(c.fp.has_value());
    const std::vector<long> diag{1, -1};
    CHECK(std::find(c.fp->unrefuted.begin(), c.fp->unrefuted.end(), diag) != c.fp->unrefuted.end());
    CHECK(replay_certificate(spec2, c).ok);

    FpOptions bad;
    bad.primes = {2, 3, 9};
    CHECK_THROWS_AS(certify_no_small_relation(spec2, bad), CertificationError);
    bad.primes = {2, 13};
    const auto partial = certify_no_small_relation(spec2, bad);
    CHECK(partial.fp->skipped_primes == std::vector<std::uint64_t>{2});

    CHECK_THROWS_AS(certify_no_small_relation(cover::build_construction(3, {1, 0, 0, 0, 1}, 4), o),
                    CertificationError);
}

TEST_CASE("Q-specialization certificates") {
    const auto spec1 = cover::build_construction(2, x3_minus_x(), 1, false);
    QOptions q;
    const auto c1 = certify_via_Q_specialization(spec1, q);
    CHECK(c1.kind == CertificateKind::QSpecialization);
    CHECK(c1.certified_bound == 1);
    REQUIRE(c1.q.has_value());
    CHECK(c1.q->points[0].point == p12);
    CHECK(c1.q->curve_a == Rat(-36));
    CHECK(c1.q->heights[0] > 10 * q.tol);
    CHECK(replay_certificate(spec1, c1).ok);

    const auto spec2 = cover::build_construction(2, x3_minus_x(), 2, false);
    QOptions dep;
    dep.points = std::vector<QPoint>{p12, ec_double(e36, p12)};
    const auto c2 = certify_via_Q_specialization(spec2, dep);
    CHECK(c2.kind == CertificateKind::Indeterminate);
    CHECK(c2.certified_bound == 0);
    CHECK(replay_certificate(spec2, c2).ok);

    // E_6 has rank one, so the search cannot supply a second independent point.
    const auto c3 = certify_via_Q_specialization(spec2, q);
    CHECK(c3.kind == CertificateKind::Indeterminate);

    QOptions sing;
    sing.t1 = 1;
    CHECK_THROWS_AS(certify_via_Q_specialization(spec1, sing), CertificationError);

    auto forged = c1;
    forged.q->points[0].point = QPoint::affine(Rat(25, 4), Rat(-35, 8));
    CHECK_FALSE(replay_certificate(spec1, forged).ok);
}

TEST_CASE("search twist points") {
    const auto pts = search_twist_points(e36, 50);
    CHECK(std::find(pts.begin(), pts.end(), p12) != pts.end());
    CHECK(std::find(pts.begin(), pts.end(), QPoint::affine(0, 0)) != pts.end());
    for (const auto& p : pts) CHECK(e36.contains(p));
}
