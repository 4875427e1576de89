#include "twistrank/elliptic/certify.hpp"

#include "twistrank/elliptic/fp.hpp"
#include "twistrank/exact/mpoly.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <random>
#include <set>
#include <thread>

namespace twistrank::elliptic {

using cover::ConstructionSpec;
using cover::FunctionFieldPoint;

std::string to_string(CertificateKind k) {
    switch (k) {
        case CertificateKind::QSpecialization: return "q-specialization";
        case CertificateKind::FpRefutation: return "fp-refutation";
        case CertificateKind::Indeterminate: return "indeterminate";
    }
    return "";
}

namespace {

std::vector<Rat> elliptic_coefficients(const ConstructionSpec& spec) {
    if (spec.s != 2 || spec.r != 3) throw CertificationError("certification requires s = 2 and deg f = 3");
    return exact::rational_coefficients(spec.f);
}

struct PrimeModel {
    std::uint64_t p;
    CubicTwistModel<Fp> model;
    std::vector<Fp> f;
};

std::optional<PrimeModel> prime_model(const std::vector<Rat>& f, std::uint64_t p) {
    if (p <= 3 || !is_prime(p)) return std::nullopt;
    std::vector<Fp> fp;
    for (const auto& c : f) {
        const auto v = exact::rat_mod(c, p);
        if (!v) return std::nullopt;
        fp.emplace_back(*v, p);
    }
    if (fp[3].is_zero()) return std::nullopt;
    try {
        return PrimeModel{p, CubicTwistModel<Fp>(fp, Fp(1, p)), fp};
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

Fp eval(const std::vector<Fp>& f, const Fp& x) {
    Fp acc(0, x.prime());
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + *it;
    return acc;
}

// Images R_i in E(F_p) of the twist points under x_j -> a_j, y_j -> b_j,
// followed by u = z * y_1.
std::vector<FpPoint> specialize(const ConstructionSpec& spec, const std::vector<FunctionFieldPoint>& pts,
                                const PrimeModel& pm, const FpSample& sample) {
    const auto& ring = *spec.ring;
    std::vector<std::uint64_t> values(ring.vars()->size(), 0);
    for (unsigned j = 1; j <= spec.n; ++j) {
        values[ring.x_index(j)] = sample.a.at(j - 1) % pm.p;
        values[ring.y_index(j)] = sample.b.at(j - 1) % pm.p;
    }
    const Fp y1(sample.b.at(0), pm.p);
    std::vector<FpPoint> out;
    for (const auto& pt : pts) {
        const auto x = exact::evaluate_mod(pt.x, values, pm.p);
        const auto z = exact::evaluate_mod(pt.z, values, pm.p);
        if (!x || !z) throw CertificationError("specialization hits a pole");
        const FpPoint r = pm.model.forward(Fp(*x, pm.p), Fp(*z, pm.p) * y1);
        if (!pm.model.curve().contains(r)) throw std::logic_error("specialized point is off the curve");
        out.push_back(r);
    }
    return out;
}

FpPoint combine(const FpCurve& e, const std::vector<FpPoint>& r, const std::vector<long>& m) {
    FpPoint acc = FpPoint::at_infinity();
    for (std::size_t i = 0; i < m.size(); ++i) acc = ec_add(e, acc, ec_mul(e, r[i], m[i]));
    return ec_double(e, acc);
}

std::string fp_point_text(const FpPoint& p) {
    return p.infinity ? "infinity" : "(" + p.x.to_string() + ", " + p.y.to_string() + ")";
}

bool same_point_up_to_sign(const QPoint& a, const QPoint& b) {
    return a == b || a == ec_neg(b);
}

}  // namespace

std::vector<std::vector<long>> coefficient_vectors(unsigned n, unsigned M) {
    std::vector<std::vector<long>> out;
    std::vector<long> m(n, -static_cast<long>(M));
    while (true) {
        if (std::any_of(m.begin(), m.end(), [](long v) { return v != 0; })) out.push_back(m);
        std::size_t i = n;
        while (i > 0 && m[i - 1] == static_cast<long>(M)) {
            m[i - 1] = -static_cast<long>(M);
            --i;
        }
        if (i == 0) break;
        ++m[i - 1];
    }
    return out;
}

RankCertificate certify_no_small_relation(const ConstructionSpec& spec, const FpOptions& opts) {
    const auto f = elliptic_coefficients(spec);
    if (opts.M < 1) throw CertificationError("M must be at least 1");
    if (opts.trials < 1) throw CertificationError("trials must be at least 1");

    RankCertificate cert;
    cert.method = "fp-refutation";
    cert.n = spec.n;
    cert.M = opts.M;
    cert.primes = opts.primes;
    cert.trials = opts.trials;
    cert.seed = opts.seed;
    cert.copied_specialization = opts.copy_specialization;
    if (opts.copy_specialization) {
        const auto [from, to] = *opts.copy_specialization;
        if (from < 1 || to < 1 || from > spec.n || to > spec.n || from == to)
            throw CertificationError("invalid specialization copy");
    }

    FpEvidence ev;
    std::vector<PrimeModel> models;
    for (auto p : opts.primes) {
        if (auto pm = prime_model(f, p)) {
            models.push_back(std::move(*pm));
        } else {
            ev.skipped_primes.push_back(p);
        }
    }
    if (models.empty()) throw CertificationError("no valid primes supplied (need primes > 3 of good reduction)");

    const auto pts = cover::twist_points(spec);
    std::mt19937_64 rng(opts.seed);
    std::vector<std::vector<FpPoint>> images;
    std::vector<std::size_t> model_of;
    for (unsigned t = 0; t < opts.trials; ++t) {
        const std::size_t mi = t % models.size();
        const auto& pm = models[mi];
        FpSample sample{pm.p, {}, {}};
        for (unsigned i = 0; i < spec.n; ++i) {
            while (true) {
                const Fp a(rng() % pm.p, pm.p);
                const auto root = sqrt_mod(eval(pm.f, a).value(), pm.p);
                if (!root || (i == 0 && *root == 0)) continue;
                std::uint64_t b = *root;
                if (rng() & 1u) b = (pm.p - b) % pm.p;
                sample.a.push_back(a.value());
                sample.b.push_back(b);
                break;
            }
        }
        if (opts.copy_specialization) {
            const auto [from, to] = *opts.copy_specialization;
            sample.a[to - 1] = sample.a[from - 1];
            sample.b[to - 1] = sample.b[from - 1];
        }
        images.push_back(specialize(spec, pts, pm, sample));
        model_of.push_back(mi);
        ev.samples.push_back(std::move(sample));
    }

    const auto vectors = coefficient_vectors(spec.n, opts.M);
    std::vector<std::optional<Refutation>> found(vectors.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t v = next++; v < vectors.size(); v = next++) {
            for (std::size_t t = 0; t < images.size(); ++t) {
                const auto img = combine(models[model_of[t]].model.curve(), images[t], vectors[v]);
                if (!img.infinity) {
                    found[v] = Refutation{vectors[v], t, fp_point_text(img)};
                    break;
                }
            }
        }
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(vectors.size())));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    for (std::size_t v = 0; v < vectors.size(); ++v) {
        if (found[v]) {
            ev.refutations.push_back(*found[v]);
        } else {
            ev.unrefuted.push_back(vectors[v]);
        }
    }
    if (ev.unrefuted.empty()) {
        cert.kind = CertificateKind::FpRefutation;
        cert.certified_bound = spec.n;
        cert.note = "no relation with coefficients bounded by M";
    } else {
        cert.kind = CertificateKind::Indeterminate;
        cert.note = std::to_string(ev.unrefuted.size()) + " coefficient vector(s) not refuted";
    }
    cert.fp = std::move(ev);
    return cert;
}

std::vector<QPoint> search_twist_points(const QCurve& curve, unsigned bound) {
    std::vector<std::pair<Decimal, QPoint>> found;
    for (long e = 1; e * e <= static_cast<long>(bound); ++e) {
        const Integer e2 = e * e;
        for (long a = -static_cast<long>(bound); a <= static_cast<long>(bound); ++a) {
            if (exact::gcd(Integer(a), Integer(e)) != 1) continue;
            const Rat x(Integer(a), e2);
            Rat y;
            if (!exact::exact_root(curve.rhs(x), 2, y)) continue;
            const auto p = QPoint::affine(x, y.abs());
            found.emplace_back(naive_height(p), p);
        }
    }
    std::stable_sort(found.begin(), found.end(), [](const auto& l, const auto& r) {
        if (l.first != r.first) return l.first < r.first;
        return l.second.x < r.second.x;
    });
    std::vector<QPoint> out;
    for (auto& [h, p] : found) out.push_back(std::move(p));
    return out;
}

namespace {

QPointRecord make_record(const TwistModel& model, const QPoint& p, std::string source) {
    const auto tw = model.backward(p);
    if (!tw) throw CertificationError("point has no affine preimage on the twist");
    return {p, tw->first, tw->second, std::move(source)};
}

// Image of P_1 = (x_1, 1) after x_1 -> t1, read off the symbolic point.
QPoint p1_image(const ConstructionSpec& spec, const TwistModel& model, const Rat& t1) {
    const auto pts = cover::twist_points(spec);
    std::vector<Rat> values(spec.ring->vars()->size(), Rat(0));
    values[spec.ring->x_index(1)] = t1;
    auto at = [&](const exact::RLElem& e) {
        return exact::evaluate(e.numerator(), values) / exact::evaluate(e.denominator(), values);
    };
    return model.forward(at(pts[0].x), at(pts[0].z));
}

}  // namespace

RankCertificate certify_via_Q_specialization(const ConstructionSpec& spec, const QOptions& opts) {
    const auto f = elliptic_coefficients(spec);
    const Rat d = exact::evaluate(f, opts.t1);
    if (d.is_zero()) throw CertificationError("singular specialization: f(t1) = 0");

    RankCertificate cert;
    cert.method = "q-specialization";
    cert.n = spec.n;
    cert.t1 = opts.t1;
    cert.search_bound = opts.search_bound;
    cert.tol = opts.tol;

    const auto model = to_weierstrass(f, d);
    const auto& e = model.curve();
    const HeightCalculator calc(e);
    const Decimal threshold = Decimal(spec.n) * 10 * opts.tol;

    QEvidence ev;
    ev.d = d;
    ev.curve_a = e.a();
    ev.curve_b = e.b();
    ev.threshold = threshold;

    std::vector<QPoint> chosen{p1_image(spec, model, opts.t1)};
    ev.points.push_back(make_record(model, chosen[0], "P_1"));
    if (opts.points) {
        for (const auto& p : *opts.points) {
            if (!e.contains(p)) throw CertificationError("supplied point is not on E_d");
            if (chosen.size() == 1 && p == chosen[0]) continue;
            chosen.push_back(p);
            ev.points.push_back(make_record(model, p, "supplied"));
        }
        if (chosen.size() > spec.n) throw CertificationError("more points supplied than n");
    } else if (spec.n > 1) {
        std::vector<QPoint> spare;
        for (const auto& p : search_twist_points(e, opts.search_bound)) {
            if (chosen.size() == spec.n) break;
            if (torsion_test(e, p).torsion) continue;
            if (std::any_of(chosen.begin(), chosen.end(), [&](const QPoint& c) { return same_point_up_to_sign(c, p); }))
                continue;
            auto trial = chosen;
            trial.push_back(p);
            const auto g = height_pairing_matrix(calc, trial, opts.tol);
            if (g.determinant > Decimal(trial.size()) * 10 * opts.tol && g.determinant > g.determinant_error) {
                chosen = std::move(trial);
                ev.points.push_back(make_record(model, p, "search"));
            } else {
                spare.push_back(p);
            }
        }
        for (const auto& p : spare) {
            if (chosen.size() == spec.n) break;
            chosen.push_back(p);
            ev.points.push_back(make_record(model, p, "search"));
        }
    }

    for (const auto& p : chosen) ev.heights.push_back(calc.height(p, opts.tol).value);
    ev.gram = height_pairing_matrix(calc, chosen, opts.tol);

    const bool enough = chosen.size() == spec.n;
    const bool positive = ev.gram.determinant > threshold && ev.gram.determinant > ev.gram.determinant_error;
    if (enough && positive) {
        cert.kind = CertificateKind::QSpecialization;
        cert.certified_bound = spec.n;
        cert.note = "Gram determinant exceeds n * 10 * tol";
    } else {
        cert.kind = CertificateKind::Indeterminate;
        cert.note = enough ? "Gram determinant not separated from zero"
                           : "found " + std::to_string(chosen.size()) + " of " + std::to_string(spec.n) + " points";
    }
    cert.q = std::move(ev);
    return cert;
}

namespace {

ReplayResult replay_fp(const ConstructionSpec& spec, const RankCertificate& cert) {
    const auto f = elliptic_coefficients(spec);
    const auto& ev = *cert.fp;
    std::map<std::uint64_t, PrimeModel> models;
    for (const auto& s : ev.samples) {
        if (models.count(s.prime)) continue;
        auto pm = prime_model(f, s.prime);
        if (!pm) return {false, "sample uses an invalid prime " + std::to_string(s.prime)};
        models.emplace(s.prime, std::move(*pm));
    }
    const auto pts = cover::twist_points(spec);
    std::vector<std::vector<FpPoint>> images;
    for (const auto& s : ev.samples) {
        const auto& pm = models.at(s.prime);
        if (s.a.size() != spec.n || s.b.size() != spec.n) return {false, "sample has wrong length"};
        for (unsigned i = 0; i < spec.n; ++i) {
            const Fp a(s.a[i], s.prime);
            const Fp b(s.b[i], s.prime);
            if (!(b * b == eval(pm.f, a))) return {false, "sample is not on y^2 = f(x)"};
        }
        if (s.b[0] % s.prime == 0) return {false, "sample has y_1 = 0"};
        images.push_back(specialize(spec, pts, pm, s));
    }

    std::set<std::vector<long>> seen;
    for (const auto& r : ev.refutations) {
        if (r.sample >= images.size()) return {false, "refutation cites a missing sample"};
        if (r.m.size() != spec.n) return {false, "refutation vector has wrong length"};
        for (long v : r.m)
            if (std::labs(v) > static_cast<long>(cert.M)) return {false, "refutation vector exceeds M"};
        const auto img = combine(models.at(ev.samples[r.sample].prime).model.curve(), images[r.sample], r.m);
        if (img.infinity) return {false, "recorded refutation does not refute"};
        if (fp_point_text(img) != r.image) return {false, "recorded image does not match"};
        seen.insert(r.m);
    }
    const auto all = coefficient_vectors(spec.n, cert.M);
    const bool complete = seen.size() == all.size();
    if (cert.kind == CertificateKind::FpRefutation && (!complete || cert.certified_bound != spec.n))
        return {false, "certificate claims more than its refutations show"};
    if (cert.kind == CertificateKind::Indeterminate && cert.certified_bound != 0)
        return {false, "indeterminate certificate claims a bound"};
    return {true, std::to_string(seen.size()) + " of " + std::to_string(all.size()) + " vectors refuted on replay"};
}

ReplayResult replay_q(const ConstructionSpec& spec, const RankCertificate& cert) {
    const auto f = elliptic_coefficients(spec);
    const auto& ev = *cert.q;
    if (!cert.t1) return {false, "missing t1"};
    const Rat d = exact::evaluate(f, *cert.t1);
    if (d != ev.d) return {false, "recorded d does not match f(t1)"};
    const auto model = to_weierstrass(f, d);
    const auto& e = model.curve();
    if (e.a() != ev.curve_a || e.b() != ev.curve_b) return {false, "recorded curve does not match"};
    if (ev.points.empty() || !(ev.points[0].point == p1_image(spec, model, *cert.t1)))
        return {false, "first point is not the image of P_1"};
    std::vector<QPoint> pts;
    for (const auto& r : ev.points) {
        if (!e.contains(r.point)) return {false, "recorded point is off E_d"};
        const auto tw = model.backward(r.point);
        if (!tw || tw->first != r.t || tw->second != r.w) return {false, "recorded twist coordinates do not match"};
        pts.push_back(r.point);
    }
    const auto g = height_pairing_matrix(HeightCalculator(e), pts, cert.tol);
    const Decimal threshold = Decimal(spec.n) * 10 * cert.tol;
    const bool positive = pts.size() == spec.n && g.determinant > threshold && g.determinant > g.determinant_error;
    if (cert.kind == CertificateKind::QSpecialization && !positive)
        return {false, "Gram determinant does not certify on replay"};
    if (cert.kind == CertificateKind::QSpecialization && cert.certified_bound != spec.n)
        return {false, "certified bound does not match n"};
    if (cert.kind == CertificateKind::Indeterminate && cert.certified_bound != 0)
        return {false, "indeterminate certificate claims a bound"};
    return {true, "Gram determinant " + to_string(g.determinant, 12) + " recomputed"};
}

}  // namespace

ReplayResult replay_certificate(const ConstructionSpec& spec, const RankCertificate& cert) {
    if (cert.n != spec.n) return {false, "certificate n does not match the construction"};
    if (cert.certified_bound > cert.n) return {false, "certified bound exceeds n"};
    if (cert.fp) return replay_fp(spec, cert);
    if (cert.q) return replay_q(spec, cert);
    return {false, "certificate has no evidence"};
}

}  // namespace twistrank::elliptic
