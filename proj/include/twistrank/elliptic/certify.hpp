#pragma once

#include "twistrank/cover/construction.hpp"
#include "twistrank/elliptic/height.hpp"
#include "twistrank/elliptic/model.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twistrank::elliptic {

class CertificationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class CertificateKind { QSpecialization, FpRefutation, Indeterminate };
std::string to_string(CertificateKind k);

/// One specialization x_i -> a_i, y_i -> b_i with b_i^2 = f(a_i) mod prime.
struct FpSample {
    std::uint64_t prime = 0;
    std::vector<std::uint64_t> a;
    std::vector<std::uint64_t> b;
};

/// 2 * sum m_i R_i = image != infinity under samples[sample].
struct Refutation {
    std::vector<long> m;
    std::size_t sample = 0;
    std::string image;
};

struct FpEvidence {
    std::vector<FpSample> samples;
    std::vector<Refutation> refutations;
    std::vector<std::vector<long>> unrefuted;
    std::vector<std::uint64_t> skipped_primes;
};

/// A rational point of E_d with its coordinates (t, w) on d w^2 = f(t).
struct QPointRecord {
    QPoint point;
    Rat t;
    Rat w;
    std::string source;  // "P_1" or "search"
};

struct QEvidence {
    Rat d;
    Rat curve_a;
    Rat curve_b;
    std::vector<QPointRecord> points;
    std::vector<Decimal> heights;
    GramMatrix gram;
    Decimal threshold;
};

/// certified_bound is n when every check passed and 0 otherwise; `method`
/// keeps the certifier that produced an indeterminate result.
struct RankCertificate {
    CertificateKind kind = CertificateKind::Indeterminate;
    std::string method;
    unsigned n = 0;
    unsigned certified_bound = 0;

    unsigned M = 0;
    std::vector<std::uint64_t> primes;
    unsigned trials = 0;
    std::uint64_t seed = 0;
    std::optional<std::pair<unsigned, unsigned>> copied_specialization;

    std::optional<Rat> t1;
    unsigned search_bound = 0;
    Decimal tol = 0;

    std::optional<FpEvidence> fp;
    std::optional<QEvidence> q;
    std::string note;
};

struct FpOptions {
    unsigned M = 5;
    std::vector<std::uint64_t> primes{11, 13, 17};
    unsigned trials = 64;
    std::uint64_t seed = 1;
    /// Negative control: overwrite specialization `second` with `first` (1-based).
    std::optional<std::pair<unsigned, unsigned>> copy_specialization;
    unsigned threads = 1;
};

/// Refutes every relation 2 * sum m_i Q_i = 0 with 0 < max |m_i| <= M by
/// specializing the twist points into E(F_p) through the trivialization.
/// Requires s = 2 and deg f = 3; throws CertificationError when no prime is usable.
RankCertificate certify_no_small_relation(const cover::ConstructionSpec& spec, const FpOptions& opts);

struct QOptions {
    Rat t1 = 2;
    unsigned search_bound = 200;
    Decimal tol = Decimal("1e-8");
    /// Use these points of E_d instead of searching (the first is still P_1's image).
    std::optional<std::vector<QPoint>> points;
};

/// Specializes x_1 -> t1, maps the twist to E_d with d = f(t1), collects n
/// points starting with the image of P_1 and certifies independence by a
/// positive Gram determinant. Throws CertificationError when d = 0.
RankCertificate certify_via_Q_specialization(const cover::ConstructionSpec& spec, const QOptions& opts);

/// Affine points with Y >= 0 and X = a/e^2, |a| <= bound, e^2 <= bound, in
/// order of naive height then X.
std::vector<QPoint> search_twist_points(const QCurve& curve, unsigned bound);

struct ReplayResult {
    bool ok = false;
    std::string message;
};

/// Re-checks a certificate from its recorded evidence, without searching.
ReplayResult replay_certificate(const cover::ConstructionSpec& spec, const RankCertificate& cert);

/// Nonzero integer vectors of length n with entries in [-M, M], lexicographic.
std::vector<std::vector<long>> coefficient_vectors(unsigned n, unsigned M);

}  // namespace twistrank::elliptic
