#include "twistrank/cli/report.hpp"

#include <limits>
#include <sstream>

namespace twistrank::cli {

using elliptic::CertificateKind;
using elliptic::Decimal;
using elliptic::RankCertificate;
using exact::Rat;

namespace {

constexpr int kRoundTripDigits = std::numeric_limits<Decimal>::max_digits10;

Json rat_list(const std::vector<Rat>& v) {
    Json out = Json::array();
    for (const auto& r : v) out.push_back(r.to_string());
    return out;
}

Rat rat_from(const Json& j) {
    if (!j.is_string()) throw ReportError("expected a rational string");
    try {
        return Rat::parse(j.get<std::string>());
    } catch (const std::exception&) {
        throw ReportError("malformed rational '" + j.get<std::string>() + "'");
    }
}

Json point_json(const elliptic::QPoint& p) {
    if (p.infinity) return Json{{"infinity", true}};
    return Json{{"X", p.x.to_string()}, {"Y", p.y.to_string()}};
}

elliptic::QPoint point_from(const Json& j) {
    if (j.contains("infinity")) return elliptic::QPoint::at_infinity();
    return elliptic::QPoint::affine(rat_from(j.at("X")), rat_from(j.at("Y")));
}

CertificateKind kind_from(const std::string& s) {
    if (s == "q-specialization") return CertificateKind::QSpecialization;
    if (s == "fp-refutation") return CertificateKind::FpRefutation;
    if (s == "indeterminate") return CertificateKind::Indeterminate;
    throw ReportError("unknown certificate kind '" + s + "'");
}

Json fp_json(const elliptic::FpEvidence& ev) {
    Json samples = Json::array();
    for (const auto& s : ev.samples) samples.push_back({{"prime", s.prime}, {"a", s.a}, {"b", s.b}});
    Json refutations = Json::array();
    for (const auto& r : ev.refutations) refutations.push_back({{"m", r.m}, {"sample", r.sample}, {"image", r.image}});
    return Json{{"samples", samples},
                {"refutations", refutations},
                {"unrefuted", ev.unrefuted},
                {"skipped_primes", ev.skipped_primes}};
}

Json gram_json(const elliptic::GramMatrix& g) {
    Json rows = Json::array();
    for (const auto& row : g.entries) {
        Json r = Json::array();
        for (const auto& v : row) r.push_back(decimal_json(v));
        rows.push_back(r);
    }
    return Json{{"entries", rows},
                {"entry_error", decimal_json(g.entry_error, 6)},
                {"determinant", decimal_json(g.determinant)},
                {"determinant_error", decimal_json(g.determinant_error, 6)}};
}

Json q_json(const elliptic::QEvidence& ev) {
    Json points = Json::array();
    for (std::size_t i = 0; i < ev.points.size(); ++i) {
        const auto& r = ev.points[i];
        Json p = point_json(r.point);
        p["t"] = r.t.to_string();
        p["w"] = r.w.to_string();
        p["source"] = r.source;
        if (i < ev.heights.size()) p["height"] = decimal_json(ev.heights[i]);
        points.push_back(p);
    }
    return Json{{"d", ev.d.to_string()},
                {"curve", {{"A", ev.curve_a.to_string()}, {"B", ev.curve_b.to_string()}}},
                {"points", points},
                {"gram", gram_json(ev.gram)},
                {"threshold", decimal_json(ev.threshold, 6)}};
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

void render_construction(std::ostringstream& os, const Json& c) {
    os << "curve: " << c.at("curve").get<std::string>() << "  (s = " << c.at("s") << ", deg f = " << c.at("r")
       << ", n = " << c.at("n") << ")\n";
    os << "twist: " << c.at("twist_equation").get<std::string>() << "\n";
    const auto& b = c.at("rank_bound");
    os << "genus " << c.at("genus") << ", Prym dimension " << c.at("prym_dimension") << ", rank bound "
       << b.at("bound") << " = n * end_rank (" << b.at("n") << " * " << b.at("end_rank") << "), 2-torsion "
       << b.at("torsion").get<std::string>() << "\n";
}

void render_verification(std::ostringstream& os, const Json& v) {
    os << "points:\n";
    for (const auto& p : v.at("points"))
        os << "  P_" << p.at("label") << " = (" << p.at("x").get<std::string>() << ", "
           << p.at("z").get<std::string>() << ")  on twist: " << yes_no(p.at("on_twist").get<bool>()) << "\n";
    std::size_t passed = 0;
    for (const auto& g : v.at("galois")) passed += g.at("passed").get<bool>() ? 1 : 0;
    os << "galois: " << passed << "/" << v.at("galois").size() << " checks passed\n";
    os << "trivialization: " << (v.at("trivialization").at("passed").get<bool>() ? "passed" : "FAILED") << "\n";
}

void render_certificate(std::ostringstream& os, const Json& c) {
    const bool certified = c.at("kind") != "indeterminate";
    os << "  " << c.at("method").get<std::string>() << ": " << (certified ? "certified" : "indeterminate") << ", bound "
       << c.at("certified_bound") << " of " << c.at("n");
    const auto& ev = c.at("evidence");
    if (ev.contains("refutations"))
        os << " (" << ev.at("refutations").size() << " vectors refuted, " << ev.at("unrefuted").size()
           << " unrefuted, M = " << c.at("parameters").at("M") << ")";
    if (ev.contains("gram"))
        os << " (" << ev.at("points").size() << " points on " << "E_d, d = " << ev.at("d").get<std::string>()
           << ", det = " << ev.at("gram").at("determinant").at("value").get<std::string>() << ")";
    os << "\n    " << c.at("note").get<std::string>() << "\n";
}

}  // namespace

Json decimal_json(const Decimal& d, int digits) { return Json{{"value", elliptic::to_string(d, digits)}, {"digits", digits}}; }

Decimal decimal_from_json(const Json& j) {
    try {
        return Decimal(j.at("value").get<std::string>());
    } catch (const std::exception&) {
        throw ReportError("malformed decimal");
    }
}

Json config_json(const RunConfig& cfg) {
    Json points = Json::array();
    for (const auto& [x, y] : cfg.points) points.push_back({{"X", x}, {"Y", y}});
    return Json{{"s", cfg.s},
                {"n", cfg.n},
                {"f", cfg.f},
                {"strict", cfg.strict},
                {"end_rank", cfg.end_rank},
                {"certifier", cfg.certifier},
                {"M", cfg.M},
                {"primes", cfg.primes},
                {"trials", cfg.trials},
                {"seed", cfg.seed},
                {"inject_dependent", cfg.inject_dependent},
                {"t1", cfg.t1},
                {"search_bound", cfg.search_bound},
                {"tol", cfg.tol},
                {"points", points}};
}

Json construction_json(const cover::ConstructionSpec& spec, unsigned end_rank) {
    const auto bound = cover::rank_bound_report(spec, end_rank);
    const auto end = cover::end_identity_check(spec.s);
    Json product = Json::array();
    for (unsigned i = 1; i <= spec.n; ++i) product.push_back(spec.product_relation_text(i));
    Json quotient = Json::array();
    for (unsigned i = 1; i < spec.n; ++i) quotient.push_back(spec.quotient_relation_text(i));
    Json base = nullptr;
    if (spec.base_point) base = Json{{"a", spec.base_point->a.to_string()}, {"b", spec.base_point->b.to_string()}};
    return Json{{"s", spec.s},
                {"r", spec.r},
                {"n", spec.n},
                {"strict", spec.strict},
                {"f", rat_list(exact::rational_coefficients(spec.f))},
                {"curve", spec.curve_equation()},
                {"twist_equation", spec.twist_equation()},
                {"product_relations", product},
                {"quotient_relations", quotient},
                {"base_point", base},
                {"genus", bound.genus},
                {"prym_dimension", bound.prym_dimension},
                {"jacobian_power_dimension", bound.jacobian_power_dimension},
                {"end_identity", {{"sum", end.sum.to_string()}, {"vanishes", end.vanishes}}},
                {"rank_bound",
                 {{"claim", "rank >= n * end_rank"},
                  {"n", bound.n},
                  {"end_rank", bound.end_rank},
                  {"bound", bound.bound},
                  {"torsion", bound.torsion}}}};
}

Json verification_json(const cover::ConstructionSpec& spec, bool& all_verified) {
    all_verified = true;
    Json points = Json::array();
    for (const auto& p : cover::twist_points(spec)) {
        const auto check = cover::verify_point_on_twist(spec, p);
        all_verified = all_verified && check.zero;
        points.push_back({{"label", p.label},
                          {"x", p.x.to_string()},
                          {"z", p.z.to_string()},
                          {"on_twist", check.zero},
                          {"witness", check.witness.to_string()}});
    }
    Json relations = Json::array();
    for (const auto& r : cover::verify_quotient_relations(spec)) {
        all_verified = all_verified && r.zero;
        relations.push_back({{"relation", r.relation}, {"zero", r.zero}, {"witness", r.witness.to_string()}});
    }
    const auto galois = cover::check_galois(spec);
    Json gchecks = Json::array();
    for (const auto& g : galois.checks) gchecks.push_back({{"item", g.item}, {"passed", g.passed}});
    all_verified = all_verified && galois.all_passed();
    const auto triv = cover::trivialize_over_L(spec);
    Json tpoints = Json::array();
    for (const auto& p : triv.points)
        tpoints.push_back({{"label", p.label}, {"x", p.x.to_string()}, {"u", p.u.to_string()}, {"matches", p.matches}});
    all_verified = all_verified && triv.all_passed();
    return Json{{"points", points},
                {"quotient_relations", relations},
                {"galois", gchecks},
                {"trivialization",
                 {{"equation_reduces", triv.equation_reduces},
                  {"reduced_equation", triv.reduced_equation.to_string()},
                  {"points", tpoints},
                  {"passed", triv.all_passed()}}},
                {"all_verified", all_verified}};
}

Json certificate_json(const RankCertificate& cert) {
    Json params{{"M", cert.M},
                {"primes", cert.primes},
                {"trials", cert.trials},
                {"seed", cert.seed},
                {"copied_specialization", nullptr},
                {"t1", nullptr},
                {"search_bound", cert.search_bound},
                {"tol", decimal_json(cert.tol, kRoundTripDigits)}};
    if (cert.copied_specialization)
        params["copied_specialization"] = {cert.copied_specialization->first, cert.copied_specialization->second};
    if (cert.t1) params["t1"] = cert.t1->to_string();
    Json evidence = cert.fp ? fp_json(*cert.fp) : (cert.q ? q_json(*cert.q) : Json::object());
    return Json{{"kind", elliptic::to_string(cert.kind)},
                {"method", cert.method},
                {"n", cert.n},
                {"certified_bound", cert.certified_bound},
                {"parameters", params},
                {"evidence", evidence},
                {"note", cert.note}};
}

RankCertificate certificate_from_json(const Json& j) {
    try {
        RankCertificate c;
        c.kind = kind_from(j.at("kind").get<std::string>());
        c.method = j.at("method").get<std::string>();
        c.n = j.at("n").get<unsigned>();
        c.certified_bound = j.at("certified_bound").get<unsigned>();
        c.note = j.at("note").get<std::string>();
        const auto& p = j.at("parameters");
        c.M = p.at("M").get<unsigned>();
        c.primes = p.at("primes").get<std::vector<std::uint64_t>>();
        c.trials = p.at("trials").get<unsigned>();
        c.seed = p.at("seed").get<std::uint64_t>();
        if (!p.at("copied_specialization").is_null()) {
            const auto v = p.at("copied_specialization").get<std::vector<unsigned>>();
            if (v.size() != 2) throw ReportError("copied_specialization needs two entries");
            c.copied_specialization = std::make_pair(v[0], v[1]);
        }
        if (!p.at("t1").is_null()) c.t1 = rat_from(p.at("t1"));
        c.search_bound = p.at("search_bound").get<unsigned>();
        c.tol = decimal_from_json(p.at("tol"));

        const auto& ev = j.at("evidence");
        if (c.method == "fp-refutation") {
            elliptic::FpEvidence fp;
            for (const auto& s : ev.at("samples"))
                fp.samples.push_back({s.at("prime").get<std::uint64_t>(), s.at("a").get<std::vector<std::uint64_t>>(),
                                      s.at("b").get<std::vector<std::uint64_t>>()});
            for (const auto& r : ev.at("refutations"))
                fp.refutations.push_back(
                    {r.at("m").get<std::vector<long>>(), r.at("sample").get<std::size_t>(), r.at("image").get<std::string>()});
            fp.unrefuted = ev.at("unrefuted").get<std::vector<std::vector<long>>>();
            fp.skipped_primes = ev.at("skipped_primes").get<std::vector<std::uint64_t>>();
            c.fp = std::move(fp);
        } else if (c.method == "q-specialization") {
            elliptic::QEvidence q;
            q.d = rat_from(ev.at("d"));
            q.curve_a = rat_from(ev.at("curve").at("A"));
            q.curve_b = rat_from(ev.at("curve").at("B"));
            for (const auto& pt : ev.at("points")) {
                q.points.push_back({point_from(pt), rat_from(pt.at("t")), rat_from(pt.at("w")),
                                    pt.at("source").get<std::string>()});
                if (pt.contains("height")) q.heights.push_back(decimal_from_json(pt.at("height")));
            }
            const auto& g = ev.at("gram");
            for (const auto& row : g.at("entries")) {
                std::vector<Decimal> r;
                for (const auto& v : row) r.push_back(decimal_from_json(v));
                q.gram.entries.push_back(std::move(r));
            }
            q.gram.entry_error = decimal_from_json(g.at("entry_error"));
            q.gram.determinant = decimal_from_json(g.at("determinant"));
            q.gram.determinant_error = decimal_from_json(g.at("determinant_error"));
            q.threshold = decimal_from_json(ev.at("threshold"));
            c.q = std::move(q);
        } else {
            throw ReportError("unknown certificate method '" + c.method + "'");
        }
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw ReportError(std::string("malformed certificate: ") + e.what());
    }
}

std::string render_text(const Json& r) {
    std::ostringstream os;
    os << "twistrank report (" << r.at("schema").get<std::string>() << ")\n";
    os << "command: " << r.at("command").get<std::string>() << "\n";
    if (r.contains("construction")) render_construction(os, r.at("construction"));
    if (r.contains("verification")) render_verification(os, r.at("verification"));
    if (r.contains("cells")) {
        os << "grid:\n";
        os << "   s   r   n  status\n";
        for (const auto& c : r.at("cells")) {
            char line[64];
            std::snprintf(line, sizeof line, "  %2u  %2u  %2u  ", c.at("s").get<unsigned>(), c.at("r").get<unsigned>(),
                          c.at("n").get<unsigned>());
            os << line << c.at("status").get<std::string>() << "\n";
        }
        for (const auto& c : r.at("skipped"))
            os << "  skipped s=" << c.at("s") << " r=" << c.at("r") << " n=" << c.at("n") << ": "
               << c.at("reason").get<std::string>() << "\n";
    }
    if (r.contains("certificates") && !r.at("certificates").empty()) {
        os << "certificates:\n";
        for (const auto& c : r.at("certificates")) render_certificate(os, c);
    }
    if (r.contains("replay")) {
        os << "replay:\n";
        for (const auto& c : r.at("replay"))
            os << "  " << c.at("method").get<std::string>() << ": " << (c.at("ok").get<bool>() ? "ok" : "FAILED")
               << " (" << c.at("message").get<std::string>() << ")\n";
    }
    os << "status: " << r.at("status").get<std::string>() << "\n";
    return os.str();
}

}  // namespace twistrank::cli
