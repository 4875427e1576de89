#include <doctest.h>

#include "twistrank/cli/commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace twistrank;
using namespace twistrank::cli;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args, int expected_code) {
    const auto r = run(std::move(args));
    CAPTURE(r.err);
    CHECK(r.code == expected_code);
    return Json::parse(r.out);
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("twistrank_test_" + name);
}

}  // namespace

TEST_CASE("construct examples") {
    const auto r = run_json({"construct", "--s", "2", "--f", "0,-1,0,1", "--n", "3"}, 0);
    CHECK(r.at("schema") == kSchema);
    CHECK(r.at("construction").at("twist_equation") == "(x_1^3 - x_1)*z^2 = x^3 - x");
    CHECK(r.at("verification").at("points").size() == 3);
    for (const auto& p : r.at("verification").at("points")) {
        CHECK(p.at("on_twist") == true);
        CHECK(p.at("witness") == "0");
    }
    CHECK(r.at("construction").at("rank_bound").at("bound") == 3);
    CHECK(r.at("status") == "verified");
    CHECK(r.at("timing").is_null());

    const auto r3 = run_json({"construct", "--s", "3", "--f", "1,0,0,0,1", "--n", "4"}, 0);
    CHECK(r3.at("construction").at("genus") == 3);
    CHECK(r3.at("construction").at("prym_dimension") == 12);

    const auto bad = run({"construct", "--s", "4", "--f", "1,1,1", "--n", "4"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("s exceeds deg f") != std::string::npos);

    const auto text = run({"construct", "--format", "text"});
    CHECK(text.code == 0);
    CHECK(text.out.find("twist: (x_1^3 - x_1)*z^2 = x^3 - x") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"construct", "--s", "two"}).code == 2);
    CHECK(run({"construct", "--f", "0,0.5,0,1"}).code == 2);
    CHECK(run({"construct", "--f", "0,-1,0,1", "--n", "2"}).code == 2);
    CHECK(run({"construct", "--f", "0,-1,0,1", "--n", "2", "--no-strict"}).code == 0);
    CHECK(run({"certify", "--certifier", "magic"}).code == 2);
    CHECK(run({"certify", "--tol", "1"}).code == 2);
    CHECK(run({"construct", "--help"}).code == 0);
}

TEST_CASE("certify examples") {
    const auto fp = run_json({"certify", "--n", "2", "--certifier", "fp", "--M", "5", "--primes", "11,13,17"}, 0);
    REQUIRE(fp.at("certificates").size() == 1);
    const auto& c = fp.at("certificates")[0];
    CHECK(c.at("kind") == "fp-refutation");
    CHECK(c.at("certified_bound") == 2);
    CHECK(c.at("evidence").at("refutations").size() == 120);

    const auto q = run_json({"certify", "--n", "1", "--certifier", "heights", "--t1", "2"}, 0);
    const auto& qc = q.at("certificates")[0];
    CHECK(qc.at("certified_bound") == 1);
    CHECK(qc.at("evidence").at("points")[0].at("X") == "12");
    CHECK(qc.at("evidence").at("points")[0].at("Y") == "36");
    CHECK(qc.at("evidence").at("curve").at("A") == "-36");

    const auto dep = run_json(
        {"certify", "--n", "2", "--certifier", "heights", "--t1", "2", "--points", "12,36;25/4,-35/8"}, 1);
    CHECK(dep.at("certificates")[0].at("kind") == "indeterminate");
    CHECK(dep.at("status") == "indeterminate");

    const auto inj = run_json({"certify", "--n", "2", "--inject-dependent"}, 1);
    CHECK(inj.at("certificates")[0].at("kind") == "indeterminate");

    const auto sing = run({"certify", "--n", "1", "--certifier", "heights", "--t1", "1"});
    CHECK(sing.code == 2);
    CHECK(sing.err.find("singular") != std::string::npos);

    const auto quartic = run({"certify", "--s", "3", "--f", "1,0,0,0,1", "--n", "4"});
    CHECK(quartic.code == 2);
    CHECK(quartic.err.find("s = 2") != std::string::npos);
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
    const std::vector<std::string> args = {"certify", "--n", "2", "--certifier", "both", "--seed", "7"};
    setenv("TWISTRANK_THREADS", "1", 1);
    const auto a = run(args);
    setenv("TWISTRANK_THREADS", "4", 1);
    const auto b = run(args);
    const auto c = run(args);
    unsetenv("TWISTRANK_THREADS");
    CHECK(a.out == b.out);
    CHECK(b.out == c.out);
    CHECK(run({"grid"}).out == run({"grid"}).out);

    const auto other_seed = run({"certify", "--n", "2", "--certifier", "fp", "--seed", "8"});
    CHECK(other_seed.out != a.out);
}

TEST_CASE("grid") {
    const auto g = run_json({"grid", "--grid-s", "2,3", "--grid-r", "3,4", "--grid-n", "3..5"}, 0);
    CHECK(g.at("cells").size() == 10);
    for (const auto& c : g.at("cells")) CHECK(c.at("status") == "verified");
    CHECK(g.at("skipped").size() == 2);  // r = 4, n = 3 for both s

    const auto skip = run_json({"grid", "--grid-s", "2,4", "--grid-r", "3", "--grid-n", "3"}, 0);
    REQUIRE(skip.at("skipped").size() == 1);
    CHECK(skip.at("skipped")[0].at("reason") == "s > r");

    CHECK(run({"grid", "--grid-s", "4", "--grid-r", "3", "--grid-n", "3"}).code == 2);

    const auto single = run_json({"grid", "--grid-s", "2", "--grid-r", "3", "--grid-n", "3"}, 0);
    const auto construct = run_json({"construct", "--s", "2", "--f", "0,-1,0,1", "--n", "3"}, 0);
    REQUIRE(single.at("cells").size() == 1);
    CHECK(single.at("cells")[0].at("report").at("construction") == construct.at("construction"));
    CHECK(single.at("cells")[0].at("report").at("verification") == construct.at("verification"));
}

TEST_CASE("config file with flag overrides") {
    const auto path = temp_file("config.ini");
    {
        std::ofstream f(path);
        f << "[construction]\ns = 3\nf = 1,0,0,0,1\nn = 4\n\n[certify]\nM = 3\n\n[output]\nformat = json\n";
    }
    const auto r = run_json({"construct", "--config", path.string()}, 0);
    CHECK(r.at("construction").at("s") == 3);
    CHECK(r.at("config").at("M") == 3);
    const auto over = run_json({"construct", "--config", path.string(), "--n", "5"}, 0);
    CHECK(over.at("construction").at("n") == 5);

    {
        std::ofstream f(path);
        f << "[construction]\ncolour = blue\n";
    }
    const auto unknown = run({"construct", "--config", path.string()});
    CHECK(unknown.code == 2);
    CHECK(unknown.err.find("colour") != std::string::npos);
    CHECK(run({"construct", "--config", "/nonexistent/twistrank.ini"}).code == 2);
    std::filesystem::remove(path);
}

TEST_CASE("report replays saved certificates") {
    const auto path = temp_file("report.json");
    CHECK(run({"certify", "--n", "1", "--certifier", "both", "--out", path.string()}).code == 0);
    const auto replay = run_json({"report", path.string()}, 0);
    CHECK(replay.at("replayed_command") == "certify");
    REQUIRE(replay.at("replay").size() == 3);
    for (const auto& r : replay.at("replay")) CHECK(r.at("ok") == true);

    Json saved;
    {
        std::ifstream in(path);
        saved = Json::parse(in);
    }
    saved["certificates"][1]["evidence"]["points"][0]["X"] = "25/4";
    saved["certificates"][1]["evidence"]["points"][0]["Y"] = "-35/8";
    {
        std::ofstream out(path);
        out << saved.dump();
    }
    const auto tampered = run_json({"report", path.string()}, 1);
    CHECK(tampered.at("status") == "replay failed");

    saved["schema"] = "something/v0";
    {
        std::ofstream out(path);
        out << saved.dump();
    }
    CHECK(run({"report", path.string()}).code == 2);
    CHECK(run({"report", "/nonexistent/report.json"}).code == 2);
    std::filesystem::remove(path);
}

TEST_CASE("certificate JSON round trip") {
    const auto spec = cover::build_construction(2, {0, -1, 0, 1}, 2, false);
    const auto fp = elliptic::certify_no_small_relation(spec, elliptic::FpOptions{});
    const auto back = certificate_from_json(certificate_json(fp));
    CHECK(certificate_json(back) == certificate_json(fp));
    CHECK(elliptic::replay_certificate(spec, back).ok);

    elliptic::QOptions qo;
    const auto q = elliptic::certify_via_Q_specialization(spec, qo);
    const auto qback = certificate_from_json(certificate_json(q));
    CHECK(certificate_json(qback) == certificate_json(q));
    CHECK(elliptic::replay_certificate(spec, qback).ok);

    CHECK_THROWS_AS(certificate_from_json(Json{{"kind", "nonsense"}}), ReportError);
}
