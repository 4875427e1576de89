#include "twistrank/cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

namespace twistrank::cli {

using exact::Rat;

namespace {

Json base_report(const std::string& command, const RunConfig& cfg) {
    return Json{{"schema", kSchema}, {"command", command}, {"config", config_json(cfg)}};
}

void finish(CommandResult& r, const std::string& status, int code, const RunConfig& cfg,
            std::chrono::steady_clock::time_point start) {
    if (cfg.timing) {
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        r.report["timing"] = {{"seconds", elapsed.count()}};
    } else {
        r.report["timing"] = nullptr;
    }
    r.report["status"] = status;
    r.report["exit_code"] = code;
    r.exit_code = code;
}

std::vector<Rat> x_power_minus_x(unsigned r) {
    std::vector<Rat> f(r + 1, Rat(0));
    f[1] = -1;
    f[r] = 1;
    return f;
}

std::vector<std::string> as_strings(const std::vector<Rat>& v) {
    std::vector<std::string> out;
    for (const auto& r : v) out.push_back(r.to_string());
    return out;
}

unsigned degree_of(const std::vector<Rat>& f) {
    std::size_t d = f.size();
    while (d > 0 && f[d - 1].is_zero()) --d;
    return d == 0 ? 0 : static_cast<unsigned>(d - 1);
}

}  // namespace

CommandResult cmd_construct(const RunConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    cfg.validate();
    const auto spec = cover::build_construction(cfg.s, cfg.f_coeffs(), cfg.n, cfg.strict);
    CommandResult r;
    r.report = base_report("construct", cfg);
    bool ok = false;
    r.report["construction"] = construction_json(spec, cfg.end_rank);
    r.report["verification"] = verification_json(spec, ok);
    r.report["certificates"] = Json::array();
    finish(r, ok ? "verified" : "failed", ok ? 0 : 1, cfg, start);
    return r;
}

CommandResult cmd_certify(const RunConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    cfg.validate();
    const auto f = cfg.f_coeffs();
    if (cfg.s != 2 || degree_of(f) != 3)
        throw ConfigError("certify supports s = 2 with a cubic f only (got s = " + std::to_string(cfg.s) +
                          ", deg f = " + std::to_string(degree_of(f)) + ")");
    if (cfg.inject_dependent && cfg.n < 2) throw ConfigError("inject_dependent needs n >= 2");
    const auto spec = cover::build_construction(cfg.s, f, cfg.n, false);

    CommandResult r;
    r.report = base_report("certify", cfg);
    bool ok = false;
    r.report["construction"] = construction_json(spec, cfg.end_rank);
    r.report["verification"] = verification_json(spec, ok);

    std::vector<elliptic::RankCertificate> certs;
    if (cfg.certifier == "fp" || cfg.certifier == "both") {
        elliptic::FpOptions o;
        o.M = cfg.M;
        o.primes = cfg.primes;
        o.trials = cfg.trials;
        o.seed = cfg.seed;
        o.threads = cfg.threads;
        if (cfg.inject_dependent) o.copy_specialization = std::make_pair(1u, 2u);
        certs.push_back(elliptic::certify_no_small_relation(spec, o));
    }
    if (cfg.certifier == "heights" || cfg.certifier == "both") {
        elliptic::QOptions o;
        o.t1 = cfg.t1_value();
        o.search_bound = cfg.search_bound;
        o.tol = cfg.tol_value();
        if (!cfg.points.empty()) {
            std::vector<elliptic::QPoint> pts;
            for (const auto& [x, y] : cfg.points) pts.push_back(elliptic::QPoint::affine(Rat::parse(x), Rat::parse(y)));
            o.points = std::move(pts);
        }
        certs.push_back(elliptic::certify_via_Q_specialization(spec, o));
    }
    Json list = Json::array();
    bool all_certified = true;
    for (const auto& c : certs) {
        list.push_back(certificate_json(c));
        all_certified = all_certified && c.kind != elliptic::CertificateKind::Indeterminate;
    }
    r.report["certificates"] = list;
    if (!ok) {
        finish(r, "failed", 1, cfg, start);
    } else if (!all_certified) {
        finish(r, "indeterminate", 1, cfg, start);
    } else {
        finish(r, "certified", 0, cfg, start);
    }
    return r;
}

CommandResult cmd_grid(const RunConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    struct Cell {
        unsigned s, r, n;
    };
    std::vector<Cell> cells;
    Json skipped = Json::array();
    for (unsigned s : cfg.grid_s)
        for (unsigned r : cfg.grid_r)
            for (unsigned n : cfg.grid_n) {
                std::string reason;
                if (s < 2) reason = "s < 2";
                else if (s > r) reason = "s > r";
                else if (r > n) reason = "n < r";
                else if (s > 12 || n > 8) reason = "outside supported range";
                if (reason.empty()) {
                    cells.push_back({s, r, n});
                } else {
                    skipped.push_back({{"s", s}, {"r", r}, {"n", n}, {"reason", reason}});
                }
            }
    if (cells.empty()) throw ConfigError("grid has no cell with 2 <= s <= r <= n");

    std::vector<Json> results(cells.size());
    std::vector<bool> verified(cells.size(), false);
    std::vector<std::string> errors(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            const auto& c = cells[i];
            RunConfig cell = cfg;
            cell.s = c.s;
            cell.n = c.n;
            cell.f = as_strings(x_power_minus_x(c.r));
            cell.strict = true;
            try {
                const auto spec = cover::build_construction(c.s, x_power_minus_x(c.r), c.n, true);
                bool ok = false;
                Json rep{{"construction", construction_json(spec, cfg.end_rank)},
                         {"verification", verification_json(spec, ok)}};
                results[i] = std::move(rep);
                verified[i] = ok;
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(cells.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    CommandResult r;
    r.report = base_report("grid", cfg);
    r.report["family"] = "f_r = x^r - x";
    Json list = Json::array();
    bool all = true;
    std::size_t passed = 0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto& c = cells[i];
        Json cell{{"s", c.s}, {"r", c.r}, {"n", c.n}};
        if (!errors[i].empty()) {
            cell["status"] = "error";
            cell["error"] = errors[i];
            all = false;
        } else {
            cell["status"] = verified[i] ? "verified" : "failed";
            cell["report"] = results[i];
            all = all && verified[i];
            passed += verified[i] ? 1 : 0;
        }
        list.push_back(cell);
    }
    r.report["cells"] = list;
    r.report["skipped"] = skipped;
    r.report["summary"] = {{"cells", cells.size()}, {"verified", passed}, {"skipped", skipped.size()}};
    r.report["certificates"] = Json::array();
    finish(r, all ? "verified" : "failed", all ? 0 : 1, cfg, start);
    return r;
}

namespace {

cover::ConstructionSpec spec_from(const Json& construction) {
    std::vector<Rat> f;
    for (const auto& c : construction.at("f")) f.push_back(Rat::parse(c.get<std::string>()));
    return cover::build_construction(construction.at("s").get<unsigned>(), f, construction.at("n").get<unsigned>(),
                                     construction.at("strict").get<bool>());
}

Json replay_symbolic(const Json& saved_cell, bool& ok) {
    const auto spec = spec_from(saved_cell.at("construction"));
    bool verified = false;
    const Json recomputed = verification_json(spec, verified);
    const bool same = recomputed == saved_cell.at("verification");
    ok = same && verified;
    return Json{{"method", "symbolic"},
                {"ok", ok},
                {"message", same ? (verified ? "all witnesses recomputed and zero" : "recomputed witnesses are nonzero")
                                 : "recomputed verification differs from the report"}};
}

}  // namespace

CommandResult cmd_report(const Json& saved) {
    if (!saved.is_object() || !saved.contains("schema") || saved.at("schema") != kSchema)
        throw ReportError(std::string("not a ") + kSchema + " report");
    CommandResult r;
    r.report = saved;
    r.report["command"] = "report";
    r.report["replayed_command"] = saved.at("command");
    Json replay = Json::array();
    bool all_ok = true;
    bool indeterminate = false;
    try {
        if (saved.contains("cells")) {
            for (const auto& cell : saved.at("cells")) {
                if (!cell.contains("report")) continue;
                bool ok = false;
                Json entry = replay_symbolic(cell.at("report"), ok);
                entry["cell"] = {cell.at("s"), cell.at("r"), cell.at("n")};
                replay.push_back(entry);
                all_ok = all_ok && ok;
            }
        } else {
            bool ok = false;
            replay.push_back(replay_symbolic(saved, ok));
            all_ok = all_ok && ok;
            if (saved.contains("certificates") && !saved.at("certificates").empty()) {
                const auto spec = spec_from(saved.at("construction"));
                for (const auto& c : saved.at("certificates")) {
                    const auto cert = certificate_from_json(c);
                    const auto res = elliptic::replay_certificate(spec, cert);
                    replay.push_back({{"method", cert.method}, {"ok", res.ok}, {"message", res.message}});
                    all_ok = all_ok && res.ok;
                    indeterminate = indeterminate || cert.kind == elliptic::CertificateKind::Indeterminate;
                }
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ReportError(std::string("malformed report: ") + e.what());
    }
    r.report["replay"] = replay;
    const int code = all_ok ? (indeterminate ? 1 : 0) : 1;
    r.report["status"] = !all_ok ? "replay failed" : (indeterminate ? "indeterminate" : "replayed");
    r.report["exit_code"] = code;
    r.exit_code = code;
    return r;
}

namespace {

const char* kFHelp = "coefficients of f, constant term first, as exact rationals: \"0,-1,0,1\" is x^3 - x";

struct Flags {
    std::optional<std::string> config;
    std::optional<unsigned> s, n, end_rank, M, trials, search_bound;
    std::optional<std::string> f, certifier, primes, t1, tol, points, grid_s, grid_r, grid_n, out, format;
    std::optional<std::uint64_t> seed;
    std::optional<bool> strict;
    bool inject_dependent = false;
    bool timing = false;
    std::string input;
};

void add_common(CLI::App* cmd, Flags& fl) {
    cmd->add_option("--config", fl.config, "INI file with [construction], [certify], [grid], [output] sections");
    cmd->add_option("--s", fl.s, "cover degree s");
    cmd->add_option("--n", fl.n, "number of copies n");
    cmd->add_option("--f", fl.f, kFHelp);
    cmd->add_flag_function(
        "--strict,!--no-strict", [&fl](std::int64_t c) { fl.strict = c > 0; }, "require n >= deg f (default on)");
    cmd->add_option("--end-rank", fl.end_rank, "rank of End(J) used in the bound n * end_rank");
    cmd->add_option("--out", fl.out, "write the report here instead of stdout");
    cmd->add_option("--format", fl.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    cmd->add_flag("--timing", fl.timing, "include wall-clock timing (reports are no longer byte-stable)");
}

void add_certify(CLI::App* cmd, Flags& fl) {
    cmd->add_option("--certifier", fl.certifier, "fp, heights or both")->check(CLI::IsMember({"fp", "heights", "both"}));
    cmd->add_option("--M", fl.M, "coefficient bound for refuted relations");
    cmd->add_option("--primes", fl.primes, "comma-separated primes of good reduction, e.g. 11,13,17");
    cmd->add_option("--trials", fl.trials, "number of random specializations");
    cmd->add_option("--seed", fl.seed, "random seed (recorded in the certificate)");
    cmd->add_flag("--inject-dependent", fl.inject_dependent, "negative control: copy the first specialization onto the second");
    cmd->add_option("--t1", fl.t1, "rational value for x_1 in the Q-specialization");
    cmd->add_option("--search-bound", fl.search_bound, "height bound for the point search on E_d");
    cmd->add_option("--tol", fl.tol, "absolute tolerance for canonical heights");
    cmd->add_option("--points", fl.points, "explicit points of E_d as \"X,Y;X,Y\" (skips the search)");
}

RunConfig resolve(const Flags& fl) {
    RunConfig cfg;
    if (fl.config) cfg = load_config_file(*fl.config, cfg);
    if (fl.s) cfg.s = *fl.s;
    if (fl.n) cfg.n = *fl.n;
    if (fl.f) cfg.f = split_list(*fl.f);
    if (fl.strict) cfg.strict = *fl.strict;
    if (fl.end_rank) cfg.end_rank = *fl.end_rank;
    if (fl.certifier) cfg.certifier = *fl.certifier;
    if (fl.M) cfg.M = *fl.M;
    if (fl.primes) {
        cfg.primes.clear();
        for (const auto& p : split_list(*fl.primes)) {
            if (p.empty() || !std::all_of(p.begin(), p.end(), [](unsigned char c) { return std::isdigit(c); }))
                throw ConfigError("primes: '" + p + "' is not a positive integer");
            cfg.primes.push_back(std::stoull(p));
        }
    }
    if (fl.trials) cfg.trials = *fl.trials;
    if (fl.seed) cfg.seed = *fl.seed;
    if (fl.inject_dependent) cfg.inject_dependent = true;
    if (fl.t1) cfg.t1 = *fl.t1;
    if (fl.search_bound) cfg.search_bound = *fl.search_bound;
    if (fl.tol) cfg.tol = *fl.tol;
    if (fl.points) cfg.points = parse_points(*fl.points);
    if (fl.grid_s) cfg.grid_s = parse_range(*fl.grid_s);
    if (fl.grid_r) cfg.grid_r = parse_range(*fl.grid_r);
    if (fl.grid_n) cfg.grid_n = parse_range(*fl.grid_n);
    if (fl.out) cfg.out = *fl.out;
    if (fl.format) cfg.format = *fl.format;
    if (fl.timing) cfg.timing = true;
    cfg.threads = thread_cap();
    return cfg;
}

std::string serialize(const Json& report, const std::string& format) {
    return format == "text" ? render_text(report) : report.dump(2) + "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"twistrank: rank lower bounds for twists of superelliptic Jacobians"};
    app.require_subcommand(1);
    Flags fl;
    auto* construct = app.add_subcommand("construct", "build the twist and verify its points symbolically");
    auto* certify = app.add_subcommand("certify", "construct, then certify rank >= n (s = 2, cubic f)");
    auto* grid = app.add_subcommand("grid", "run construct over a grid of (s, deg f, n)");
    auto* report = app.add_subcommand("report", "replay and render a saved JSON report");
    for (auto* cmd : {construct, certify, grid}) add_common(cmd, fl);
    add_certify(certify, fl);
    grid->add_option("--grid-s", fl.grid_s, "values of s, \"2,3\" or \"2..4\"");
    grid->add_option("--grid-r", fl.grid_r, "degrees of f_r = x^r - x");
    grid->add_option("--grid-n", fl.grid_n, "values of n");
    report->add_option("input", fl.input, "saved report (JSON)")->required();
    report->add_option("--out", fl.out, "write the rendering here instead of stdout");
    report->add_option("--format", fl.format, "json or text")->check(CLI::IsMember({"json", "text"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    RunConfig cfg;
    CommandResult result;
    try {
        if (report->parsed()) {
            if (fl.out) cfg.out = *fl.out;
            if (fl.format) cfg.format = *fl.format;
            std::ifstream in(fl.input);
            if (!in) throw ConfigError("cannot open report '" + fl.input + "'");
            Json saved;
            try {
                saved = Json::parse(in);
            } catch (const nlohmann::json::exception& e) {
                throw ReportError(std::string("report is not valid JSON: ") + e.what());
            }
            result = cmd_report(saved);
        } else {
            cfg = resolve(fl);
            if (construct->parsed()) result = cmd_construct(cfg);
            else if (certify->parsed()) result = cmd_certify(cfg);
            else result = cmd_grid(cfg);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    const std::string text = serialize(result.report, cfg.format);
    if (cfg.out.empty()) {
        out << text;
    } else {
        std::ofstream file(cfg.out, std::ios::binary);
        if (!file) {
            err << "error: cannot write '" << cfg.out << "'\n";
            return 2;
        }
        file << text;
    }
    return result.exit_code;
}

}  // namespace twistrank::cli
