#include "twistrank/cli/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <set>
#include <thread>

namespace twistrank::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

unsigned parse_unsigned(const std::string& text, const std::string& field) {
    const auto t = trim(text);
    if (t.empty() || !std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw ConfigError(field + ": expected a non-negative integer, got '" + text + "'");
    try {
        const unsigned long v = std::stoul(t);
        if (v > 0xffffffffUL) throw std::out_of_range(field);
        return static_cast<unsigned>(v);
    } catch (const std::out_of_range&) {
        throw ConfigError(field + ": value out of range");
    }
}

std::uint64_t parse_u64(const std::string& text, const std::string& field) {
    const auto t = trim(text);
    if (t.empty() || !std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw ConfigError(field + ": expected a non-negative integer, got '" + text + "'");
    try {
        return std::stoull(t);
    } catch (const std::out_of_range&) {
        throw ConfigError(field + ": value out of range");
    }
}

bool parse_bool(const std::string& text, const std::string& field) {
    const auto t = trim(text);
    if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
    if (t == "false" || t == "0" || t == "no" || t == "off") return false;
    throw ConfigError(field + ": expected true or false");
}

void check_range(unsigned v, unsigned lo, unsigned hi, const std::string& field) {
    if (v < lo || v > hi)
        throw ConfigError(field + " must be between " + std::to_string(lo) + " and " + std::to_string(hi));
}

}  // namespace

std::vector<std::string> split_list(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    for (char c : text + sep) {
        if (c == sep) {
            const auto t = trim(item);
            if (t.empty()) throw ConfigError("empty item in list '" + text + "'");
            out.push_back(t);
            item.clear();
        } else {
            item.push_back(c);
        }
    }
    return out;
}

std::vector<unsigned> parse_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
        const unsigned lo = parse_unsigned(text.substr(0, dots), "range");
        const unsigned hi = parse_unsigned(text.substr(dots + 2), "range");
        if (hi < lo) throw ConfigError("range '" + text + "' is empty");
        if (hi - lo > 64) throw ConfigError("range '" + text + "' is too long");
        std::vector<unsigned> out;
        for (unsigned v = lo; v <= hi; ++v) out.push_back(v);
        return out;
    }
    std::set<unsigned> values;
    for (const auto& item : split_list(text)) values.insert(parse_unsigned(item, "range"));
    return {values.begin(), values.end()};
}

std::vector<std::pair<std::string, std::string>> parse_points(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& item : split_list(text, ';')) {
        const auto xy = split_list(item, ',');
        if (xy.size() != 2) throw ConfigError("points: expected X,Y pairs separated by ';'");
        out.emplace_back(xy[0], xy[1]);
    }
    return out;
}

std::vector<exact::Rat> RunConfig::f_coeffs() const {
    std::vector<exact::Rat> out;
    for (const auto& c : f) {
        try {
            out.push_back(exact::Rat::parse(c));
        } catch (const std::exception&) {
            throw ConfigError("f: '" + c + "' is not an exact rational");
        }
    }
    return out;
}

exact::Rat RunConfig::t1_value() const {
    try {
        return exact::Rat::parse(t1);
    } catch (const std::exception&) {
        throw ConfigError("t1: '" + t1 + "' is not an exact rational");
    }
}

elliptic::Decimal RunConfig::tol_value() const {
    elliptic::Decimal v;
    try {
        v = elliptic::Decimal(tol);
    } catch (const std::exception&) {
        throw ConfigError("tol: '" + tol + "' is not a decimal number");
    }
    if (!(v > elliptic::Decimal("1e-40") && v <= elliptic::Decimal("1e-2")))
        throw ConfigError("tol must lie in (1e-40, 1e-2]");
    return v;
}

void RunConfig::validate() const {
    check_range(s, 2, 12, "s");
    check_range(n, 1, 8, "n");
    check_range(end_rank, 1, 64, "end_rank");
    if (f.size() < 2) throw ConfigError("f needs at least two coefficients");
    f_coeffs();
    if (certifier != "fp" && certifier != "heights" && certifier != "both")
        throw ConfigError("certifier must be fp, heights or both");
    check_range(M, 1, 20, "M");
    if (primes.empty()) throw ConfigError("primes must not be empty");
    check_range(trials, 1, 100000, "trials");
    t1_value();
    check_range(search_bound, 1, 100000, "search_bound");
    tol_value();
    for (const auto& [x, y] : points) {
        try {
            exact::Rat::parse(x);
            exact::Rat::parse(y);
        } catch (const std::exception&) {
            throw ConfigError("points: '" + x + "," + y + "' is not a pair of exact rationals");
        }
    }
    if (format != "json" && format != "text") throw ConfigError("format must be json or text");
    check_range(threads, 1, 1024, "threads");
}

RunConfig load_config_file(const std::string& path, RunConfig cfg) {
    boost::property_tree::ptree tree;
    try {
        boost::property_tree::read_ini(path, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError("cannot read config '" + path + "': " + e.message());
    }
    static const std::set<std::string> known = {
        "construction.s",        "construction.n",      "construction.f",      "construction.strict",
        "construction.end_rank", "certify.certifier",   "certify.M",           "certify.primes",
        "certify.trials",        "certify.seed",        "certify.t1",          "certify.search_bound",
        "certify.tol",           "certify.points",      "certify.inject_dependent", "grid.s",
        "grid.r",                "grid.n",              "output.path",         "output.format",
        "output.timing"};
    for (const auto& [section, body] : tree) {
        if (body.empty()) throw ConfigError("config key '" + section + "' is outside a section");
        for (const auto& [key, value] : body) {
            const std::string full = section + "." + key;
            if (!known.count(full)) throw ConfigError("unknown config key '" + full + "'");
            const std::string v = value.get_value<std::string>();
            if (full == "construction.s") cfg.s = parse_unsigned(v, full);
            else if (full == "construction.n") cfg.n = parse_unsigned(v, full);
            else if (full == "construction.f") cfg.f = split_list(v);
            else if (full == "construction.strict") cfg.strict = parse_bool(v, full);
            else if (full == "construction.end_rank") cfg.end_rank = parse_unsigned(v, full);
            else if (full == "certify.certifier") cfg.certifier = trim(v);
            else if (full == "certify.M") cfg.M = parse_unsigned(v, full);
            else if (full == "certify.primes") {
                cfg.primes.clear();
                for (const auto& p : split_list(v)) cfg.primes.push_back(parse_u64(p, full));
            } else if (full == "certify.trials") cfg.trials = parse_unsigned(v, full);
            else if (full == "certify.seed") cfg.seed = parse_u64(v, full);
            else if (full == "certify.t1") cfg.t1 = trim(v);
            else if (full == "certify.search_bound") cfg.search_bound = parse_unsigned(v, full);
            else if (full == "certify.tol") cfg.tol = trim(v);
            else if (full == "certify.points") cfg.points = parse_points(v);
            else if (full == "certify.inject_dependent") cfg.inject_dependent = parse_bool(v, full);
            else if (full == "grid.s") cfg.grid_s = parse_range(v);
            else if (full == "grid.r") cfg.grid_r = parse_range(v);
            else if (full == "grid.n") cfg.grid_n = parse_range(v);
            else if (full == "output.path") cfg.out = trim(v);
            else if (full == "output.format") cfg.format = trim(v);
            else if (full == "output.timing") cfg.timing = parse_bool(v, full);
        }
    }
    return cfg;
}

unsigned thread_cap() {
    unsigned cap = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("TWISTRANK_THREADS")) {
        try {
            const unsigned v = parse_unsigned(env, "TWISTRANK_THREADS");
            if (v >= 1) cap = std::min(cap, v);
        } catch (const ConfigError&) {
        }
    }
    return cap;
}

}  // namespace twistrank::cli
