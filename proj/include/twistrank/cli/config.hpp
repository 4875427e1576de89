#pragma once

#include "twistrank/elliptic/height.hpp"
#include "twistrank/exact/rat.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace twistrank::cli {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Every knob of a run. Coefficients and rationals stay strings until parsed
/// exactly; nothing passes through floating point.
struct RunConfig {
    unsigned s = 2;
    unsigned n = 3;
    std::vector<std::string> f{"0", "-1", "0", "1"};  // constant term first
    bool strict = true;
    unsigned end_rank = 1;

    std::string certifier = "fp";  // fp, heights, both
    unsigned M = 5;
    std::vector<std::uint64_t> primes{11, 13, 17};
    unsigned trials = 64;
    std::uint64_t seed = 1;
    bool inject_dependent = false;

    std::string t1 = "2";
    unsigned search_bound = 200;
    std::string tol = "1e-8";
    std::vector<std::pair<std::string, std::string>> points;  // explicit (X, Y) on E_d

    std::vector<unsigned> grid_s{2, 3};
    std::vector<unsigned> grid_r{3, 4};
    std::vector<unsigned> grid_n{3, 4, 5};

    std::string out;
    std::string format = "json";
    bool timing = false;
    unsigned threads = 1;

    std::vector<exact::Rat> f_coeffs() const;
    exact::Rat t1_value() const;
    elliptic::Decimal tol_value() const;

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

/// Reads an INI file with sections [construction], [certify], [grid] and
/// [output] over `base`. Throws ConfigError.
RunConfig load_config_file(const std::string& path, RunConfig base = {});

/// "a,b,c" with surrounding spaces trimmed; empty items rejected.
std::vector<std::string> split_list(const std::string& text, char sep = ',');

/// "2,3,5" or "2..5".
std::vector<unsigned> parse_range(const std::string& text);

/// "X,Y;X,Y" with exact rationals.
std::vector<std::pair<std::string, std::string>> parse_points(const std::string& text);

/// min(hardware threads, TWISTRANK_THREADS) and at least 1.
unsigned thread_cap();

}  // namespace twistrank::cli
