#pragma once

#include "twistrank/cli/config.hpp"
#include "twistrank/cover/construction.hpp"
#include "twistrank/elliptic/certify.hpp"

#include <json.hpp>

#include <string>

namespace twistrank::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "twistrank.report/v1";

class ReportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// {"value": "<scientific>", "digits": d}
Json decimal_json(const elliptic::Decimal& d, int digits = elliptic::kDecimalDigits);
elliptic::Decimal decimal_from_json(const Json& j);

Json config_json(const RunConfig& cfg);

/// Equations, base point, genus, dimensions and the rank-bound claim.
Json construction_json(const cover::ConstructionSpec& spec, unsigned end_rank);

/// Twist-point witnesses, quotient relations, Galois checks and the
/// trivialization. `all_verified` is set to whether every witness vanished.
Json verification_json(const cover::ConstructionSpec& spec, bool& all_verified);

Json certificate_json(const elliptic::RankCertificate& cert);
/// Inverse of certificate_json. Throws ReportError on malformed input.
elliptic::RankCertificate certificate_from_json(const Json& j);

/// Human-readable rendering of any report produced by the commands.
std::string render_text(const Json& report);

}  // namespace twistrank::cli
