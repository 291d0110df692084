#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qdgate/qdgate.hpp"

namespace qdgate::cli {

using Json = nlohmann::json;

inline constexpr std::size_t kMaxGridPoints = 1'000'000;

/// Thrown for malformed or out-of-range configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Read the JSON document at `path` (if any) and apply `key.path=value`
/// overrides in order. Values parse as JSON when possible and fall back to
/// plain strings.
Json load_config(const std::optional<std::string>& path, const std::vector<std::string>& sets);

void apply_override(Json& config, const std::string& assignment);

double get_number(const Json& obj, const char* key);
double get_number(const Json& obj, const char* key, double fallback);
int get_int(const Json& obj, const char* key, int fallback);

DriveParams parse_drive(const Json& obj);
CoupledDotParams parse_coupled(const Json& obj);
IntegratorConfig parse_integrator(const Json& obj, const IntegratorConfig& defaults);

Json to_json(const DriveParams& p);
Json to_json(const CoupledDotParams& p);
Json to_json(const IntegratorConfig& cfg);

/// Row-major matrix of [re, im] pairs.
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

/// %.17g, the fixed number format of every CSV this tool writes.
std::string format_number(double x);

}  // namespace qdgate::cli
