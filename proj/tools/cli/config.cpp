#include "config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace qdgate::cli {

Json load_config(const std::optional<std::string>& path, const std::vector<std::string>& sets) {
  Json config = Json::object();
  if (path) {
    std::ifstream in(*path);
    if (!in) throw ConfigError("cannot open config file '" + *path + "'");
    try {
      config = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw ConfigError("config file '" + *path + "' is not valid JSON: " + e.what());
    }
    if (!config.is_object()) throw ConfigError("config root must be a JSON object");
  }
  for (const auto& s : sets) apply_override(config, s);
  return config;
}

void apply_override(Json& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("--set expects key=value, got '" + assignment + "'");
  }
  const std::string key = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);

  Json value;
  try {
    value = Json::parse(raw);
  } catch (const Json::parse_error&) {
    value = raw;
  }

  Json* node = &config;
  std::stringstream parts(key);
  std::string part;
  std::vector<std::string> path;
  while (std::getline(parts, part, '.')) {
    if (part.empty()) throw ConfigError("empty path component in --set key '" + key + "'");
    path.push_back(part);
  }
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (!node->is_object()) throw ConfigError("--set path '" + key + "' crosses a non-object");
    node = &(*node)[path[i]];
    if (node->is_null()) *node = Json::object();
  }
  if (!node->is_object()) throw ConfigError("--set path '" + key + "' crosses a non-object");
  (*node)[path.back()] = std::move(value);
}

double get_number(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ConfigError(std::string("missing numeric field '") + key + "'");
  }
  const Json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

double get_number(const Json& obj, const char* key, double fallback) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  return get_number(obj, key);
}

int get_int(const Json& obj, const char* key, int fallback) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  const Json& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

DriveParams parse_drive(const Json& obj) {
  if (!obj.is_object()) throw ConfigError("'drive' must be an object");
  DriveParams p;
  p.epsilon = get_number(obj, "epsilon");
  p.amplitude = get_number(obj, "amplitude");
  p.omega = get_number(obj, "omega");
  p.phase = get_number(obj, "phase", 0.0);
  validate(p);
  return p;
}

CoupledDotParams parse_coupled(const Json& obj) {
  if (!obj.is_object()) throw ConfigError("'coupled' must be an object");
  CoupledDotParams p;
  p.epsilon = get_number(obj, "epsilon");
  p.coupling = get_number(obj, "coupling");
  validate(p);
  return p;
}

IntegratorConfig parse_integrator(const Json& obj, const IntegratorConfig& defaults) {
  IntegratorConfig cfg = defaults;
  if (obj.is_null()) return cfg;
  if (!obj.is_object()) throw ConfigError("'integrator' must be an object");
  if (obj.contains("steps_per_period")) {
    const Json& v = obj.at("steps_per_period");
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      throw ConfigError("integrator.steps_per_period must be a positive integer");
    }
    cfg.steps_per_period = v.get<std::size_t>();
  }
  if (obj.contains("scheme")) {
    if (!obj.at("scheme").is_string()) throw ConfigError("integrator.scheme must be a string");
    cfg.scheme = scheme_from_string(obj.at("scheme").get<std::string>());
  }
  cfg.tolerance = get_number(obj, "tolerance", cfg.tolerance);
  validate(cfg);
  return cfg;
}

Json to_json(const DriveParams& p) {
  return {{"epsilon", p.epsilon}, {"amplitude", p.amplitude}, {"omega", p.omega}, {"phase", p.phase}};
}

Json to_json(const CoupledDotParams& p) {
  return {{"epsilon", p.epsilon}, {"coupling", p.coupling}};
}

Json to_json(const IntegratorConfig& cfg) {
  return {{"scheme", std::string(to_string(cfg.scheme))},
          {"steps_per_period", cfg.steps_per_period},
          {"tolerance", cfg.tolerance}};
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.dim(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.dim(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ConfigError("matrix must be a non-empty array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  Matrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || row.size() != j.size()) throw ConfigError("matrix must be square");
    for (Eigen::Index c = 0; c < n; ++c) {
      const Json& e = row[static_cast<std::size_t>(c)];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw ConfigError("matrix entries must be [re, im] pairs");
      }
      m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return ComplexMatrix(std::move(m));
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace qdgate::cli
