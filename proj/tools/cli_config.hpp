#ifndef MERIDIAN_CLI_CONFIG_HPP
#define MERIDIAN_CLI_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "meridian/errors.hpp"
#include "meridian/field.hpp"
#include "meridian/holo.hpp"
#include "meridian/series.hpp"

namespace meridian::cli {

/// Malformed configuration (reported with field context; exit code 1).
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

/// A parsed field configuration.  Meridional sources carry a MeridionalField;
/// the bihyperbolic source carries the series (it is not a meridional field,
/// so only the potential-level commands apply to it).
struct LoadedConfig {
  std::optional<MeridionalField> field;
  std::optional<BiSeries> bi;
  std::string source_kind;  // "holo" | "gasp" | "bihyperbolic" | "registered"
  std::vector<std::string> warnings;
  nlohmann::ordered_json raw;
};

/// Strict parsing: unknown keys anywhere are errors.
LoadedConfig parse_config(const nlohmann::ordered_json& j);
LoadedConfig load_config(const std::string& path);

/// Expression (de)serialization.  Schema:
///   {"power": n} | {"exp": beta} | "cos" | "sin" | "log" |
///   {"joukowski": [B, gamma]} | {"scale": [c, expr]} |
///   {"reverse": expr} | {"sum": [expr, ...]}
HoloExpr holo_expr_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json holo_expr_to_json(const HoloExpr& e);

GaspSeries gasp_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json gasp_to_json(const GaspSeries& s);
BiSeries bi_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json bi_to_json(const BiSeries& s);

}  // namespace meridian::cli

#endif  // MERIDIAN_CLI_CONFIG_HPP
