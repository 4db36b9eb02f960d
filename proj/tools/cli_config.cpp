#include "cli_config.hpp"

#include <fstream>
#include <map>
#include <set>

namespace meridian::cli {

namespace {

using Json = nlohmann::ordered_json;

void require_keys(const Json& j, const std::string& where, const std::set<std::string>& required,
                  const std::set<std::string>& optional = {}) {
  if (!j.is_object()) {
    throw ConfigError(where + ": expected an object");
  }
  for (const auto& [key, _] : j.items()) {
    if (!required.count(key) && !optional.count(key)) {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }
  for (const auto& key : required) {
    if (!j.contains(key)) {
      throw ConfigError(where + ": missing key '" + key + "'");
    }
  }
}

double number_at(const Json& j, const std::string& where, const std::string& key) {
  const auto& v = j.at(key);
  if (!v.is_number()) {
    throw ConfigError(where + ": '" + key + "' must be a number");
  }
  return v.get<double>();
}

double number_or(const Json& j, const std::string& where, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  return number_at(j, where, key);
}

}  // namespace

HoloExpr holo_expr_from_json(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "cos") return HoloExpr::cosine();
    if (s == "sin") return HoloExpr::sine();
    if (s == "log") return HoloExpr::logarithm();
    throw ConfigError("holo expression: unknown function '" + s + "'");
  }
  if (!j.is_object() || j.size() != 1) {
    throw ConfigError("holo expression: expected a single-key object or \"cos\"/\"sin\"/\"log\"");
  }
  const auto& [key, value] = *j.items().begin();
  if (key == "power") {
    if (!value.is_number_integer()) {
      throw ConfigError("holo expression: 'power' takes an integer exponent");
    }
    return HoloExpr::power(value.get<int>());
  }
  if (key == "exp") {
    if (!value.is_number()) {
      throw ConfigError("holo expression: 'exp' takes a numeric rate");
    }
    return HoloExpr::exponential(value.get<double>());
  }
  if (key == "joukowski") {
    if (!value.is_array() || value.size() != 2 || !value[0].is_number() || !value[1].is_number()) {
      throw ConfigError("holo expression: 'joukowski' takes [B, gamma]");
    }
    return HoloExpr::joukowski(value[0].get<double>(), value[1].get<double>());
  }
  if (key == "scale") {
    if (!value.is_array() || value.size() != 2 || !value[0].is_number()) {
      throw ConfigError("holo expression: 'scale' takes [c, expr]");
    }
    return HoloExpr::scale(value[0].get<double>(), holo_expr_from_json(value[1]));
  }
  if (key == "reverse") {
    return HoloExpr::reverse(holo_expr_from_json(value));
  }
  if (key == "sum") {
    if (!value.is_array()) {
      throw ConfigError("holo expression: 'sum' takes an array of expressions");
    }
    std::vector<HoloExpr> parts;
    parts.reserve(value.size());
    for (const auto& part : value) parts.push_back(holo_expr_from_json(part));
    return HoloExpr::sum(std::move(parts));
  }
  throw ConfigError("holo expression: unknown node '" + key + "'");
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

Json holo_expr_to_json(const HoloExpr& e) {
  return std::visit(
      Overloaded{
          [](const HoloPower& p) -> Json { return Json{{"power", p.n}}; },
          [](const HoloExp& x) -> Json { return Json{{"exp", x.beta}}; },
          [](const HoloCos&) -> Json { return Json("cos"); },
          [](const HoloSin&) -> Json { return Json("sin"); },
          [](const HoloLog&) -> Json { return Json("log"); },
          [](const HoloJoukowski& jk) -> Json {
            return Json{{"joukowski", Json::array({jk.b, jk.gamma})}};
          },
          [](const HoloScale& s) -> Json {
            return Json{{"scale", Json::array({s.c, holo_expr_to_json(s.inner)})}};
          },
          [](const HoloReverse& r) -> Json {
            return Json{{"reverse", holo_expr_to_json(r.inner)}};
          },
          [](const HoloSum& s) -> Json {
            Json arr = Json::array();
            for (const auto& part : s.parts) arr.push_back(holo_expr_to_json(part));
            return Json{{"sum", std::move(arr)}};
          },
      },
      e.node().v);
}

GaspSeries gasp_from_json(const Json& j) {
  require_keys(j, "gasp", {"alpha", "terms"});
  GaspSeries s;
  s.alpha = number_at(j, "gasp", "alpha");
  if (!j.at("terms").is_array()) {
    throw ConfigError("gasp: 'terms' must be an array");
  }
  for (const auto& t : j.at("terms")) {
    require_keys(t, "gasp term", {"beta"}, {"b1", "b2", "a1", "a2"});
    GaspTerm term;
    term.beta = number_at(t, "gasp term", "beta");
    term.b1 = number_or(t, "gasp term", "b1", 0.0);
    term.b2 = number_or(t, "gasp term", "b2", 0.0);
    term.a1 = number_or(t, "gasp term", "a1", 0.0);
    term.a2 = number_or(t, "gasp term", "a2", 0.0);
    s.terms.push_back(term);
  }
  return s;
}

Json gasp_to_json(const GaspSeries& s) {
  Json terms = Json::array();
  for (const auto& t : s.terms) {
    terms.push_back(Json{{"beta", t.beta}, {"b1", t.b1}, {"b2", t.b2}, {"a1", t.a1}, {"a2", t.a2}});
  }
  return Json{{"alpha", s.alpha}, {"terms", std::move(terms)}};
}

BiSeries bi_from_json(const Json& j) {
  require_keys(j, "bihyperbolic", {"alpha1", "alpha2", "terms"});
  BiSeries s;
  s.alpha1 = number_at(j, "bihyperbolic", "alpha1");
  s.alpha2 = number_at(j, "bihyperbolic", "alpha2");
  if (!j.at("terms").is_array()) {
    throw ConfigError("bihyperbolic: 'terms' must be an array");
  }
  for (const auto& t : j.at("terms")) {
    require_keys(t, "bihyperbolic term", {"lambda"}, {"mu", "c1", "c2", "b1", "b2", "a1", "a2"});
    BiTerm term;
    term.lambda = number_at(t, "bihyperbolic term", "lambda");
    term.mu = number_or(t, "bihyperbolic term", "mu", 0.0);
    term.c1 = number_or(t, "bihyperbolic term", "c1", 0.0);
    term.c2 = number_or(t, "bihyperbolic term", "c2", 0.0);
    term.b1 = number_or(t, "bihyperbolic term", "b1", 0.0);
    term.b2 = number_or(t, "bihyperbolic term", "b2", 0.0);
    term.a1 = number_or(t, "bihyperbolic term", "a1", 0.0);
    term.a2 = number_or(t, "bihyperbolic term", "a2", 0.0);
    s.terms.push_back(term);
  }
  return s;
}

Json bi_to_json(const BiSeries& s) {
  Json terms = Json::array();
  for (const auto& t : s.terms) {
    terms.push_back(Json{{"lambda", t.lambda},
                         {"mu", t.mu},
                         {"c1", t.c1},
                         {"c2", t.c2},
                         {"b1", t.b1},
                         {"b2", t.b2},
                         {"a1", t.a1},
                         {"a2", t.a2}});
  }
  return Json{{"alpha1", s.alpha1}, {"alpha2", s.alpha2}, {"terms", std::move(terms)}};
}

LoadedConfig parse_config(const Json& j) {
  require_keys(j, "config", {"field"}, {"alpha"});
  const Json& field = j.at("field");
  require_keys(field, "field", {}, {"holo", "gasp", "bihyperbolic", "registered"});
  if (field.size() != 1) {
    throw ConfigError("field: exactly one of holo | gasp | bihyperbolic | registered");
  }
  const std::optional<double> alpha =
      j.contains("alpha") ? std::optional<double>(number_at(j, "config", "alpha")) : std::nullopt;

  LoadedConfig out;
  out.raw = j;
  try {
    if (field.contains("holo")) {
      out.source_kind = "holo";
      if (alpha && *alpha != 1.0) {
        throw ConfigError("config: a holo source requires alpha = 1");
      }
      out.field = make_holo_field(holo_expr_from_json(field.at("holo")));
    } else if (field.contains("gasp")) {
      out.source_kind = "gasp";
      const GaspSeries s = gasp_from_json(field.at("gasp"));
      if (alpha && *alpha != s.alpha) {
        throw ConfigError("config: top-level alpha contradicts gasp.alpha");
      }
      out.field = make_gasp_field(s);
    } else if (field.contains("bihyperbolic")) {
      out.source_kind = "bihyperbolic";
      if (alpha) {
        throw ConfigError("config: alpha is determined by alpha1 + alpha2 for bihyperbolic sources");
      }
      BiSeries s = bi_from_json(field.at("bihyperbolic"));
      out.warnings = validate(s);
      out.bi = std::move(s);
    } else {
      out.source_kind = "registered";
      const Json& reg = field.at("registered");
      if (!reg.is_object() || !reg.contains("name") || !reg.at("name").is_string()) {
        throw ConfigError("registered: expected an object with a 'name' string");
      }
      std::map<std::string, double> params;
      for (const auto& [key, value] : reg.items()) {
        if (key == "name") continue;
        if (!value.is_number()) {
          throw ConfigError("registered: parameter '" + key + "' must be a number");
        }
        params[key] = value.get<double>();
      }
      out.field = make_registered_field(reg.at("name").get<std::string>(), params, alpha);
    }
  } catch (const DomainError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return out;
}

LoadedConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  return parse_config(j);
}

}  // namespace meridian::cli
