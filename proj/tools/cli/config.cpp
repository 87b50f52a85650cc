#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "json.hpp"

namespace fa_twist::cli {
namespace {

using nlohmann::json;

int line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + byte, '\n'));
}

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw ConfigError("field '" + field + "': " + what, std::nullopt, field);
}

double finite_number(const json& j, const std::string& field) {
  if (!j.is_number()) field_error(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) field_error(field, "not finite");
  return v;
}

Rational parse_rational(const std::string& s, const std::string& field) {
  const auto slash = s.find('/');
  auto digits = [&](std::string_view part) {
    std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i) {
      if (part[i] < '0' || part[i] > '9') return false;
    }
    return true;
  };
  const std::string_view sv(s);
  const auto num = sv.substr(0, slash);
  const auto den = slash == std::string::npos ? std::string_view("1") : sv.substr(slash + 1);
  if (!digits(num) || !digits(den) || den[0] == '-' || den[0] == '+') {
    field_error(field, "expected a rational \"p/q\", got \"" + s + "\"");
  }
  const Rational d{std::string(den)};
  if (d == 0) field_error(field, "zero denominator");
  return Rational{std::string(num)} / d;
}

ConfigValue parse_value(const json& j, const std::string& field, bool allow_rational) {
  if (j.is_number()) {
    const double v = finite_number(j, field);
    return {Complex(v, 0.0), Rational(v)};
  }
  if (j.is_string() && allow_rational) {
    const Rational q = parse_rational(j.get<std::string>(), field);
    return {Complex(q.convert_to<double>(), 0.0), q};
  }
  if (j.is_array() && j.size() == 2) {
    const double re = finite_number(j[0], field + "[0]");
    const double im = finite_number(j[1], field + "[1]");
    ConfigValue out{Complex(re, im), std::nullopt};
    if (im == 0.0) out.exact = Rational(re);
    return out;
  }
  field_error(field, allow_rational ? "expected a number, [re, im] or \"p/q\""
                                    : "expected a number or [re, im]");
}

std::vector<ConfigValue> parse_vector(const json& j, const std::string& field,
                                      bool allow_rational) {
  if (!j.is_array() || j.empty()) field_error(field, "expected a nonempty array");
  std::vector<ConfigValue> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(parse_value(j[i], field + "[" + std::to_string(i) + "]", allow_rational));
  }
  return out;
}

int parse_int(const json& j, const std::string& field, int lo, int hi) {
  if (!j.is_number_integer()) field_error(field, "expected an integer");
  const auto v = j.get<long long>();
  if (v < lo || v > hi) {
    field_error(field, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return static_cast<int>(v);
}

}  // namespace

ConfigError::ConfigError(const std::string& message, std::optional<int> line,
                         std::string field)
    : InputError(line ? "line " + std::to_string(*line) + ": " + message : message),
      line_(line),
      field_(std::move(field)) {}

Parameters RunConfig::parameters() const {
  std::vector<Complex> bv, cv;
  for (const auto& v : b) bv.push_back(v.value);
  for (const auto& v : c) cv.push_back(v.value);
  return Parameters(a.value, std::move(bv), std::move(cv));
}

ExactParameters RunConfig::exact_parameters() const {
  auto take = [](const ConfigValue& v, const std::string& name) {
    if (!v.exact) throw ValidationError("exact mode requires real " + name);
    return *v.exact;
  };
  std::vector<Rational> bv, cv;
  for (std::size_t i = 0; i < b.size(); ++i) bv.push_back(take(b[i], "b_" + std::to_string(i + 1)));
  for (std::size_t i = 0; i < c.size(); ++i) cv.push_back(take(c[i], "c_" + std::to_string(i + 1)));
  return ExactParameters(take(a, "a"), std::move(bv), std::move(cv));
}

EvaluationPoint RunConfig::point() const {
  if (static_cast<int>(x.size()) != static_cast<int>(b.size())) {
    throw DomainError("x has dimension " + std::to_string(x.size()) +
                      ", parameters have m=" + std::to_string(b.size()));
  }
  return EvaluationPoint(x);
}

RunConfig parse_config(std::string_view text, const ParseOptions& options) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::string what = e.what();
    const auto colon = what.find("syntax error");
    throw ConfigError(colon == std::string::npos ? what : what.substr(colon),
                      line_of(text, e.byte == 0 ? 0 : e.byte - 1));
  }
  if (!doc.is_object()) throw ConfigError("configuration must be a JSON object", 1);

  static const std::set<std::string> known = {"a", "b", "c", "x", "order",
                                              "tolerance", "quad_levels", "exact"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.contains(key)) field_error(key, "unknown field");
  }
  for (const char* required : {"a", "b", "c", "x"}) {
    if (!doc.contains(required)) field_error(required, "missing");
  }

  RunConfig cfg;
  cfg.a = parse_value(doc["a"], "a", true);
  cfg.b = parse_vector(doc["b"], "b", true);
  cfg.c = parse_vector(doc["c"], "c", true);
  for (const auto& v : parse_vector(doc["x"], "x", false)) cfg.x.push_back(v.value);
  if (cfg.c.size() != cfg.b.size()) field_error("c", "length differs from b");
  if (cfg.x.size() != cfg.b.size()) field_error("x", "length differs from b");
  if (doc.contains("order")) cfg.order = parse_int(doc["order"], "order", 0, 60000);
  if (doc.contains("tolerance")) {
    cfg.tolerance = finite_number(doc["tolerance"], "tolerance");
    if (cfg.tolerance <= 0.0) field_error("tolerance", "must be positive");
  }
  if (doc.contains("quad_levels")) cfg.quad_levels = parse_int(doc["quad_levels"], "quad_levels", 1, 12);
  if (doc.contains("exact")) {
    if (!doc["exact"].is_boolean()) field_error("exact", "expected true or false");
    cfg.exact = doc["exact"].get<bool>();
  }

  if (options.check_parameters) {
    const auto report = validate(cfg.parameters());
    if (!report.ok) {
      std::string message = "parameters fail irreducibility:";
      for (std::size_t i = 0; i < report.violations.size(); ++i) {
        message += (i ? ", " : " ") + report.violations[i].describe();
      }
      throw ValidationError(message);
    }
    cfg.point();
  }
  return cfg;
}

}  // namespace fa_twist::cli
