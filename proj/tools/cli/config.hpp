#pragma once

// Run configuration for the fa_twist front end.
//
// JSON object with fields
//   a            number | [re, im] | "p/q"
//   b, c         arrays of the same
//   x            array of number | [re, im]
//   order        integer >= 0            (default 40)
//   tolerance    number > 0              (default 1e-8)
//   quad_levels  integer in [1, 12]      (default 7)
//   exact        bool                    (default false)
// Unknown fields are rejected.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fa_twist/errors.hpp"
#include "fa_twist/params.hpp"
#include "fa_twist/series.hpp"

namespace fa_twist::cli {

/// Malformed configuration text. `line` is 1-based when known.
class ConfigError : public InputError {
 public:
  ConfigError(const std::string& message, std::optional<int> line = {},
              std::string field = {});

  std::optional<int> line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::optional<int> line_;
  std::string field_;
};

/// One parameter value; `exact` is set when it was written as "p/q" or as a
/// real number, and is the value used in exact mode.
struct ConfigValue {
  Complex value;
  std::optional<Rational> exact;
};

struct RunConfig {
  ConfigValue a;
  std::vector<ConfigValue> b;
  std::vector<ConfigValue> c;
  std::vector<Complex> x;
  int order = 40;
  double tolerance = 1e-8;
  int quad_levels = 7;
  bool exact = false;

  Parameters parameters() const;
  /// Throws ValidationError if some value has no exact form.
  ExactParameters exact_parameters() const;
  /// Throws DomainError outside D_A or on a dimension mismatch.
  EvaluationPoint point() const;
};

struct ParseOptions {
  /// Also run the irreducibility check and the D_A check.
  bool check_parameters = true;
};

RunConfig parse_config(std::string_view text, const ParseOptions& options = {});

}  // namespace fa_twist::cli
