#pragma once

// Command dispatch for the fa_twist front end. Every command writes one
// document (JSON, or CSV for `sweep --out csv`) to the output stream.

#include <exception>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"
#include "fa_twist/relations.hpp"

namespace fa_twist::cli {

enum class OutputFormat { kJson, kCsv };

struct OrderRange {
  int lo = 0;
  int hi = 0;
  int step = 1;
};

/// "LO:HI:STEP" with 0 <= LO <= HI and STEP >= 1 (InputError otherwise).
OrderRange parse_order_range(const std::string& text);

/// "1,3" -> {1,3}; "" -> {}. Elements are 1-based and strictly increasing.
MultiIndex parse_subset(const std::string& text, int m);

struct CommandOptions {
  std::string command;
  Relation relation = Relation::kFirst;
  std::optional<int> order;  ///< overrides the config's order
  std::optional<std::string> subset;
  std::optional<std::string> orders;
  OutputFormat out = OutputFormat::kJson;
  bool exact = false;
  std::optional<int> quad_levels;
};

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {
      "validate", "eval-fa", "eval-basis", "ih", "ic", "tpr", "oracle", "sweep"};
  return names;
}

/// Runs one command on the raw config text and returns the exit code
/// (0 success, 1 failed validation). Errors propagate as exceptions.
int execute(const CommandOptions& options, std::string_view config_text,
            std::ostream& out);

/// Single-line JSON reason for an exception, plus its exit code:
/// 1 for input errors, 2 for numeric errors and anything unexpected.
struct ErrorReport {
  std::string json;
  int exit_code;
};
ErrorReport describe_error(std::exception_ptr error);

}  // namespace fa_twist::cli
