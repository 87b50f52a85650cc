#include "commands.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "fa_twist/euler_oracle.hpp"
#include "fa_twist/intersection.hpp"
#include "json.hpp"

namespace fa_twist::cli {
namespace {

using nlohmann::json;

// Adding +0.0 turns -0.0 into 0.0.
json complex_json(const Complex& z) {
  return json::array({z.real() + 0.0, z.imag() + 0.0});
}

json optional_json(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

std::string csv_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v + 0.0);
  return buf;
}

int parse_nonnegative(const std::string& s, const char* what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty() || v < 0) {
    throw InputError(std::string("--orders: bad ") + what + " \"" + s + "\"");
  }
  return v;
}

json series_json(const SeriesValue& v) {
  return {{"value", complex_json(v.value)},
          {"order", v.order},
          {"tail_bound", optional_json(v.tail_bound)}};
}

json point_json(const EvaluationPoint& x) {
  json out = json::array();
  for (const auto& v : x.x()) out.push_back(complex_json(v));
  return out;
}

json basis_masks(const std::vector<MultiIndex>& order) {
  json out = json::array();
  for (const auto& I : order) out.push_back(I.mask());
  return out;
}

json report_json(const TprReport& r, double tolerance) {
  return {{"relation", std::string(to_string(r.relation))},
          {"lhs", complex_json(r.lhs)},
          {"rhs", complex_json(r.rhs)},
          {"abs_residual", r.abs_residual},
          {"rel_residual", r.rel_residual},
          {"order", r.order},
          {"x", point_json(r.x)},
          {"truncation_bound", optional_json(r.truncation_bound)},
          {"pass", r.rel_residual <= tolerance}};
}

int run_validate(const RunConfig& cfg, std::ostream& out) {
  const auto report = validate(cfg.parameters());
  json violations = json::array();
  for (const auto& v : report.violations) violations.push_back(v.describe());
  json doc = {{"ok", report.ok}, {"violations", violations},
              {"warnings", report.warnings}};
  out << doc.dump() << '\n';
  return report.ok ? 0 : 1;
}

int run_eval_basis(const RunConfig& cfg, const CommandOptions& opt, int order,
                   std::ostream& out) {
  const auto p = cfg.parameters();
  const auto x = cfg.point();
  if (opt.subset) {
    out << series_json(local_solution_eval(p, parse_subset(*opt.subset, p.m()), x, order)).dump()
        << '\n';
    return 0;
  }
  const auto order_basis = subset_order(p.m());
  json values = json::array(), bounds = json::array();
  for (const auto& I : order_basis) {
    const auto v = local_solution_eval(p, I, x, order);
    values.push_back(complex_json(v.value));
    bounds.push_back(optional_json(v.tail_bound));
  }
  json doc = {{"order_basis", basis_masks(order_basis)},
              {"values", values},
              {"order", order},
              {"tail_bounds", bounds}};
  out << doc.dump() << '\n';
  return 0;
}

int run_ih(const RunConfig& cfg, std::ostream& out) {
  const auto matrix = homology_intersection_matrix(exponential_params(cfg.parameters()));
  json diag = json::array();
  for (const auto& v : matrix.diag()) diag.push_back(complex_json(v));
  json doc = {{"order_basis", basis_masks(matrix.order())}, {"diag", diag}};
  out << doc.dump() << '\n';
  return 0;
}

template <class T, class F>
json matrix_json(const CohomologyIntersectionMatrix<T>& matrix, F&& entry) {
  json rows = json::array();
  for (std::size_t i = 0; i < matrix.dimension(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < matrix.dimension(); ++j) row.push_back(entry(matrix(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

int run_ic(const RunConfig& cfg, bool exact, std::ostream& out) {
  json doc;
  if (exact) {
    const auto matrix = cohomology_intersection_matrix(cfg.exact_parameters());
    doc = {{"order_basis", basis_masks(matrix.order())},
           {"exact", true},
           {"matrix", matrix_json(matrix, [](const Rational& q) { return q.str(); })}};
  } else {
    const auto matrix = cohomology_intersection_matrix(cfg.parameters());
    doc = {{"order_basis", basis_masks(matrix.order())},
           {"exact", false},
           {"matrix", matrix_json(matrix, complex_json)}};
  }
  out << doc.dump() << '\n';
  return 0;
}

int run_oracle(const RunConfig& cfg, int order, int levels, std::ostream& out) {
  const auto p = cfg.parameters();
  const auto x = cfg.point();
  const auto integral = euler_integral_eval(p, x, {.levels = levels});
  const auto series = fa_eval(p, x, order);
  const double scale = std::max(std::abs(series.value), 1e-300);
  json doc = {{"euler", complex_json(integral.value)},
              {"series", series_json(series)},
              {"rel_diff", std::abs(integral.value - series.value) / scale},
              {"quadrature",
               {{"err_est", integral.quadrature.err_est},
                {"converged", integral.quadrature.converged},
                {"level", integral.quadrature.level},
                {"evaluations", integral.quadrature.evaluations}}}};
  out << doc.dump() << '\n';
  return 0;
}

int run_sweep(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out) {
  if (!opt.orders) throw InputError("sweep needs --orders LO:HI:STEP");
  const auto range = parse_order_range(*opt.orders);
  const auto p = cfg.parameters();
  const auto x = cfg.point();
  std::vector<TprReport> rows;
  for (int n = range.lo; n <= range.hi; n += range.step) {
    rows.push_back(tpr_check(p, x, n, opt.relation));
  }
  if (opt.out == OutputFormat::kCsv) {
    std::string text = "order,lhs_re,lhs_im,rhs_re,rhs_im,abs_residual,rel_residual\n";
    for (const auto& r : rows) {
      text += std::to_string(r.order) + ',' + csv_number(r.lhs.real()) + ',' +
              csv_number(r.lhs.imag()) + ',' + csv_number(r.rhs.real()) + ',' +
              csv_number(r.rhs.imag()) + ',' + csv_number(r.abs_residual) + ',' +
              csv_number(r.rel_residual) + '\n';
    }
    out << text;
    return 0;
  }
  json doc = {{"relation", std::string(to_string(opt.relation))}, {"rows", json::array()}};
  for (const auto& r : rows) doc["rows"].push_back(report_json(r, cfg.tolerance));
  out << doc.dump() << '\n';
  return 0;
}

}  // namespace

OrderRange parse_order_range(const std::string& text) {
  const auto first = text.find(':');
  const auto second = first == std::string::npos ? first : text.find(':', first + 1);
  if (second == std::string::npos) {
    throw InputError("--orders expects LO:HI:STEP, got \"" + text + "\"");
  }
  OrderRange r{parse_nonnegative(text.substr(0, first), "LO"),
               parse_nonnegative(text.substr(first + 1, second - first - 1), "HI"),
               parse_nonnegative(text.substr(second + 1), "STEP")};
  if (r.step < 1 || r.lo > r.hi) {
    throw InputError("--orders needs LO <= HI and STEP >= 1, got \"" + text + "\"");
  }
  return r;
}

MultiIndex parse_subset(const std::string& text, int m) {
  std::vector<int> elements;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int k = 0;
    try {
      k = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw InputError("--subset: bad element \"" + item + "\"");
    }
    elements.push_back(k);
  }
  try {
    return MultiIndex::from_elements(elements, m);
  } catch (const std::out_of_range& e) {
    throw InputError(std::string("--subset: ") + e.what());
  }
}

int execute(const CommandOptions& opt, std::string_view config_text, std::ostream& out) {
  const bool is_validate = opt.command == "validate";
  const auto cfg = parse_config(config_text, {.check_parameters = !is_validate});
  const int order = opt.order.value_or(cfg.order);
  const int levels = opt.quad_levels.value_or(cfg.quad_levels);
  if (order < 0) throw InputError("--order must be nonnegative");

  // Output is assembled in full before anything reaches `out`.
  std::ostringstream buffer;
  int code = 0;
  if (is_validate) {
    code = run_validate(cfg, buffer);
  } else if (opt.command == "eval-fa") {
    buffer << series_json(fa_eval(cfg.parameters(), cfg.point(), order)).dump() << '\n';
  } else if (opt.command == "eval-basis") {
    code = run_eval_basis(cfg, opt, order, buffer);
  } else if (opt.command == "ih") {
    code = run_ih(cfg, buffer);
  } else if (opt.command == "ic") {
    code = run_ic(cfg, opt.exact || cfg.exact, buffer);
  } else if (opt.command == "tpr") {
    buffer << report_json(tpr_check(cfg.parameters(), cfg.point(), order, opt.relation),
                          cfg.tolerance)
                  .dump()
           << '\n';
  } else if (opt.command == "oracle") {
    code = run_oracle(cfg, order, levels, buffer);
  } else if (opt.command == "sweep") {
    code = run_sweep(cfg, opt, buffer);
  } else {
    throw InputError("unknown command \"" + opt.command + "\"");
  }
  out << buffer.str();
  return code;
}

ErrorReport describe_error(std::exception_ptr error) {
  json doc;
  int code = 2;
  try {
    std::rethrow_exception(error);
  } catch (const ConfigError& e) {
    doc = {{"error", "config"}, {"message", e.what()}};
    if (e.line()) doc["line"] = *e.line();
    if (!e.field().empty()) doc["field"] = e.field();
    code = 1;
  } catch (const ValidationError& e) {
    doc = {{"error", "validation"}, {"message", e.what()}};
    code = 1;
  } catch (const DomainError& e) {
    doc = {{"error", "domain"}, {"message", e.what()}};
    code = 1;
  } catch (const BranchError& e) {
    doc = {{"error", "branch"}, {"message", e.what()}};
    code = 1;
  } catch (const InputError& e) {
    doc = {{"error", "input"}, {"message", e.what()}};
    code = 1;
  } catch (const ResonanceError& e) {
    doc = {{"error", "resonance"}, {"message", e.what()}};
  } catch (const PoleError& e) {
    doc = {{"error", "pole"}, {"message", e.what()}};
  } catch (const ConvergenceError& e) {
    doc = {{"error", "convergence"}, {"message", e.what()}};
  } catch (const NumericError& e) {
    doc = {{"error", "numeric"}, {"message", e.what()}};
  } catch (const std::invalid_argument& e) {
    doc = {{"error", "input"}, {"message", e.what()}};
    code = 1;
  } catch (const std::out_of_range& e) {
    doc = {{"error", "input"}, {"message", e.what()}};
    code = 1;
  } catch (const std::exception& e) {
    doc = {{"error", "internal"}, {"message", e.what()}};
  } catch (...) {
    doc = {{"error", "internal"}, {"message", "unknown exception"}};
  }
  return {doc.dump(), code};
}

}  // namespace fa_twist::cli
