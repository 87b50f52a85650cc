#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace fa_twist::cli;

  CLI::App app{"Lauricella F_A series, intersection numbers and period relation checks"};
  CommandOptions opt;
  std::string config_path, relation = "i", out_format = "json";

  app.add_option("command", opt.command, "Command to run")
      ->required()
      ->check(CLI::IsMember(command_names()));
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--relation", relation, "Relation for tpr and sweep")
      ->check(CLI::IsMember({"i", "ii", "assembled-i"}));
  app.add_option("--order", opt.order, "Series truncation order (overrides config)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--subset", opt.subset, "Subset I for eval-basis, e.g. \"1,2\"");
  app.add_option("--orders", opt.orders, "Order range LO:HI:STEP for sweep");
  app.add_option("--out", out_format, "Output format for sweep")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--exact", opt.exact, "Exact rational arithmetic for ic");
  app.add_option("--quad-levels", opt.quad_levels, "Quadrature levels for oracle")
      ->check(CLI::Range(1, 12));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "{\"error\":\"usage\",\"message\":"
              << nlohmann::json(std::string(e.what())).dump() << "}\n";
    return 1;
  }

  try {
    opt.relation = fa_twist::relation_from_string(relation);
    opt.out = out_format == "csv" ? OutputFormat::kCsv : OutputFormat::kJson;
    std::ifstream in(config_path, std::ios::binary);
    if (!in) throw fa_twist::InputError("cannot read config file " + config_path);
    std::ostringstream text;
    text << in.rdbuf();
    return execute(opt, text.str(), std::cout);
  } catch (...) {
    const auto report = describe_error(std::current_exception());
    std::cerr << report.json << '\n';
    return report.exit_code;
  }
}
