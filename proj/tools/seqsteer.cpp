// seqsteer: command-line driver for chain simulation, sharpness planning and
// the unbounded-Eves branch report.

#include "seqsteer/commands.hpp"

#include <CLI11.hpp>

#include <unistd.h>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace seqsteer;

std::vector<double> parse_list(const std::vector<std::string>& items, const std::string& field, bool angles) {
  std::vector<double> out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string f = field + "[" + std::to_string(i) + "]";
    out.push_back(angles ? parse_angle(items[i], f) : parse_number(items[i], f));
  }
  return out;
}

OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw InputError("format", "expected csv or json");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequential unsharp-measurement eavesdropping simulator"};
  app.require_subcommand(1);

  std::string scenario_path, out_path, format;
  auto* chain = app.add_subcommand("chain", "Steering and key rate of every Eve and Bob for a scenario file");
  chain->add_option("--scenario", scenario_path, "Scenario file (JSON)")->required();
  chain->add_option("--out", out_path, "Output file (default: stdout)");
  chain->add_option("--format", format, "csv or json");

  auto* run = app.add_subcommand("run", "Run a scenario file in whatever mode it declares");
  run->add_option("--scenario", scenario_path, "Scenario file (JSON)")->required();
  run->add_option("--out", out_path, "Output file (default: stdout)");
  run->add_option("--format", format, "csv or json");

  std::vector<std::string> rates = {"0.1", "0.2", "0.3"};
  bool check_reference = false;
  auto* plan = app.add_subcommand("plan", "Minimal sharpness chain and maximal Eve count per target rate");
  plan->add_option("--rates", rates, "Comma-separated target key rates")->delimiter(',');
  plan->add_flag("--check-paper", check_reference, "Compare with the reference tables; exit 4 on mismatch");
  plan->add_option("--out", out_path, "Output file (default: stdout)");
  plan->add_option("--format", format, "csv or json");

  std::string theta1;
  std::vector<std::string> lambdas;
  auto* unbounded = app.add_subcommand("unbounded", "Branch report for the weak sigma_x strategy");
  unbounded->add_option("--theta1", theta1, "Initial Schmidt angle (radians or deg:X)")->required();
  unbounded->add_option("--lambdas", lambdas, "Comma-separated weak-measurement angles")->required()->delimiter(',');
  unbounded->add_option("--out", out_path, "Output file (default: stdout)");
  unbounded->add_option("--format", format, "csv or json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  const bool color = ::isatty(STDERR_FILENO) && std::getenv("NO_COLOR") == nullptr;
  const Terminal term{std::cout, std::cerr, color};

  return guarded(term, [&] {
    OutputSpec output;
    if (!format.empty()) output.format = parse_format(format);
    output.path = out_path;

    if (chain->parsed() || run->parsed()) {
      Scenario s = load_scenario(scenario_path);
      if (!format.empty()) s.output.format = output.format;
      if (!out_path.empty()) s.output.path = out_path;
      return chain->parsed() ? cmd_chain(s, term) : cmd_run(s, term);
    }
    if (plan->parsed()) return cmd_plan(parse_list(rates, "rates", false), check_reference, output, term);
    return cmd_unbounded(parse_angle(theta1, "theta1"), parse_list(lambdas, "lambdas", true), output, term);
  });
}
