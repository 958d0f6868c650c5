#include "couplecheck/commands.hpp"
#include "couplecheck/error.hpp"
#include "couplecheck/scenarios.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>
#include <vector>

using namespace couplecheck;

int main(int argc, char** argv) {
  CLI::App app{"couplecheck: couplings and contextuality of finite context-content systems"};
  app.require_subcommand(1);

  const std::map<std::string, cli::OutputFormat> formats{{"text", cli::OutputFormat::Text},
                                                         {"machine", cli::OutputFormat::Machine}};

  std::string file;
  auto format = cli::OutputFormat::Text;

  auto* validate = app.add_subcommand("validate", "Check a system file against every invariant");
  validate->add_option("file", file, "System file")->required();

  auto* analyze = app.add_subcommand("analyze", "Contextuality analysis of a 2x2 binary system");
  analyze->add_option("file", file, "System file")->required();
  analyze->add_option("--format", format, "text or machine")->transform(CLI::CheckedTransformer(formats));

  std::vector<std::string> kind{"independent"};
  auto* couple = app.add_subcommand("couple", "Construct a coupling and print its atoms");
  couple->add_option("file", file, "System file")->required();
  couple->add_option("--kind", kind, "independent | identity | maximal | targets FILE")
      ->expected(1, 2)
      ->default_str("independent");

  std::string scenario;
  std::string output;
  std::vector<std::string> params;
  bool list = false;
  auto* demo = app.add_subcommand("demo", "Build a preset scenario, print it and analyze it");
  demo->add_option("scenario", scenario, "Scenario id");
  demo->add_flag("--list", list, "List scenarios and their parameters");
  demo->add_option("--out", output, "Write the system file here instead of stdout");
  demo->add_option("--param", params, "Scenario parameter NAME=P/Q (repeatable)");
  demo->add_option("--format", format, "text or machine")->transform(CLI::CheckedTransformer(formats));

  CLI11_PARSE(app, argc, argv);

  if (*validate) return cli::cmd_validate(file, std::cout, std::cerr);
  if (*analyze) return cli::cmd_analyze(file, format, std::cout, std::cerr);

  if (*couple) {
    static const std::map<std::string, cli::CouplingKind> kinds{{"independent", cli::CouplingKind::Independent},
                                                                {"identity", cli::CouplingKind::Identity},
                                                                {"maximal", cli::CouplingKind::Maximal},
                                                                {"targets", cli::CouplingKind::Targets}};
    const auto it = kinds.find(kind.front());
    if (it == kinds.end()) {
      std::cerr << "error: unknown coupling kind '" << kind.front() << "'\n";
      return cli::kInvalid;
    }
    cli::CoupleOptions options{it->second, {}};
    if ((options.kind == cli::CouplingKind::Targets) != (kind.size() == 2)) {
      std::cerr << "error: '--kind targets' takes exactly one targets file; other kinds take none\n";
      return cli::kInvalid;
    }
    if (kind.size() == 2) options.targets_file = kind[1];
    return cli::cmd_couple(file, options, std::cout, std::cerr);
  }

  if (list) {
    for (const auto id : all_scenarios()) {
      std::cout << to_string(id) << "  " << scenario_summary(id) << '\n';
      for (const auto& p : scenario_parameters(id)) {
        std::cout << "    " << p.name << " = " << p.default_value << "  in [" << p.lower << ", " << p.upper
                  << "]  " << p.meaning << '\n';
      }
    }
    return cli::kSuccess;
  }
  if (scenario.empty()) {
    std::cerr << "error: demo needs a scenario id (see --list)\n";
    return cli::kInvalid;
  }
  cli::DemoOptions options;
  options.format = format;
  if (!output.empty()) options.output = output;
  try {
    for (const auto& p : params) {
      const auto eq = p.find('=');
      if (eq == std::string::npos) throw Error(ErrorCode::BadParameter, "expected NAME=P/Q, got '" + p + "'");
      options.params[p.substr(0, eq)] = Rational::parse(p.substr(eq + 1));
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kInvalid;
  }
  return cli::cmd_demo(scenario, options, std::cout, std::cerr);
}
