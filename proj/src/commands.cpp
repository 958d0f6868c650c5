#include "couplecheck/commands.hpp"

#include "couplecheck/analysis.hpp"
#include "couplecheck/coupling.hpp"
#include "couplecheck/system_file.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

namespace couplecheck::cli {

namespace {

void print_errors(const Error& e, std::ostream& err) {
  if (const auto* v = dynamic_cast<const ValidationError*>(&e)) {
    for (const auto& violation : v->violations()) err << "error: " << violation.describe() << '\n';
  } else {
    err << "error: " << e.what() << '\n';
  }
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::StructuralMismatch:
    case ErrorCode::DistributionsDiffer:
    case ErrorCode::ConnectionArityUnsupported:
    case ErrorCode::UnknownConnection:
    case ErrorCode::InvalidTarget:
      return kStructural;
    default:
      return kInvalid;
  }
}

std::string comment_out(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string out;
  while (std::getline(in, line)) out += (line.empty() ? "#" : "# " + line) + "\n";
  return out;
}

void print_coupling(const Coupling& coupling, std::ostream& out) {
  out << "# observables:";
  for (const auto& obs : coupling.observables) out << ' ' << obs.name();
  out << '\n';
  for (const auto& [atom, mass] : coupling.atoms) {
    const auto labels = coupling.labels(atom);
    for (std::size_t k = 0; k < labels.size(); ++k) out << (k ? " " : "") << labels[k].label;
    out << " : " << mass << '\n';
  }
}

// Summary used by the demo for systems outside the 2x2 design.
int describe_other(const System& system, std::ostream& out) {
  std::ostringstream report;
  int code = kSuccess;
  if (system.bunches().size() == 1 && system.bunches().front().arity() >= 2) {
    for (const auto& pair : product_independence_test(system.bunches().front())) {
      report << pair.first.id << ", " << pair.second.id << ": "
             << (pair.independent ? "independent" : "not independent") << '\n';
    }
  } else if (system.shared_connections().empty()) {
    report << "no shared contents across contexts; no nontrivial contextual analysis\n";
  } else {
    try {
      const bool found = maximally_connected_coupling(system).has_value();
      report << "maximally connected coupling: " << (found ? "found" : "none") << '\n';
      report << "Verdict: " << (found ? "noncontextual" : "contextual") << '\n';
      code = found ? kSuccess : kContextual;
    } catch (const Error& e) {
      report << e.what() << '\n';
      code = kStructural;
    }
  }
  out << comment_out(report.str());
  return code;
}

}  // namespace

int cmd_validate(const std::filesystem::path& path, std::ostream& out, std::ostream& err) {
  try {
    const auto system = load_system(path);
    out << "valid: " << system.contents().size() << " content(s), " << system.bunches().size() << " context(s)\n";
    return kSuccess;
  } catch (const Error& e) {
    print_errors(e, err);
    return kInvalid;
  }
}

int analyze_system(const System& system, OutputFormat format, std::ostream& out, std::ostream& err) {
  try {
    const auto cyclic = CyclicFourSystem::from_system(system);
    const auto report = analyze(cyclic);
    out << (format == OutputFormat::Machine ? format_machine(report) : format_text(report));
    return report.noncontextual() ? kSuccess : kContextual;
  } catch (const Error& e) {
    print_errors(e, err);
    return exit_code_for(e);
  }
}

int cmd_analyze(const std::filesystem::path& path, OutputFormat format, std::ostream& out, std::ostream& err) {
  std::optional<System> system;
  try {
    system = load_system(path);
  } catch (const Error& e) {
    print_errors(e, err);
    return kInvalid;
  }
  return analyze_system(*system, format, out, err);
}

int cmd_couple(const std::filesystem::path& path, const CoupleOptions& options, std::ostream& out,
               std::ostream& err) {
  try {
    const auto system = load_system(path);
    std::optional<Coupling> coupling;
    switch (options.kind) {
      case CouplingKind::Independent:
        coupling = independent_coupling(system);
        break;
      case CouplingKind::Identity:
        coupling = identity_coupling(system);
        break;
      case CouplingKind::Maximal:
        coupling = maximally_connected_coupling(system);
        break;
      case CouplingKind::Targets: {
        const auto targets = parse_targets(read_file(options.targets_file));
        coupling = couple_with_equality_targets(system, targets);
        break;
      }
    }
    if (!coupling) {
      out << "INFEASIBLE\n";
      return kContextual;
    }
    if (const auto check = verify_coupling(*coupling); !check.ok) {
      err << "internal error: constructed coupling fails verification\n";
      return kInvalid;
    }
    print_coupling(*coupling, out);
    return kSuccess;
  } catch (const Error& e) {
    print_errors(e, err);
    return exit_code_for(e);
  }
}

int cmd_demo(std::string_view scenario, const DemoOptions& options, std::ostream& out, std::ostream& err) {
  try {
    const auto id = parse_scenario_id(scenario);
    const auto system = build(id, options.params);
    const auto text = format_system(system);
    if (options.output) {
      std::ofstream file(*options.output, std::ios::binary);
      if (!file) throw Error(ErrorCode::ParseError, "cannot write '" + options.output->string() + "'");
      file << text;
    } else {
      out << "# scenario " << to_string(id) << ": " << scenario_summary(id) << '\n' << text << '\n';
    }

    std::optional<CyclicFourSystem> cyclic;
    try {
      cyclic = CyclicFourSystem::from_system(system);
    } catch (const Error&) {
    }
    if (!cyclic) return describe_other(system, out);

    const auto report = analyze(*cyclic);
    out << comment_out(options.format == OutputFormat::Machine ? format_machine(report) : format_text(report));
    return report.noncontextual() ? kSuccess : kContextual;
  } catch (const Error& e) {
    print_errors(e, err);
    return e.code() == ErrorCode::UnknownScenario || e.code() == ErrorCode::BadParameter ? kInvalid
                                                                                          : exit_code_for(e);
  }
}

}  // namespace couplecheck::cli
