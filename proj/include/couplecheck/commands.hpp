#pragma once

#include "couplecheck/scenarios.hpp"
#include "couplecheck/system.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>

namespace couplecheck::cli {

/// Process exit codes shared by every subcommand.
enum ExitCode : int {
  kSuccess = 0,     // valid / noncontextual / coupling printed
  kInvalid = 1,     // parse or validation failure
  kStructural = 2,  // system shape does not fit the request
  kContextual = 3,  // contextual verdict, or requested coupling does not exist
};

enum class OutputFormat { Text, Machine };

enum class CouplingKind { Independent, Identity, Maximal, Targets };

struct CoupleOptions {
  CouplingKind kind = CouplingKind::Independent;
  std::filesystem::path targets_file;
};

struct DemoOptions {
  ScenarioParams params;
  std::optional<std::filesystem::path> output;
  OutputFormat format = OutputFormat::Text;
};

int cmd_validate(const std::filesystem::path& path, std::ostream& out, std::ostream& err);
int cmd_analyze(const std::filesystem::path& path, OutputFormat format, std::ostream& out, std::ostream& err);
int cmd_couple(const std::filesystem::path& path, const CoupleOptions& options, std::ostream& out,
               std::ostream& err);
int cmd_demo(std::string_view scenario, const DemoOptions& options, std::ostream& out, std::ostream& err);

/// Analysis of an in-memory system; what cmd_analyze runs after loading.
int analyze_system(const System& system, OutputFormat format, std::ostream& out, std::ostream& err);

}  // namespace couplecheck::cli
