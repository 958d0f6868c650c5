#pragma once

#include "couplecheck/coupling.hpp"
#include "couplecheck/system.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace couplecheck {

// System file grammar (line oriented, '#' starts a comment):
//
//   file     := section*
//   section  := "[contents]" NL (ID+ NL)*
//             | "[contexts]" NL (ID ":" ID+ NL)*
//             | "[supports]" NL (CONTEXT CONTENT ":" VALUE+ NL)*
//             | "[bunches]"  NL ("@" CONTEXT NL (VALUE+ ":" MASS NL)*)*
//   MASS     := INT | INT "/" INT          (no decimal point, no exponent)
//
// Identifiers and values are whitespace-free tokens without ':', '@', '#',
// '[' or ']'. Tuples not listed in a bunch have mass zero.

/// Syntax only; throws Error(ParseError) naming line and column.
RawSystem parse_system_file(std::string_view text);

/// Canonical text: sorted contents and contexts, tuples in support order,
/// zero-mass tuples omitted. parse + validate of the output gives back `system`.
std::string format_system(const System& system);

/// Reads, parses and validates. Throws Error / ValidationError.
System load_system(const std::filesystem::path& path);

/// Lines of "CONTENT : MASS".
std::vector<ConnectionTarget> parse_targets(std::string_view text);

std::string read_file(const std::filesystem::path& path);

}  // namespace couplecheck
