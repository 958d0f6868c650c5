#include "couplecheck/system_file.hpp"

#include <fstream>
#include <sstream>

namespace couplecheck {

namespace {

struct Token {
  std::string text;
  int column;  // 1-based
};

[[noreturn]] void fail(int line, int column, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
}

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
      ++i;
      continue;
    }
    if (line[i] == ':' || line[i] == '@') {
      out.push_back({std::string(1, line[i]), static_cast<int>(i + 1)});
      ++i;
      continue;
    }
    const auto start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != ':' &&
           line[i] != '@') {
      ++i;
    }
    out.push_back({std::string(line.substr(start, i - start)), static_cast<int>(start + 1)});
  }
  return out;
}

void check_identifier(const Token& t, int line) {
  if (t.text.find_first_of("[]#") != std::string::npos) fail(line, t.column, "bad identifier '" + t.text + "'");
}

// Splits "lhs : rhs", requiring exactly one ':'.
std::pair<std::vector<Token>, std::vector<Token>> split_colon(const std::vector<Token>& tokens, int line) {
  std::pair<std::vector<Token>, std::vector<Token>> out;
  bool seen = false;
  for (const auto& t : tokens) {
    if (t.text == ":") {
      if (seen) fail(line, t.column, "more than one ':'");
      seen = true;
      continue;
    }
    if (t.text == "@") fail(line, t.column, "unexpected '@'");
    check_identifier(t, line);
    (seen ? out.second : out.first).push_back(t);
  }
  if (!seen) fail(line, tokens.empty() ? 1 : tokens.front().column, "expected ':'");
  return out;
}

Rational parse_mass(const Token& t, int line) {
  try {
    return Rational::parse(t.text);
  } catch (const Error& e) {
    const std::string what = e.what();
    const auto colon = what.find(": ");
    fail(line, t.column, colon == std::string::npos ? what : what.substr(colon + 2));
  }
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : " ") + p;
  return out;
}

}  // namespace

RawSystem parse_system_file(std::string_view text) {
  enum class Section { None, Contents, Contexts, Supports, Bunches };
  RawSystem raw;
  Section section = Section::None;
  RawBunch* current = nullptr;
  bool contents_seen = false;

  std::istringstream in{std::string(text)};
  std::string line_text;
  int line = 0;
  while (std::getline(in, line_text)) {
    ++line;
    if (const auto hash = line_text.find('#'); hash != std::string::npos) line_text.erase(hash);
    const auto tokens = tokenize(line_text);
    if (tokens.empty()) continue;

    const auto& head = tokens.front();
    if (head.text.front() == '[') {
      if (tokens.size() != 1 || head.text.back() != ']') fail(line, head.column, "malformed section header");
      const auto name = head.text.substr(1, head.text.size() - 2);
      if (name == "contents") {
        section = Section::Contents;
        if (!contents_seen) raw.contents_line = line;
        contents_seen = true;
      } else if (name == "contexts") {
        section = Section::Contexts;
      } else if (name == "supports") {
        section = Section::Supports;
      } else if (name == "bunches") {
        section = Section::Bunches;
        current = nullptr;
      } else {
        fail(line, head.column, "unknown section '" + name + "'");
      }
      continue;
    }

    switch (section) {
      case Section::None:
        fail(line, head.column, "content before the first section header");
      case Section::Contents:
        for (const auto& t : tokens) {
          if (t.text == ":" || t.text == "@") fail(line, t.column, "unexpected '" + t.text + "'");
          check_identifier(t, line);
          raw.contents.push_back(t.text);
        }
        break;
      case Section::Contexts: {
        const auto [lhs, rhs] = split_colon(tokens, line);
        if (lhs.size() != 1) fail(line, head.column, "expected 'CONTEXT : CONTENT...'");
        RawContext ctx{lhs.front().text, {}, line};
        for (const auto& t : rhs) ctx.measured.push_back(t.text);
        raw.contexts.push_back(std::move(ctx));
        break;
      }
      case Section::Supports: {
        const auto [lhs, rhs] = split_colon(tokens, line);
        if (lhs.size() != 2) fail(line, head.column, "expected 'CONTEXT CONTENT : VALUE...'");
        RawSupport s{lhs[0].text, lhs[1].text, {}, line};
        for (const auto& t : rhs) s.values.push_back(t.text);
        raw.supports.push_back(std::move(s));
        break;
      }
      case Section::Bunches: {
        if (head.text == "@") {
          if (tokens.size() != 2) fail(line, head.column, "expected '@ CONTEXT'");
          check_identifier(tokens[1], line);
          raw.bunches.push_back({tokens[1].text, {}, line});
          current = &raw.bunches.back();
          break;
        }
        if (current == nullptr) fail(line, head.column, "tuple line before any '@ CONTEXT' header");
        const auto [lhs, rhs] = split_colon(tokens, line);
        if (rhs.size() != 1) {
          fail(line, rhs.empty() ? tokens.back().column : rhs[1].column, "expected exactly one mass after ':'");
        }
        RawAtom atom{{}, parse_mass(rhs.front(), line), line};
        for (const auto& t : lhs) atom.tuple.push_back(t.text);
        current->atoms.push_back(std::move(atom));
        break;
      }
    }
  }
  return raw;
}

std::string format_system(const System& system) {
  const auto raw = to_raw(system);
  std::ostringstream os;
  os << "[contents]\n" << join(raw.contents) << "\n\n[contexts]\n";
  for (const auto& c : raw.contexts) os << c.id << " : " << join(c.measured) << '\n';
  os << "\n[supports]\n";
  for (const auto& s : raw.supports) os << s.context << ' ' << s.content << " : " << join(s.values) << '\n';
  os << "\n[bunches]\n";
  for (const auto& b : raw.bunches) {
    os << "@ " << b.context << '\n';
    for (const auto& a : b.atoms) os << join(a.tuple) << " : " << a.mass << '\n';
  }
  return os.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

System load_system(const std::filesystem::path& path) { return validate_system(parse_system_file(read_file(path))); }

std::vector<ConnectionTarget> parse_targets(std::string_view text) {
  std::vector<ConnectionTarget> out;
  std::istringstream in{std::string(text)};
  std::string line_text;
  int line = 0;
  while (std::getline(in, line_text)) {
    ++line;
    if (const auto hash = line_text.find('#'); hash != std::string::npos) line_text.erase(hash);
    const auto tokens = tokenize(line_text);
    if (tokens.empty()) continue;
    const auto [lhs, rhs] = split_colon(tokens, line);
    if (lhs.size() != 1 || rhs.size() != 1) fail(line, tokens.front().column, "expected 'CONTENT : MASS'");
    out.push_back({Content{lhs.front().text}, parse_mass(rhs.front(), line)});
  }
  return out;
}

}  // namespace couplecheck
