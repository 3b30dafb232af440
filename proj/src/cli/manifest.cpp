#include <fstream>
#include <sstream>

#include "minder/cli.hpp"

namespace minder::cli {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_words(std::string_view s) {
  std::istringstream is{std::string(s)};
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& what, ErrorCode code = ErrorCode::Parse) {
  throw ParseError(code, "manifest line " + std::to_string(line) + ": " + what, line);
}

struct PendingDerivation {
  std::string name;
  std::size_t line;
  std::vector<std::pair<std::string, std::pair<std::string, std::size_t>>> entries;
};

}  // namespace

Manifest parse_manifest(std::string_view text) {
  std::vector<std::string> variables;
  bool have_ring = false;
  std::vector<PendingDerivation> pending;
  std::map<std::string, std::string> task;

  enum class Section { None, Ring, Derivation, Task } section = Section::None;
  std::istringstream is{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string content = trim(line);
    if (content.empty()) continue;

    if (content.front() == '[') {
      if (content.back() != ']') fail(line_no, "unterminated section header");
      const auto words = split_words(std::string_view(content).substr(1, content.size() - 2));
      if (words.empty()) fail(line_no, "empty section header");
      if (words[0] == "ring" && words.size() == 1) {
        section = Section::Ring;
      } else if (words[0] == "task" && words.size() == 1) {
        section = Section::Task;
      } else if (words[0] == "derivation" && words.size() == 2) {
        section = Section::Derivation;
        for (const auto& p : pending) {
          if (p.name == words[1]) fail(line_no, "duplicate derivation '" + words[1] + "'");
        }
        pending.push_back({words[1], line_no, {}});
      } else {
        fail(line_no, "unknown section '" + content + "'");
      }
      continue;
    }

    const auto eq = content.find('=');
    if (eq == std::string::npos) fail(line_no, "expected key = value");
    const std::string key = trim(std::string_view(content).substr(0, eq));
    const std::string value = trim(std::string_view(content).substr(eq + 1));
    if (key.empty()) fail(line_no, "empty key");

    switch (section) {
      case Section::None:
        fail(line_no, "entry outside any section");
      case Section::Ring:
        if (key != "variables") fail(line_no, "unknown ring key '" + key + "'");
        variables = split_words(value);
        have_ring = true;
        break;
      case Section::Derivation:
        pending.back().entries.push_back({key, {value, line_no}});
        break;
      case Section::Task:
        if (task.count(key)) fail(line_no, "duplicate task key '" + key + "'");
        task[key] = value;
        break;
    }
  }
  if (!have_ring) fail(line_no, "missing [ring] section");

  Manifest m;
  try {
    m.ring = make_ring(variables);
  } catch (const Error& e) {
    fail(line_no, e.what());
  }
  for (const auto& p : pending) {
    std::vector<Polynomial> coeffs(m.ring->size(), Polynomial(m.ring));
    std::vector<bool> seen(m.ring->size(), false);
    for (const auto& [var, entry] : p.entries) {
      const auto& [value, line] = entry;
      const auto index = m.ring->index_of(var);
      if (!index) {
        fail(line, "unknown variable '" + var + "'", ErrorCode::UnknownVariable);
      }
      if (seen[*index]) fail(line, "coefficient of " + var + " given twice");
      seen[*index] = true;
      try {
        coeffs[*index] = parse_polynomial(value, m.ring);
      } catch (const ParseError& e) {
        fail(line, e.detail() + " at column " + std::to_string(e.position()), e.code());
      }
    }
    m.derivation_names.push_back(p.name);
    m.derivations.emplace_back(m.ring, std::move(coeffs));
  }
  m.task = std::move(task);
  return m;
}

Manifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open manifest '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str());
}

}  // namespace minder::cli
