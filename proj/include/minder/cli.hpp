#pragma once

// Batch front end shared by the `minder` executable and the tests.
//
// Manifest format (plain text, '#' starts a comment):
//
//   [ring]
//   variables = x1 x2 y
//
//   [derivation d1]        # one section per derivation, in family order
//   x1 = 1                 # coefficient of D[x1]; unlisted variables get 0
//
//   [task]
//   D = 6
//   N = 5
//   m_max = 10
//   normalize = x1 x2      # variable pair per fold step, steps separated by ';'
//   x1 = x1                # straighten: the series x1 (and x2 for a canonical pair)
//   x2 = x2
//   points = (1,1);(2,-3)
//   height = 4

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "minder/derivation.hpp"

namespace minder::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitParse = 2,
  kExitPrecondition = 3,
  kExitSearchFailed = 4,
};

struct Manifest {
  RingPtr ring;
  std::vector<std::string> derivation_names;
  std::vector<Derivation> derivations;
  std::map<std::string, std::string> task;
};

/// Throws ParseError; the position is the 1-based line number.
Manifest parse_manifest(std::string_view text);
Manifest load_manifest(const std::string& path);

enum class Command { Kernel, FirstInt, Minimal, Straighten, Example, Verify };

std::optional<Command> parse_command(std::string_view name);
std::string_view command_name(Command command);

struct Options {
  std::optional<std::string> manifest_path;
  std::optional<int> degree_bound;
  std::optional<int> order;
  std::optional<int> m_max;
  std::optional<int> height;
  std::optional<std::string> points;
  std::optional<std::string> points_file;
  std::string format = "json";
  // verify
  std::string lemma = "noyau";
  std::optional<std::string> m_range;
  std::optional<std::string> k_range;
  std::optional<std::string> degree_range;
  int inert = 0;
};

struct Report {
  int exit_code = kExitOk;
  std::string body;
};

/// Never throws for library or input errors: they come back as an error report with
/// a machine-readable code and a nonzero exit code.
Report run(Command command, const Options& options);

int exit_code_for(ErrorCode code);

/// "a..b" or "a" as an inclusive list.
std::vector<int> parse_range(std::string_view text);
/// "(l1,l2);(l1,l2)" with integer or p/q entries.
std::vector<std::pair<Rational, Rational>> parse_points(std::string_view text);

}  // namespace minder::cli
