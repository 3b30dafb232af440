#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "minder/cli.hpp"

namespace {

struct Sub {
  minder::cli::Command command;
  CLI::App* app;
};

}  // namespace

int main(int argc, char** argv) {
  using minder::cli::Command;
  CLI::App app{"Degree-bounded first integrals and minimal derivations over Q"};
  app.require_subcommand(1);

  minder::cli::Options options;
  std::string out_path;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--manifest", options.manifest_path, "Manifest file");
    sub->add_option("--out", out_path, "Write the report here instead of stdout");
    sub->add_option("--format", options.format, "json (default) or csv")->check(CLI::IsMember({"json", "csv"}));
  };

  std::vector<Sub> subs;
  auto add = [&](Command c, const char* help) {
    CLI::App* sub = app.add_subcommand(std::string(minder::cli::command_name(c)), help);
    common(sub);
    if (c != Command::Verify) sub->add_option("--D", options.degree_bound, "Degree bound");
    sub->add_option("--N", options.order, "Truncation order");
    sub->add_option("--m-max", options.m_max, "Largest m to try");
    subs.push_back({c, sub});
    return sub;
  };

  add(Command::Kernel, "Kernel of a family up to degree D");
  add(Command::FirstInt, "Nonconstant first integrals up to degree D");
  add(Command::Minimal, "Fold a family into one minimal derivation");
  add(Command::Straighten, "Flow-box coordinates up to order N");
  auto* example = add(Command::Example, "Sample the family {x D[x], y D[y]}");
  example->add_option("--points", options.points, "Points as (l1,l2);(l1,l2)");
  example->add_option("--points-file", options.points_file, "File with one (l1,l2) per line");
  example->add_option("--height", options.height, "Largest p+q among listed lines");
  auto* verify = add(Command::Verify, "Check the delta_m kernel lemmas on a degree range");
  verify->add_option("--lemma", options.lemma, "noyau or noyau2")->check(CLI::IsMember({"noyau", "noyau2"}));
  verify->add_option("--m", options.m_range, "m or a..b");
  verify->add_option("--k", options.k_range, "k or a..b (noyau2)");
  verify->add_option("--D", options.degree_range, "D or a..b (noyau)");
  verify->add_option("--inert", options.inert, "Number of inert variables");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : minder::cli::kExitUsage;
  }

  Command command = Command::Kernel;
  for (const auto& s : subs) {
    if (s.app->parsed()) command = s.command;
  }

  const minder::cli::Report report = minder::cli::run(command, options);
  if (out_path.empty()) {
    std::cout << report.body;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return minder::cli::kExitUsage;
    }
    out << report.body;
  }
  if (report.exit_code != 0 && !out_path.empty()) std::cerr << report.body;
  return report.exit_code;
}
