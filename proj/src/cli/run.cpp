#include <fstream>
#include <sstream>

#include "json.hpp"

#include "minder/cli.hpp"
#include "minder/deltam.hpp"
#include "minder/example.hpp"
#include "minder/firstint.hpp"
#include "minder/pseries.hpp"

namespace minder::cli {

using nlohmann::json;

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

int parse_int(std::string_view text, std::string_view what) {
  const std::string t = trim(text);
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (t.empty() || used != t.size()) {
    throw Error(ErrorCode::Parse, "expected an integer for " + std::string(what) + ", got '" + t + "'");
  }
  return value;
}

json ring_json(const RingPtr& ring) { return ring->names(); }

json series_json(const std::string& name, const TruncSeries& s) {
  return {{"name", name}, {"series", to_string(s.body())}, {"order", s.order()}};
}

json derivation_json(const Derivation& d) {
  json out = json::object();
  for (std::size_t i = 0; i < d.size(); ++i) out[d.ring()->name(i)] = to_string(d.coefficient(i));
  return out;
}

json polys_json(const std::vector<Polynomial>& polys) {
  json out = json::array();
  for (const auto& p : polys) out.push_back(to_string(p));
  return out;
}

struct Context {
  Command command;
  const Options& options;
  std::optional<Manifest> manifest;

  const Manifest& need_manifest() const {
    if (!manifest) throw Error(ErrorCode::InvalidArgument, "this command needs --manifest");
    return *manifest;
  }

  std::optional<int> task_int(const char* key) const {
    if (!manifest) return std::nullopt;
    auto it = manifest->task.find(key);
    if (it == manifest->task.end()) return std::nullopt;
    return parse_int(it->second, key);
  }

  std::optional<std::string> task_string(const char* key) const {
    if (!manifest) return std::nullopt;
    auto it = manifest->task.find(key);
    if (it == manifest->task.end()) return std::nullopt;
    return it->second;
  }

  int require_int(const std::optional<int>& flag, const char* key, int minimum) const {
    const std::optional<int> v = flag ? flag : task_int(key);
    if (!v) throw Error(ErrorCode::InvalidArgument, std::string("missing parameter ") + key);
    if (*v < minimum) {
      throw Error(ErrorCode::InvalidArgument, std::string("parameter ") + key + " must be at least " + std::to_string(minimum));
    }
    return *v;
  }

  DerivationFamily family() const {
    const Manifest& m = need_manifest();
    if (m.derivations.empty()) throw Error(ErrorCode::InvalidArgument, "manifest declares no derivations");
    return DerivationFamily(m.derivations);
  }
};

json run_kernel(const Context& ctx) {
  const int degree = ctx.require_int(ctx.options.degree_bound, "D", 0);
  const KernelReport report = kernel_basis(ctx.family(), degree);
  return {{"ring", ring_json(ctx.manifest->ring)},
          {"family", ctx.manifest->derivation_names},
          {"degree_bound", report.degree_bound},
          {"basis", polys_json(report.basis)},
          {"dimension", report.basis.size()},
          {"matrix", {{"rows", report.matrix_rows}, {"cols", report.matrix_cols}, {"rank", report.matrix_rank}}}};
}

json run_firstint(const Context& ctx) {
  const int degree = ctx.require_int(ctx.options.degree_bound, "D", 1);
  const FirstIntegralBasis fi = first_integrals(ctx.family(), degree);
  return {{"ring", ring_json(ctx.manifest->ring)},
          {"family", ctx.manifest->derivation_names},
          {"degree_bound", fi.degree_bound},
          {"integrals", polys_json(fi.integrals)},
          {"has_first_integral", !fi.integrals.empty()}};
}

std::vector<std::pair<std::size_t, std::size_t>> parse_normalizations(const Context& ctx) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const auto spec = ctx.task_string("normalize");
  if (!spec || trim(*spec).empty()) return out;
  const RingPtr& ring = ctx.manifest->ring;
  for (const auto& step : split(*spec, ';')) {
    std::istringstream is(step);
    std::string a, b, extra;
    if (!(is >> a >> b) || (is >> extra)) {
      throw Error(ErrorCode::Parse, "normalize: expected two variable names per step, got '" + step + "'");
    }
    const auto ia = ring->index_of(a);
    const auto ib = ring->index_of(b);
    if (!ia || !ib) throw Error(ErrorCode::UnknownVariable, "normalize: unknown variable in '" + step + "'");
    out.emplace_back(*ia, *ib);
  }
  return out;
}

json run_minimal(const Context& ctx) {
  const int degree = ctx.require_int(ctx.options.degree_bound, "D", 1);
  const int m_max = ctx.require_int(ctx.options.m_max, "m_max", 1);
  const DerivationFamily family = ctx.family();
  const auto normalizations = parse_normalizations(ctx);
  const MinimalityCertificate cert = fold_family(family, normalizations, degree, m_max);

  const auto& names = ctx.manifest->derivation_names;
  json per_m = json::array();
  for (const auto& [m, ok] : cert.per_m_results) per_m.push_back({{"m", m}, {"certified", ok}});
  json trace = json::array();
  for (const auto& e : cert.coefficient_trace) {
    trace.push_back({{"source", names[e.source_index]}, {"coefficient", to_string(e.coefficient)}});
  }
  json steps = json::array();
  for (const auto& s : cert.steps) {
    json step{{"member", names[s.member]}};
    switch (s.kind) {
      case FoldStep::Kind::Base:
        step["kind"] = "base";
        break;
      case FoldStep::Kind::Normalized:
        step["kind"] = "normalized";
        step["m"] = s.exponent_acc;
        step["pair"] = {family.ring()->name(s.x1_index), family.ring()->name(s.x2_index)};
        break;
      case FoldStep::Kind::Fallback:
        step["kind"] = "fallback";
        step["pair"] = {family.ring()->name(s.x1_index), family.ring()->name(s.x2_index)};
        step["exponents"] = {s.exponent_acc, s.exponent_member};
        break;
    }
    steps.push_back(std::move(step));
  }
  return {{"ring", ring_json(family.ring())},
          {"family", names},
          {"degree_bound", cert.degree_bound},
          {"m_max", m_max},
          {"m_star", cert.m_star},
          {"per_m", per_m},
          {"combination", derivation_json(cert.combination)},
          {"coefficient_trace", trace},
          {"steps", steps}};
}

json run_straighten(const Context& ctx) {
  const Manifest& m = ctx.need_manifest();
  const int order = ctx.require_int(ctx.options.order, "N", 1);
  if (m.derivations.empty()) throw Error(ErrorCode::InvalidArgument, "manifest declares no derivations");
  const auto x1_text = ctx.task_string("x1");
  if (!x1_text) throw Error(ErrorCode::InvalidArgument, "missing parameter x1");

  // Polynomial inputs are exact, so they are lifted one order beyond N.
  const int lift = order + 1;
  const TruncSeries x1(parse_polynomial(*x1_text, m.ring), lift);
  const SeriesDerivation d = SeriesDerivation::from_derivation(m.derivations[0], lift);
  const StraighteningResult s = straighten(d, x1, order);

  std::vector<std::string> param_names{"x1"};
  for (std::size_t i = 2; i <= m.ring->size(); ++i) param_names.push_back("y" + std::to_string(i));
  json params = json::array();
  for (std::size_t i = 0; i < s.params.size(); ++i) params.push_back(series_json(param_names[i], s.params[i]));
  json residuals = json::array();
  for (std::size_t i = 0; i < s.residuals.size(); ++i) {
    residuals.push_back({{"name", param_names[i + 1]},
                         {"known_through_degree", s.residuals[i].order()},
                         {"vanishes", s.residuals[i].is_zero()}});
  }
  json completion = json::array();
  for (std::size_t j : s.completion) completion.push_back(m.ring->name(j));

  json out{{"ring", ring_json(m.ring)},
           {"derivation", m.derivation_names[0]},
           {"order", order},
           {"iterations", s.iterations},
           {"completion", completion},
           {"params", params},
           {"residuals", residuals}};

  const auto x2_text = ctx.task_string("x2");
  if (x2_text && m.derivations.size() >= 2) {
    const TruncSeries x2(parse_polynomial(*x2_text, m.ring), lift);
    const SeriesDerivation d2 = SeriesDerivation::from_derivation(m.derivations[1], lift);
    const CanonicalPair cp = canonical_pair(d, d2, x1, x2, order);
    json cparams = json::array();
    json as = json::array();
    for (std::size_t i = 0; i < cp.params.size(); ++i) {
      cparams.push_back(series_json(cp.coordinates->name(i), cp.params[i]));
    }
    for (std::size_t i = 0; i < cp.a.size(); ++i) as.push_back(series_json("a" + std::to_string(i + 3), cp.a[i]));
    out["canonical_pair"] = {{"derivations", {m.derivation_names[0], m.derivation_names[1]}},
                             {"coordinates", ring_json(cp.coordinates)},
                             {"params", cparams},
                             {"a", as}};
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json classification_json(const SlopeClassification& c) {
  if (c.minimal()) return {{"variant", "minimal"}};
  return {{"variant", "has_first_integral"}, {"p", *c.p}, {"q", *c.q}, {"integral", to_string(*c.integral)}};
}

LocusSample example_sample(const Context& ctx, int& height) {
  std::string points_text;
  if (ctx.options.points) {
    points_text = *ctx.options.points;
  } else if (ctx.options.points_file) {
    points_text = read_file(*ctx.options.points_file);
  } else if (auto p = ctx.task_string("points")) {
    points_text = *p;
  } else {
    throw Error(ErrorCode::InvalidArgument, "missing parameter points");
  }
  const int degree = ctx.require_int(ctx.options.degree_bound, "D", 1);
  height = ctx.options.height ? *ctx.options.height : ctx.task_int("height").value_or(degree);
  return sample_minimal_locus(parse_points(points_text), degree);
}

std::string run_example_csv(const Context& ctx) {
  int height = 0;
  const LocusSample sample = example_sample(ctx, height);
  std::string out = "lambda1,lambda2,minimal\n";
  for (const auto& pt : sample.points) {
    out += to_string(pt.lambda1) + "," + to_string(pt.lambda2) + "," + (pt.minimal ? "true" : "false") + "\n";
  }
  return out;
}

json run_example(const Context& ctx) {
  int height = 0;
  const LocusSample sample = example_sample(ctx, height);
  json points = json::array();
  for (const auto& pt : sample.points) {
    points.push_back({{"lambda1", to_string(pt.lambda1)},
                      {"lambda2", to_string(pt.lambda2)},
                      {"minimal", pt.minimal},
                      {"witness", pt.witness ? json(to_string(*pt.witness)) : json(nullptr)},
                      {"classification", classification_json(pt.classification)},
                      {"agrees", pt.agrees ? json(*pt.agrees) : json(nullptr)},
                      {"beyond_degree_bound", pt.beyond_degree_bound}});
  }
  json lines = json::array();
  for (const auto& l : enumerate_bad_lines(height)) {
    if (l.axis) {
      lines.push_back({{"axis", true}});
    } else {
      lines.push_back({{"p", l.p}, {"q", l.q}});
    }
  }
  return {{"ring", ring_json(example_ring())},
          {"degree_bound", sample.degree_bound},
          {"points", points},
          {"height", height},
          {"bad_lines", lines}};
}

RingPtr verify_ring(int inert) {
  if (inert < 0) throw Error(ErrorCode::InvalidArgument, "--inert must be nonnegative");
  std::vector<std::string> names{"x1", "x2"};
  if (inert == 1) {
    names.push_back("y");
  } else {
    for (int i = 1; i <= inert; ++i) names.push_back("y" + std::to_string(i));
  }
  return make_ring(std::move(names));
}

json run_verify(const Context& ctx) {
  const Options& o = ctx.options;
  const RingPtr ring = verify_ring(o.inert);
  json results = json::array();
  bool all = true;
  if (o.lemma == "noyau") {
    const auto ms = parse_range(o.m_range.value_or("1..6"));
    const auto ds = o.degree_range ? parse_range(*o.degree_range)
                                   : parse_range("1.." + std::to_string(o.degree_bound.value_or(8)));
    for (int m : ms) {
      for (int d : ds) {
        const bool holds = verify_lemma_noyau(m, d, ring);
        all = all && holds;
        results.push_back({{"m", m}, {"D", d}, {"holds", holds}});
      }
    }
  } else if (o.lemma == "noyau2") {
    const auto ks = parse_range(o.k_range.value_or("0..3"));
    for (int k : ks) {
      const auto ms = o.m_range ? parse_range(*o.m_range) : std::vector<int>{k + 4, k + 5};
      for (int m : ms) {
        const Noyau2Result r = verify_lemma_noyau2(k, m, ring);
        all = all && r.trivial_only;
        json entry{{"k", k}, {"m", m}, {"trivial_only", r.trivial_only}, {"hypothesis_m_ge_k_plus_4", m >= k + 4}};
        entry["witness"] = r.witness ? json{{"P", to_string(r.witness->p)}, {"Q", to_string(r.witness->q)}}
                                     : json(nullptr);
        results.push_back(std::move(entry));
      }
    }
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown lemma '" + o.lemma + "' (expected noyau or noyau2)");
  }
  return {{"lemma", o.lemma}, {"ring", ring_json(ring)}, {"results", results}, {"all_hold", all}};
}

json error_json(Command command, std::string_view code, const std::string& message) {
  return {{"schema_version", kSchemaVersion},
          {"command", command_name(command)},
          {"error", {{"code", code}, {"message", message}}}};
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  if (name == "kernel") return Command::Kernel;
  if (name == "firstint") return Command::FirstInt;
  if (name == "minimal") return Command::Minimal;
  if (name == "straighten") return Command::Straighten;
  if (name == "example") return Command::Example;
  if (name == "verify") return Command::Verify;
  return std::nullopt;
}

std::string_view command_name(Command command) {
  switch (command) {
    case Command::Kernel: return "kernel";
    case Command::FirstInt: return "firstint";
    case Command::Minimal: return "minimal";
    case Command::Straighten: return "straighten";
    case Command::Example: return "example";
    case Command::Verify: return "verify";
  }
  return "unknown";
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse:
    case ErrorCode::UnknownVariable:
      return kExitParse;
    case ErrorCode::Precondition:
    case ErrorCode::SingularLinearPart:
    case ErrorCode::DegenerateBasis:
    case ErrorCode::Divisibility:
    case ErrorCode::ZeroDerivation:
    case ErrorCode::RingMismatch:
      return kExitPrecondition;
    case ErrorCode::NoMinimalMFound:
    case ErrorCode::FoldFailed:
      return kExitSearchFailed;
    case ErrorCode::IndexOutOfRange:
    case ErrorCode::InvalidArgument:
      return kExitUsage;
  }
  return kExitUsage;
}

std::vector<int> parse_range(std::string_view text) {
  const std::string t = trim(text);
  const auto dots = t.find("..");
  if (dots == std::string::npos) return {parse_int(t, "range")};
  const int lo = parse_int(std::string_view(t).substr(0, dots), "range start");
  const int hi = parse_int(std::string_view(t).substr(dots + 2), "range end");
  if (hi < lo) throw Error(ErrorCode::Parse, "empty range '" + t + "'");
  std::vector<int> out;
  for (int v = lo; v <= hi; ++v) out.push_back(v);
  return out;
}

std::vector<std::pair<Rational, Rational>> parse_points(std::string_view text) {
  std::vector<std::pair<Rational, Rational>> out;
  std::string flat;
  for (char c : text) flat += (c == '\n' ? ';' : c);
  for (const auto& item : split(flat, ';')) {
    if (item.empty()) continue;
    std::string body = item;
    if (body.front() == '(' && body.back() == ')') body = body.substr(1, body.size() - 2);
    const auto parts = split(body, ',');
    if (parts.size() != 2) throw Error(ErrorCode::Parse, "point '" + item + "' is not (l1,l2)");
    out.emplace_back(parse_rational(parts[0]), parse_rational(parts[1]));
  }
  return out;
}

Report run(Command command, const Options& options) {
  Report report;
  try {
    Context ctx{command, options, std::nullopt};
    if (options.manifest_path) ctx.manifest = load_manifest(*options.manifest_path);
    if (options.format != "json" && options.format != "csv") {
      throw Error(ErrorCode::InvalidArgument, "unknown format '" + options.format + "'");
    }
    if (options.format == "csv") {
      if (command != Command::Example) throw Error(ErrorCode::InvalidArgument, "csv output is only available for example");
      report.body = run_example_csv(ctx);
      return report;
    }

    json body;
    switch (command) {
      case Command::Kernel: body = run_kernel(ctx); break;
      case Command::FirstInt: body = run_firstint(ctx); break;
      case Command::Minimal: body = run_minimal(ctx); break;
      case Command::Straighten: body = run_straighten(ctx); break;
      case Command::Example: body = run_example(ctx); break;
      case Command::Verify: body = run_verify(ctx); break;
    }
    body["schema_version"] = kSchemaVersion;
    body["command"] = command_name(command);
    report.body = body.dump(2) + "\n";
  } catch (const ParseError& e) {
    report.exit_code = exit_code_for(e.code());
    json err = error_json(command, error_code_name(e.code()), e.detail());
    err["error"]["position"] = e.position();
    report.body = err.dump(2) + "\n";
  } catch (const Error& e) {
    report.exit_code = exit_code_for(e.code());
    report.body = error_json(command, error_code_name(e.code()), e.what()).dump(2) + "\n";
  }
  return report;
}

}  // namespace minder::cli
