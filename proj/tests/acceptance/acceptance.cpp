// One PASS/FAIL line per acceptance criterion. Every comparison is exact over Q; the
// only "tolerances" are the truncation orders and degree bounds pinned below.

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "../support.hpp"

#include "minder/deltam.hpp"
#include "minder/error.hpp"
#include "minder/example.hpp"
#include "minder/firstint.hpp"
#include "minder/pseries.hpp"

using namespace minder;

namespace {

// Criterion 1
constexpr int kNoyauMaxM = 6;
constexpr int kNoyauMaxD = 8;
// Criterion 2
constexpr int kNoyau2MaxK = 3;
// Criterion 3
constexpr int kPairDegree = 6;
constexpr int kPairMMax = 10;
constexpr int kPairMStarBound = 4;
// Criterion 4
constexpr int kSlopeSamples = 200;
constexpr int kSlopeBound = 9;
constexpr int kSlopeDegree = 10;
// Criterion 5
constexpr int kStraightenSamples = 20;
constexpr int kStraightenOrder = 6;
// Criterion 6
constexpr int kPairOrder = 6;
constexpr int kPairSeries = 50;
// Criterion 7
constexpr int kInclusionDegree = 4;
constexpr int kInclusionFamilies = 30;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << what;
    pass = pass && ok;
  }
};

RingPtr plane() { return make_ring({"x1", "x2"}); }
RingPtr plane_y() { return make_ring({"x1", "x2", "y"}); }

Outcome lemma_noyau_sweep() {
  Outcome o;
  int checked = 0;
  for (const auto& ring : {plane(), plane_y()}) {
    for (int m = 1; m <= kNoyauMaxM; ++m) {
      for (int d = 1; d <= kNoyauMaxD; ++d) {
        // Independent count: the kernel dimension must equal the number of monomials
        // of degree <= d in the inert variables.
        const auto rep = kernel_basis(DerivationFamily({delta_m(m, ring)}), d);
        const std::size_t expected = ring->size() == 2 ? 1 : static_cast<std::size_t>(d + 1);
        const bool ok = verify_lemma_noyau(m, d, ring) && rep.basis.size() == expected &&
                        testing::naive_kernel_dimension({delta_m(m, ring)}, d) == expected;
        o.require(ok, "m=" + std::to_string(m) + " D=" + std::to_string(d) + " n=" + std::to_string(ring->size()));
        ++checked;
      }
    }
  }
  o.detail << (o.pass ? std::to_string(checked) + " (m, D, ring) cases" : "");
  return o;
}

Outcome lemma_noyau2_sweep() {
  Outcome o;
  const RingPtr r = plane();
  for (int k = 0; k <= kNoyau2MaxK; ++k) {
    for (int m : {k + 4, k + 5}) {
      const auto res = verify_lemma_noyau2(k, m, r);
      o.require(res.trivial_only && !res.witness, "nontrivial solution at k=" + std::to_string(k) +
                                                      " m=" + std::to_string(m));
    }
  }
  const auto sharp = verify_lemma_noyau2(0, 1, r);
  o.require(!sharp.trivial_only && sharp.witness.has_value(), "no witness at (k,m)=(0,1)");
  if (sharp.witness) {
    const Polynomial p = parse_polynomial("-1/2*x1*x2", r);
    const Polynomial q = parse_polynomial("1", r);
    o.require(sharp.witness->p == p && sharp.witness->q == q, "witness differs from (-x1*x2/2, 1)");
    const Polynomial lhs = apply(delta_m(1, r), p) + parse_polynomial("x1*x2", r) * q;
    o.require(lhs.is_zero(), "witness does not solve the system");
  }
  if (o.pass) o.detail << "trivial for k<=3, m in {k+4,k+5}; witness (-1/2*x1*x2, 1) at (0,1)";
  return o;
}

Outcome worked_pair() {
  Outcome o;
  const RingPtr r = plane_y();
  const Derivation d1 = Derivation::partial(r, 0);
  const Derivation d2(r, {Polynomial(r), Polynomial::constant(r, 1), Polynomial::variable(r, 0)});
  const auto cert = find_minimal_m(d1, d2, 0, 1, kPairDegree, kPairMMax);
  o.require(cert.m_star >= 1 && cert.m_star <= kPairMStarBound, "m_star=" + std::to_string(cert.m_star));
  o.require(!cert.per_m_results.empty() && cert.per_m_results.front() == std::pair<int, bool>{1, false},
            "m=1 not marked failing");
  const DerivationFamily fam({d1, d2});
  o.require(kernels_equal_up_to_degree(cert.combination, fam, kPairDegree), "certificate does not re-check");
  o.require(rebuild_from_trace(cert.coefficient_trace, fam) == cert.combination, "trace does not rebuild");

  const auto integrals = first_integrals(DerivationFamily({capital_delta_m(d1, d2, 0, 1, 1)}), 2).integrals;
  std::vector<Polynomial> with = integrals;
  with.push_back(parse_polynomial("y - 1/2*x1*x2", r));
  o.require(!integrals.empty() && span_dimension(with) == span_dimension(integrals),
            "y - x1*x2/2 not among first integrals of Delta_1");
  if (o.pass) o.detail << "m_star=" << cert.m_star << ", m=1 fails with integral y - 1/2*x1*x2";
  return o;
}

Outcome slope_classification() {
  Outcome o;
  testing::Gen g(20260101);
  int checked_low = 0;
  int minimal = 0;
  for (int i = 0; i < kSlopeSamples; ++i) {
    Rational l1(g.integer(-kSlopeBound, kSlopeBound), g.integer(1, kSlopeBound));
    Rational l2(g.integer(-kSlopeBound, kSlopeBound), g.integer(1, kSlopeBound));
    l1.canonicalize();
    l2.canonicalize();
    if (l1 == 0 && l2 == 0) {
      --i;
      continue;
    }
    const std::string tag = "(" + to_string(l1) + "," + to_string(l2) + ")";
    const auto c = classify_combination(l1, l2);
    const DerivationFamily fam({example_combination(l1, l2)});
    const bool brute_empty = first_integrals(fam, kSlopeDegree).integrals.empty();
    o.require(c.minimal() == (brute_empty && l1 * l2 > 0), "Minimal mismatch at " + tag);
    if (c.minimal()) {
      ++minimal;
      continue;
    }
    const long degree = *c.p + *c.q;
    if (degree > kSlopeDegree) continue;
    const auto at = first_integrals(fam, static_cast<int>(degree)).integrals;
    o.require(at.size() == 1 && at.front() == *c.integral, "oracle disagrees at " + tag);
    ++checked_low;
  }
  if (o.pass) o.detail << kSlopeSamples << " pairs, " << minimal << " minimal, " << checked_low << " checked at D=p+q";
  return o;
}

Outcome straightening() {
  Outcome o;
  testing::Gen g(4242);
  const int n = kStraightenOrder;
  for (int i = 0; i < kStraightenSamples; ++i) {
    const RingPtr r = i % 2 == 0 ? make_ring({"t1", "t2"}) : make_ring({"t1", "t2", "t3"});
    std::vector<TruncSeries> coeffs{TruncSeries(Polynomial::constant(r, 1), n + 1)};
    for (std::size_t j = 1; j < r->size(); ++j) {
      Polynomial c = g.polynomial(r, n, 5, 1);
      if (c.is_zero()) c = Polynomial::variable(r, 0);
      coeffs.emplace_back(c, n + 1);
    }
    const SeriesDerivation d(r, coeffs);
    const TruncSeries x1(Polynomial::variable(r, 0), n + 1);
    const auto res = straighten(d, x1, n);
    const std::string tag = "sample " + std::to_string(i);
    o.require(is_param_system(res.params.components()), tag + ": invalid parameter system");
    for (const auto& residual : res.residuals) {
      o.require(residual.order() >= n - 1 && residual.is_zero(), tag + ": residual survives");
    }
    for (std::size_t j = 1; j < res.params.size(); ++j) {
      o.require(apply(d, res.params[j]).truncated(n - 1).is_zero(), tag + ": d(y) != 0 on recheck");
    }
    for (std::size_t k = 1; k <= res.updates.size(); ++k) {
      for (const auto& u : res.updates[k - 1]) {
        o.require(u.is_zero() || *u.valuation() >= static_cast<int>(k) + 1, tag + ": update below degree k+1");
      }
    }
  }
  if (o.pass) o.detail << kStraightenSamples << " derivations at N=" << n;
  return o;
}

struct PairCase {
  std::vector<std::string> vars;
  std::vector<std::string> d1;
  std::vector<std::string> d2;
};

Outcome canonical_pairs() {
  Outcome o;
  const std::vector<PairCase> cases{
      {{"x1", "x2", "y"}, {"1", "0", "0"}, {"0", "1", "x1"}},
      {{"x1", "x2", "y"}, {"1", "0", "0"}, {"0", "1", "x1 + x1*x2"}},
      {{"x1", "x2"}, {"1", "0"}, {"0", "1"}},
      {{"x1", "x2", "y"}, {"1", "0", "x2"}, {"0", "1", "y"}},
      {{"x1", "x2", "y", "z"}, {"1", "0", "x2", "y^2"}, {"0", "1", "x1", "x1*x2 + z"}},
  };
  testing::Gen g(777);
  const int n = kPairOrder;
  int series = 0;
  for (std::size_t ci = 0; ci < cases.size(); ++ci) {
    const auto& pc = cases[ci];
    const RingPtr r = make_ring(pc.vars);
    auto lift = [&](const std::vector<std::string>& cs) {
      std::vector<TruncSeries> out;
      for (const auto& c : cs) out.emplace_back(parse_polynomial(c, r), n + 1);
      return SeriesDerivation(r, out);
    };
    const SeriesDerivation d1 = lift(pc.d1);
    const SeriesDerivation d2 = lift(pc.d2);
    const TruncSeries x1(Polynomial::variable(r, 0), n + 1);
    const TruncSeries x2(Polynomial::variable(r, 1), n + 1);
    const CanonicalPair cp = canonical_pair(d1, d2, x1, x2, n);
    const RingPtr& c = cp.coordinates;
    const std::string tag = "pair " + std::to_string(ci);
    o.require(is_param_system(cp.params.components()), tag + ": invalid parameter system");
    o.require(cp.a.size() + 2 == r->size(), tag + ": wrong number of a_i");

    const int per_case = kPairSeries / static_cast<int>(cases.size()) + 1;
    for (int s = 0; s < per_case && series < kPairSeries; ++s, ++series) {
      const TruncSeries f(g.polynomial(c, n, 6), n);
      // Reconstructed operator D[x2] + x1 * sum a_i D[y_i] in the new coordinates.
      TruncSeries rebuilt = series_partial(f, 1);
      for (std::size_t i = 0; i < cp.a.size(); ++i) {
        rebuilt += mul_by_variable(cp.a[i] * series_partial(f, i + 2), 0);
      }
      // Original d2 applied to f pulled back to the original variables.
      const TruncSeries pulled = substitute(f, cp.params.components());
      const TruncSeries original = apply(d2, pulled);
      const TruncSeries expected = substitute(rebuilt, cp.params.components());
      const int known = std::min(original.order(), expected.order());
      o.require(known >= n - 2, tag + ": lost too much order");
      o.require((original - expected).truncated(n - 2).is_zero(), tag + ": reconstruction differs");
      // d1 must read D[x1] in the new coordinates.
      o.require((apply(d1, pulled) - substitute(series_partial(f, 0), cp.params.components())).truncated(n - 2).is_zero(),
                tag + ": d1 is not D[x1]");
    }
  }
  if (o.pass) o.detail << cases.size() << " pairs, " << series << " series at N=" << n;
  return o;
}

Outcome trivial_inclusion() {
  Outcome o;
  testing::Gen g(99);
  int elements = 0;
  for (int i = 0; i < kInclusionFamilies; ++i) {
    const RingPtr r = i % 3 == 0 ? plane() : plane_y();
    std::vector<Derivation> members;
    const int count = g.integer(1, 3);
    for (int k = 0; k < count; ++k) {
      std::vector<Polynomial> cs;
      for (std::size_t v = 0; v < r->size(); ++v) cs.push_back(g.integer(0, 2) == 0 ? Polynomial(r) : g.polynomial(r, 2, 2));
      members.emplace_back(r, cs);
    }
    std::vector<Polynomial> coeffs;
    for (int k = 0; k < count; ++k) coeffs.push_back(g.polynomial(r, 3, 3));
    const Derivation comb = linear_combination(coeffs, members);
    for (const auto& f : kernel_basis(DerivationFamily(members), kInclusionDegree).basis) {
      o.require(is_in_kernel(comb, f), "family kernel element escapes the combination's kernel");
      ++elements;
    }
  }
  if (o.pass) o.detail << kInclusionFamilies << " families, " << elements << " kernel elements";
  return o;
}

std::string capture(const std::string& command, int& status) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  status = pclose(pipe);
  return out;
}

Outcome golden_determinism() {
  Outcome o;
  namespace fs = std::filesystem;
  std::vector<fs::path> cmds;
  for (const auto& entry : fs::directory_iterator(MINDER_GOLDEN_DIR)) {
    if (entry.path().extension() == ".cmd") cmds.push_back(entry.path());
  }
  std::sort(cmds.begin(), cmds.end());
  o.require(!cmds.empty(), "no golden manifests found");
  for (const auto& cmd : cmds) {
    std::ifstream in(cmd);
    std::string args;
    std::getline(in, args);
    const std::string line = "cd '" + std::string(MINDER_GOLDEN_DIR) + "' && '" + MINDER_EXE + "' " + args + " 2>/dev/null";
    int s1 = 0;
    int s2 = 0;
    const std::string a = capture(line, s1);
    const std::string b = capture(line, s2);
    o.require(!a.empty() && a == b && s1 == s2, cmd.filename().string() + " differs between runs");
  }
  if (o.pass) o.detail << cmds.size() << " manifests, byte-identical";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"1 kernel of delta_m is the inert subring (exact)", lemma_noyau_sweep},
      {"2 delta_m(P) + x1*x2^m*Q = 0 only trivially for m >= k+4 (exact)", lemma_noyau2_sweep},
      {"3 worked pair: m_star <= 4, m=1 fails (exact)", worked_pair},
      {"4 slope classification vs brute force (exact)", slope_classification},
      {"5 straightening residuals vanish mod degree N (exact)", straightening},
      {"6 canonical pair reconstructs d2 mod order N-1 (exact)", canonical_pairs},
      {"7 family kernel inside every combination's kernel (exact)", trivial_inclusion},
      {"8 golden reports are deterministic", golden_determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  %s  [%s] (%.2fs)\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.str().c_str(), secs);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
