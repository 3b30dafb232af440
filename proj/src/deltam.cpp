#include "minder/deltam.hpp"

#include <algorithm>
#include <future>
#include <sstream>

namespace minder {

namespace {

void require_pair_ring(const RingPtr& ring, std::string_view what) {
  if (ring->size() < 2) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + ": ring needs at least two variables");
  }
}

Polynomial power_of_variable(const RingPtr& ring, std::size_t var, int exponent) {
  return Polynomial::monomial(ring, Monomial::unit(ring->size(), var, exponent));
}

/// Kernel basis of the pair, computed once and compared against many candidates.
class PairKernel {
 public:
  PairKernel(const DerivationFamily& family, int degree_bound)
      : degree_bound_(degree_bound), basis_(kernel_basis(family, degree_bound).basis) {}

  bool matched_by(const Derivation& d) const {
    const auto single = kernel_basis(DerivationFamily({d}), degree_bound_).basis;
    if (single.size() != basis_.size()) return false;
    std::vector<Polynomial> both = single;
    both.insert(both.end(), basis_.begin(), basis_.end());
    return span_dimension(both) == single.size();
  }

 private:
  int degree_bound_;
  std::vector<Polynomial> basis_;
};

std::string format_trace(const std::vector<std::pair<int, bool>>& trace) {
  std::ostringstream os;
  for (const auto& [m, ok] : trace) os << (os.tellp() > 0 ? ", " : "") << "m=" << m << ':' << (ok ? "T" : "F");
  return os.str();
}

}  // namespace

Derivation delta_m(int m, const RingPtr& ring) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "delta_m: m must be at least 1");
  require_pair_ring(ring, "delta_m");
  std::vector<Polynomial> coeffs(ring->size(), Polynomial(ring));
  coeffs[0] = power_of_variable(ring, 0, m);
  coeffs[1] = power_of_variable(ring, 1, m);
  return Derivation(ring, std::move(coeffs));
}

bool verify_lemma_noyau(int m, int degree_bound, const RingPtr& ring) {
  if (degree_bound < 1) throw Error(ErrorCode::InvalidArgument, "verify_lemma_noyau: D must be at least 1");
  const Derivation d = delta_m(m, ring);
  const KernelReport report = kernel_basis(DerivationFamily({d}), degree_bound);

  std::vector<Polynomial> inert;
  for (const auto& mono : monomials_up_to_degree(ring->size(), degree_bound)) {
    if (mono[0] == 0 && mono[1] == 0) inert.push_back(Polynomial::monomial(ring, mono));
  }
  // The RREF basis of a span of monomials is those monomials, so equality is exact.
  return report.basis == canonical_basis(inert, ring);
}

Noyau2Result verify_lemma_noyau2(int k, int m, const RingPtr& ring) {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "verify_lemma_noyau2: k must be nonnegative");
  const Derivation delta = delta_m(m, ring);
  const std::size_t n = ring->size();

  // Unknowns: Q's coefficients first so a nonzero Q becomes the RREF pivot of the witness.
  std::vector<Monomial> q_monos;
  std::vector<Monomial> p_monos;
  for (int i = k; i >= 0; --i) {
    Monomial mono(n);
    mono[0] = i;
    mono[1] = k - i;
    q_monos.push_back(mono);
  }
  for (int i = k + 2; i >= 0; --i) {
    Monomial mono(n);
    mono[0] = i;
    mono[1] = k + 2 - i;
    p_monos.push_back(mono);
  }

  Monomial shift(n);
  shift[0] = 1;
  shift[1] = m;
  std::vector<Polynomial> images;
  for (const auto& mono : q_monos) images.push_back(Polynomial::monomial(ring, mono * shift));
  for (const auto& mono : p_monos) images.push_back(apply(delta, Polynomial::monomial(ring, mono)));

  // Equation rows are monomials of degree k+m+1; columns are unknowns.
  std::map<Monomial, std::size_t, GrlexLess> row_of;
  for (const auto& img : images) {
    for (const auto& [mono, c] : img.terms()) row_of.try_emplace(mono, row_of.size());
  }
  linalg::RationalMatrix system(row_of.size(), images.size());
  for (std::size_t col = 0; col < images.size(); ++col) {
    for (const auto& [mono, c] : images[col].terms()) system(row_of.at(mono), col) = c;
  }

  const linalg::RationalMatrix null = linalg::nullspace(system);
  Noyau2Result result;
  if (null.rows() == 0) return result;

  result.trivial_only = false;
  Polynomial p(ring);
  Polynomial q(ring);
  for (std::size_t i = 0; i < q_monos.size(); ++i) q.add_term(q_monos[i], null(0, i));
  for (std::size_t i = 0; i < p_monos.size(); ++i) p.add_term(p_monos[i], null(0, q_monos.size() + i));
  result.witness = NoyauWitness{std::move(p), std::move(q)};
  return result;
}

Derivation capital_delta_m(const Derivation& d1, const Derivation& d2, std::size_t x1_index,
                           std::size_t x2_index, int m) {
  require_same_ring(d1.ring(), d2.ring(), "capital_delta_m");
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "capital_delta_m: m must be at least 1");
  const RingPtr& ring = d1.ring();
  if (x1_index >= ring->size() || x2_index >= ring->size()) {
    throw Error(ErrorCode::IndexOutOfRange, "capital_delta_m: variable index out of range");
  }
  const std::vector<Polynomial> coeffs{power_of_variable(ring, x1_index, m),
                                       power_of_variable(ring, x2_index, m)};
  const std::vector<Derivation> derivs{d1, d2};
  return linear_combination(coeffs, derivs);
}

Derivation rebuild_from_trace(const std::vector<TraceEntry>& trace, const DerivationFamily& family) {
  std::vector<Polynomial> coeffs;
  std::vector<Derivation> derivs;
  for (const auto& entry : trace) {
    coeffs.push_back(entry.coefficient);
    derivs.push_back(family[entry.source_index]);
  }
  return linear_combination(coeffs, derivs);
}

std::optional<std::string> normalization_failure(const Derivation& d1, const Derivation& d2,
                                                 std::size_t x1_index, std::size_t x2_index) {
  require_same_ring(d1.ring(), d2.ring(), "normalization check");
  const RingPtr& ring = d1.ring();
  if (x1_index >= ring->size() || x2_index >= ring->size() || x1_index == x2_index) {
    return "normalization variables must be two distinct variables of the ring";
  }
  const Polynomial x1 = Polynomial::variable(ring, x1_index);
  const Polynomial x2 = Polynomial::variable(ring, x2_index);
  const Polynomial one = Polynomial::constant(ring, 1);
  const Polynomial zero(ring);
  const std::string n1 = ring->name(x1_index);
  const std::string n2 = ring->name(x2_index);
  struct Check {
    const Derivation& d;
    const Polynomial& x;
    const Polynomial& expected;
    std::string label;
  };
  const Check checks[] = {{d1, x1, one, "d1(" + n1 + ")"},
                          {d1, x2, zero, "d1(" + n2 + ")"},
                          {d2, x2, one, "d2(" + n2 + ")"},
                          {d2, x1, zero, "d2(" + n1 + ")"}};
  for (const auto& c : checks) {
    const Polynomial got = apply(c.d, c.x);
    if (got != c.expected) {
      return c.label + " = " + to_string(got) + ", expected " + to_string(c.expected);
    }
  }
  return std::nullopt;
}

MinimalityCertificate find_minimal_m(const Derivation& d1, const Derivation& d2,
                                     std::size_t x1_index, std::size_t x2_index,
                                     int degree_bound, int m_max) {
  if (degree_bound < 1) throw Error(ErrorCode::InvalidArgument, "find_minimal_m: D must be at least 1");
  if (m_max < 1) throw Error(ErrorCode::InvalidArgument, "find_minimal_m: m_max must be at least 1");
  if (auto failure = normalization_failure(d1, d2, x1_index, x2_index)) {
    throw Error(ErrorCode::Precondition, "find_minimal_m: normalization violated: " + *failure);
  }

  const DerivationFamily pair({d1, d2});
  const PairKernel target(pair, degree_bound);

  std::vector<std::future<bool>> jobs;
  jobs.reserve(static_cast<std::size_t>(m_max));
  for (int m = 1; m <= m_max; ++m) {
    jobs.push_back(std::async(std::launch::async, [&, m] {
      return target.matched_by(capital_delta_m(d1, d2, x1_index, x2_index, m));
    }));
  }
  std::vector<std::pair<int, bool>> trace;
  for (int m = 1; m <= m_max; ++m) trace.emplace_back(m, jobs[static_cast<std::size_t>(m - 1)].get());

  const auto hit = std::find_if(trace.begin(), trace.end(), [](const auto& e) { return e.second; });
  if (hit == trace.end()) {
    throw Error(ErrorCode::NoMinimalMFound, "find_minimal_m: no m <= " + std::to_string(m_max) +
                                                " certified at degree " + std::to_string(degree_bound) +
                                                " (" + format_trace(trace) + ")");
  }
  const int m_star = hit->first;
  const RingPtr& ring = d1.ring();

  FoldStep step;
  step.kind = FoldStep::Kind::Normalized;
  step.member = 1;
  step.x1_index = x1_index;
  step.x2_index = x2_index;
  step.exponent_acc = m_star;
  step.exponent_member = m_star;
  step.per_m_results = trace;

  return MinimalityCertificate{
      .m_star = m_star,
      .degree_bound = degree_bound,
      .per_m_results = trace,
      .combination = capital_delta_m(d1, d2, x1_index, x2_index, m_star),
      .coefficient_trace = {{power_of_variable(ring, x1_index, m_star), 0},
                            {power_of_variable(ring, x2_index, m_star), 1}},
      .steps = {step},
  };
}

MinimalityCertificate fold_family(const DerivationFamily& family,
                                  const std::vector<std::pair<std::size_t, std::size_t>>& normalizations,
                                  int degree_bound, int m_max) {
  if (degree_bound < 1) throw Error(ErrorCode::InvalidArgument, "fold_family: D must be at least 1");
  if (m_max < 1) throw Error(ErrorCode::InvalidArgument, "fold_family: m_max must be at least 1");
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (family[i].is_zero()) {
      throw Error(ErrorCode::ZeroDerivation, "fold_family: member " + std::to_string(i) + " is the zero derivation");
    }
  }
  const RingPtr& ring = family.ring();
  const Polynomial one = Polynomial::constant(ring, 1);

  FoldStep base;
  base.kind = FoldStep::Kind::Base;
  MinimalityCertificate cert{
      .m_star = 0,
      .degree_bound = degree_bound,
      .per_m_results = {},
      .combination = family[0],
      .coefficient_trace = {{one, 0}},
      .steps = {base},
  };

  for (std::size_t i = 1; i < family.size(); ++i) {
    const Derivation& acc = cert.combination;
    const Derivation& next = family[i];
    const auto [xa, xb] = i - 1 < normalizations.size() ? normalizations[i - 1]
                                                        : std::pair<std::size_t, std::size_t>{0, 1};
    if (xa >= ring->size() || xb >= ring->size() || xa == xb) {
      throw Error(ErrorCode::InvalidArgument, "fold_family: bad normalization pair for step " + std::to_string(i));
    }

    Polynomial coeff_acc(ring);
    Polynomial coeff_next(ring);
    FoldStep step;
    step.member = i;
    step.x1_index = xa;
    step.x2_index = xb;

    if (!normalization_failure(acc, next, xa, xb)) {
      try {
        MinimalityCertificate pair = find_minimal_m(acc, next, xa, xb, degree_bound, m_max);
        step.kind = FoldStep::Kind::Normalized;
        step.exponent_acc = step.exponent_member = pair.m_star;
        step.per_m_results = pair.per_m_results;
        coeff_acc = pair.coefficient_trace[0].coefficient;
        coeff_next = pair.coefficient_trace[1].coefficient;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NoMinimalMFound) throw;
        throw Error(ErrorCode::FoldFailed, "fold_family: step " + std::to_string(i) + ": " + e.what());
      }
    } else {
      step.kind = FoldStep::Kind::Fallback;
      const PairKernel target(DerivationFamily({acc, next}), degree_bound);
      // Candidate order: either member alone, then x_a^a * acc + x_b^b * next by a+b, then a.
      std::vector<std::pair<int, int>> candidates{{0, -1}, {-1, 0}};
      for (int s = 0; s <= 2 * m_max; ++s) {
        for (int a = std::max(0, s - m_max); a <= std::min(s, m_max); ++a) candidates.emplace_back(a, s - a);
      }
      bool found = false;
      for (const auto& [a, b] : candidates) {
        const Polynomial ca = a < 0 ? Polynomial(ring) : power_of_variable(ring, xa, a);
        const Polynomial cb = b < 0 ? Polynomial(ring) : power_of_variable(ring, xb, b);
        const Derivation candidate = ca * acc + cb * next;
        if (candidate.is_zero() || !target.matched_by(candidate)) continue;
        coeff_acc = ca;
        coeff_next = cb;
        step.exponent_acc = a;
        step.exponent_member = b;
        found = true;
        break;
      }
      if (!found) {
        throw Error(ErrorCode::FoldFailed,
                    "fold_family: step " + std::to_string(i) + ": no candidate (" + ring->name(xa) + "^a, " +
                        ring->name(xb) + "^b) with a, b <= " + std::to_string(m_max) +
                        " certifies at degree " + std::to_string(degree_bound));
      }
    }

    std::vector<TraceEntry> trace;
    for (const auto& entry : cert.coefficient_trace) {
      trace.push_back({coeff_acc * entry.coefficient, entry.source_index});
    }
    trace.push_back({coeff_next, i});
    cert.combination = coeff_acc * acc + coeff_next * next;
    cert.coefficient_trace = std::move(trace);
    cert.steps.push_back(std::move(step));
  }

  const FoldStep& last = cert.steps.back();
  if (last.kind == FoldStep::Kind::Normalized) {
    cert.m_star = last.exponent_acc;
    cert.per_m_results = last.per_m_results;
  }
  return cert;
}

}  // namespace minder
