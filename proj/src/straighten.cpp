#include <algorithm>
#include <climits>

#include "minder/pseries.hpp"

namespace minder {

namespace {

RingPtr numbered_ring(const std::string& prefix, std::size_t first, std::size_t count) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < count; ++i) names.push_back(prefix + std::to_string(first + i));
  return make_ring(std::move(names));
}

bool vanishes(const TruncSeries& f) { return f.is_zero(); }

TruncSeries minus_one(const TruncSeries& f) {
  return f - TruncSeries(Polynomial::constant(f.ring(), 1), f.order());
}

/// Original variables that, together with x1's linear part, span M/M^2.
/// Greedy in variable order: keep t_j whenever it raises the rank.
std::vector<std::size_t> complete_basis(const TruncSeries& x1) {
  const std::size_t n = x1.ring()->size();
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = x1.coefficient(Monomial::unit(n, j));
  rows.push_back(v);

  auto rank_of = [n](const std::vector<std::vector<Rational>>& rs) {
    linalg::RationalMatrix m(rs.size(), n);
    for (std::size_t i = 0; i < rs.size(); ++i) {
      for (std::size_t j = 0; j < n; ++j) m(i, j) = rs[i][j];
    }
    return linalg::rank(m);
  };

  std::vector<std::size_t> chosen;
  std::size_t current = rank_of(rows);
  for (std::size_t j = 0; j < n && chosen.size() + 1 < n; ++j) {
    std::vector<Rational> e(n);
    e[j] = 1;
    rows.push_back(e);
    const std::size_t r = rank_of(rows);
    if (r > current) {
      chosen.push_back(j);
      current = r;
    } else {
      rows.pop_back();
    }
  }
  if (chosen.size() + 1 != n) {
    throw Error(ErrorCode::DegenerateBasis, "straighten: cannot complete x1 to a basis of M/M^2");
  }
  return chosen;
}

}  // namespace

StraighteningResult straighten(const SeriesDerivation& d, const TruncSeries& x1_in, int order) {
  const RingPtr& ring = d.ring();
  require_same_ring(ring, x1_in.ring(), "straighten");
  const std::size_t n = ring->size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "straighten: empty ring");
  if (order < 1) throw Error(ErrorCode::InvalidArgument, "straighten: order must be at least 1");
  if (x1_in.order() < order) {
    throw Error(ErrorCode::InvalidArgument, "straighten: x1 is known only to order " +
                                                std::to_string(x1_in.order()));
  }
  const TruncSeries x1 = x1_in.truncated(order);
  if (sgn(x1.constant_term()) != 0) {
    throw Error(ErrorCode::Precondition, "straighten: x1 has a nonzero constant term");
  }
  if (x1.valuation().value_or(2) != 1) {
    throw Error(ErrorCode::Precondition, "straighten: x1 has no linear part");
  }
  if (!vanishes(minus_one(apply(d, x1)))) {
    throw Error(ErrorCode::Precondition, "straighten: d(x1) is not 1: " + to_string(apply(d, x1)));
  }

  // (1) basis completion, (2) linear correction y1_i = t_j - lambda_i x1.
  const std::vector<std::size_t> completion = complete_basis(x1);
  std::vector<TruncSeries> params{x1};
  for (std::size_t j : completion) {
    const Rational lambda = d.coefficient(j).constant_term();
    params.push_back(TruncSeries(Polynomial::variable(ring, j), order) - lambda * x1);
  }

  // (3) coordinates u = (x1, y1_2, ..., y1_n); `back` expresses t in terms of u.
  const ParamSystem first(params);
  const RingPtr coords = numbered_ring("u", 1, n);
  const ParamSystem back = invert_param_system(first, coords);

  // (4) y^{k+1} = y^k - int_0^{u1} Q_k, Q_k the degree-k part of d(y^k) in the u coordinates.
  std::vector<std::vector<TruncSeries>> updates;
  int iterations = 0;
  for (int k = 1; k < order; ++k) {
    std::vector<TruncSeries> step;
    for (std::size_t i = 1; i < n; ++i) {
      const TruncSeries in_u = substitute(apply(d, params[i]), back.components());
      if (in_u.order() < k) {
        throw Error(ErrorCode::Precondition, "straighten: derivation coefficients are not known to order " +
                                                 std::to_string(k + 1));
      }
      Polynomial q(coords);
      for (const auto& [m, c] : in_u.body().terms()) {
        if (m.degree() == k) q.add_term(m, c);
      }
      const TruncSeries correction = -antiderivative(TruncSeries(q, order), 0);
      TruncSeries update = substitute(correction.truncated(order), first.components());
      params[i] += update;
      step.push_back(std::move(update));
    }
    updates.push_back(std::move(step));
    ++iterations;
  }

  std::vector<TruncSeries> residuals;
  for (std::size_t i = 1; i < n; ++i) residuals.push_back(apply(d, params[i]));

  return StraighteningResult{
      .params = ParamSystem(std::move(params)),
      .residuals = std::move(residuals),
      .iterations = iterations,
      .completion = completion,
      .updates = std::move(updates),
  };
}

CanonicalPair canonical_pair(const SeriesDerivation& d1, const SeriesDerivation& d2,
                             const TruncSeries& x1_in, const TruncSeries& x2_in, int order) {
  const RingPtr& ring = d1.ring();
  require_same_ring(ring, d2.ring(), "canonical_pair");
  require_same_ring(ring, x1_in.ring(), "canonical_pair");
  require_same_ring(ring, x2_in.ring(), "canonical_pair");
  const std::size_t n = ring->size();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "canonical_pair: ring needs at least two variables");
  if (order < 2) throw Error(ErrorCode::InvalidArgument, "canonical_pair: order must be at least 2");
  if (x1_in.order() < order || x2_in.order() < order) {
    throw Error(ErrorCode::InvalidArgument, "canonical_pair: x1, x2 must be known to the requested order");
  }
  const TruncSeries x1 = x1_in.truncated(order);
  const TruncSeries x2 = x2_in.truncated(order);

  struct Check {
    const SeriesDerivation& d;
    const TruncSeries& x;
    bool one;
    const char* label;
  };
  const Check checks[] = {{d1, x1, true, "d1(x1) = 1"},
                          {d1, x2, false, "d1(x2) = 0"},
                          {d2, x2, true, "d2(x2) = 1"},
                          {d2, x1, false, "d2(x1) = 0"}};
  for (const auto& c : checks) {
    const TruncSeries v = apply(c.d, c.x);
    if (!vanishes(c.one ? minus_one(v) : v)) {
      throw Error(ErrorCode::Precondition, std::string("canonical_pair: ") + c.label + " fails");
    }
  }

  // Straighten d1: coordinates u = (x1, y'_2, ..., y'_n) with d1 = D[u1].
  const StraighteningResult s1 = straighten(d1, x1, order);
  const RingPtr u_ring = numbered_ring("u", 1, n);
  const ParamSystem back1 = invert_param_system(s1.params, u_ring);

  // d2 = sum b'_j D[u_j]; the restricted operator uses b_j = b'_j(0, u_2, ..., u_n).
  const RingPtr sub_ring = numbered_ring("u", 2, n - 1);
  std::vector<TruncSeries> sub_coeffs;
  for (std::size_t j = 1; j < n; ++j) {
    const TruncSeries b = substitute(apply(d2, s1.params[j]), back1.components());
    sub_coeffs.push_back(restrict_to_zero(b, 0, sub_ring));
  }
  const SeriesDerivation restricted(sub_ring, std::move(sub_coeffs));
  const TruncSeries xi = restrict_to_zero(substitute(x2, back1.components()), 0, sub_ring);

  // Straighten the restricted operator around x2 inside the series free of u1, then
  // pull the resulting y_3..y_n back to the original variables.
  const StraighteningResult s2 = straighten(restricted, xi, order);
  const std::vector<TruncSeries> lift(s1.params.components().begin() + 1, s1.params.components().end());
  std::vector<TruncSeries> final_params{x1, x2};
  for (std::size_t i = 1; i < s2.params.size(); ++i) {
    final_params.push_back(substitute(s2.params[i], lift).truncated(order));
  }

  std::vector<std::string> names{"x1", "x2"};
  for (std::size_t i = 3; i <= n; ++i) names.push_back("y" + std::to_string(i));
  const RingPtr v_ring = make_ring(std::move(names));
  ParamSystem params(std::move(final_params));
  const ParamSystem back = invert_param_system(params, v_ring);

  // Coefficients of d2 in the final coordinates: d2(x1), d2(x2), d2(y_i).
  std::vector<TruncSeries> alpha;
  for (std::size_t j = 0; j < n; ++j) alpha.push_back(substitute(apply(d2, params[j]), back.components()));
  if (!vanishes(alpha[0]) || !vanishes(minus_one(alpha[1]))) {
    throw Error(ErrorCode::Precondition, "canonical_pair: d2 does not act as D[x2] on (x1, x2)");
  }

  std::vector<TruncSeries> a;
  for (std::size_t j = 2; j < n; ++j) {
    Polynomial quotient(v_ring);
    for (const auto& [m, c] : alpha[j].body().terms()) {
      if (m[0] == 0) {
        throw Error(ErrorCode::Divisibility, "canonical_pair: coefficient of D[" + v_ring->name(j) +
                                                 "] is not divisible by x1");
      }
      Monomial lowered = m;
      lowered[0] -= 1;
      quotient.add_term(lowered, c);
    }
    a.emplace_back(quotient, alpha[j].order() - 1);
  }

  return CanonicalPair{.params = std::move(params), .coordinates = v_ring, .a = std::move(a)};
}

std::vector<SeriesDerivation> partial_k_operators(const RingPtr& coordinates,
                                                  std::span<const TruncSeries> a, int k_max) {
  const std::size_t n = coordinates->size();
  if (n < 2 || a.size() + 2 != n) {
    throw Error(ErrorCode::InvalidArgument, "partial_k_operators: expected one a_i per y variable");
  }
  WeightVector w{std::vector<int>(n, 0)};
  w.weights[0] = w.weights[1] = 1;

  int order = INT_MAX / 2;
  for (const auto& ai : a) {
    require_same_ring(coordinates, ai.ring(), "partial_k_operators");
    order = std::min(order, ai.order());
  }

  std::vector<SeriesDerivation> out;
  for (int k = 0; k <= k_max; ++k) {
    std::vector<TruncSeries> coeffs{TruncSeries(coordinates, order), TruncSeries(coordinates, order)};
    for (const auto& ai : a) coeffs.emplace_back(homogeneous_part(ai.body(), w, k), ai.order());
    out.emplace_back(coordinates, std::move(coeffs));
  }
  return out;
}

}  // namespace minder
