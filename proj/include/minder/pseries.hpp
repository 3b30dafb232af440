#pragma once

// Truncated multivariate power series over Q and the flow-box constructions on them.
//
// A TruncSeries of order N knows every coefficient of total degree <= N exactly and
// nothing beyond. Arithmetic propagates the guaranteed order: products and
// substitutions keep the minimum of the operand orders, differentiation loses one.
// "f == 0 mod degree N" below means all terms of degree < N vanish.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "minder/derivation.hpp"
#include "minder/linalg.hpp"
#include "minder/polyring.hpp"

namespace minder {

class TruncSeries {
 public:
  TruncSeries(RingPtr ring, int order);
  /// Truncates `body` to degree <= order.
  TruncSeries(const Polynomial& body, int order);

  const RingPtr& ring() const noexcept { return body_.ring(); }
  int order() const noexcept { return order_; }
  const Polynomial& body() const noexcept { return body_; }

  /// No nonzero coefficient up to the guaranteed order.
  bool is_zero() const noexcept { return body_.is_zero(); }
  Rational constant_term() const { return body_.constant_term(); }
  Rational coefficient(const Monomial& m) const { return body_.coefficient(m); }
  /// Lowest degree of a known nonzero term.
  std::optional<int> valuation() const { return body_.low_degree(); }

  /// Same series with the guaranteed order lowered to `order` (never raised).
  TruncSeries truncated(int order) const;

  TruncSeries& operator+=(const TruncSeries& other);
  TruncSeries& operator-=(const TruncSeries& other);
  TruncSeries& operator*=(const Rational& c);

  friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
  friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
  friend TruncSeries operator*(TruncSeries a, const Rational& c) { return a *= c; }
  friend TruncSeries operator*(const Rational& c, TruncSeries a) { return a *= c; }
  friend TruncSeries operator-(TruncSeries a) { return a *= Rational(-1); }
  friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
    return a.order_ == b.order_ && a.body_ == b.body_;
  }

 private:
  Polynomial body_;
  int order_;
};

TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b);
TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);

/// f(images): `images` are series in a common ring (possibly different from f's),
/// one per variable of f, each with zero constant term.
TruncSeries substitute(const TruncSeries& f, std::span<const TruncSeries> images);

TruncSeries series_partial(const TruncSeries& f, std::size_t var);
/// x_var * f; the guaranteed order grows by one.
TruncSeries mul_by_variable(const TruncSeries& f, std::size_t var);
/// Formal integral from 0 in variable `var`; the guaranteed order grows by one.
TruncSeries antiderivative(const TruncSeries& f, std::size_t var);
/// Same coefficients, relabelled into `ring` (which must have the same variable count).
TruncSeries rebase(const TruncSeries& f, const RingPtr& ring);
/// Sets variable `var` to 0 and drops it from the ring: the result lives in `subring`.
TruncSeries restrict_to_zero(const TruncSeries& f, std::size_t var, const RingPtr& subring);

/// n series in n variables with zero constant terms and invertible linear part.
class ParamSystem {
 public:
  explicit ParamSystem(std::vector<TruncSeries> components);

  const RingPtr& ring() const noexcept { return components_.front().ring(); }
  std::size_t size() const noexcept { return components_.size(); }
  int order() const noexcept { return order_; }
  const TruncSeries& operator[](std::size_t i) const { return components_.at(i); }
  const std::vector<TruncSeries>& components() const noexcept { return components_; }

  /// Row i holds the coefficients of the linear terms of component i.
  linalg::RationalMatrix linear_part() const;

 private:
  std::vector<TruncSeries> components_;
  int order_;
};

/// True iff the series form a system of parameters (count, constant terms, linear part).
bool is_param_system(std::span<const TruncSeries> components);

/// Component-wise outer(inner): substitute(outer[i], inner).
std::vector<TruncSeries> compose(std::span<const TruncSeries> outer, std::span<const TruncSeries> inner);

/// T with S(T) == identity == T(S) up to the order of S. T lives in `target_ring`
/// (defaults to S's ring) and expresses the old variables in terms of the new ones.
ParamSystem invert_param_system(const ParamSystem& s, RingPtr target_ring = nullptr);

/// Identity parameter system t_i of the given order.
std::vector<TruncSeries> identity_series(const RingPtr& ring, int order);

class SeriesDerivation {
 public:
  SeriesDerivation(RingPtr ring, std::vector<TruncSeries> coefficients);
  /// Lifts a polynomial derivation to series of the given order.
  static SeriesDerivation from_derivation(const Derivation& d, int order);

  const RingPtr& ring() const noexcept { return ring_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  const TruncSeries& coefficient(std::size_t var) const { return coeffs_.at(var); }
  const std::vector<TruncSeries>& coefficients() const noexcept { return coeffs_; }
  int order() const noexcept;

 private:
  RingPtr ring_;
  std::vector<TruncSeries> coeffs_;
};

TruncSeries apply(const SeriesDerivation& d, const TruncSeries& f);

struct StraighteningResult {
  /// (x1, y_2, ..., y_n) as series in the original variables.
  ParamSystem params;
  /// d(y_i) for i = 2..n; each vanishes up to its guaranteed order.
  std::vector<TruncSeries> residuals;
  int iterations = 0;
  /// Original variables picked to complete x1 to a basis of M/M^2.
  std::vector<std::size_t> completion;
  /// updates[k-1][i] is the correction added to y_{i+2} at iteration k.
  std::vector<std::vector<TruncSeries>> updates;
};

/// Builds y_2..y_n with d(y_i) == 0 mod degree N by the iterated-antiderivative
/// correction, so that d = D[x1] in the coordinates (x1, y_2, ..., y_n).
/// Requires d(x1) == 1 up to its guaranteed order and x1 in M - M^2.
StraighteningResult straighten(const SeriesDerivation& d, const TruncSeries& x1, int order);

struct CanonicalPair {
  /// (x1, x2, y_3, ..., y_n) as series in the original variables.
  ParamSystem params;
  /// The new coordinates, named x1, x2, y3, ..., yn.
  RingPtr coordinates;
  /// a_3..a_n in the new coordinates: d2 = D[x2] + x1 * sum a_i D[y_i].
  std::vector<TruncSeries> a;
};

/// Puts a normalized pair (d_i(x_j) = [i == j]) into the form
/// d1 = D[x1], d2 = D[x2] + x1 * sum a_i D[y_i].
CanonicalPair canonical_pair(const SeriesDerivation& d1, const SeriesDerivation& d2,
                             const TruncSeries& x1, const TruncSeries& x2, int order);

/// For k = 0..k_max, the operator sum_i a_i^(k) D[y_i] where a^(k) is the part of
/// weighted degree k under weights (1, 1, 0, ..., 0). `coordinates` is the ring of
/// the a_i (x1, x2, y3, ...), which stays meaningful when there are no a_i.
std::vector<SeriesDerivation> partial_k_operators(const RingPtr& coordinates,
                                                  std::span<const TruncSeries> a, int k_max);

std::string to_string(const TruncSeries& f);

}  // namespace minder
