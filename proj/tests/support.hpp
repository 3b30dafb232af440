#pragma once

// Hand-rolled generators and small independent oracles shared by the test binaries.

#include <algorithm>
#include <random>
#include <vector>

#include "minder/derivation.hpp"
#include "minder/linalg.hpp"
#include "minder/polyring.hpp"

namespace testing {

using minder::Monomial;
using minder::Polynomial;
using minder::Rational;
using minder::RingPtr;

class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  /// Nonzero numerator and denominator with |num|, den <= bound.
  Rational rational(int bound, bool allow_zero = true) {
    int num = 0;
    do {
      num = integer(-bound, bound);
    } while (!allow_zero && num == 0);
    Rational q(num, integer(1, bound));
    q.canonicalize();
    return q;
  }

  Monomial monomial(std::size_t nvars, int min_degree, int max_degree) {
    const int degree = integer(min_degree, max_degree);
    Monomial m(nvars);
    for (int i = 0; i < degree; ++i) m[static_cast<std::size_t>(integer(0, static_cast<int>(nvars) - 1))] += 1;
    return m;
  }

  Polynomial polynomial(const RingPtr& ring, int max_degree, int max_terms, int min_degree = 0) {
    Polynomial p(ring);
    const int terms = integer(0, max_terms);
    for (int t = 0; t < terms; ++t) p.add_term(monomial(ring->size(), min_degree, max_degree), rational(5, false));
    return p;
  }

  minder::Derivation derivation(const RingPtr& ring, int max_degree, int max_terms) {
    std::vector<Polynomial> coeffs;
    for (std::size_t i = 0; i < ring->size(); ++i) coeffs.push_back(polynomial(ring, max_degree, max_terms));
    return minder::Derivation(ring, std::move(coeffs));
  }

  std::mt19937& engine() { return rng_; }

 private:
  std::mt19937 rng_;
};

/// Textbook Gauss-Jordan rank over Q, kept deliberately naive.
inline std::size_t naive_rank(std::vector<std::vector<Rational>> a) {
  std::size_t rank = 0;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[rank][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

inline std::vector<std::vector<Rational>> to_rows(const minder::linalg::RationalMatrix& m) {
  std::vector<std::vector<Rational>> out(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m(r, c);
  }
  return out;
}

/// Horner-free direct evaluation at a rational point.
inline Rational evaluate(const Polynomial& p, const std::vector<Rational>& point) {
  Rational total = 0;
  for (const auto& [m, c] : p.terms()) {
    Rational term = c;
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (int e = 0; e < m[i]; ++e) term *= point[i];
    }
    total += term;
  }
  return total;
}

inline std::vector<Rational> point(Gen& g, std::size_t n) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(g.rational(7));
  return out;
}

/// Dimension of {f : deg f <= D, d(f) = 0 for all d} computed from a dense
/// matrix whose columns are images of single monomials.
inline std::size_t naive_kernel_dimension(const std::vector<minder::Derivation>& family, int degree_bound) {
  const RingPtr& ring = family.front().ring();
  const auto columns = minder::monomials_up_to_degree(ring->size(), degree_bound);
  int spread = 0;
  for (const auto& d : family) spread = std::max(spread, d.max_coefficient_degree());
  const auto targets = minder::monomials_up_to_degree(ring->size(), degree_bound + spread);
  std::vector<std::vector<Rational>> a;
  for (const auto& d : family) {
    std::vector<std::vector<Rational>> block;
    for (const auto& row_mono : targets) block.emplace_back(columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const Polynomial image = minder::apply(d, Polynomial::monomial(ring, columns[c]));
      for (const auto& [m, coef] : image.terms()) {
        for (std::size_t r = 0; r < targets.size(); ++r) {
          if (targets[r] == m) {
            block[r][c] = coef;
            break;
          }
        }
      }
    }
    for (auto& row : block) {
      bool zero = true;
      for (const auto& v : row) zero = zero && v == 0;
      if (!zero) a.push_back(std::move(row));
    }
  }
  if (a.empty()) return columns.size();
  return columns.size() - naive_rank(a);
}

}  // namespace testing
