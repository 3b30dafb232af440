#include "minder/linalg.hpp"

namespace minder::linalg {

IntegerMatrix clear_denominators(const RationalMatrix& m) {
  IntegerMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Integer scale = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const Integer& den = m(r, c).get_den();
      if (den != 1) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), den.get_mpz_t());
    }
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const Rational& q = m(r, c);
      if (sgn(q) == 0) continue;
      out(r, c) = q.get_num() * (scale / q.get_den());
    }
  }
  return out;
}

EchelonForm bareiss_echelon(IntegerMatrix m) {
  EchelonForm ef;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  Integer previous = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(m(p, c)) == 0) ++p;
    if (p == rows) continue;
    m.swap_rows(r, p);
    const Integer pivot = m(r, c);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const Integer factor = m(i, c);
      for (std::size_t k = c + 1; k < cols; ++k) {
        Integer v = pivot * m(i, k);
        if (sgn(factor) != 0) v -= factor * m(r, k);
        // Exact: each entry is a minor of the original matrix.
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), previous.get_mpz_t());
        m(i, k) = std::move(v);
      }
      m(i, c) = 0;
    }
    previous = pivot;
    ef.pivots.push_back(c);
    ++r;
  }
  ef.matrix = std::move(m);
  return ef;
}

std::size_t rank(const RationalMatrix& m) { return bareiss_echelon(clear_denominators(m)).rank(); }

RationalMatrix rref(RationalMatrix m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(m(p, c)) == 0) ++p;
    if (p == rows) continue;
    m.swap_rows(r, p);
    const Rational inv = 1 / m(r, c);
    for (std::size_t k = c; k < cols; ++k) m(r, k) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      const Rational factor = m(i, c);
      for (std::size_t k = c; k < cols; ++k) m(i, k) -= factor * m(r, k);
    }
    ++r;
  }
  RationalMatrix out(r, cols);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t k = 0; k < cols; ++k) out(i, k) = m(i, k);
  }
  return out;
}

RationalMatrix nullspace(const RationalMatrix& m) {
  const std::size_t cols = m.cols();
  const EchelonForm ef = bareiss_echelon(clear_denominators(m));
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : ef.pivots) is_pivot[c] = true;

  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < cols; ++c) {
    if (!is_pivot[c]) free_cols.push_back(c);
  }

  RationalMatrix basis(free_cols.size(), cols);
  for (std::size_t b = 0; b < free_cols.size(); ++b) {
    std::vector<Rational> x(cols);
    x[free_cols[b]] = 1;
    for (std::size_t r = ef.rank(); r-- > 0;) {
      const std::size_t pc = ef.pivots[r];
      Rational acc = 0;
      for (std::size_t k = pc + 1; k < cols; ++k) {
        if (sgn(x[k]) != 0 && sgn(ef.matrix(r, k)) != 0) acc += Rational(ef.matrix(r, k)) * x[k];
      }
      x[pc] = -acc / Rational(ef.matrix(r, pc));
    }
    for (std::size_t k = 0; k < cols; ++k) basis(b, k) = x[k];
  }
  return rref(std::move(basis));
}

}  // namespace minder::linalg
