#pragma once

// Dense exact matrices and fraction-free elimination.

#include <cstddef>
#include <vector>

#include "minder/polyring.hpp"

namespace minder::linalg {

template <typename Scalar>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  bool row_is_zero(std::size_t r) const {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (sgn((*this)(r, c)) != 0) return false;
    }
    return true;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

using IntegerMatrix = Matrix<Integer>;
using RationalMatrix = Matrix<Rational>;

/// Row echelon form from Bareiss elimination. Row r < rank has its pivot in column pivots[r].
struct EchelonForm {
  IntegerMatrix matrix;
  std::vector<std::size_t> pivots;
  std::size_t rank() const noexcept { return pivots.size(); }
};

/// Multiplies each row by the lcm of its denominators.
IntegerMatrix clear_denominators(const RationalMatrix& m);

/// Fraction-free (Bareiss) elimination; the pivot is the first row with a nonzero entry
/// in the current column.
EchelonForm bareiss_echelon(IntegerMatrix m);

std::size_t rank(const RationalMatrix& m);

/// Reduced row echelon form with zero rows removed; pivots are 1.
RationalMatrix rref(RationalMatrix m);

/// Basis of {v : m v = 0} as the rows of a matrix in reduced row echelon form.
RationalMatrix nullspace(const RationalMatrix& m);

}  // namespace minder::linalg
