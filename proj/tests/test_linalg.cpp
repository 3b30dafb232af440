#include "doctest.h"
#include "support.hpp"

#include "minder/linalg.hpp"

using namespace minder;
using namespace minder::linalg;

namespace {

RationalMatrix random_matrix(testing::Gen& g, std::size_t rows, std::size_t cols) {
  RationalMatrix m(rows, cols);
  const bool sparse = g.coin();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (sparse && g.integer(0, 2) != 0) continue;
      m(r, c) = g.rational(6);
    }
  }
  // Force some dependence.
  if (rows >= 3 && g.coin()) {
    for (std::size_t c = 0; c < cols; ++c) m(rows - 1, c) = m(0, c) * Rational(2) - m(1, c);
  }
  return m;
}

}  // namespace

TEST_CASE("rank of small matrices") {
  RationalMatrix m(3, 3);
  m(0, 0) = 1; m(0, 1) = 2; m(0, 2) = 3;
  m(1, 0) = 2; m(1, 1) = 4; m(1, 2) = 6;
  m(2, 0) = 1; m(2, 1) = 0; m(2, 2) = 1;
  CHECK(rank(m) == 2);
  CHECK(rank(RationalMatrix(4, 2)) == 0);
  CHECK(rank(RationalMatrix(0, 3)) == 0);

  const auto n = nullspace(m);
  REQUIRE(n.rows() == 1);
  // RREF of the single kernel vector (-1, -1, 1) scaled to pivot 1.
  CHECK(n(0, 0) == 1);
  CHECK(n(0, 1) == 1);
  CHECK(n(0, 2) == -1);
}

TEST_CASE("bareiss keeps integer entries and matches the naive rank") {
  IntegerMatrix m(2, 2);
  m(0, 0) = 2; m(0, 1) = 3;
  m(1, 0) = 4; m(1, 1) = 5;
  const auto e = bareiss_echelon(m);
  CHECK(e.rank() == 2);
  // Last Bareiss pivot is the determinant.
  CHECK(e.matrix(1, 1) == -2);
}

TEST_CASE("property: rank, rref and nullspace against naive Gauss-Jordan") {
  testing::Gen g(31);
  for (int i = 0; i < 300; ++i) {
    const std::size_t rows = static_cast<std::size_t>(g.integer(1, 7));
    const std::size_t cols = static_cast<std::size_t>(g.integer(1, 7));
    const auto m = random_matrix(g, rows, cols);
    const std::size_t expected = testing::naive_rank(testing::to_rows(m));
    CHECK(rank(m) == expected);

    const auto rr = rref(m);
    CHECK(rr.rows() == expected);
    CHECK(testing::naive_rank(testing::to_rows(rr)) == expected);
    // Row space unchanged: stacking adds nothing.
    auto stacked = testing::to_rows(m);
    for (const auto& row : testing::to_rows(rr)) stacked.push_back(row);
    CHECK(testing::naive_rank(stacked) == expected);

    const auto n = nullspace(m);
    CHECK(n.rows() == cols - expected);
    CHECK(testing::naive_rank(testing::to_rows(n)) == n.rows());
    for (std::size_t v = 0; v < n.rows(); ++v) {
      for (std::size_t r = 0; r < rows; ++r) {
        Rational dot = 0;
        for (std::size_t c = 0; c < cols; ++c) dot += m(r, c) * n(v, c);
        CHECK(dot == 0);
      }
    }
  }
}

TEST_CASE("property: clearing denominators preserves rank") {
  testing::Gen g(32);
  for (int i = 0; i < 100; ++i) {
    const auto m = random_matrix(g, 4, 5);
    const auto z = clear_denominators(m);
    CHECK(bareiss_echelon(z).rank() == testing::naive_rank(testing::to_rows(m)));
  }
}
