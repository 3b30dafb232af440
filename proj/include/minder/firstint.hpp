#pragma once

// Degree-bounded kernels of derivation families.
//
// Everything here is relative to a degree bound D: the kernel is intersected with
// the polynomials of total degree <= D and computed as an exact rational nullspace.
// A result is a certificate about that filtration step, never about the whole ring.

#include <cstddef>
#include <span>
#include <vector>

#include "minder/derivation.hpp"
#include "minder/linalg.hpp"

namespace minder {

struct KernelReport {
  int degree_bound = 0;
  /// RREF basis, listed by increasing leading monomial; each has leading coefficient 1.
  std::vector<Polynomial> basis;
  std::size_t matrix_rows = 0;
  std::size_t matrix_cols = 0;
  std::size_t matrix_rank = 0;
};

struct FirstIntegralBasis {
  int degree_bound = 0;
  /// Empty means no first integral of degree <= degree_bound.
  std::vector<Polynomial> integrals;
};

KernelReport kernel_basis(const DerivationFamily& family, int degree_bound);

FirstIntegralBasis first_integrals(const DerivationFamily& family, int degree_bound);

bool kernels_equal_up_to_degree(const Derivation& d, const DerivationFamily& family,
                                int degree_bound);

/// Coefficient matrix of `polys` against a list of monomials (one row per polynomial).
/// Throws if some polynomial has a term outside `columns`.
linalg::RationalMatrix coefficient_matrix(std::span<const Polynomial> polys,
                                          std::span<const Monomial> columns);

/// Dimension of the Q-span of `polys`.
std::size_t span_dimension(std::span<const Polynomial> polys);

/// Canonical basis of span(polys): RREF with monomials ordered largest first,
/// returned by increasing leading monomial.
std::vector<Polynomial> canonical_basis(std::span<const Polynomial> polys, const RingPtr& ring);

}  // namespace minder
