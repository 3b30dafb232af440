#include "minder/firstint.hpp"

#include <algorithm>
#include <map>

namespace minder {

namespace {

std::size_t binomial(std::size_t n, std::size_t k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r.get_ui();
}

/// Number of monomials of total degree <= d in n variables.
std::size_t monomial_count(std::size_t nvars, int d) {
  return d < 0 ? 0 : binomial(nvars + static_cast<std::size_t>(d), nvars);
}

std::vector<Monomial> support_of(std::span<const Polynomial> polys) {
  std::map<Monomial, int, GrlexLess> seen;
  for (const auto& p : polys) {
    for (const auto& [m, c] : p.terms()) seen.emplace(m, 0);
  }
  std::vector<Monomial> cols;
  cols.reserve(seen.size());
  for (auto it = seen.rbegin(); it != seen.rend(); ++it) cols.push_back(it->first);
  return cols;
}

std::vector<Polynomial> rows_to_polynomials(const linalg::RationalMatrix& m,
                                            std::span<const Monomial> columns,
                                            const RingPtr& ring) {
  std::vector<Polynomial> out;
  out.reserve(m.rows());
  // RREF rows come out largest-leading-monomial first; report them smallest first.
  for (std::size_t r = m.rows(); r-- > 0;) {
    Polynomial p(ring);
    for (std::size_t c = 0; c < m.cols(); ++c) p.add_term(columns[c], m(r, c));
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

linalg::RationalMatrix coefficient_matrix(std::span<const Polynomial> polys,
                                          std::span<const Monomial> columns) {
  std::map<Monomial, std::size_t, GrlexLess> index;
  for (std::size_t c = 0; c < columns.size(); ++c) index.emplace(columns[c], c);
  linalg::RationalMatrix m(polys.size(), columns.size());
  for (std::size_t r = 0; r < polys.size(); ++r) {
    for (const auto& [mono, coeff] : polys[r].terms()) {
      auto it = index.find(mono);
      if (it == index.end()) {
        throw Error(ErrorCode::InvalidArgument, "polynomial term outside the column monomials");
      }
      m(r, it->second) = coeff;
    }
  }
  return m;
}

std::size_t span_dimension(std::span<const Polynomial> polys) {
  const auto cols = support_of(polys);
  return linalg::rank(coefficient_matrix(polys, cols));
}

std::vector<Polynomial> canonical_basis(std::span<const Polynomial> polys, const RingPtr& ring) {
  const auto cols = support_of(polys);
  return rows_to_polynomials(linalg::rref(coefficient_matrix(polys, cols)), cols, ring);
}

KernelReport kernel_basis(const DerivationFamily& family, int degree_bound) {
  if (degree_bound < 0) {
    throw Error(ErrorCode::InvalidArgument, "kernel_basis: negative degree bound");
  }
  const RingPtr& ring = family.ring();
  const std::size_t nvars = ring->size();
  const std::vector<Monomial> columns = monomials_up_to_degree(nvars, degree_bound);

  int max_coeff_degree = 0;
  for (const auto& d : family) max_coeff_degree = std::max(max_coeff_degree, d.max_coefficient_degree());

  // Rows are (member, image monomial). Only images that actually occur get a row;
  // the omitted rows are identically zero and do not change the nullspace.
  std::map<std::pair<std::size_t, Monomial>, std::size_t,
           decltype([](const auto& a, const auto& b) {
             if (a.first != b.first) return a.first < b.first;
             return GrlexLess{}(a.second, b.second);
           })>
      row_index;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> col_entries(columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const Polynomial mono = Polynomial::monomial(ring, columns[c]);
    for (std::size_t k = 0; k < family.size(); ++k) {
      const Polynomial image = apply(family[k], mono);
      for (const auto& [m, coeff] : image.terms()) {
        auto [it, inserted] = row_index.try_emplace({k, m}, row_index.size());
        col_entries[c].emplace_back(it->second, coeff);
      }
    }
  }

  linalg::RationalMatrix system(row_index.size(), columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (const auto& [r, coeff] : col_entries[c]) system(r, c) = coeff;
  }

  const linalg::RationalMatrix null = linalg::nullspace(system);

  KernelReport report;
  report.degree_bound = degree_bound;
  report.matrix_rows = family.size() * monomial_count(nvars, degree_bound + max_coeff_degree);
  report.matrix_cols = columns.size();
  report.matrix_rank = columns.size() - null.rows();
  report.basis = rows_to_polynomials(null, columns, ring);
  return report;
}

FirstIntegralBasis first_integrals(const DerivationFamily& family, int degree_bound) {
  if (degree_bound < 1) {
    throw Error(ErrorCode::InvalidArgument, "first_integrals: degree bound must be at least 1");
  }
  const KernelReport kernel = kernel_basis(family, degree_bound);
  // Constants are always in the kernel, so dropping constant terms quotients them out.
  std::vector<Polynomial> shifted;
  for (const auto& p : kernel.basis) {
    Polynomial q = p;
    q.add_term(Monomial(p.ring()->size()), -p.constant_term());
    if (!q.is_zero()) shifted.push_back(std::move(q));
  }
  FirstIntegralBasis out;
  out.degree_bound = degree_bound;
  out.integrals = canonical_basis(shifted, family.ring());
  return out;
}

bool kernels_equal_up_to_degree(const Derivation& d, const DerivationFamily& family,
                                int degree_bound) {
  require_same_ring(d.ring(), family.ring(), "kernels_equal_up_to_degree");
  const auto single = kernel_basis(DerivationFamily({d}), degree_bound).basis;
  const auto joint = kernel_basis(family, degree_bound).basis;
  if (single.size() != joint.size()) return false;
  std::vector<Polynomial> both = single;
  both.insert(both.end(), joint.begin(), joint.end());
  return span_dimension(both) == single.size();
}

}  // namespace minder
