#pragma once

#include <span>
#include <string>
#include <vector>

#include "minder/polyring.hpp"

namespace minder {

/// A k-derivation sum_i a_i d/dx_i, stored as its coefficient tuple (a_1, ..., a_n).
class Derivation {
 public:
  Derivation(RingPtr ring, std::vector<Polynomial> coefficients);

  static Derivation zero(RingPtr ring);
  /// d/dx_var
  static Derivation partial(RingPtr ring, std::size_t var);

  const RingPtr& ring() const noexcept { return ring_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  const Polynomial& coefficient(std::size_t var) const { return coeffs_.at(var); }
  const std::vector<Polynomial>& coefficients() const noexcept { return coeffs_; }

  bool is_zero() const;
  /// Largest total degree among coefficients; 0 for the zero derivation.
  int max_coefficient_degree() const;

  Derivation& operator+=(const Derivation& other);
  friend Derivation operator+(Derivation a, const Derivation& b) { return a += b; }
  friend Derivation operator*(const Polynomial& c, const Derivation& d);
  friend bool operator==(const Derivation& a, const Derivation& b);

 private:
  RingPtr ring_;
  std::vector<Polynomial> coeffs_;
};

/// Nonempty list of derivations over one ring.
class DerivationFamily {
 public:
  explicit DerivationFamily(std::vector<Derivation> members);

  const RingPtr& ring() const noexcept { return members_.front().ring(); }
  std::size_t size() const noexcept { return members_.size(); }
  const Derivation& operator[](std::size_t i) const { return members_.at(i); }
  const std::vector<Derivation>& members() const noexcept { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

 private:
  std::vector<Derivation> members_;
};

Polynomial apply(const Derivation& d, const Polynomial& f);

Derivation linear_combination(std::span<const Polynomial> coeffs,
                              std::span<const Derivation> derivs);

bool is_in_kernel(const Derivation& d, const Polynomial& f);

/// Renders as "a1*D[x1] + a2*D[x2]"; zero coefficients are skipped.
std::string to_string(const Derivation& d);

}  // namespace minder
