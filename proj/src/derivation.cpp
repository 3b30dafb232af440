#include "minder/derivation.hpp"

#include <algorithm>

namespace minder {

Derivation::Derivation(RingPtr ring, std::vector<Polynomial> coefficients)
    : ring_(std::move(ring)), coeffs_(std::move(coefficients)) {
  if (!ring_) throw Error(ErrorCode::InvalidArgument, "derivation needs a ring");
  if (coeffs_.size() != ring_->size()) {
    throw Error(ErrorCode::InvalidArgument,
                "derivation has " + std::to_string(coeffs_.size()) + " coefficients for " +
                    std::to_string(ring_->size()) + " variables");
  }
  for (const auto& c : coeffs_) require_same_ring(ring_, c.ring(), "derivation coefficient");
}

Derivation Derivation::zero(RingPtr ring) {
  std::vector<Polynomial> coeffs(ring->size(), Polynomial(ring));
  return Derivation(ring, std::move(coeffs));
}

Derivation Derivation::partial(RingPtr ring, std::size_t var) {
  if (var >= ring->size()) throw Error(ErrorCode::IndexOutOfRange, "variable index out of range");
  std::vector<Polynomial> coeffs(ring->size(), Polynomial(ring));
  coeffs[var] = Polynomial::constant(ring, 1);
  return Derivation(ring, std::move(coeffs));
}

bool Derivation::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

int Derivation::max_coefficient_degree() const {
  int e = 0;
  for (const auto& c : coeffs_) e = std::max(e, c.total_degree().value_or(0));
  return e;
}

Derivation& Derivation::operator+=(const Derivation& other) {
  require_same_ring(ring_, other.ring_, "derivation sum");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

Derivation operator*(const Polynomial& c, const Derivation& d) {
  require_same_ring(c.ring(), d.ring_, "scaling a derivation");
  std::vector<Polynomial> coeffs;
  coeffs.reserve(d.size());
  for (const auto& a : d.coeffs_) coeffs.push_back(c * a);
  return Derivation(d.ring_, std::move(coeffs));
}

bool operator==(const Derivation& a, const Derivation& b) {
  return same_ring(a.ring_, b.ring_) && a.coeffs_ == b.coeffs_;
}

DerivationFamily::DerivationFamily(std::vector<Derivation> members) : members_(std::move(members)) {
  if (members_.empty()) throw Error(ErrorCode::InvalidArgument, "derivation family is empty");
  for (const auto& d : members_) require_same_ring(members_.front().ring(), d.ring(), "derivation family");
}

Polynomial apply(const Derivation& d, const Polynomial& f) {
  require_same_ring(d.ring(), f.ring(), "apply");
  Polynomial out(f.ring());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const Polynomial& a = d.coefficient(i);
    if (a.is_zero() || !f.depends_on(i)) continue;
    out += a * partial_derivative(f, i);
  }
  return out;
}

Derivation linear_combination(std::span<const Polynomial> coeffs,
                              std::span<const Derivation> derivs) {
  if (coeffs.size() != derivs.size()) {
    throw Error(ErrorCode::InvalidArgument, "linear_combination: coefficient count " +
                                                std::to_string(coeffs.size()) +
                                                " does not match derivation count " +
                                                std::to_string(derivs.size()));
  }
  if (derivs.empty()) throw Error(ErrorCode::InvalidArgument, "linear_combination: no derivations");
  Derivation out = Derivation::zero(derivs.front().ring());
  for (std::size_t i = 0; i < derivs.size(); ++i) out += coeffs[i] * derivs[i];
  return out;
}

bool is_in_kernel(const Derivation& d, const Polynomial& f) { return apply(d, f).is_zero(); }

std::string to_string(const Derivation& d) {
  std::string out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const Polynomial& a = d.coefficient(i);
    if (a.is_zero()) continue;
    if (!out.empty()) out += " + ";
    const std::string partial = "D[" + d.ring()->name(i) + "]";
    if (a == Polynomial::constant(d.ring(), 1)) {
      out += partial;
    } else {
      out += "(" + to_string(a) + ")*" + partial;
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace minder
