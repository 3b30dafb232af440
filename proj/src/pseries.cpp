#include <algorithm>
#include <climits>

#include "minder/pseries.hpp"

namespace minder {

// ---------------------------------------------------------------------------
// TruncSeries

TruncSeries::TruncSeries(RingPtr ring, int order) : body_(std::move(ring)), order_(order) {
  if (order_ < -1) throw Error(ErrorCode::InvalidArgument, "series order must be at least -1");
}

TruncSeries::TruncSeries(const Polynomial& body, int order) : body_(truncate(body, order)), order_(order) {
  if (order_ < -1) throw Error(ErrorCode::InvalidArgument, "series order must be at least -1");
}

TruncSeries TruncSeries::truncated(int order) const {
  return order >= order_ ? *this : TruncSeries(body_, order);
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& other) {
  require_same_ring(ring(), other.ring(), "series sum");
  order_ = std::min(order_, other.order_);
  body_ = truncate(body_ + other.body_, order_);
  return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& other) {
  require_same_ring(ring(), other.ring(), "series difference");
  order_ = std::min(order_, other.order_);
  body_ = truncate(body_ - other.body_, order_);
  return *this;
}

TruncSeries& TruncSeries::operator*=(const Rational& c) {
  body_ *= c;
  return *this;
}

TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b) {
  require_same_ring(a.ring(), b.ring(), "series_mul");
  const int order = std::min(a.order(), b.order());
  return TruncSeries(mul_truncated(a.body(), b.body(), order), order);
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) { return series_mul(a, b); }

TruncSeries substitute(const TruncSeries& f, std::span<const TruncSeries> images) {
  const std::size_t nvars = f.ring()->size();
  if (images.size() != nvars) {
    throw Error(ErrorCode::InvalidArgument, "substitute: expected " + std::to_string(nvars) +
                                                " images, got " + std::to_string(images.size()));
  }
  if (images.empty()) {
    throw Error(ErrorCode::InvalidArgument, "substitute: a series in zero variables has no target ring");
  }
  const RingPtr& target = images.front().ring();
  int order = f.order();
  for (std::size_t j = 0; j < images.size(); ++j) {
    require_same_ring(target, images[j].ring(), "substitute");
    if (sgn(images[j].constant_term()) != 0) {
      throw Error(ErrorCode::Precondition,
                  "substitute: image " + std::to_string(j) + " has a nonzero constant term");
    }
    order = std::min(order, images[j].order());
  }

  // powers[j][e] = images[j]^e truncated at `order`.
  std::vector<std::vector<Polynomial>> powers(nvars);
  for (std::size_t j = 0; j < nvars; ++j) powers[j].push_back(Polynomial::constant(target, 1));
  auto power = [&](std::size_t j, int e) -> const Polynomial& {
    while (static_cast<int>(powers[j].size()) <= e) {
      powers[j].push_back(mul_truncated(powers[j].back(), images[j].body(), order));
    }
    return powers[j][static_cast<std::size_t>(e)];
  };

  Polynomial out(target);
  for (const auto& [m, c] : f.body().terms()) {
    if (m.degree() > order) break;  // every image has valuation >= 1
    Polynomial term = Polynomial::constant(target, c);
    for (std::size_t j = 0; j < nvars && !term.is_zero(); ++j) {
      if (m[j] > 0) term = mul_truncated(term, power(j, m[j]), order);
    }
    out += term;
  }
  return TruncSeries(out, order);
}

TruncSeries series_partial(const TruncSeries& f, std::size_t var) {
  return TruncSeries(partial_derivative(f.body(), var), f.order() - 1);
}

TruncSeries mul_by_variable(const TruncSeries& f, std::size_t var) {
  const Polynomial x = Polynomial::variable(f.ring(), var);
  return TruncSeries(f.body() * x, f.order() + 1);
}

TruncSeries antiderivative(const TruncSeries& f, std::size_t var) {
  if (var >= f.ring()->size()) throw Error(ErrorCode::IndexOutOfRange, "antiderivative: variable index out of range");
  Polynomial out(f.ring());
  for (const auto& [m, c] : f.body().terms()) {
    Monomial raised = m;
    raised[var] += 1;
    out.add_term(raised, c / raised[var]);
  }
  return TruncSeries(out, f.order() + 1);
}

TruncSeries rebase(const TruncSeries& f, const RingPtr& ring) {
  if (ring->size() != f.ring()->size()) {
    throw Error(ErrorCode::InvalidArgument, "rebase: variable counts differ");
  }
  Polynomial out(ring);
  for (const auto& [m, c] : f.body().terms()) out.add_term(m, c);
  return TruncSeries(out, f.order());
}

TruncSeries restrict_to_zero(const TruncSeries& f, std::size_t var, const RingPtr& subring) {
  const std::size_t n = f.ring()->size();
  if (var >= n || subring->size() + 1 != n) {
    throw Error(ErrorCode::InvalidArgument, "restrict_to_zero: subring must drop exactly one variable");
  }
  Polynomial out(subring);
  for (const auto& [m, c] : f.body().terms()) {
    if (m[var] != 0) continue;
    std::vector<int> exps;
    exps.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != var) exps.push_back(m[j]);
    }
    out.add_term(Monomial(std::move(exps)), c);
  }
  return TruncSeries(out, f.order());
}

std::string to_string(const TruncSeries& f) {
  return to_string(f.body()) + " + O(deg " + std::to_string(f.order() + 1) + ")";
}

// ---------------------------------------------------------------------------
// Parameter systems

namespace {

linalg::RationalMatrix linear_part_of(std::span<const TruncSeries> components) {
  const std::size_t n = components.size();
  const std::size_t nvars = components.empty() ? 0 : components.front().ring()->size();
  linalg::RationalMatrix m(n, nvars);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < nvars; ++j) m(i, j) = components[i].coefficient(Monomial::unit(nvars, j));
  }
  return m;
}

}  // namespace

bool is_param_system(std::span<const TruncSeries> components) {
  if (components.empty()) return false;
  const RingPtr& ring = components.front().ring();
  if (components.size() != ring->size()) return false;
  for (const auto& c : components) {
    if (!same_ring(ring, c.ring()) || sgn(c.constant_term()) != 0 || c.order() < 1) return false;
  }
  return linalg::rank(linear_part_of(components)) == components.size();
}

ParamSystem::ParamSystem(std::vector<TruncSeries> components) : components_(std::move(components)) {
  if (components_.empty()) throw Error(ErrorCode::InvalidArgument, "parameter system is empty");
  const RingPtr& r = components_.front().ring();
  if (components_.size() != r->size()) {
    throw Error(ErrorCode::InvalidArgument, "parameter system needs one series per variable");
  }
  order_ = INT_MAX;
  for (const auto& c : components_) {
    require_same_ring(r, c.ring(), "parameter system");
    if (sgn(c.constant_term()) != 0) {
      throw Error(ErrorCode::InvalidArgument, "parameter system component has a nonzero constant term");
    }
    order_ = std::min(order_, c.order());
  }
  if (!is_param_system(components_)) {
    throw Error(ErrorCode::SingularLinearPart, "parameter system has a singular linear part");
  }
}

linalg::RationalMatrix ParamSystem::linear_part() const { return linear_part_of(components_); }

std::vector<TruncSeries> compose(std::span<const TruncSeries> outer, std::span<const TruncSeries> inner) {
  std::vector<TruncSeries> out;
  out.reserve(outer.size());
  for (const auto& f : outer) out.push_back(substitute(f, inner));
  return out;
}

std::vector<TruncSeries> identity_series(const RingPtr& ring, int order) {
  std::vector<TruncSeries> out;
  for (std::size_t j = 0; j < ring->size(); ++j) out.emplace_back(Polynomial::variable(ring, j), order);
  return out;
}

ParamSystem invert_param_system(const ParamSystem& s, RingPtr target_ring) {
  const std::size_t n = s.size();
  const int order = s.order();
  if (!target_ring) target_ring = s.ring();
  if (target_ring->size() != n) throw Error(ErrorCode::InvalidArgument, "invert_param_system: ring size mismatch");

  // L^{-1} from the RREF of [L | I].
  const linalg::RationalMatrix lin = s.linear_part();
  linalg::RationalMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = lin(i, j);
    aug(i, n + i) = 1;
  }
  const linalg::RationalMatrix reduced = linalg::rref(std::move(aug));
  for (std::size_t i = 0; i < n; ++i) {
    if (reduced.rows() < n || reduced(i, i) != 1) {
      throw Error(ErrorCode::SingularLinearPart, "invert_param_system: singular linear part");
    }
  }

  // Nonlinear remainder H = S - L t.
  std::vector<TruncSeries> higher;
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial h = s[i].body();
    for (std::size_t j = 0; j < n; ++j) h.add_term(Monomial::unit(n, j), -lin(i, j));
    higher.emplace_back(h, order);
  }

  const std::vector<TruncSeries> ident = identity_series(target_ring, order);
  auto apply_inverse = [&](const std::vector<TruncSeries>& rhs) {
    std::vector<TruncSeries> out;
    for (std::size_t i = 0; i < n; ++i) {
      TruncSeries acc(target_ring, order);
      for (std::size_t j = 0; j < n; ++j) {
        const Rational& c = reduced(i, n + j);
        if (sgn(c) != 0) acc += c * rhs[j];
      }
      out.push_back(std::move(acc));
    }
    return out;
  };

  // T <- L^{-1}(u - H(T)); each pass fixes one more degree.
  std::vector<TruncSeries> t = apply_inverse(ident);
  for (int pass = 1; pass < order; ++pass) {
    const std::vector<TruncSeries> h_of_t = compose(higher, t);
    std::vector<TruncSeries> rhs;
    for (std::size_t i = 0; i < n; ++i) rhs.push_back(ident[i] - h_of_t[i]);
    t = apply_inverse(rhs);
  }
  return ParamSystem(std::move(t));
}

// ---------------------------------------------------------------------------
// Series derivations

SeriesDerivation::SeriesDerivation(RingPtr ring, std::vector<TruncSeries> coefficients)
    : ring_(std::move(ring)), coeffs_(std::move(coefficients)) {
  if (coeffs_.size() != ring_->size()) {
    throw Error(ErrorCode::InvalidArgument, "series derivation needs one coefficient per variable");
  }
  for (const auto& c : coeffs_) require_same_ring(ring_, c.ring(), "series derivation coefficient");
}

SeriesDerivation SeriesDerivation::from_derivation(const Derivation& d, int order) {
  std::vector<TruncSeries> coeffs;
  for (const auto& c : d.coefficients()) coeffs.emplace_back(c, order);
  return SeriesDerivation(d.ring(), std::move(coeffs));
}

int SeriesDerivation::order() const noexcept {
  int order = INT_MAX;
  for (const auto& c : coeffs_) order = std::min(order, c.order());
  return order;
}

TruncSeries apply(const SeriesDerivation& d, const TruncSeries& f) {
  require_same_ring(d.ring(), f.ring(), "series apply");
  const int order = std::min(d.order(), f.order() - 1);
  Polynomial out(f.ring());
  for (std::size_t j = 0; j < d.size(); ++j) {
    const Polynomial& a = d.coefficient(j).body();
    if (a.is_zero() || !f.body().depends_on(j)) continue;
    out += mul_truncated(a, partial_derivative(f.body(), j), order);
  }
  return TruncSeries(out, order);
}

}  // namespace minder
