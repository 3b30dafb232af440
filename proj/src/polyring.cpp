#include "minder/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace minder {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::RingMismatch: return "ring_mismatch";
    case ErrorCode::IndexOutOfRange: return "index_out_of_range";
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::Parse: return "parse_error";
    case ErrorCode::UnknownVariable: return "unknown_variable";
    case ErrorCode::Precondition: return "precondition_failed";
    case ErrorCode::SingularLinearPart: return "singular_linear_part";
    case ErrorCode::DegenerateBasis: return "degenerate_basis";
    case ErrorCode::Divisibility: return "divisibility_failed";
    case ErrorCode::ZeroDerivation: return "zero_derivation";
    case ErrorCode::NoMinimalMFound: return "no_minimal_m_found";
    case ErrorCode::FoldFailed: return "fold_failed";
  }
  return "unknown";
}

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

}  // namespace

Ring::Ring(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!is_identifier(names_[i])) {
      throw Error(ErrorCode::InvalidArgument, "invalid variable name '" + names_[i] + "'");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (names_[j] == names_[i]) {
        throw Error(ErrorCode::InvalidArgument, "duplicate variable name '" + names_[i] + "'");
      }
    }
  }
}

std::optional<std::size_t> Ring::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

RingPtr make_ring(std::vector<std::string> names) {
  return std::make_shared<const Ring>(std::move(names));
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
  return a == b || (a && b && *a == *b);
}

void require_same_ring(const RingPtr& a, const RingPtr& b, std::string_view context) {
  if (!same_ring(a, b)) {
    throw Error(ErrorCode::RingMismatch, std::string(context) + ": operands live in different rings");
  }
}

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(std::vector<int> exps) : exps_(std::move(exps)) {
  for (int e : exps_) {
    if (e < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent");
  }
}

Monomial Monomial::unit(std::size_t nvars, std::size_t var, int power) {
  if (var >= nvars) throw Error(ErrorCode::IndexOutOfRange, "variable index out of range");
  Monomial m(nvars);
  m.exps_[var] = power;
  return m;
}

int Monomial::degree() const noexcept {
  int d = 0;
  for (int e : exps_) d += e;
  return d;
}

int Monomial::weighted_degree(const WeightVector& w) const {
  if (w.weights.size() != exps_.size()) {
    throw Error(ErrorCode::InvalidArgument, "weight vector length does not match variable count");
  }
  int d = 0;
  for (std::size_t i = 0; i < exps_.size(); ++i) d += w.weights[i] * exps_[i];
  return d;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r.exps_[i] = a.exps_[i] + b.exps_[i];
  return r;
}

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
  const int da = a.degree();
  const int db = b.degree();
  if (da != db) return da < db;
  // Lex on exponents: the first differing variable decides, earlier variables dominate.
  return a.exponents() < b.exponents();
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(RingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) throw Error(ErrorCode::InvalidArgument, "polynomial needs a ring");
}

Polynomial Polynomial::constant(RingPtr ring, const Rational& c) {
  Polynomial p(std::move(ring));
  p.add_term(Monomial(p.ring_->size()), c);
  return p;
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t var) {
  Polynomial p(std::move(ring));
  p.add_term(Monomial::unit(p.ring_->size(), var), 1);
  return p;
}

Polynomial Polynomial::monomial(RingPtr ring, const Monomial& m, const Rational& c) {
  Polynomial p(std::move(ring));
  if (m.size() != p.ring_->size()) {
    throw Error(ErrorCode::InvalidArgument, "exponent vector length does not match the ring");
  }
  p.add_term(m, c);
  return p;
}

bool Polynomial::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

std::optional<int> Polynomial::total_degree() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.rbegin()->first.degree();
}

std::optional<int> Polynomial::low_degree() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first.degree();
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::constant_term() const { return coefficient(Monomial(ring_->size())); }

std::optional<std::pair<Monomial, Rational>> Polynomial::leading_term() const {
  if (terms_.empty()) return std::nullopt;
  return *terms_.rbegin();
}

bool Polynomial::depends_on(std::size_t var) const {
  if (var >= ring_->size()) throw Error(ErrorCode::IndexOutOfRange, "variable index out of range");
  return std::any_of(terms_.begin(), terms_.end(),
                     [var](const auto& t) { return t.first[var] != 0; });
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

void Polynomial::check_ring(const Polynomial& other, std::string_view context) const {
  require_same_ring(ring_, other.ring_, context);
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  check_ring(other, "polynomial addition");
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  check_ring(other, "polynomial subtraction");
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_ring(b, "polynomial product");
  Polynomial r(a.ring_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  }
  return r;
}

Polynomial operator-(Polynomial a) {
  for (auto& [m, c] : a.terms_) c = -c;
  return a;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result = constant(ring_, 1);
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1u;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Polynomial poly_mul(const Polynomial& p, const Polynomial& q) { return p * q; }

Polynomial mul_truncated(const Polynomial& p, const Polynomial& q, int max_degree) {
  require_same_ring(p.ring(), q.ring(), "truncated product");
  Polynomial r(p.ring());
  for (const auto& [mp, cp] : p.terms()) {
    const int dp = mp.degree();
    if (dp > max_degree) break;
    for (const auto& [mq, cq] : q.terms()) {
      if (dp + mq.degree() > max_degree) break;
      r.add_term(mp * mq, cp * cq);
    }
  }
  return r;
}

Polynomial truncate(const Polynomial& p, int max_degree) {
  Polynomial r(p.ring());
  for (const auto& [m, c] : p.terms()) {
    if (m.degree() > max_degree) break;
    r.add_term(m, c);
  }
  return r;
}

Polynomial partial_derivative(const Polynomial& p, std::size_t var) {
  if (var >= p.ring()->size()) {
    throw Error(ErrorCode::IndexOutOfRange, "partial_derivative: variable index " +
                                                std::to_string(var) + " out of range");
  }
  Polynomial r(p.ring());
  for (const auto& [m, c] : p.terms()) {
    const int e = m[var];
    if (e == 0) continue;
    Monomial lowered = m;
    lowered[var] = e - 1;
    r.add_term(lowered, c * e);
  }
  return r;
}

std::vector<HomogeneousPart> homogeneous_decomposition(const Polynomial& p,
                                                       const WeightVector& w) {
  if (w.weights.size() != p.ring()->size()) {
    throw Error(ErrorCode::InvalidArgument, "weight vector length does not match variable count");
  }
  std::map<int, Polynomial> parts;
  for (const auto& [m, c] : p.terms()) {
    auto it = parts.try_emplace(m.weighted_degree(w), p.ring()).first;
    it->second.add_term(m, c);
  }
  std::vector<HomogeneousPart> out;
  out.reserve(parts.size());
  for (auto& [deg, part] : parts) out.push_back({deg, std::move(part)});
  return out;
}

Polynomial homogeneous_part(const Polynomial& p, const WeightVector& w, int k) {
  Polynomial r(p.ring());
  for (const auto& [m, c] : p.terms()) {
    if (m.weighted_degree(w) == k) r.add_term(m, c);
  }
  return r;
}

namespace {

void enumerate_degree(std::size_t nvars, int degree, std::size_t var, std::vector<int>& exps,
                      std::vector<Monomial>& out) {
  if (var + 1 == nvars) {
    exps[var] = degree;
    out.emplace_back(exps);
    return;
  }
  // Larger exponent on earlier variables first gives grlex-descending order.
  for (int e = degree; e >= 0; --e) {
    exps[var] = e;
    enumerate_degree(nvars, degree - e, var + 1, exps, out);
  }
  exps[var] = 0;
}

}  // namespace

std::vector<Monomial> monomials_up_to_degree(std::size_t nvars, int max_degree) {
  std::vector<Monomial> out;
  if (max_degree < 0) return out;
  if (nvars == 0) {
    out.emplace_back(0);
    return out;
  }
  std::vector<int> exps(nvars, 0);
  for (int d = max_degree; d >= 0; --d) enumerate_degree(nvars, d, 0, exps, out);
  return out;
}

// ---------------------------------------------------------------------------
// Printing

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const Monomial& m = it->first;
    Rational c = it->second;
    const bool negative = sgn(c) < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;

    bool need_star = false;
    if (m.is_one() || c != 1) {
      os << c.get_str();
      need_star = true;
    }
    for (std::size_t v = 0; v < m.size(); ++v) {
      if (m[v] == 0) continue;
      if (need_star) os << '*';
      os << p.ring()->name(v);
      if (m[v] > 1) os << '^' << m[v];
      need_star = true;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << to_string(p); }

}  // namespace minder
