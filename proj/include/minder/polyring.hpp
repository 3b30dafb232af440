#pragma once

// Sparse multivariate polynomials over Q.
//
// A Polynomial is a map from exponent vectors to nonzero rationals, tied to a
// Ring that names the variables. Terms are kept in graded lexicographic order
// (x1 > x2 > ... within a degree); printing walks them from the largest term down.

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "minder/error.hpp"

namespace minder {

using Integer = mpz_class;
using Rational = mpq_class;

class Ring {
 public:
  /// Variable names must be distinct identifiers ([A-Za-z_][A-Za-z0-9_]*).
  explicit Ring(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t index) const { return names_.at(index); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  bool operator==(const Ring&) const = default;

 private:
  std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(std::vector<std::string> names);
bool same_ring(const RingPtr& a, const RingPtr& b);
/// Throws Error(RingMismatch) naming `context` when the rings differ.
void require_same_ring(const RingPtr& a, const RingPtr& b, std::string_view context);

/// Nonnegative per-variable weights defining a grading.
struct WeightVector {
  std::vector<int> weights;
};

/// Exponent vector of a monomial; its length is the ring's variable count.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<int> exps);

  static Monomial unit(std::size_t nvars, std::size_t var, int power = 1);

  std::size_t size() const noexcept { return exps_.size(); }
  int operator[](std::size_t i) const { return exps_[i]; }
  int& operator[](std::size_t i) { return exps_[i]; }
  const std::vector<int>& exponents() const noexcept { return exps_; }

  int degree() const noexcept;
  int weighted_degree(const WeightVector& w) const;
  bool is_one() const noexcept { return degree() == 0; }

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  bool operator==(const Monomial&) const = default;

 private:
  std::vector<int> exps_;
};

/// Graded lexicographic order: total degree first, then lex with x1 > x2 > ...
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational, GrlexLess>;

  explicit Polynomial(RingPtr ring);

  static Polynomial constant(RingPtr ring, const Rational& c);
  static Polynomial variable(RingPtr ring, std::size_t var);
  static Polynomial monomial(RingPtr ring, const Monomial& m, const Rational& c = 1);

  const RingPtr& ring() const noexcept { return ring_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  /// Total degree; nullopt for the zero polynomial.
  std::optional<int> total_degree() const;
  /// Smallest total degree of a term; nullopt for zero.
  std::optional<int> low_degree() const;

  Rational coefficient(const Monomial& m) const;
  Rational constant_term() const;
  /// Largest term under grlex; nullopt for zero.
  std::optional<std::pair<Monomial, Rational>> leading_term() const;
  bool depends_on(std::size_t var) const;

  /// Adds c*m in place; drops the term when it cancels.
  void add_term(const Monomial& m, const Rational& c);

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);

  Polynomial pow(unsigned exponent) const;

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(Polynomial a);
  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  void check_ring(const Polynomial& other, std::string_view context) const;

  RingPtr ring_;
  Terms terms_;
};

Polynomial poly_mul(const Polynomial& p, const Polynomial& q);
/// Product with every term of total degree above `max_degree` discarded.
Polynomial mul_truncated(const Polynomial& p, const Polynomial& q, int max_degree);
/// Terms of total degree <= max_degree.
Polynomial truncate(const Polynomial& p, int max_degree);

Polynomial partial_derivative(const Polynomial& p, std::size_t var);

struct HomogeneousPart {
  int degree;
  Polynomial part;
};

/// Parts in increasing weighted degree; empty iff p == 0.
std::vector<HomogeneousPart> homogeneous_decomposition(const Polynomial& p,
                                                       const WeightVector& w);
/// The weighted-degree-k part (possibly zero).
Polynomial homogeneous_part(const Polynomial& p, const WeightVector& w, int k);

/// All exponent vectors in `nvars` variables of total degree <= max_degree,
/// largest first under grlex.
std::vector<Monomial> monomials_up_to_degree(std::size_t nvars, int max_degree);

std::string to_string(const Rational& q);
std::string to_string(const Polynomial& p);
std::ostream& operator<<(std::ostream& os, const Polynomial& p);

/// Parses `3/2*x1^2*x2 - y` style text. Throws ParseError on syntax errors or unknown names.
Polynomial parse_polynomial(std::string_view text, const RingPtr& ring);
/// Parses an integer or integer/integer literal, with optional sign.
Rational parse_rational(std::string_view text);

}  // namespace minder
