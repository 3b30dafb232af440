#pragma once

// The two-dimensional family {x D[x], y D[y]} on Q[x, y].
//
// lambda1 x D[x] + lambda2 y D[y] kills x^q y^p exactly when lambda1 q + lambda2 p = 0,
// so the non-minimal members are the axis lambda2 = 0 and the lines of nonpositive
// rational slope lambda1/lambda2 = -p/q. Sampling with a degree bound only ever sees
// the lines with p + q <= D, which is the finite-dimensional shadow of residuality.

#include <optional>
#include <utility>
#include <vector>

#include "minder/derivation.hpp"

namespace minder {

struct SlopeClassification {
  enum class Variant { Minimal, HasFirstIntegral };
  Variant variant = Variant::Minimal;
  /// Present iff HasFirstIntegral. The lambda2 = 0 axis is reported as p = 1, q = 0.
  std::optional<long> p;
  std::optional<long> q;
  std::optional<Polynomial> integral;

  bool minimal() const noexcept { return variant == Variant::Minimal; }
};

/// The ring Q[x, y] shared by this module.
const RingPtr& example_ring();

/// lambda1 x D[x] + lambda2 y D[y].
Derivation example_combination(const Rational& lambda1, const Rational& lambda2);

SlopeClassification classify_combination(const Rational& lambda1, const Rational& lambda2);

struct LocusPoint {
  Rational lambda1;
  Rational lambda2;
  /// No first integral of degree <= D.
  bool minimal = true;
  std::optional<Polynomial> witness;
  SlopeClassification classification;
  /// Set when the classifier's integral has degree <= D: whether brute force agrees.
  std::optional<bool> agrees;
  /// Classifier predicts an integral of degree p + q > D that the bound cannot see.
  bool beyond_degree_bound = false;
};

struct LocusSample {
  int degree_bound = 0;
  std::vector<LocusPoint> points;
};

LocusSample sample_minimal_locus(const std::vector<std::pair<Rational, Rational>>& points, int degree_bound);

struct BadLine {
  long p = 0;
  long q = 0;
  /// The lambda2 = 0 axis; p and q are then 1 and 0.
  bool axis = false;
};

/// Coprime (p, q), p >= 0, q >= 1, p + q <= height, ordered by p + q then p,
/// followed by the axis sentinel.
std::vector<BadLine> enumerate_bad_lines(int height);

}  // namespace minder
