#include "minder/example.hpp"

#include <numeric>

#include "minder/firstint.hpp"

namespace minder {

const RingPtr& example_ring() {
  static const RingPtr ring = make_ring({"x", "y"});
  return ring;
}

Derivation example_combination(const Rational& lambda1, const Rational& lambda2) {
  const RingPtr& ring = example_ring();
  return Derivation(ring, {Polynomial::variable(ring, 0) * lambda1, Polynomial::variable(ring, 1) * lambda2});
}

SlopeClassification classify_combination(const Rational& lambda1, const Rational& lambda2) {
  if (sgn(lambda1) == 0 && sgn(lambda2) == 0) {
    throw Error(ErrorCode::InvalidArgument, "classify_combination: (0, 0) is not a derivation of the family");
  }
  const RingPtr& ring = example_ring();
  SlopeClassification out;
  auto integral = [&](long p, long q) {
    out.variant = SlopeClassification::Variant::HasFirstIntegral;
    out.p = p;
    out.q = q;
    out.integral = Polynomial::monomial(ring, Monomial({static_cast<int>(q), static_cast<int>(p)}));
  };

  if (sgn(lambda2) == 0) {
    integral(1, 0);
    return out;
  }
  const Rational ratio = lambda1 / lambda2;
  if (sgn(ratio) > 0) return out;
  // lambda1/lambda2 = -p/q in lowest terms; mpq keeps num/den coprime with den > 0.
  const Rational minus_ratio = -ratio;
  if (!minus_ratio.get_num().fits_slong_p() || !minus_ratio.get_den().fits_slong_p()) {
    throw Error(ErrorCode::InvalidArgument, "classify_combination: slope too large");
  }
  integral(minus_ratio.get_num().get_si(), minus_ratio.get_den().get_si());
  return out;
}

LocusSample sample_minimal_locus(const std::vector<std::pair<Rational, Rational>>& points, int degree_bound) {
  if (degree_bound < 1) throw Error(ErrorCode::InvalidArgument, "sample_minimal_locus: D must be at least 1");
  LocusSample sample;
  sample.degree_bound = degree_bound;
  for (const auto& [l1, l2] : points) {
    LocusPoint pt;
    pt.lambda1 = l1;
    pt.lambda2 = l2;
    pt.classification = classify_combination(l1, l2);

    const auto found = first_integrals(DerivationFamily({example_combination(l1, l2)}), degree_bound);
    pt.minimal = found.integrals.empty();
    if (!pt.minimal) pt.witness = found.integrals.front();

    if (!pt.classification.minimal()) {
      const long degree = *pt.classification.p + *pt.classification.q;
      if (degree <= degree_bound) {
        pt.agrees = pt.witness && *pt.witness == *pt.classification.integral;
      } else {
        pt.beyond_degree_bound = true;
        pt.agrees = std::nullopt;
      }
    } else {
      pt.agrees = pt.minimal;
    }
    sample.points.push_back(std::move(pt));
  }
  return sample;
}

std::vector<BadLine> enumerate_bad_lines(int height) {
  if (height < 1) throw Error(ErrorCode::InvalidArgument, "enumerate_bad_lines: height must be at least 1");
  std::vector<BadLine> out;
  for (long s = 1; s <= height; ++s) {
    for (long p = 0; p < s; ++p) {
      const long q = s - p;
      if (std::gcd(p, q) == 1) out.push_back({p, q, false});
    }
  }
  out.push_back({1, 0, true});
  return out;
}

}  // namespace minder
