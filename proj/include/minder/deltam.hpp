#pragma once

// The homogeneous test derivations x1^m D[x1] + x2^m D[x2], their rigidity lemmas,
// and the search for a minimal combination x1^m d1 + x2^m d2 of a normalized pair.
//
// Nothing here proves statements about the full polynomial ring. Each check is a
// finite linear-algebra computation at a stated degree bound, and the certificates
// record exactly which bound was used.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "minder/derivation.hpp"
#include "minder/firstint.hpp"

namespace minder {

/// x1^m D[x1] + x2^m D[x2] where x1, x2 are the first two variables of `ring`;
/// the remaining variables are inert.
Derivation delta_m(int m, const RingPtr& ring);

/// True iff the degree-<=D kernel of delta_m is exactly the span of the monomials
/// free of x1 and x2.
bool verify_lemma_noyau(int m, int degree_bound, const RingPtr& ring);

struct NoyauWitness {
  Polynomial p;
  Polynomial q;
};

struct Noyau2Result {
  bool trivial_only = true;
  std::optional<NoyauWitness> witness;
};

/// Solves delta_m(P) + x1*x2^m*Q = 0 with P homogeneous of degree k+2 and Q homogeneous
/// of degree k in (x1, x2). Coefficients are taken in Q; since delta_m is linear over the
/// inert variables, that decides the question for every coefficient domain.
/// The witness, when one exists, is scaled so that Q has leading coefficient 1.
Noyau2Result verify_lemma_noyau2(int k, int m, const RingPtr& ring);

/// x1^m d1 + x2^m d2.
Derivation capital_delta_m(const Derivation& d1, const Derivation& d2, std::size_t x1_index,
                           std::size_t x2_index, int m);

struct TraceEntry {
  Polynomial coefficient;
  std::size_t source_index;
};

struct FoldStep {
  enum class Kind { Base, Normalized, Fallback };
  Kind kind = Kind::Base;
  std::size_t member = 0;
  std::size_t x1_index = 0;
  std::size_t x2_index = 0;
  /// Exponents of the coefficients on (accumulated, member); m for both in a Normalized step.
  /// A negative exponent marks a coefficient of zero.
  int exponent_acc = 0;
  int exponent_member = 0;
  std::vector<std::pair<int, bool>> per_m_results;
};

struct MinimalityCertificate {
  /// Smallest certified m; 0 when no normalized step ran.
  int m_star = 0;
  int degree_bound = 0;
  std::vector<std::pair<int, bool>> per_m_results;
  Derivation combination;
  std::vector<TraceEntry> coefficient_trace;
  std::vector<FoldStep> steps;
};

/// Rebuilds sum coefficient_i * family[source_i] from a trace.
Derivation rebuild_from_trace(const std::vector<TraceEntry>& trace, const DerivationFamily& family);

/// Checks d1(x1)=1, d1(x2)=0, d2(x2)=1, d2(x1)=0; returns the first failing identity.
std::optional<std::string> normalization_failure(const Derivation& d1, const Derivation& d2,
                                                 std::size_t x1_index, std::size_t x2_index);

MinimalityCertificate find_minimal_m(const Derivation& d1, const Derivation& d2,
                                     std::size_t x1_index, std::size_t x2_index,
                                     int degree_bound, int m_max);

/// Left fold of the family: acc <- combine(acc, next member). `normalizations[i]`
/// names the variable pair for step i+1; missing entries default to (0, 1).
MinimalityCertificate fold_family(const DerivationFamily& family,
                                  const std::vector<std::pair<std::size_t, std::size_t>>& normalizations,
                                  int degree_bound, int m_max);

}  // namespace minder
