#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "causal/distribution.hpp"

namespace causal {

/// Causal structure read off a behaviour P(x_1..x_n | a_1..a_n).
struct CausalRelationReport {
  /// correlated[p][q]: party p's input is correlated with party q's output,
  /// i.e. for some fixed values of all other inputs, q's output marginal
  /// changes with p's input. The diagonal is always false.
  std::vector<std::vector<bool>> correlated;
  /// Pairs (p, q) with p in the causal past of q: p's input is correlated with
  /// q's output and q's input is uncorrelated with p's output.
  std::vector<std::pair<std::size_t, std::size_t>> precedes;
  /// Some party's output is independent of every other party's input (the
  /// necessary condition for a predefined causal order).
  bool lemma1_satisfied = true;
  /// Parties whose output depends on nobody else's input.
  std::vector<std::size_t> causally_first;
};

CausalRelationReport infer_relations(const ConditionalDistribution& behaviour);

/// Decomposition P = p * P1 + (1 - p) * P2 with P1 compatible with R before S
/// (X-marginal independent of B) and P2 with S before R (Y-marginal
/// independent of A). Components are absent when their weight is zero.
struct TwoPartyDecomposition {
  Rational weight_r_first;
  std::optional<ConditionalDistribution> r_first;
  std::optional<ConditionalDistribution> s_first;

  /// Recombines the components; equals the input exactly.
  ConditionalDistribution reconstruct() const;
};

/// Exact LP membership in the two-party causal polytope. nullopt means the
/// behaviour is not a convex combination of the two orderings.
std::optional<TwoPartyDecomposition> two_party_causal_membership(const ConditionalDistribution& behaviour);

}  // namespace causal
