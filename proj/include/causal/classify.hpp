#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "causal/classical_process.hpp"
#include "causal/distribution.hpp"
#include "causal/errors.hpp"
#include "causal/strategy.hpp"

namespace causal {

enum class CausalVerdict { Causal, NonCausal };

struct ClassifyOptions {
  /// Private game-input alphabet per party.
  std::size_t game_input_size = 2;
  /// When true the game output is the received environment value (x = i) and
  /// only the environment-output map (a, i) -> o is searched. This loses no
  /// witnesses: x is a function of (a, i), so any dependence of x on other
  /// parties' inputs is already a dependence of i.
  bool copy_out_search = true;
  /// Game-output alphabet for the full (x, o) search.
  std::size_t game_output_size = 2;
  std::uint64_t cap = kDefaultEnumerationCap;
};

struct Classification {
  CausalVerdict verdict = CausalVerdict::Causal;
  /// Strategy tuple whose behaviour violates the Lemma-1 condition.
  std::optional<LocalStrategy> witness;
  std::optional<ConditionalDistribution> witness_behaviour;
  std::uint64_t strategies_checked = 0;
};

/// Searches all tuples of deterministic local strategies for one whose induced
/// behaviour has no causally-first party. The process must be logically
/// consistent (InconsistentProcess is raised otherwise).
Classification classify(const ClassicalProcess& process, const ClassifyOptions& options = {});

}  // namespace causal
