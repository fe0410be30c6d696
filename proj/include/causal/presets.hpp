#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "causal/classical_process.hpp"
#include "causal/distribution.hpp"

namespace causal::presets {

/// Uniform mixture of the cyclic identity channel R -> S -> T -> R and the
/// cyclic bit-flip channel; perfectly wins the parity game.
ClassicalProcess circular_mixture();
/// Deterministic three-party process routed by the majority of the outputs;
/// perfectly wins the neighbour-guessing game.
ClassicalProcess majority();
/// R receives 0, identity channels R -> S and S -> T.
ClassicalProcess identity_chain();
/// E0: i = (o_T, o_R, o_S).
ClassicalProcess cyclic_identity();
/// E1: i = (o_T + 1, o_R + 1, o_S + 1).
ClassicalProcess cyclic_flip();
/// 51/100 E0 + 49/100 E1: non-negative but violates total probability.
ClassicalProcess perturbed_mixture();
/// Product of a one-bit identity channel R -> S and one S -> R.
ClassicalProcess two_channel();
/// One party whose output is fed straight back to its input.
ClassicalProcess identity_loop();

/// Two-party behaviours over bits, indexed (x, y | a, b).
ConditionalDistribution one_way_signaling();
ConditionalDistribution two_way_signaling();
ConditionalDistribution uniform_noise();

std::vector<std::string> process_names();
std::vector<std::string> distribution_names();
/// Throws std::invalid_argument for unknown names.
ClassicalProcess process(std::string_view name);
ConditionalDistribution distribution(std::string_view name);

}  // namespace causal::presets
