#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "causal/classical_process.hpp"
#include "causal/errors.hpp"
#include "causal/fixed_point.hpp"
#include "causal/strategy.hpp"

namespace causal {

/// A cooperative game: private inputs a_p and a shared input m are drawn
/// independently; each party produces x_p; the predicate decides the win.
///
/// A party's strategy sees the pair (m, a_p) as one game input, encoded
/// m * |A_p| + a_p. Without a shared input (size 1) that is just a_p.
struct GameSpec {
  using Predicate =
      std::function<bool(std::size_t shared, std::span<const std::size_t> inputs, std::span<const std::size_t> outputs)>;

  std::string name;
  std::vector<std::size_t> input_sizes;
  std::vector<std::vector<Rational>> input_distributions;
  std::vector<std::size_t> output_sizes;
  std::size_t shared_size = 1;
  std::vector<Rational> shared_distribution{Rational(1)};
  Predicate wins;

  std::size_t party_count() const { return input_sizes.size(); }
  std::size_t strategy_input_size(std::size_t party) const { return shared_size * input_sizes[party]; }

  /// Throws std::invalid_argument on inconsistent sizes or distributions that
  /// are not exact probability vectors.
  void validate() const;
};

/// Uniform distribution over n values.
std::vector<Rational> uniform(std::size_t n);

/// "game1" (two-party send-your-input; S's input encodes (b, b') as 2b + b'),
/// "game2" (three-party parity with shared ternary m), "game3" (three-party
/// neighbour guessing). Throws std::invalid_argument for other names.
GameSpec builtin_game(std::string_view name);
std::vector<std::string> builtin_game_names();

struct GameResult {
  Rational success_probability;
  /// Success probability conditioned on each shared value.
  std::vector<Rational> by_shared;
  /// Win probability for each (shared, joint private input), indexed
  /// [m][joint a].
  std::vector<std::vector<Rational>> by_input;
};

/// Exact success probability. The strategy's game inputs must match
/// GameSpec::strategy_input_size and its game outputs the game's outputs.
GameResult play(const GameSpec& game, const ClassicalProcess& process, const LocalStrategy& strategy);
GameResult play(const GameSpec& game, const ProcessFunction& process, const LocalStrategy& strategy);
/// Scores a behaviour P(x | strategy inputs) directly.
GameResult score(const GameSpec& game, const ConditionalDistribution& behaviour);

/// Deterministic strategy with a dynamically chosen order in which every
/// party sees the game inputs of all parties before it.
///
/// A node belongs to one party; for each of its private inputs it fixes the
/// party's output and the subtree that acts next (empty at the last party).
struct StrategyNode {
  std::size_t party = 0;
  std::vector<std::size_t> output;
  std::vector<StrategyNode> next;

  friend bool operator==(const StrategyNode&, const StrategyNode&) = default;
};

struct CausalStrategy {
  std::size_t first_party = 0;
  /// One tree per shared value, each rooted at first_party.
  std::vector<StrategyNode> roots;

  friend bool operator==(const CausalStrategy&, const CausalStrategy&) = default;
};

struct CausalBound {
  GameResult result;
  CausalStrategy strategy;
  std::uint64_t nodes_visited = 0;
};

/// Exact optimum over deterministic causal strategies. The first party is
/// chosen once for all shared values; later choices may depend on m. Ties go
/// to the lowest party index and the lowest output.
CausalBound causal_bound(const GameSpec& game, std::uint64_t cap = kDefaultEnumerationCap);

/// Outputs of all parties for one (m, a), following the tree.
std::vector<std::size_t> run_causal_strategy(const CausalStrategy& strategy, std::size_t shared,
                                             std::span<const std::size_t> inputs);
GameResult evaluate_causal_strategy(const GameSpec& game, const CausalStrategy& strategy);

/// A causal process and local strategies reproducing `strategy`: each party
/// broadcasts its game input, and the environment forwards to every party the
/// inputs of exactly those parties that act before it (others masked).
std::pair<ProcessFunction, LocalStrategy> realize_causal_strategy(const GameSpec& game,
                                                                  const CausalStrategy& strategy);

/// "game2-parity" (three-case strategies for the circular mixture),
/// "game3-copy" (x = i, o = a), "constant-zero" (x = 0, o = 0) for bit
/// processes; sized for `game`.
LocalStrategy strategy_preset(std::string_view name, const GameSpec& game);
std::vector<std::string> strategy_preset_names();

// Game file:
//   game <name>
//   inputs <|A_1|> .. <|A_n|>
//   outputs <|X_1|> .. <|X_n|>
//   shared <|M|>                       optional, default 1
//   distribution <party> <p_0> ..      optional, default uniform
//   shared-distribution <p_0> ..       optional, default uniform
//   win [<m> ;] <a_1> .. <a_n> -> <x_1> .. <x_n>
// Every (m, a, x) not listed loses.
GameSpec parse_game(std::string_view text, const std::string& source = "<game>");
/// "<name>" of a built-in (optionally "preset:<name>") or a game file path.
GameSpec load_game(const std::string& reference);

}  // namespace causal
