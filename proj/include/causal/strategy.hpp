#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "causal/classical_process.hpp"
#include "causal/distribution.hpp"
#include "causal/matrix.hpp"

namespace causal {

/// One party's local operation: a conditional distribution over
/// (game output x, environment output o) given (game input a, environment
/// input i). Rows are x * |O| + o, columns a * |I| + i.
class PartyStrategy {
 public:
  struct Shape {
    std::size_t game_inputs = 2;
    std::size_t env_inputs = 2;
    std::size_t game_outputs = 2;
    std::size_t env_outputs = 2;

    friend bool operator==(const Shape&, const Shape&) = default;
  };

  /// Throws std::invalid_argument unless `table` is column-stochastic with the
  /// right shape.
  PartyStrategy(Shape shape, RationalMatrix table);

  using Rule = std::function<std::pair<std::size_t, std::size_t>(std::size_t a, std::size_t i)>;
  /// (a, i) -> (x, o).
  static PartyStrategy deterministic(Shape shape, const Rule& rule);

  const Shape& shape() const { return shape_; }
  const RationalMatrix& table() const { return table_; }
  bool is_deterministic() const { return table_.is_deterministic(); }

  const Rational& probability(std::size_t x, std::size_t o, std::size_t a, std::size_t i) const {
    return table_.at(x * shape_.env_outputs + o, a * shape_.env_inputs + i);
  }

  /// For a deterministic strategy: the (x, o) chosen on (a, i).
  std::pair<std::size_t, std::size_t> choice(std::size_t a, std::size_t i) const;

  friend bool operator==(const PartyStrategy&, const PartyStrategy&) = default;

 private:
  Shape shape_;
  RationalMatrix table_;
};

using LocalStrategy = std::vector<PartyStrategy>;

/// Checks that the strategies plug into the process's environment alphabets.
void check_strategy_fits(const ClassicalProcess& process, const LocalStrategy& strategy);

/// P(x | a) = sum_{i,o} prod_p S_p(x_p, o_p | a_p, i_p) E(i | o) for the joint
/// game input `inputs`; indexed by joint game output. Throws
/// InconsistentProcess when the result does not sum to exactly one.
std::vector<Rational> induced_distribution(const ClassicalProcess& process, const LocalStrategy& strategy,
                                           std::span<const std::size_t> inputs);

/// The full induced behaviour over all joint game inputs.
ConditionalDistribution induced_distribution(const ClassicalProcess& process, const LocalStrategy& strategy);

}  // namespace causal
