#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "causal/index.hpp"
#include "causal/matrix.hpp"

namespace causal {

/// Joint conditional distribution P(x_1..x_n | a_1..a_n) over finite alphabets.
/// Rows index joint outputs, columns joint inputs; leftmost party most
/// significant in both.
class ConditionalDistribution {
 public:
  ConditionalDistribution(std::vector<std::size_t> input_sizes, std::vector<std::size_t> output_sizes,
                          RationalMatrix table);

  std::size_t party_count() const { return inputs_.digits(); }
  const MixedRadix& input_radix() const { return inputs_; }
  const MixedRadix& output_radix() const { return outputs_; }
  const RationalMatrix& table() const { return table_; }

  const Rational& probability(std::span<const std::size_t> outputs, std::span<const std::size_t> inputs) const {
    return table_.at(outputs_.encode(outputs), inputs_.encode(inputs));
  }

  /// Distribution of party p's output for the given joint input index.
  std::vector<Rational> output_marginal(std::size_t party, std::size_t joint_input) const;

  /// Every column is a probability vector.
  bool is_valid() const { return table_.is_column_stochastic(); }

  friend bool operator==(const ConditionalDistribution&, const ConditionalDistribution&) = default;

 private:
  MixedRadix inputs_;
  MixedRadix outputs_;
  RationalMatrix table_;
};

}  // namespace causal
