#include "causal/distribution.hpp"

#include <stdexcept>

namespace causal {

ConditionalDistribution::ConditionalDistribution(std::vector<std::size_t> input_sizes,
                                                 std::vector<std::size_t> output_sizes, RationalMatrix table)
    : inputs_(std::move(input_sizes)), outputs_(std::move(output_sizes)), table_(std::move(table)) {
  if (inputs_.digits() != outputs_.digits()) throw std::invalid_argument("input/output party count mismatch");
  if (table_.rows() != outputs_.size() || table_.cols() != inputs_.size()) {
    throw std::invalid_argument("distribution table shape does not match alphabets");
  }
}

std::vector<Rational> ConditionalDistribution::output_marginal(std::size_t party, std::size_t joint_input) const {
  std::vector<Rational> m(outputs_.radix(party));
  for (std::size_t x = 0; x < outputs_.size(); ++x) {
    const Rational& v = table_.at(x, joint_input);
    if (!v.is_zero()) m[outputs_.digit(x, party)] += v;
  }
  return m;
}

}  // namespace causal
