#include "causal/strategy.hpp"

#include <stdexcept>
#include <string>

namespace causal {

PartyStrategy::PartyStrategy(Shape shape, RationalMatrix table) : shape_(shape), table_(std::move(table)) {
  if (shape_.game_inputs == 0 || shape_.env_inputs == 0 || shape_.game_outputs == 0 || shape_.env_outputs == 0) {
    throw std::invalid_argument("strategy alphabets must be non-empty");
  }
  if (table_.rows() != shape_.game_outputs * shape_.env_outputs ||
      table_.cols() != shape_.game_inputs * shape_.env_inputs) {
    throw std::invalid_argument("strategy table shape does not match its alphabets");
  }
  if (!table_.is_column_stochastic()) throw std::invalid_argument("strategy table is not column-stochastic");
}

PartyStrategy PartyStrategy::deterministic(Shape shape, const Rule& rule) {
  RationalMatrix t(shape.game_outputs * shape.env_outputs, shape.game_inputs * shape.env_inputs);
  for (std::size_t a = 0; a < shape.game_inputs; ++a) {
    for (std::size_t i = 0; i < shape.env_inputs; ++i) {
      const auto [x, o] = rule(a, i);
      if (x >= shape.game_outputs || o >= shape.env_outputs) throw std::invalid_argument("strategy rule out of range");
      t.at(x * shape.env_outputs + o, a * shape.env_inputs + i) = 1;
    }
  }
  return PartyStrategy(shape, std::move(t));
}

std::pair<std::size_t, std::size_t> PartyStrategy::choice(std::size_t a, std::size_t i) const {
  const std::size_t col = a * shape_.env_inputs + i;
  for (std::size_t r = 0; r < table_.rows(); ++r) {
    if (table_.at(r, col).is_one()) return {r / shape_.env_outputs, r % shape_.env_outputs};
  }
  throw std::logic_error("choice() on a non-deterministic strategy column");
}

void check_strategy_fits(const ClassicalProcess& process, const LocalStrategy& strategy) {
  if (strategy.size() != process.party_count()) {
    throw std::invalid_argument("strategy has " + std::to_string(strategy.size()) + " parties, process has " +
                                std::to_string(process.party_count()));
  }
  for (std::size_t p = 0; p < strategy.size(); ++p) {
    const auto& party = process.parties()[p];
    const auto& s = strategy[p].shape();
    if (s.env_inputs != party.input_size || s.env_outputs != party.output_size) {
      throw std::invalid_argument("strategy for party '" + party.name + "' does not match its environment alphabets");
    }
  }
}

namespace {

struct Entry {
  std::size_t i;
  std::size_t o;
  Rational weight;
};

std::vector<Entry> nonzero_entries(const ClassicalProcess& process) {
  std::vector<Entry> out;
  const auto& t = process.table();
  for (std::size_t i = 0; i < t.rows(); ++i) {
    for (std::size_t o = 0; o < t.cols(); ++o) {
      if (!t.at(i, o).is_zero()) out.push_back({i, o, t.at(i, o)});
    }
  }
  return out;
}

// result[x] += weight * prod_p S_p(x_p, o_p | a_p, i_p), walking parties
// left-to-right so that x is built most-significant first.
void accumulate(const LocalStrategy& strategy, std::span<const std::size_t> a, std::span<const std::size_t> i,
                std::span<const std::size_t> o, std::size_t party, std::size_t x_prefix, const Rational& weight,
                std::vector<Rational>& result) {
  if (party == strategy.size()) {
    result[x_prefix] += weight;
    return;
  }
  const auto& s = strategy[party];
  for (std::size_t x = 0; x < s.shape().game_outputs; ++x) {
    const Rational& p = s.probability(x, o[party], a[party], i[party]);
    if (p.is_zero()) continue;
    accumulate(strategy, a, i, o, party + 1, x_prefix * s.shape().game_outputs + x, weight * p, result);
  }
}

std::vector<Rational> induced_column(const ClassicalProcess& process, const LocalStrategy& strategy,
                                     const std::vector<Entry>& entries, std::span<const std::size_t> inputs,
                                     std::size_t joint_outputs) {
  std::vector<Rational> result(joint_outputs);
  std::vector<std::size_t> i(process.party_count()), o(process.party_count());
  for (const auto& e : entries) {
    process.input_radix().decode_into(e.i, i);
    process.output_radix().decode_into(e.o, o);
    accumulate(strategy, inputs, i, o, 0, 0, e.weight, result);
  }
  Rational total;
  for (const auto& v : result) total += v;
  if (!total.is_one()) {
    throw InconsistentProcess("induced distribution sums to " + total.str() + " instead of 1");
  }
  return result;
}

MixedRadix game_inputs(const LocalStrategy& s) {
  std::vector<std::size_t> r;
  for (const auto& p : s) r.push_back(p.shape().game_inputs);
  return MixedRadix(r);
}

MixedRadix game_outputs(const LocalStrategy& s) {
  std::vector<std::size_t> r;
  for (const auto& p : s) r.push_back(p.shape().game_outputs);
  return MixedRadix(r);
}

}  // namespace

std::vector<Rational> induced_distribution(const ClassicalProcess& process, const LocalStrategy& strategy,
                                           std::span<const std::size_t> inputs) {
  check_strategy_fits(process, strategy);
  const auto in = game_inputs(strategy);
  in.encode(inputs);  // range check
  return induced_column(process, strategy, nonzero_entries(process), inputs, game_outputs(strategy).size());
}

ConditionalDistribution induced_distribution(const ClassicalProcess& process, const LocalStrategy& strategy) {
  check_strategy_fits(process, strategy);
  const auto in = game_inputs(strategy);
  const auto out = game_outputs(strategy);
  const auto entries = nonzero_entries(process);
  RationalMatrix table(out.size(), in.size());
  std::vector<std::size_t> a(in.digits());
  for (std::size_t col = 0; col < in.size(); ++col) {
    in.decode_into(col, a);
    auto column = induced_column(process, strategy, entries, a, out.size());
    for (std::size_t x = 0; x < out.size(); ++x) table.at(x, col) = std::move(column[x]);
  }
  return ConditionalDistribution(in.radices(), out.radices(), std::move(table));
}

}  // namespace causal
