#include "causal/classify.hpp"

#include <vector>

#include "causal/index.hpp"
#include "causal/relations.hpp"

namespace causal {

namespace {

// A deterministic party strategy in table form: for column a * |I| + i, the
// chosen game output and environment output.
struct Choice {
  std::vector<std::size_t> x;
  std::vector<std::size_t> o;
};

std::vector<Choice> enumerate_choices(const PartySpec& party, const ClassifyOptions& opt) {
  const std::size_t cols = opt.game_input_size * party.input_size;
  const std::size_t values = opt.copy_out_search ? party.output_size : opt.game_output_size * party.output_size;
  checked_power(values, cols, opt.cap);
  std::vector<Choice> out;
  Odometer odo(std::vector<std::size_t>(cols, values));
  do {
    Choice c{std::vector<std::size_t>(cols), std::vector<std::size_t>(cols)};
    for (std::size_t col = 0; col < cols; ++col) {
      const std::size_t v = odo.current()[col];
      if (opt.copy_out_search) {
        c.x[col] = col % party.input_size;
        c.o[col] = v;
      } else {
        c.x[col] = v / party.output_size;
        c.o[col] = v % party.output_size;
      }
    }
    out.push_back(std::move(c));
  } while (odo.next());
  return out;
}

PartyStrategy to_strategy(const PartySpec& party, const ClassifyOptions& opt, const Choice& c) {
  const PartyStrategy::Shape shape{opt.game_input_size, party.input_size,
                                   opt.copy_out_search ? party.input_size : opt.game_output_size,
                                   party.output_size};
  return PartyStrategy::deterministic(shape, [&](std::size_t a, std::size_t i) {
    const std::size_t col = a * party.input_size + i;
    return std::pair{c.x[col], c.o[col]};
  });
}

}  // namespace

Classification classify(const ClassicalProcess& process, const ClassifyOptions& options) {
  const std::size_t n = process.party_count();
  std::vector<std::vector<Choice>> per_party;
  std::vector<std::size_t> counts;
  std::vector<std::size_t> x_sizes;
  for (const auto& party : process.parties()) {
    per_party.push_back(enumerate_choices(party, options));
    counts.push_back(per_party.back().size());
    x_sizes.push_back(options.copy_out_search ? party.input_size : options.game_output_size);
  }
  checked_product(counts, options.cap);

  const MixedRadix game_in(std::vector<std::size_t>(n, options.game_input_size));
  const MixedRadix game_out(x_sizes);
  const auto& env_in = process.input_radix();
  const auto& env_out = process.output_radix();
  const auto& table = process.table();

  Classification result;
  std::vector<std::size_t> a(n), i(n), x(n), o(n);
  Odometer odo(counts);
  do {
    ++result.strategies_checked;
    // With deterministic strategies, P(x | a) = sum_i E(i | o(a, i)) [x = x(a, i)].
    RationalMatrix behaviour(game_out.size(), game_in.size());
    for (std::size_t col = 0; col < game_in.size(); ++col) {
      game_in.decode_into(col, a);
      Rational total;
      for (std::size_t ii = 0; ii < env_in.size(); ++ii) {
        env_in.decode_into(ii, i);
        for (std::size_t p = 0; p < n; ++p) {
          const Choice& c = per_party[p][odo.current()[p]];
          const std::size_t k = a[p] * process.parties()[p].input_size + i[p];
          x[p] = c.x[k];
          o[p] = c.o[k];
        }
        const Rational& w = table.at(ii, env_out.encode(o));
        if (w.is_zero()) continue;
        behaviour.at(game_out.encode(x), col) += w;
        total += w;
      }
      if (!total.is_one()) {
        throw InconsistentProcess("process is not logically consistent: total probability " + total.str());
      }
    }
    ConditionalDistribution dist(game_in.radices(), game_out.radices(), std::move(behaviour));
    if (!infer_relations(dist).lemma1_satisfied) {
      result.verdict = CausalVerdict::NonCausal;
      LocalStrategy witness;
      for (std::size_t p = 0; p < n; ++p) {
        witness.push_back(to_strategy(process.parties()[p], options, per_party[p][odo.current()[p]]));
      }
      result.witness = std::move(witness);
      result.witness_behaviour = std::move(dist);
      break;
    }
  } while (odo.next());
  return result;
}

}  // namespace causal
