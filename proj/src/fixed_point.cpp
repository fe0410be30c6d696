#include "causal/fixed_point.hpp"

#include <stdexcept>

namespace causal {

ProcessFunction::ProcessFunction(std::vector<std::size_t> input_sizes, std::vector<std::size_t> output_sizes,
                                 std::vector<std::size_t> table)
    : inputs_(std::move(input_sizes)), outputs_(std::move(output_sizes)), table_(std::move(table)) {
  if (inputs_.digits() != outputs_.digits() || inputs_.digits() == 0) {
    throw std::invalid_argument("process function: input and output alphabets must list the same parties");
  }
  if (table_.size() != outputs_.size()) throw std::invalid_argument("process function: table is not total");
  for (auto i : table_) {
    if (i >= inputs_.size()) throw std::invalid_argument("process function: image out of range");
  }
}

ProcessFunction ProcessFunction::from_map(std::vector<std::size_t> input_sizes,
                                          std::vector<std::size_t> output_sizes, const Map& map) {
  const MixedRadix in(input_sizes), out(output_sizes);
  std::vector<std::size_t> table(out.size());
  std::vector<std::size_t> o(out.digits());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out.decode_into(k, o);
    const auto i = map(o);
    if (i.size() != in.digits()) throw std::invalid_argument("process function: map returned the wrong arity");
    for (std::size_t p = 0; p < i.size(); ++p) {
      if (i[p] >= in.radix(p)) throw std::invalid_argument("process function: image out of range");
    }
    table[k] = in.encode(i);
  }
  return ProcessFunction(std::move(input_sizes), std::move(output_sizes), std::move(table));
}

std::vector<std::string> default_party_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t p = 0; p < n; ++p) names.push_back(n <= 3 ? std::string(1, "RST"[p]) : "P" + std::to_string(p + 1));
  return names;
}

ClassicalProcess ProcessFunction::to_process(std::vector<std::string> names) const {
  if (names.empty()) names = default_party_names(party_count());
  if (names.size() != party_count()) throw std::invalid_argument("process function: wrong number of party names");
  std::vector<PartySpec> parties;
  for (std::size_t p = 0; p < party_count(); ++p) parties.push_back({names[p], inputs_.radix(p), outputs_.radix(p)});
  RationalMatrix t(inputs_.size(), outputs_.size());
  for (std::size_t o = 0; o < table_.size(); ++o) t.at(table_[o], o) = 1;
  return ClassicalProcess(std::move(parties), std::move(t));
}

ProcessFunction as_function(const ClassicalProcess& process) {
  if (!process.is_deterministic()) throw std::invalid_argument("process is not deterministic (table is not 0/1)");
  const auto& t = process.table();
  std::vector<std::size_t> table(t.cols());
  for (std::size_t o = 0; o < t.cols(); ++o) {
    for (std::size_t i = 0; i < t.rows(); ++i) {
      if (t.at(i, o).is_one()) table[o] = i;
    }
  }
  return ProcessFunction(process.input_radix().radices(), process.output_radix().radices(), std::move(table));
}

void check_ops_fit(const ProcessFunction& e, std::span<const DeterministicOp> ops) {
  if (ops.size() != e.party_count()) throw std::invalid_argument("expected one local operation per party");
  for (std::size_t p = 0; p < ops.size(); ++p) {
    if (ops[p].in_size() != e.input_radix().radix(p) || ops[p].out_size() != e.output_radix().radix(p)) {
      throw std::invalid_argument("local operation " + std::to_string(p) + " does not match the party's alphabets");
    }
  }
}

namespace {

// Composed table without the alphabet check.
void compose_into(const ProcessFunction& e, std::span<const DeterministicOp> ops, std::vector<std::size_t>& out) {
  const auto& in = e.input_radix();
  const auto& outr = e.output_radix();
  const std::size_t n = e.party_count();
  out.resize(in.size());
  for (std::size_t t = 0; t < in.size(); ++t) {
    std::size_t o = 0;
    for (std::size_t p = 0; p < n; ++p) o += ops[p](in.digit(t, p)) * outr.stride(p);
    out[t] = e.image(o);
  }
}

std::size_t count_unchecked(const ProcessFunction& e, std::span<const DeterministicOp> ops,
                            std::vector<std::size_t>& scratch) {
  compose_into(e, ops, scratch);
  std::size_t count = 0;
  for (std::size_t t = 0; t < scratch.size(); ++t) count += scratch[t] == t;
  return count;
}

std::vector<PartySpec> specs_of(const ProcessFunction& e) {
  std::vector<PartySpec> parties;
  for (std::size_t p = 0; p < e.party_count(); ++p) {
    parties.push_back({"", e.input_radix().radix(p), e.output_radix().radix(p)});
  }
  return parties;
}

}  // namespace

std::vector<std::size_t> composed_table(const ProcessFunction& e, std::span<const DeterministicOp> ops) {
  check_ops_fit(e, ops);
  std::vector<std::size_t> out;
  compose_into(e, ops, out);
  return out;
}

std::vector<std::vector<std::size_t>> fixed_points(const ProcessFunction& e, std::span<const DeterministicOp> ops) {
  const auto table = composed_table(e, ops);
  std::vector<std::vector<std::size_t>> points;
  for (std::size_t t = 0; t < table.size(); ++t) {
    if (table[t] == t) points.push_back(e.input_radix().decode(t));
  }
  return points;
}

std::size_t count_fixed_points(const ProcessFunction& e, std::span<const DeterministicOp> ops) {
  check_ops_fit(e, ops);
  std::vector<std::size_t> scratch;
  return count_unchecked(e, ops, scratch);
}

ExtremalityCheck is_deterministic_extremal(const ProcessFunction& e, std::uint64_t cap) {
  ExtremalityCheck check;
  std::vector<std::size_t> scratch;
  check.tuples_checked = for_each_op_tuple(specs_of(e), cap, [&](const std::vector<DeterministicOp>& ops) {
    const auto n = count_unchecked(e, ops, scratch);
    if (n == 1) return true;
    check.extremal = false;
    check.counterexample = ops;
    check.fixed_point_count = n;
    return false;
  });
  return check;
}

DeterministicDecomposition::DeterministicDecomposition(std::vector<Component> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw std::invalid_argument("decomposition: no components");
  Rational total;
  const auto& first = components_.front().second;
  for (const auto& [w, f] : components_) {
    if (w.sign() <= 0) throw std::invalid_argument("decomposition: weights must be positive");
    if (f.input_radix().radices() != first.input_radix().radices() ||
        f.output_radix().radices() != first.output_radix().radices()) {
      throw std::invalid_argument("decomposition: components have different alphabets");
    }
    total += w;
  }
  if (!total.is_one()) throw std::invalid_argument("decomposition: weights sum to " + total.str() + ", not 1");
}

ClassicalProcess DeterministicDecomposition::mixture(std::vector<std::string> names) const {
  auto base = components_.front().second.to_process(std::move(names));
  RationalMatrix t(base.table().rows(), base.table().cols());
  for (const auto& [w, f] : components_) {
    for (std::size_t o = 0; o < f.table().size(); ++o) t.at(f.image(o), o) += w;
  }
  return ClassicalProcess(base.parties(), std::move(t));
}

bool DeterministicDecomposition::decomposes(const ClassicalProcess& target) const {
  const auto& f = components_.front().second;
  if (target.input_radix().radices() != f.input_radix().radices() ||
      target.output_radix().radices() != f.output_radix().radices()) {
    return false;
  }
  return mixture().table() == target.table();
}

Rational average_fixed_points(const DeterministicDecomposition& d, std::span<const DeterministicOp> ops) {
  Rational avg;
  for (const auto& [w, f] : d.components()) avg += w * Rational(static_cast<long>(count_fixed_points(f, ops)));
  return avg;
}

AverageFixedPointCheck verify_theorem6(const DeterministicDecomposition& d, std::uint64_t cap) {
  AverageFixedPointCheck check;
  std::vector<std::size_t> scratch;
  const auto& first = d.components().front().second;
  check.tuples_checked = for_each_op_tuple(specs_of(first), cap, [&](const std::vector<DeterministicOp>& ops) {
    Rational avg;
    for (const auto& [w, f] : d.components()) avg += w * Rational(static_cast<long>(count_unchecked(f, ops, scratch)));
    if (avg.is_one()) return true;
    check.holds = false;
    check.counterexample = ops;
    check.average = avg;
    return false;
  });
  return check;
}

DeterministicDecomposition greedy_decomposition(const ClassicalProcess& process) {
  if (!process.table().is_column_stochastic()) {
    throw std::invalid_argument("greedy decomposition needs a column-stochastic table");
  }
  RationalMatrix rest = process.table();
  const std::size_t rows = rest.rows(), cols = rest.cols();
  std::vector<DeterministicDecomposition::Component> parts;
  Rational remaining(1);
  while (!remaining.is_zero()) {
    // Largest remaining entry of each column; the smallest of those is the
    // weight of the next component.
    std::vector<std::size_t> pick(cols);
    Rational weight = remaining;
    for (std::size_t o = 0; o < cols; ++o) {
      std::size_t best = 0;
      for (std::size_t i = 1; i < rows; ++i) {
        if (rest.at(i, o) > rest.at(best, o)) best = i;
      }
      pick[o] = best;
      if (rest.at(best, o) < weight) weight = rest.at(best, o);
    }
    for (std::size_t o = 0; o < cols; ++o) rest.at(pick[o], o) -= weight;
    remaining -= weight;
    parts.emplace_back(weight, ProcessFunction(process.input_radix().radices(), process.output_radix().radices(),
                                               std::move(pick)));
  }
  return DeterministicDecomposition(std::move(parts));
}

ConditionalDistribution induced_distribution(const ProcessFunction& e, const LocalStrategy& strategy) {
  const std::size_t n = e.party_count();
  if (strategy.size() != n) throw std::invalid_argument("expected one strategy per party");
  std::vector<std::size_t> a_sizes, x_sizes;
  for (std::size_t p = 0; p < n; ++p) {
    const auto& s = strategy[p].shape();
    if (s.env_inputs != e.input_radix().radix(p) || s.env_outputs != e.output_radix().radix(p)) {
      throw std::invalid_argument("strategy " + std::to_string(p) + " does not match the process alphabets");
    }
    a_sizes.push_back(s.game_inputs);
    x_sizes.push_back(s.game_outputs);
  }
  const MixedRadix A(a_sizes), X(x_sizes);
  RationalMatrix t(X.size(), A.size());
  const auto& in = e.input_radix();
  const auto& out = e.output_radix();
  std::vector<std::size_t> a(n), x(n);
  for (std::size_t ja = 0; ja < A.size(); ++ja) {
    A.decode_into(ja, a);
    for (std::size_t o = 0; o < out.size(); ++o) {
      const std::size_t i = e.image(o);
      for (std::size_t jx = 0; jx < X.size(); ++jx) {
        X.decode_into(jx, x);
        Rational w(1);
        for (std::size_t p = 0; p < n && !w.is_zero(); ++p) {
          w *= strategy[p].probability(x[p], out.digit(o, p), a[p], in.digit(i, p));
        }
        if (!w.is_zero()) t.at(jx, ja) += w;
      }
    }
    if (!t.column_sum(ja).is_one()) {
      throw InconsistentProcess("induced probabilities sum to " + t.column_sum(ja).str() + " for input " +
                                std::to_string(ja));
    }
  }
  return ConditionalDistribution(std::move(a_sizes), std::move(x_sizes), std::move(t));
}

namespace presets {

namespace {

ProcessFunction cycle(std::size_t flip) {
  return ProcessFunction::from_map({2, 2, 2}, {2, 2, 2}, [flip](std::span<const std::size_t> o) {
    return std::vector<std::size_t>{o[2] ^ flip, o[0] ^ flip, o[1] ^ flip};
  });
}

}  // namespace

DeterministicDecomposition decomposition(std::string_view name) {
  if (name == "circular-mixture") return DeterministicDecomposition({{Rational(1, 2), cycle(0)}, {Rational(1, 2), cycle(1)}});
  if (name == "perturbed-mixture") {
    return DeterministicDecomposition({{Rational(51, 100), cycle(0)}, {Rational(49, 100), cycle(1)}});
  }
  if (name == "cyclic-identity") return DeterministicDecomposition({{Rational(1), cycle(0)}});
  throw std::invalid_argument("unknown decomposition preset '" + std::string(name) + "'");
}

std::vector<std::string> decomposition_names() { return {"circular-mixture", "perturbed-mixture", "cyclic-identity"}; }

}  // namespace presets

}  // namespace causal
