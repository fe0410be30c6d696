#include "causal/classical_process.hpp"

#include <stdexcept>

namespace causal {

namespace {

std::vector<std::size_t> input_sizes(const std::vector<PartySpec>& parties) {
  std::vector<std::size_t> s;
  for (const auto& p : parties) s.push_back(p.input_size);
  return s;
}

std::vector<std::size_t> output_sizes(const std::vector<PartySpec>& parties) {
  std::vector<std::size_t> s;
  for (const auto& p : parties) s.push_back(p.output_size);
  return s;
}

}  // namespace

ClassicalProcess::ClassicalProcess(std::vector<PartySpec> parties, RationalMatrix table)
    : parties_(std::move(parties)),
      table_(std::move(table)),
      inputs_(input_sizes(parties_)),
      outputs_(output_sizes(parties_)) {
  if (parties_.empty()) throw std::invalid_argument("process needs at least one party");
  for (const auto& p : parties_) {
    if (p.input_size == 0 || p.output_size == 0) {
      throw std::invalid_argument("party '" + p.name + "' has an empty alphabet");
    }
  }
  if (table_.rows() != inputs_.size() || table_.cols() != outputs_.size()) {
    throw std::invalid_argument("process table is " + std::to_string(table_.rows()) + "x" +
                                std::to_string(table_.cols()) + ", parties require " +
                                std::to_string(inputs_.size()) + "x" + std::to_string(outputs_.size()));
  }
}

bool check_nonnegativity(const ClassicalProcess& process) { return process.table().is_nonnegative(); }

Rational trace_under_ops(const ClassicalProcess& process, std::span<const DeterministicOp> ops) {
  if (ops.size() != process.party_count()) throw std::invalid_argument("need one op per party");
  RationalMatrix local = RationalMatrix::identity(1);
  for (std::size_t p = 0; p < ops.size(); ++p) {
    const auto& party = process.parties()[p];
    if (ops[p].in_size() != party.input_size || ops[p].out_size() != party.output_size) {
      throw std::invalid_argument("op alphabet does not match party '" + party.name + "'");
    }
    local = tensor(local, ops[p].matrix().matrix());
  }
  // Only the diagonal of E * local is needed.
  const auto& e = process.table();
  Rational tr;
  for (std::size_t i = 0; i < e.rows(); ++i) {
    for (std::size_t o = 0; o < e.cols(); ++o) {
      const Rational& m = local.at(o, i);
      if (m.is_zero()) continue;
      const Rational& v = e.at(i, o);
      if (!v.is_zero()) tr += v * m;
    }
  }
  return tr;
}

namespace detail {

std::vector<std::vector<DeterministicOp>> ops_per_party(const std::vector<PartySpec>& parties, std::uint64_t cap) {
  std::vector<std::vector<DeterministicOp>> out;
  for (const auto& p : parties) out.push_back(enumerate_deterministic_ops(p.input_size, p.output_size, cap));
  return out;
}

}  // namespace detail

TotalProbabilityCheck check_total_probability(const ClassicalProcess& process, std::uint64_t cap) {
  TotalProbabilityCheck result;
  result.tuples_checked = for_each_op_tuple(process.parties(), cap, [&](const std::vector<DeterministicOp>& ops) {
    Rational tr = trace_under_ops(process, ops);
    if (!tr.is_one()) {
      result.holds = false;
      result.counterexample = ops;
      result.trace = std::move(tr);
      return false;
    }
    return true;
  });
  return result;
}

ConsistencyReport check_logical_consistency(const ClassicalProcess& process, std::uint64_t cap) {
  ConsistencyReport report;
  report.nonnegative = check_nonnegativity(process);
  report.total_probability = check_total_probability(process, cap);
  return report;
}

}  // namespace causal
