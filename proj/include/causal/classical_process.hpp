#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <string>
#include <vector>

#include "causal/deterministic_op.hpp"
#include "causal/errors.hpp"
#include "causal/index.hpp"
#include "causal/matrix.hpp"

namespace causal {

/// A party's interface to the environment: it receives a value from an
/// alphabet of `input_size` and returns one from an alphabet of `output_size`.
struct PartySpec {
  std::string name;
  std::size_t input_size = 2;
  std::size_t output_size = 2;

  friend bool operator==(const PartySpec&, const PartySpec&) = default;
};

/// Classical process E: the table P(i_1..i_n | o_1..o_n), rows indexed by the
/// joint environment-input tuple and columns by the joint environment-output
/// tuple (leftmost party most significant).
///
/// Construction checks only the shape; whether the table is a logically
/// consistent process is what check_logical_consistency decides.
class ClassicalProcess {
 public:
  ClassicalProcess(std::vector<PartySpec> parties, RationalMatrix table);

  const std::vector<PartySpec>& parties() const { return parties_; }
  std::size_t party_count() const { return parties_.size(); }
  const RationalMatrix& table() const { return table_; }
  const MixedRadix& input_radix() const { return inputs_; }
  const MixedRadix& output_radix() const { return outputs_; }

  const Rational& probability(std::span<const std::size_t> i, std::span<const std::size_t> o) const {
    return table_.at(inputs_.encode(i), outputs_.encode(o));
  }

  /// 0/1 table with one 1 per column.
  bool is_deterministic() const { return table_.is_deterministic(); }

  friend bool operator==(const ClassicalProcess& a, const ClassicalProcess& b) {
    return a.parties_ == b.parties_ && a.table_ == b.table_;
  }

 private:
  std::vector<PartySpec> parties_;
  RationalMatrix table_;
  MixedRadix inputs_;
  MixedRadix outputs_;
};

/// True iff every entry of the table is >= 0.
bool check_nonnegativity(const ClassicalProcess& process);

/// Tr(E (M_1 (x) ... (x) M_n)) for one local operation per party, each mapping
/// that party's environment input to its environment output.
Rational trace_under_ops(const ClassicalProcess& process, std::span<const DeterministicOp> ops);

struct TotalProbabilityCheck {
  bool holds = true;
  /// First violating tuple in canonical order, empty if none.
  std::vector<DeterministicOp> counterexample;
  /// Trace at the counterexample (1 when the check holds).
  Rational trace{1};
  std::uint64_t tuples_checked = 0;
};

/// Exhaustive trace condition over all tuples of deterministic local operations.
TotalProbabilityCheck check_total_probability(const ClassicalProcess& process,
                                              std::uint64_t cap = kDefaultEnumerationCap);

struct ConsistencyReport {
  bool nonnegative = true;
  TotalProbabilityCheck total_probability;

  bool consistent() const { return nonnegative && total_probability.holds; }
};

ConsistencyReport check_logical_consistency(const ClassicalProcess& process,
                                            std::uint64_t cap = kDefaultEnumerationCap);

inline bool is_logically_consistent(const ClassicalProcess& process,
                                    std::uint64_t cap = kDefaultEnumerationCap) {
  return check_logical_consistency(process, cap).consistent();
}

/// Calls `visit` on every tuple of deterministic ops (one per party, I_p -> O_p)
/// in canonical order; stops early when `visit` returns false. Returns the
/// number of tuples visited.
template <typename Visit>
std::uint64_t for_each_op_tuple(const std::vector<PartySpec>& parties, std::uint64_t cap, Visit&& visit);

namespace detail {
std::vector<std::vector<DeterministicOp>> ops_per_party(const std::vector<PartySpec>& parties, std::uint64_t cap);
}

template <typename Visit>
std::uint64_t for_each_op_tuple(const std::vector<PartySpec>& parties, std::uint64_t cap, Visit&& visit) {
  const auto per_party = detail::ops_per_party(parties, cap);
  std::vector<std::size_t> counts;
  for (const auto& ops : per_party) counts.push_back(ops.size());
  checked_product(counts, cap);
  Odometer odo(counts);
  std::vector<DeterministicOp> tuple;
  std::uint64_t visited = 0;
  do {
    tuple.clear();
    for (std::size_t p = 0; p < per_party.size(); ++p) tuple.push_back(per_party[p][odo.current()[p]]);
    ++visited;
    if (!visit(std::as_const(tuple))) break;
  } while (odo.next());
  return visited;
}

}  // namespace causal
