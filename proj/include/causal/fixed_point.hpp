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
#include "causal/deterministic_op.hpp"
#include "causal/distribution.hpp"
#include "causal/errors.hpp"
#include "causal/index.hpp"
#include "causal/strategy.hpp"

namespace causal {

/// A deterministic process as a total map e from joint environment outputs to
/// joint environment inputs. Both sides are flattened with the leftmost party
/// most significant.
class ProcessFunction {
 public:
  /// `table[o]` is the joint input index e(o). Throws std::invalid_argument on
  /// a shape mismatch or an out-of-range image.
  ProcessFunction(std::vector<std::size_t> input_sizes, std::vector<std::size_t> output_sizes,
                  std::vector<std::size_t> table);

  using Map = std::function<std::vector<std::size_t>(std::span<const std::size_t> outputs)>;
  static ProcessFunction from_map(std::vector<std::size_t> input_sizes, std::vector<std::size_t> output_sizes,
                                  const Map& map);

  std::size_t party_count() const { return inputs_.digits(); }
  const MixedRadix& input_radix() const { return inputs_; }
  const MixedRadix& output_radix() const { return outputs_; }
  const std::vector<std::size_t>& table() const { return table_; }

  std::size_t image(std::size_t joint_output) const { return table_[joint_output]; }
  std::vector<std::size_t> operator()(std::span<const std::size_t> outputs) const {
    return inputs_.decode(table_[outputs_.encode(outputs)]);
  }

  /// The 0/1 process table. Parties are named R, S, T for up to three
  /// parties and P1..Pn otherwise, unless names are given.
  ClassicalProcess to_process(std::vector<std::string> names = {}) const;

  friend bool operator==(const ProcessFunction& a, const ProcessFunction& b) {
    return a.inputs_.radices() == b.inputs_.radices() && a.outputs_.radices() == b.outputs_.radices() &&
           a.table_ == b.table_;
  }

 private:
  MixedRadix inputs_;
  MixedRadix outputs_;
  std::vector<std::size_t> table_;
};

std::vector<std::string> default_party_names(std::size_t n);

/// Throws std::invalid_argument when the process table is not 0/1.
ProcessFunction as_function(const ClassicalProcess& process);

/// Checks one op per party, mapping I_p -> O_p.
void check_ops_fit(const ProcessFunction& e, std::span<const DeterministicOp> ops);

/// The composed map t -> e(ops(t)) on joint inputs, indexed by joint input.
std::vector<std::size_t> composed_table(const ProcessFunction& e, std::span<const DeterministicOp> ops);

/// All t with t = e(ops(t)), in increasing joint-input order.
std::vector<std::vector<std::size_t>> fixed_points(const ProcessFunction& e, std::span<const DeterministicOp> ops);
std::size_t count_fixed_points(const ProcessFunction& e, std::span<const DeterministicOp> ops);

struct ExtremalityCheck {
  bool extremal = true;
  /// First op tuple (canonical order) without exactly one fixed point.
  std::vector<DeterministicOp> counterexample;
  std::size_t fixed_point_count = 1;
  std::uint64_t tuples_checked = 0;
};

/// True iff every tuple of deterministic local ops leaves exactly one fixed
/// point.
ExtremalityCheck is_deterministic_extremal(const ProcessFunction& e, std::uint64_t cap = kDefaultEnumerationCap);

/// Convex combination of deterministic processes.
class DeterministicDecomposition {
 public:
  using Component = std::pair<Rational, ProcessFunction>;

  /// Throws std::invalid_argument unless weights are positive, sum to one and
  /// all components share the same alphabets.
  explicit DeterministicDecomposition(std::vector<Component> components);

  const std::vector<Component>& components() const { return components_; }
  std::size_t size() const { return components_.size(); }

  /// Weighted sum of the component tables.
  ClassicalProcess mixture(std::vector<std::string> names = {}) const;
  /// True iff the weighted sum equals `target`'s table exactly.
  bool decomposes(const ClassicalProcess& target) const;

 private:
  std::vector<Component> components_;
};

/// sum_k p_k |fixed_points(d_k, ops)|.
Rational average_fixed_points(const DeterministicDecomposition& d, std::span<const DeterministicOp> ops);

struct AverageFixedPointCheck {
  bool holds = true;
  std::vector<DeterministicOp> counterexample;
  Rational average{1};
  std::uint64_t tuples_checked = 0;
};

/// True iff the average number of fixed points is one under every tuple of
/// deterministic local ops.
AverageFixedPointCheck verify_theorem6(const DeterministicDecomposition& d,
                                       std::uint64_t cap = kDefaultEnumerationCap);

/// Column-minimum greedy decomposition of any valid process table into
/// deterministic components. It always reproduces the table but need not be
/// a decomposition with average fixed-point count one, even when one exists.
DeterministicDecomposition greedy_decomposition(const ClassicalProcess& process);

/// P(x | a) of a deterministic process: sum over joint outputs o of
/// prod_p S_p(x_p, o_p | a_p, e(o)_p).
ConditionalDistribution induced_distribution(const ProcessFunction& e, const LocalStrategy& strategy);

namespace presets {
/// "circular-mixture" (E0 + E1)/2, "perturbed-mixture" 51/100 E0 + 49/100 E1,
/// "cyclic-identity" E0 alone.
DeterministicDecomposition decomposition(std::string_view name);
std::vector<std::string> decomposition_names();
}  // namespace presets

}  // namespace causal
