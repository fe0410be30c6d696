#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "causal/errors.hpp"
#include "causal/index.hpp"
#include "causal/matrix.hpp"

namespace causal {

/// Black box B over {0..n-1}. query() is what a circuit use costs; peek()
/// reads the transition table for simulation and is not counted.
class Oracle {
 public:
  explicit Oracle(std::vector<std::size_t> map);

  std::size_t size() const { return map_.size(); }
  std::size_t query(std::size_t i);
  std::size_t peek(std::size_t i) const { return map_.at(i); }
  std::uint64_t queries() const { return queries_; }
  void count_query() { ++queries_; }
  void reset_queries() { queries_ = 0; }
  const std::vector<std::size_t>& map() const { return map_; }

 private:
  std::vector<std::size_t> map_;
  std::uint64_t queries_ = 0;
};

/// A gate: P(outputs | inputs) over its ports. Oracle gates have one input
/// and one output port and read the oracle instead of a stored matrix.
class Gate {
 public:
  /// Rows index joint outputs, columns joint inputs.
  Gate(std::string name, std::vector<std::size_t> input_sizes, std::vector<std::size_t> output_sizes,
       StochasticMatrix behaviour);

  static Gate identity(std::string name, std::size_t n);
  /// i -> i + 1 mod n (the bit flip for n = 2).
  static Gate not_gate(std::string name, std::size_t n = 2);
  /// Inputs (target a, control b), outputs (a + b mod n, b).
  static Gate cnot(std::string name, std::size_t n);
  static Gate constant(std::string name, std::size_t n, std::size_t value);
  static Gate oracle(std::string name, std::shared_ptr<Oracle> box);

  const std::string& name() const { return name_; }
  const std::vector<std::size_t>& input_sizes() const { return in_; }
  const std::vector<std::size_t>& output_sizes() const { return out_; }
  bool is_oracle() const { return box_ != nullptr; }
  const std::shared_ptr<Oracle>& box() const { return box_; }

  /// P(joint output | joint input) without counting oracle queries.
  Rational probability(std::size_t joint_output, std::size_t joint_input) const;

 private:
  Gate(std::string name, std::shared_ptr<Oracle> box);

  std::string name_;
  std::vector<std::size_t> in_;
  std::vector<std::size_t> out_;
  std::optional<StochasticMatrix> matrix_;
  std::shared_ptr<Oracle> box_;
};

struct PortRef {
  std::size_t gate = 0;
  std::size_t port = 0;

  friend bool operator==(const PortRef&, const PortRef&) = default;
};

/// Gates with wires from output ports to input ports; cycles are allowed.
/// Unconnected input ports are circuit inputs and unconnected output ports
/// circuit outputs, in the order they are declared.
class Circuit {
 public:
  std::size_t add_gate(Gate gate);
  void connect(PortRef from_output, PortRef to_input);
  void add_input(PortRef input_port);
  void add_output(PortRef output_port);

  const std::vector<Gate>& gates() const { return gates_; }
  std::vector<Gate>& gates() { return gates_; }
  const std::vector<std::pair<PortRef, PortRef>>& wires() const { return wires_; }
  const std::vector<PortRef>& inputs() const { return inputs_; }
  const std::vector<PortRef>& outputs() const { return outputs_; }
  std::optional<std::size_t> find_gate(std::string_view name) const;

  std::vector<std::size_t> input_sizes() const;
  std::vector<std::size_t> output_sizes() const;

  /// Throws std::invalid_argument unless every port is used exactly once
  /// (by a wire or an open-port declaration) and wired alphabets agree.
  void validate() const;

 private:
  std::vector<Gate> gates_;
  std::vector<std::pair<PortRef, PortRef>> wires_;
  std::vector<PortRef> inputs_;
  std::vector<PortRef> outputs_;
};

struct WireAssignment {
  /// Value on each wire (circuit order), then on each circuit output.
  std::vector<std::size_t> values;
  Rational weight;
};

struct Evaluation {
  /// Sum of the weights of all assignments; 1 for a consistent circuit.
  Rational total_weight;
  /// Weight per joint circuit output (leftmost output most significant).
  std::vector<Rational> outputs;
  /// Assignments with non-zero weight.
  std::vector<WireAssignment> assignments;
};

/// Weights of every assignment of values to wires and open outputs, given the
/// circuit inputs: the product of the gates' conditional probabilities. Each
/// call counts one query on every oracle gate.
Evaluation evaluate(const Circuit& circuit, std::span<const std::size_t> inputs,
                    std::uint64_t cap = kDefaultEnumerationCap);

struct CircuitConsistency {
  bool consistent = true;
  /// Total weight per joint circuit input.
  std::vector<Rational> total_weights;
};

/// Total weight is exactly one for every circuit input.
CircuitConsistency is_consistent(const Circuit& circuit, std::uint64_t cap = kDefaultEnumerationCap);

/// CNOT-style gate with its control output fed through the box and back to
/// its control input; the open ports are the CNOT's target input and output.
Circuit fixed_point_circuit(std::shared_ptr<Oracle> box);

struct SearchResult {
  std::size_t value = 0;
  std::uint64_t queries = 0;
};

/// Runs fixed_point_circuit with target input 0 and reads the fixed point off
/// the target output. Throws PromiseViolation if the box does not have exactly
/// one fixed point (total weight != 1).
SearchResult fixed_point_search(const std::shared_ptr<Oracle>& box);

/// Sequential scan: queries 0..n-2 and answers n-1 if none was fixed, so at
/// most n-1 queries. It takes the promise on trust: within that budget a box
/// with no fixed point or several is not detectable, and none is reported.
SearchResult baseline_search(Oracle& box);

/// The self-maps of {0..n-1} with exactly one fixed point, in lexicographic
/// order of their tables.
std::vector<std::vector<std::size_t>> unique_fixed_point_maps(std::size_t n, std::uint64_t cap = kDefaultEnumerationCap);

/// Uniformly random fixed point f, and for every other i a uniformly random
/// value different from i.
std::vector<std::size_t> random_unique_fixed_point_map(std::size_t n, std::mt19937_64& rng);

// Netlist file:
//   gate <name> identity <n> | not | cnot <n> | constant <n> <k>
//   gate <name> oracle <t_0> .. <t_{n-1}>
//   gate <name> matrix <in sizes..> -> <out sizes..>
//     <o..> | <i..> : <p/q>          entries, closed by "end"
//   wire <gate>.<out port> -> <gate>.<in port>
//   input <gate>.<in port>
//   output <gate>.<out port>
Circuit parse_netlist(std::string_view text, const std::string& source = "<netlist>");
Circuit load_netlist(const std::string& reference);

namespace presets {
/// "not-loop", "identity-loop", "cnot" (acyclic), "fixed-point-<t0>-<t1>-.."
/// (the search circuit around the given box).
Circuit circuit(std::string_view name);
std::vector<std::string> circuit_names();
}  // namespace presets

}  // namespace causal
