#include "causal/circuit.hpp"

#include <functional>
#include <stdexcept>

namespace causal {

Oracle::Oracle(std::vector<std::size_t> map) : map_(std::move(map)) {
  if (map_.empty()) throw std::invalid_argument("oracle over an empty alphabet");
  for (auto v : map_) {
    if (v >= map_.size()) throw std::invalid_argument("oracle value out of range");
  }
}

std::size_t Oracle::query(std::size_t i) {
  ++queries_;
  return map_.at(i);
}

Gate::Gate(std::string name, std::vector<std::size_t> input_sizes, std::vector<std::size_t> output_sizes,
           StochasticMatrix behaviour)
    : name_(std::move(name)), in_(std::move(input_sizes)), out_(std::move(output_sizes)), matrix_(std::move(behaviour)) {
  if (matrix_->rows() != MixedRadix(out_).size() || matrix_->cols() != MixedRadix(in_).size()) {
    throw std::invalid_argument("gate '" + name_ + "': matrix does not match its port alphabets");
  }
}

Gate::Gate(std::string name, std::shared_ptr<Oracle> box)
    : name_(std::move(name)), in_{box->size()}, out_{box->size()}, box_(std::move(box)) {}

namespace {

StochasticMatrix deterministic_matrix(std::size_t outs, std::size_t ins, const std::function<std::size_t(std::size_t)>& f) {
  RationalMatrix m(outs, ins);
  for (std::size_t i = 0; i < ins; ++i) m.at(f(i), i) = 1;
  return StochasticMatrix(std::move(m));
}

}  // namespace

Gate Gate::identity(std::string name, std::size_t n) {
  return Gate(std::move(name), {n}, {n}, StochasticMatrix::identity(n));
}

Gate Gate::not_gate(std::string name, std::size_t n) {
  return Gate(std::move(name), {n}, {n}, deterministic_matrix(n, n, [n](std::size_t i) { return (i + 1) % n; }));
}

Gate Gate::cnot(std::string name, std::size_t n) {
  // Joint index target * n + control on both sides.
  return Gate(std::move(name), {n, n}, {n, n}, deterministic_matrix(n * n, n * n, [n](std::size_t j) {
                const std::size_t a = j / n, b = j % n;
                return ((a + b) % n) * n + b;
              }));
}

Gate Gate::constant(std::string name, std::size_t n, std::size_t value) {
  if (value >= n) throw std::invalid_argument("constant gate value out of range");
  return Gate(std::move(name), {n}, {n}, deterministic_matrix(n, n, [value](std::size_t) { return value; }));
}

Gate Gate::oracle(std::string name, std::shared_ptr<Oracle> box) {
  if (!box) throw std::invalid_argument("oracle gate without a box");
  return Gate(std::move(name), std::move(box));
}

Rational Gate::probability(std::size_t joint_output, std::size_t joint_input) const {
  if (box_) return Rational(box_->peek(joint_input) == joint_output ? 1 : 0);
  return matrix_->at(joint_output, joint_input);
}

std::size_t Circuit::add_gate(Gate gate) {
  if (find_gate(gate.name())) throw std::invalid_argument("duplicate gate name '" + gate.name() + "'");
  gates_.push_back(std::move(gate));
  return gates_.size() - 1;
}

namespace {

void check_port(const std::vector<Gate>& gates, PortRef p, bool output) {
  if (p.gate >= gates.size()) throw std::invalid_argument("circuit: no gate #" + std::to_string(p.gate));
  const auto& g = gates[p.gate];
  const std::size_t count = output ? g.output_sizes().size() : g.input_sizes().size();
  if (p.port >= count) {
    throw std::invalid_argument("circuit: gate '" + g.name() + "' has no " + (output ? "output" : "input") + " port " +
                                std::to_string(p.port));
  }
}

}  // namespace

void Circuit::connect(PortRef from_output, PortRef to_input) {
  check_port(gates_, from_output, true);
  check_port(gates_, to_input, false);
  wires_.emplace_back(from_output, to_input);
}

void Circuit::add_input(PortRef input_port) {
  check_port(gates_, input_port, false);
  inputs_.push_back(input_port);
}

void Circuit::add_output(PortRef output_port) {
  check_port(gates_, output_port, true);
  outputs_.push_back(output_port);
}

std::optional<std::size_t> Circuit::find_gate(std::string_view name) const {
  for (std::size_t g = 0; g < gates_.size(); ++g) {
    if (gates_[g].name() == name) return g;
  }
  return std::nullopt;
}

std::vector<std::size_t> Circuit::input_sizes() const {
  std::vector<std::size_t> s;
  for (const auto& p : inputs_) s.push_back(gates_.at(p.gate).input_sizes().at(p.port));
  return s;
}

std::vector<std::size_t> Circuit::output_sizes() const {
  std::vector<std::size_t> s;
  for (const auto& p : outputs_) s.push_back(gates_.at(p.gate).output_sizes().at(p.port));
  return s;
}

void Circuit::validate() const {
  std::vector<std::vector<int>> in_uses(gates_.size()), out_uses(gates_.size());
  for (std::size_t g = 0; g < gates_.size(); ++g) {
    in_uses[g].assign(gates_[g].input_sizes().size(), 0);
    out_uses[g].assign(gates_[g].output_sizes().size(), 0);
  }
  auto port_name = [&](PortRef p) { return gates_[p.gate].name() + "." + std::to_string(p.port); };
  auto use = [&](std::vector<std::vector<int>>& uses, PortRef p, bool input) {
    if (p.gate >= gates_.size()) throw std::invalid_argument("circuit: no gate with index " + std::to_string(p.gate));
    const auto& sizes = input ? gates_[p.gate].input_sizes() : gates_[p.gate].output_sizes();
    if (p.port >= sizes.size()) {
      throw std::invalid_argument("circuit: gate '" + gates_[p.gate].name() + "' has no " +
                                  (input ? "input" : "output") + " port " + std::to_string(p.port));
    }
    if (++uses[p.gate][p.port] > 1) throw std::invalid_argument("circuit: port " + port_name(p) + " is used twice");
  };
  for (const auto& [from, to] : wires_) {
    use(out_uses, from, false);
    use(in_uses, to, true);
    if (gates_[from.gate].output_sizes()[from.port] != gates_[to.gate].input_sizes()[to.port]) {
      throw std::invalid_argument("circuit: wire " + port_name(from) + " -> " + port_name(to) + " joins different alphabets");
    }
  }
  for (const auto& p : inputs_) use(in_uses, p, true);
  for (const auto& p : outputs_) use(out_uses, p, false);
  for (std::size_t g = 0; g < gates_.size(); ++g) {
    for (std::size_t k = 0; k < in_uses[g].size(); ++k) {
      if (!in_uses[g][k]) throw std::invalid_argument("circuit: input port " + port_name({g, k}) + " is not connected");
    }
    for (std::size_t k = 0; k < out_uses[g].size(); ++k) {
      if (!out_uses[g][k]) throw std::invalid_argument("circuit: output port " + port_name({g, k}) + " is not connected");
    }
  }
}

namespace {

// Where each gate port gets its value: a circuit input, or a variable (a wire
// or an open output).
struct Source {
  bool is_input;
  std::size_t index;
};

}  // namespace

Evaluation evaluate(const Circuit& circuit, std::span<const std::size_t> inputs, std::uint64_t cap) {
  circuit.validate();
  const auto in_sizes = circuit.input_sizes();
  if (inputs.size() != in_sizes.size()) throw std::invalid_argument("expected one value per circuit input");
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    if (inputs[k] >= in_sizes[k]) throw std::invalid_argument("circuit input value out of range");
  }
  const auto& gates = circuit.gates();
  std::vector<std::vector<Source>> in_src(gates.size()), out_src(gates.size());
  for (std::size_t g = 0; g < gates.size(); ++g) {
    in_src[g].resize(gates[g].input_sizes().size());
    out_src[g].resize(gates[g].output_sizes().size());
  }
  std::vector<std::size_t> radices;
  for (const auto& [from, to] : circuit.wires()) {
    const std::size_t var = radices.size();
    radices.push_back(gates[from.gate].output_sizes()[from.port]);
    out_src[from.gate][from.port] = {false, var};
    in_src[to.gate][to.port] = {false, var};
  }
  const std::size_t first_output = radices.size();
  for (const auto& p : circuit.outputs()) {
    out_src[p.gate][p.port] = {false, radices.size()};
    radices.push_back(gates[p.gate].output_sizes()[p.port]);
  }
  for (std::size_t k = 0; k < circuit.inputs().size(); ++k) {
    const auto& p = circuit.inputs()[k];
    in_src[p.gate][p.port] = {true, k};
  }
  checked_product(radices, cap);

  for (const auto& g : gates) {
    if (g.is_oracle()) g.box()->count_query();
  }

  const MixedRadix out_radix(circuit.output_sizes());
  Evaluation ev;
  ev.outputs.assign(out_radix.size(), Rational());
  std::vector<MixedRadix> gin, gout;
  for (const auto& g : gates) {
    gin.emplace_back(g.input_sizes());
    gout.emplace_back(g.output_sizes());
  }
  auto value = [&](const Source& s, const std::vector<std::size_t>& vars) { return s.is_input ? inputs[s.index] : vars[s.index]; };

  Odometer odo(radices);
  do {
    const auto& vars = odo.current();
    Rational w(1);
    for (std::size_t g = 0; g < gates.size() && !w.is_zero(); ++g) {
      std::size_t ji = 0, jo = 0;
      for (std::size_t k = 0; k < in_src[g].size(); ++k) ji += value(in_src[g][k], vars) * gin[g].stride(k);
      for (std::size_t k = 0; k < out_src[g].size(); ++k) jo += value(out_src[g][k], vars) * gout[g].stride(k);
      w *= gates[g].probability(jo, ji);
    }
    if (w.is_zero()) continue;
    std::size_t jo = 0;
    for (std::size_t k = 0; k < circuit.outputs().size(); ++k) jo += vars[first_output + k] * out_radix.stride(k);
    ev.outputs[jo] += w;
    ev.total_weight += w;
    ev.assignments.push_back({vars, std::move(w)});
  } while (odo.next());
  return ev;
}

CircuitConsistency is_consistent(const Circuit& circuit, std::uint64_t cap) {
  circuit.validate();
  const MixedRadix in(circuit.input_sizes());
  CircuitConsistency r;
  std::vector<std::size_t> values(in.digits());
  for (std::size_t k = 0; k < in.size(); ++k) {
    in.decode_into(k, values);
    auto ev = evaluate(circuit, values, cap);
    if (!ev.total_weight.is_one()) r.consistent = false;
    r.total_weights.push_back(std::move(ev.total_weight));
  }
  return r;
}

Circuit fixed_point_circuit(std::shared_ptr<Oracle> box) {
  const std::size_t n = box->size();
  Circuit c;
  const auto cnot = c.add_gate(Gate::cnot("C", n));
  const auto b = c.add_gate(Gate::oracle("B", std::move(box)));
  c.connect({b, 0}, {cnot, 1});
  c.connect({cnot, 1}, {b, 0});
  c.add_input({cnot, 0});
  c.add_output({cnot, 0});
  return c;
}

SearchResult fixed_point_search(const std::shared_ptr<Oracle>& box) {
  const auto before = box->queries();
  const auto circuit = fixed_point_circuit(box);
  const std::size_t zero[] = {0};
  const auto ev = evaluate(circuit, zero);
  if (!ev.total_weight.is_one()) {
    throw PromiseViolation("box does not have exactly one fixed point (circuit weight " + ev.total_weight.str() + ")");
  }
  SearchResult r;
  for (std::size_t x = 0; x < ev.outputs.size(); ++x) {
    if (ev.outputs[x].is_one()) r.value = x;
  }
  r.queries = box->queries() - before;
  return r;
}

SearchResult baseline_search(Oracle& box) {
  const auto before = box.queries();
  const std::size_t n = box.size();
  SearchResult r{n - 1, 0};
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (box.query(i) == i) {
      r.value = i;
      break;
    }
  }
  r.queries = box.queries() - before;
  return r;
}

std::vector<std::vector<std::size_t>> unique_fixed_point_maps(std::size_t n, std::uint64_t cap) {
  checked_power(n, n, cap);
  std::vector<std::vector<std::size_t>> maps;
  Odometer odo(std::vector<std::size_t>(n, n));
  do {
    const auto& m = odo.current();
    std::size_t fixed = 0;
    for (std::size_t i = 0; i < n; ++i) fixed += m[i] == i;
    if (fixed == 1) maps.push_back(m);
  } while (odo.next());
  return maps;
}

std::vector<std::size_t> random_unique_fixed_point_map(std::size_t n, std::mt19937_64& rng) {
  if (n == 0) throw std::invalid_argument("empty alphabet");
  std::vector<std::size_t> map(n);
  const std::size_t f = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == f) {
      map[i] = i;
      continue;
    }
    // Uniform over the n - 1 values other than i.
    const std::size_t v = std::uniform_int_distribution<std::size_t>(0, n - 2)(rng);
    map[i] = v < i ? v : v + 1;
  }
  return map;
}

}  // namespace causal
