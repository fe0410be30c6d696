#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "causal/circuit.hpp"

using namespace causal;

namespace {

StochasticMatrix random_stochastic(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(0, 4);
  RationalMatrix m(rows, cols);
  for (std::size_t c = 0; c < cols; ++c) {
    std::vector<long> w(rows);
    long total = 0;
    for (auto& x : w) total += (x = d(rng));
    if (total == 0) w[rows - 1] = total = 1;
    for (std::size_t r = 0; r < rows; ++r) m.at(r, c) = Rational(w[r], total);
  }
  return StochasticMatrix(m);
}

}  // namespace

TEST_CASE("acyclic chains evaluate like matrix products") {
  // Oracle: executing the gates in topological order is the matrix product.
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g1 = random_stochastic(3, 2, rng);
    const auto g2 = random_stochastic(3, 3, rng);
    const auto g3 = random_stochastic(2, 3, rng);
    Circuit c;
    const auto a = c.add_gate(Gate("a", {2}, {3}, g1));
    const auto b = c.add_gate(Gate("b", {3}, {3}, g2));
    const auto z = c.add_gate(Gate("z", {3}, {2}, g3));
    c.connect({a, 0}, {b, 0});
    c.connect({b, 0}, {z, 0});
    c.add_input({a, 0});
    c.add_output({z, 0});
    CHECK_NOTHROW(c.validate());
    const auto product = g3.matrix() * (g2.matrix() * g1.matrix());
    for (std::size_t in = 0; in < 2; ++in) {
      const std::vector<std::size_t> inputs{in};
      const auto ev = evaluate(c, inputs);
      CHECK(ev.total_weight.is_one());
      for (std::size_t out = 0; out < 2; ++out) CHECK(ev.outputs[out] == product.at(out, in));
    }
    CHECK(is_consistent(c).consistent);
  }
}

TEST_CASE("two-wire acyclic circuit with a cnot") {
  // (a, b) -> cnot -> (a + b, b), then NOT on the target.
  Circuit c;
  const auto x = c.add_gate(Gate::cnot("x", 3));
  const auto n = c.add_gate(Gate::not_gate("n", 3));
  c.connect({x, 0}, {n, 0});
  c.add_input({x, 0});
  c.add_input({x, 1});
  c.add_output({n, 0});
  c.add_output({x, 1});
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) {
      const std::vector<std::size_t> in{a, b};
      const auto ev = evaluate(c, in);
      const std::size_t t = (a + b + 1) % 3;
      CHECK(ev.outputs[t * 3 + b].is_one());
      CHECK(ev.total_weight.is_one());
    }
}

TEST_CASE("loops without exactly one history are inconsistent") {
  Circuit not_loop;
  const auto g = not_loop.add_gate(Gate::not_gate("n"));
  not_loop.connect({g, 0}, {g, 0});
  const auto r = is_consistent(not_loop);
  CHECK_FALSE(r.consistent);
  CHECK(r.total_weights == std::vector<Rational>{Rational(0)});

  Circuit id_loop;
  const auto h = id_loop.add_gate(Gate::identity("i", 2));
  id_loop.connect({h, 0}, {h, 0});
  CHECK(is_consistent(id_loop).total_weights == std::vector<Rational>{Rational(2)});

  CHECK(is_consistent(fixed_point_circuit(std::make_shared<Oracle>(std::vector<std::size_t>{1, 1}))).consistent);
}

TEST_CASE("circuit structure is validated") {
  Circuit c;
  const auto g = c.add_gate(Gate::identity("g", 2));
  CHECK_THROWS(c.add_gate(Gate::identity("g", 2)));
  CHECK_THROWS(c.validate());
  const auto h = c.add_gate(Gate::identity("h", 3));
  c.connect({g, 0}, {h, 0});
  c.add_input({g, 0});
  c.add_output({h, 0});
  // Alphabets 2 and 3 on one wire.
  CHECK_THROWS(c.validate());
  CHECK_THROWS(c.connect({g, 1}, {g, 0}));
}

TEST_CASE("oracle query accounting") {
  auto box = std::make_shared<Oracle>(std::vector<std::size_t>{1, 2, 2});
  CHECK(box->peek(0) == 1);
  CHECK(box->queries() == 0);
  CHECK(box->query(1) == 2);
  CHECK(box->queries() == 1);
  box->reset_queries();
  const auto c = fixed_point_circuit(box);
  const std::vector<std::size_t> zero{0};
  evaluate(c, zero);
  CHECK(box->queries() == 1);
}

TEST_CASE("single-query search finds the fixed point") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto maps = unique_fixed_point_maps(n);
    for (const auto& map : maps) {
      std::size_t truth = n;
      for (std::size_t i = 0; i < n; ++i)
        if (map[i] == i) truth = i;
      REQUIRE(truth < n);
      const auto r = fixed_point_search(std::make_shared<Oracle>(map));
      CHECK(r.value == truth);
      CHECK(r.queries == 1);
      Oracle plain(map);
      const auto b = baseline_search(plain);
      CHECK(b.value == truth);
      CHECK(b.queries <= n - 1);
    }
  }
}

TEST_CASE("unique fixed-point maps are counted right") {
  // n choices of fixed point times (n - 1)^(n - 1) for the others.
  CHECK(unique_fixed_point_maps(1).size() == 1);
  CHECK(unique_fixed_point_maps(2).size() == 2);
  CHECK(unique_fixed_point_maps(3).size() == 12);
  CHECK(unique_fixed_point_maps(4).size() == 108);
  std::mt19937_64 rng(13);
  for (int k = 0; k < 50; ++k) {
    const auto m = random_unique_fixed_point_map(6, rng);
    std::size_t fixed = 0;
    for (std::size_t i = 0; i < 6; ++i) fixed += m[i] == i;
    CHECK(fixed == 1);
  }
}

TEST_CASE("search raises on broken promises") {
  CHECK_THROWS_AS(fixed_point_search(std::make_shared<Oracle>(std::vector<std::size_t>{1, 0})), PromiseViolation);
  CHECK_THROWS_AS(fixed_point_search(std::make_shared<Oracle>(std::vector<std::size_t>{0, 1, 0})), PromiseViolation);
}

TEST_CASE("netlists") {
  const std::string text =
      "# search circuit around the box 1 2 2\n"
      "gate c cnot 3\n"
      "gate b oracle 1 2 2\n"
      "wire c.1 -> b.0\n"
      "wire b.0 -> c.1\n"
      "input c.0\n"
      "output c.0\n";
  const auto c = parse_netlist(text, "search.net");
  const std::vector<std::size_t> zero{0};
  const auto ev = evaluate(c, zero);
  CHECK(ev.total_weight.is_one());
  CHECK(ev.outputs[2].is_one());

  const auto m = parse_netlist("gate f matrix 2 -> 2\n0 | 0 : 1/2\n1 | 0 : 1/2\n1 | 1 : 1\nend\ninput f.0\noutput f.0\n");
  const std::vector<std::size_t> in0{0};
  CHECK(evaluate(m, in0).outputs[1] == Rational(1, 2));

  for (const auto& name : {"not-loop", "identity-loop", "cnot", "fixed-point-0", "fixed-point-2-0-1"})
    CHECK_NOTHROW(presets::circuit(name).validate());
  CHECK_FALSE(is_consistent(presets::circuit("not-loop")).consistent);
  CHECK_FALSE(is_consistent(presets::circuit("identity-loop")).consistent);
  CHECK(is_consistent(presets::circuit("fixed-point-1-2-2")).consistent);

  try {
    parse_netlist("gate a identity 2\nwire a.0 -> q.0\n", "bad.net");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_netlist("gate a bogus\n"), ParseError);
  CHECK_THROWS_AS(parse_netlist("gate f matrix 2 -> 2\n0 | 0 : 1/2\nend\n"), std::exception);
}
