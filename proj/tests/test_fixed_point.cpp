#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <random>

#include "causal/fixed_point.hpp"
#include "causal/presets.hpp"
#include "causal/process_io.hpp"

using namespace causal;

namespace {

using Row = std::array<int, 6>;

const DeterministicOp kId = DeterministicOp::d_id();
const DeterministicOp kNot = DeterministicOp::d_not();
const DeterministicOp k0 = DeterministicOp::d_0();
const DeterministicOp k1 = DeterministicOp::d_1();

ProcessFunction bits3(std::vector<std::size_t> (*f)(std::size_t, std::size_t, std::size_t)) {
  return ProcessFunction::from_map({2, 2, 2}, {2, 2, 2}, [f](std::span<const std::size_t> o) {
    return f(o[0], o[1], o[2]);
  });
}

// The functions written out from their formulas, independent of the presets.
ProcessFunction chain() {
  return bits3([](std::size_t o, std::size_t p, std::size_t) { return std::vector<std::size_t>{0, o, p}; });
}
ProcessFunction majority_map() {
  return bits3([](std::size_t o, std::size_t p, std::size_t q) {
    return std::vector<std::size_t>{(p ^ 1) & q, o & (q ^ 1), (o ^ 1) & p};
  });
}
ProcessFunction e0() {
  return bits3([](std::size_t o, std::size_t p, std::size_t q) { return std::vector<std::size_t>{q, o, p}; });
}
ProcessFunction e1() {
  return bits3([](std::size_t o, std::size_t p, std::size_t q) {
    return std::vector<std::size_t>{q ^ 1, o ^ 1, p ^ 1};
  });
}

void check_table(const ProcessFunction& e, const std::vector<Row>& rows) {
  const std::vector<DeterministicOp> ids{kId, kId, kId};
  const auto t = composed_table(e, ids);
  REQUIRE(t.size() == rows.size());
  for (const auto& r : rows) {
    const std::vector<std::size_t> in{std::size_t(r[0]), std::size_t(r[1]), std::size_t(r[2])};
    const std::vector<std::size_t> out{std::size_t(r[3]), std::size_t(r[4]), std::size_t(r[5])};
    CHECK(e.input_radix().decode(t[e.input_radix().encode(in)]) == out);
  }
}

std::vector<std::vector<std::size_t>> pts(std::initializer_list<std::vector<std::size_t>> l) { return l; }

}  // namespace

TEST_CASE("presets agree with the written-out functions") {
  CHECK(as_function(presets::identity_chain()) == chain());
  CHECK(as_function(presets::majority()) == majority_map());
  CHECK(as_function(presets::cyclic_identity()) == e0());
  CHECK(as_function(presets::cyclic_flip()) == e1());
  CHECK_THROWS_AS(as_function(presets::circular_mixture()), std::invalid_argument);
}

TEST_CASE("causal chain composed with identities") {
  check_table(chain(), {{0, 0, 0, 0, 0, 0},
                        {0, 0, 1, 0, 0, 0},
                        {0, 1, 0, 0, 0, 1},
                        {0, 1, 1, 0, 0, 1},
                        {1, 0, 0, 0, 1, 0},
                        {1, 0, 1, 0, 1, 0},
                        {1, 1, 0, 0, 1, 1},
                        {1, 1, 1, 0, 1, 1}});
  const auto e = chain();
  CHECK(fixed_points(e, std::vector{kId, kId, kId}) == pts({{0, 0, 0}}));
  CHECK(fixed_points(e, std::vector{kId, kId, kNot}) == pts({{0, 0, 0}}));
  CHECK(fixed_points(e, std::vector{kNot, kNot, kNot}) == pts({{0, 1, 0}}));
  CHECK(fixed_points(e, std::vector{k1, k1, k1}) == pts({{0, 1, 1}}));
}

TEST_CASE("majority process composed with identities") {
  check_table(majority_map(), {{0, 0, 0, 0, 0, 0},
                               {0, 0, 1, 1, 0, 0},
                               {0, 1, 0, 0, 0, 1},
                               {0, 1, 1, 0, 0, 1},
                               {1, 0, 0, 0, 1, 0},
                               {1, 0, 1, 1, 0, 0},
                               {1, 1, 0, 0, 1, 0},
                               {1, 1, 1, 0, 0, 0}});
  const auto e = majority_map();
  CHECK(fixed_points(e, std::vector{kId, kId, kId}) == pts({{0, 0, 0}}));
  CHECK(fixed_points(e, std::vector{kNot, kNot, kNot}) == pts({{0, 0, 0}}));
  CHECK(fixed_points(e, std::vector{kId, kId, kNot}) == pts({{1, 0, 0}}));
}

TEST_CASE("the two cyclic functions composed with identities") {
  check_table(e0(), {{0, 0, 0, 0, 0, 0},
                     {0, 0, 1, 1, 0, 0},
                     {0, 1, 0, 0, 0, 1},
                     {0, 1, 1, 1, 0, 1},
                     {1, 0, 0, 0, 1, 0},
                     {1, 0, 1, 1, 1, 0},
                     {1, 1, 0, 0, 1, 1},
                     {1, 1, 1, 1, 1, 1}});
  check_table(e1(), {{0, 0, 0, 1, 1, 1},
                     {0, 0, 1, 0, 1, 1},
                     {0, 1, 0, 1, 1, 0},
                     {0, 1, 1, 0, 1, 0},
                     {1, 0, 0, 1, 0, 1},
                     {1, 0, 1, 0, 0, 1},
                     {1, 1, 0, 1, 0, 0},
                     {1, 1, 1, 0, 0, 0}});
  CHECK(count_fixed_points(e0(), std::vector{kId, kId, kId}) == 2);
  CHECK(count_fixed_points(e1(), std::vector{kId, kId, kId}) == 0);
  CHECK(count_fixed_points(e0(), std::vector{kId, kId, kNot}) == 0);
  CHECK(fixed_points(e1(), std::vector{kId, kId, kNot}) == pts({{0, 1, 0}, {1, 0, 1}}));
  CHECK(fixed_points(e0(), std::vector{k0, k0, k0}) == pts({{0, 0, 0}}));
  CHECK(fixed_points(e1(), std::vector{k0, k0, k0}) == pts({{1, 1, 1}}));
}

TEST_CASE("extremality") {
  const auto m = is_deterministic_extremal(majority_map());
  CHECK(m.extremal);
  CHECK(m.tuples_checked == 64);
  CHECK(is_deterministic_extremal(chain()).extremal);
  const auto c = is_deterministic_extremal(e0());
  CHECK_FALSE(c.extremal);
  CHECK(c.counterexample == std::vector{kId, kId, kId});
  CHECK(c.fixed_point_count == 2);
}

TEST_CASE("average fixed-point count of the circular mixture") {
  const DeterministicDecomposition d({{Rational(1, 2), e0()}, {Rational(1, 2), e1()}});
  CHECK(d.decomposes(presets::circular_mixture()));
  const auto check = verify_theorem6(d);
  CHECK(check.holds);
  CHECK(check.tuples_checked == 64);
  CHECK(average_fixed_points(d, std::vector{kId, kId, kNot}).is_one());

  const DeterministicDecomposition p({{Rational(51, 100), e0()}, {Rational(49, 100), e1()}});
  const auto bad = verify_theorem6(p);
  CHECK_FALSE(bad.holds);
  CHECK(bad.average == Rational(51, 50));
  CHECK(p.decomposes(presets::perturbed_mixture()));
}

TEST_CASE("decomposition validation") {
  CHECK_THROWS_AS(DeterministicDecomposition({{Rational(1, 2), e0()}}), std::invalid_argument);
  CHECK_THROWS_AS(DeterministicDecomposition({{Rational(3, 2), e0()}, {Rational(-1, 2), e1()}}),
                  std::invalid_argument);
  const ProcessFunction small({2}, {2}, {0, 1});
  CHECK_THROWS_AS(DeterministicDecomposition({{Rational(1, 2), e0()}, {Rational(1, 2), small}}),
                  std::invalid_argument);
}

TEST_CASE("fixed-point count equals the trace for random functions") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> pick(0, 11);
  for (int trial = 0; trial < 30; ++trial) {
    // Mixed alphabets: |I| = (2, 3, 2), |O| = (3, 2, 2).
    std::vector<std::size_t> table(12);
    for (auto& v : table) v = pick(rng);
    const ProcessFunction e({2, 3, 2}, {3, 2, 2}, table);
    const auto process = e.to_process();
    for_each_op_tuple(process.parties(), kDefaultEnumerationCap, [&](const std::vector<DeterministicOp>& ops) {
      CHECK(trace_under_ops(process, ops) == Rational(static_cast<long>(count_fixed_points(e, ops))));
      return true;
    });
  }
}

TEST_CASE("greedy decomposition reproduces the table") {
  for (const auto& p : {presets::circular_mixture(), presets::majority(), presets::perturbed_mixture()}) {
    const auto d = greedy_decomposition(p);
    CHECK(d.decomposes(p));
    CHECK(verify_theorem6(d).holds == is_logically_consistent(p));
  }
}

TEST_CASE("induced distribution from a function matches the table path") {
  const PartyStrategy::Shape shape{2, 2, 2, 2};
  const auto s = PartyStrategy::deterministic(shape, [](std::size_t a, std::size_t i) {
    return std::pair<std::size_t, std::size_t>{i, a};
  });
  const LocalStrategy ls{s, s, s};
  const auto e = majority_map();
  CHECK(induced_distribution(e, ls) == induced_distribution(e.to_process(), ls));
}

TEST_CASE("decomposition files") {
  const std::string text =
      "weight 1/2 preset:cyclic-identity\n"
      "weight 1/2\n" + format_process(e1().to_process()) + "end\n";
  const auto d = parse_decomposition(text);
  REQUIRE(d.size() == 2);
  CHECK(d.components()[1].second == e1());
  CHECK(d.decomposes(presets::circular_mixture()));
  CHECK_THROWS_AS(parse_decomposition("weight 1/2\nparty R 2 2\n0 | 0 : 1/2\n1 | 1 : 1\nend\n"), std::exception);
  CHECK(load_decomposition("preset:circular-mixture").decomposes(presets::circular_mixture()));
}

TEST_CASE("extremality equals consistency for deterministic tables") {
  for (std::size_t code = 0; code < 256; ++code) {
    std::vector<std::size_t> t(4);
    for (std::size_t o = 0; o < 4; ++o) t[o] = (code >> (2 * o)) & 3;
    const ProcessFunction e({2, 2}, {2, 2}, t);
    CHECK(is_deterministic_extremal(e).extremal == is_logically_consistent(e.to_process()));
  }
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<std::size_t> pick(0, 7);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::size_t> t(8);
    for (auto& v : t) v = pick(rng);
    const ProcessFunction e({2, 2, 2}, {2, 2, 2}, t);
    CHECK(is_deterministic_extremal(e).extremal == is_logically_consistent(e.to_process()));
  }
  for (const auto& name : {"majority", "identity-chain", "cyclic-identity", "cyclic-flip", "identity-loop"}) {
    const auto p = presets::process(name);
    CHECK(is_deterministic_extremal(as_function(p)).extremal == is_logically_consistent(p));
  }
}
