#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "causal/classical_process.hpp"
#include "causal/classify.hpp"
#include "causal/fixed_point.hpp"
#include "causal/index.hpp"
#include "causal/lp.hpp"
#include "causal/matrix.hpp"
#include "causal/presets.hpp"
#include "causal/process_io.hpp"
#include "causal/relations.hpp"
#include "causal/strategy.hpp"

using namespace causal;

namespace {

RationalMatrix random_stochastic(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(0, 5);
  RationalMatrix m(rows, cols);
  for (std::size_t c = 0; c < cols; ++c) {
    long total = 0;
    std::vector<long> w(rows);
    for (auto& x : w) total += (x = d(rng));
    if (total == 0) w[0] = total = 1;
    for (std::size_t r = 0; r < rows; ++r) m.at(r, c) = Rational(w[r], total);
  }
  return m;
}

}  // namespace

TEST_CASE("rational arithmetic stays canonical") {
  const Rational a(6, -4);
  CHECK(a.str() == "-3/2");
  CHECK(Rational::parse("10/4") == Rational(5, 2));
  CHECK(Rational::parse("-7").str() == "-7");
  CHECK((Rational(1, 3) + Rational(1, 6)).str() == "1/2");
  CHECK((Rational(2, 3) * Rational(3, 2)).is_one());
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK_THROWS(Rational::parse("1/0"));
  CHECK_THROWS(Rational::parse("x"));
  CHECK_THROWS(Rational(1) / Rational(0));
}

TEST_CASE("mixed radix matches the positional formula") {
  const std::vector<std::size_t> radices{3, 2, 4};
  MixedRadix mr(radices);
  CHECK(mr.size() == 24);
  std::size_t expected = 0;
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t c = 0; c < 4; ++c) {
        const std::vector<std::size_t> t{a, b, c};
        CHECK(mr.encode(t) == a * 8 + b * 4 + c);
        CHECK(mr.encode(t) == expected);
        CHECK(mr.decode(expected) == t);
        ++expected;
      }
  CHECK_THROWS(mr.encode(std::vector<std::size_t>{3, 0, 0}));
}

TEST_CASE("odometer visits every tuple once in order") {
  Odometer odo({2, 3});
  std::vector<std::vector<std::size_t>> seen;
  do seen.push_back(odo.current());
  while (odo.next());
  REQUIRE(seen.size() == 6);
  CHECK(seen.front() == std::vector<std::size_t>{0, 0});
  CHECK(seen[1] == std::vector<std::size_t>{0, 1});
  CHECK(seen.back() == std::vector<std::size_t>{1, 2});
}

TEST_CASE("checked products respect the cap") {
  const std::vector<std::size_t> f{4, 4, 4};
  CHECK(checked_product(f, 64) == 64);
  CHECK_THROWS_AS(checked_product(f, 63), EnumerationTooLarge);
  CHECK_THROWS_AS(checked_power(4, 40, kDefaultEnumerationCap), EnumerationTooLarge);
}

TEST_CASE("tensor product matches the index formula") {
  std::mt19937_64 rng(7);
  const auto a = random_stochastic(2, 3, rng);
  const auto b = random_stochastic(3, 2, rng);
  const auto t = tensor(a, b);
  REQUIRE(t.rows() == 6);
  REQUIRE(t.cols() == 6);
  for (std::size_t ia = 0; ia < 2; ++ia)
    for (std::size_t ib = 0; ib < 3; ++ib)
      for (std::size_t ja = 0; ja < 3; ++ja)
        for (std::size_t jb = 0; jb < 2; ++jb) CHECK(t.at(ia * 3 + ib, ja * 2 + jb) == a.at(ia, ja) * b.at(ib, jb));
  CHECK(t.is_column_stochastic());
  CHECK_THROWS(StochasticMatrix(RationalMatrix(2, 2)));
}

TEST_CASE("deterministic ops are listed lexicographically") {
  const auto ops = enumerate_deterministic_ops(2, 2);
  REQUIRE(ops.size() == 4);
  CHECK(ops[0] == DeterministicOp::d_0());
  CHECK(ops[1] == DeterministicOp::d_id());
  CHECK(ops[2] == DeterministicOp::d_not());
  CHECK(ops[3] == DeterministicOp::d_1());
  CHECK(enumerate_deterministic_ops(3, 2).size() == 8);
  CHECK(parse_deterministic_op("not", 2, 2) == DeterministicOp::d_not());
  CHECK(parse_deterministic_op("[2,0,1]", 3, 3)(0) == 2);
  CHECK_THROWS(parse_deterministic_op("d_id", 3, 3));
}

TEST_CASE("simplex finds exact feasible points or proves infeasibility") {
  LinearSystem s(2);
  s.require_nonnegative(0);
  s.require_nonnegative(1);
  s.add({Rational(1), Rational(1)}, Relation::Equal, Rational(1));
  s.add({Rational(3), Rational(-1)}, Relation::GreaterEqual, Rational(1, 2));
  const auto x = lp_feasible(s);
  REQUIRE(x);
  CHECK(s.satisfied_by(*x));

  LinearSystem t(1);
  t.require_nonnegative(0);
  t.add({Rational(1)}, Relation::LessEqual, Rational(-1));
  CHECK_FALSE(lp_feasible(t));

  // Free variable forced negative.
  LinearSystem u(1);
  u.add({Rational(2)}, Relation::Equal, Rational(-3));
  const auto y = lp_feasible(u);
  REQUIRE(y);
  CHECK((*y)[0] == Rational(-3, 2));
}

TEST_CASE("trace under ops agrees with a direct fixed-point count") {
  // Oracle: for a deterministic process, Tr(E (M_1 x ... x M_n)) is the
  // number of joint inputs i with e(ops(i)) = i, counted here by hand.
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> pick(0, 7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::size_t> table(8);
    for (auto& v : table) v = pick(rng);
    const ProcessFunction e({2, 2, 2}, {2, 2, 2}, table);
    const auto process = e.to_process();
    for_each_op_tuple(process.parties(), kDefaultEnumerationCap, [&](const std::vector<DeterministicOp>& ops) {
      long count = 0;
      for (std::size_t i = 0; i < 8; ++i) {
        const std::size_t o = (ops[0]((i >> 2) & 1) << 2) | (ops[1]((i >> 1) & 1) << 1) | ops[2](i & 1);
        if (table[o] == i) ++count;
      }
      CHECK(trace_under_ops(process, ops) == Rational(count));
      return true;
    });
  }
}

TEST_CASE("preset consistency verdicts") {
  CHECK(is_logically_consistent(presets::circular_mixture()));
  CHECK(is_logically_consistent(presets::majority()));
  CHECK(is_logically_consistent(presets::identity_chain()));
  CHECK_FALSE(is_logically_consistent(presets::cyclic_identity()));
  CHECK_FALSE(is_logically_consistent(presets::cyclic_flip()));
  CHECK_FALSE(is_logically_consistent(presets::two_channel()));
  CHECK_FALSE(is_logically_consistent(presets::identity_loop()));

  const auto r = check_logical_consistency(presets::perturbed_mixture());
  CHECK(r.nonnegative);
  CHECK_FALSE(r.total_probability.holds);
  CHECK(r.total_probability.trace == Rational(51, 50));
  CHECK(r.total_probability.counterexample ==
        std::vector<DeterministicOp>{DeterministicOp::d_id(), DeterministicOp::d_id(), DeterministicOp::d_id()});
}

TEST_CASE("negative entries fail non-negativity") {
  RationalMatrix t(2, 2);
  t.at(0, 0) = Rational(2);
  t.at(1, 0) = Rational(-1);
  t.at(0, 1) = Rational(1);
  const ClassicalProcess p({{"R", 2, 2}}, t);
  CHECK_FALSE(check_nonnegativity(p));
  CHECK_FALSE(check_logical_consistency(p).consistent());
}

TEST_CASE("induced distribution of a chain is the expected channel") {
  // identity-chain: R gets 0, R -> S -> T identity channels. With x = i and
  // o = a everywhere, S sees a_R and T sees a_S.
  const auto process = presets::identity_chain();
  const PartyStrategy::Shape shape{2, 2, 2, 2};
  const auto copy = PartyStrategy::deterministic(shape, [](std::size_t a, std::size_t i) {
    return std::pair<std::size_t, std::size_t>{i, a};
  });
  const LocalStrategy s{copy, copy, copy};
  const auto d = induced_distribution(process, s);
  for (std::size_t a = 0; a < 8; ++a) {
    const auto in = d.input_radix().decode(a);
    const std::vector<std::size_t> x{0, in[0], in[1]};
    CHECK(d.probability(x, in).is_one());
  }
}

TEST_CASE("induced distribution rejects inconsistent processes") {
  const PartyStrategy::Shape shape{2, 2, 2, 2};
  const auto copy = PartyStrategy::deterministic(shape, [](std::size_t a, std::size_t i) {
    return std::pair<std::size_t, std::size_t>{i, a};
  });
  const auto id = PartyStrategy::deterministic(shape, [](std::size_t, std::size_t i) {
    return std::pair<std::size_t, std::size_t>{i, i};
  });
  CHECK_THROWS_AS(induced_distribution(presets::cyclic_identity(), LocalStrategy{id, id, id}), InconsistentProcess);
  CHECK_NOTHROW(induced_distribution(presets::cyclic_identity(), LocalStrategy{copy, copy, copy}));
}

TEST_CASE("relations on the signaling presets") {
  const auto one = infer_relations(presets::one_way_signaling());
  CHECK(one.lemma1_satisfied);
  CHECK(one.precedes.size() == 1);
  const auto two = infer_relations(presets::two_way_signaling());
  CHECK_FALSE(two.lemma1_satisfied);
  CHECK(two.causally_first.empty());
  const auto noise = infer_relations(presets::uniform_noise());
  CHECK(noise.lemma1_satisfied);
  CHECK(noise.causally_first.size() == 2);
  CHECK(noise.precedes.empty());
}

TEST_CASE("parity dependence counts as correlation") {
  // X = B xor C: X's marginal is uniform over B alone, yet it depends on B
  // once C is fixed.
  RationalMatrix t(8, 8);
  for (std::size_t a = 0; a < 8; ++a) {
    const std::size_t b = (a >> 1) & 1, c = a & 1;
    t.at(((b ^ c) << 2), a) = Rational(1);
  }
  const ConditionalDistribution d({2, 2, 2}, {2, 2, 2}, t);
  const auto rel = infer_relations(d);
  CHECK(rel.correlated[1][0]);
  CHECK(rel.correlated[2][0]);
  CHECK_FALSE(rel.correlated[0][1]);
}

TEST_CASE("two-party membership") {
  const auto one = presets::one_way_signaling();
  const auto m = two_party_causal_membership(one);
  REQUIRE(m);
  CHECK(m->reconstruct() == one);
  CHECK_FALSE(two_party_causal_membership(presets::two_way_signaling()));
  const auto noise = two_party_causal_membership(presets::uniform_noise());
  REQUIRE(noise);
  CHECK(noise->reconstruct() == presets::uniform_noise());

  // Equal mixture of the two one-way behaviours is still a member.
  const auto a = presets::one_way_signaling();
  RationalMatrix mirrored(4, 4);
  for (std::size_t x = 0; x < 4; ++x)
    for (std::size_t in = 0; in < 4; ++in) {
      const std::size_t xs = ((x & 1) << 1) | (x >> 1), ins = ((in & 1) << 1) | (in >> 1);
      mirrored.at(xs, ins) = a.table().at(x, in);
    }
  RationalMatrix mix = a.table();
  mix += mirrored;
  mix *= Rational(1, 2);
  const ConditionalDistribution mixed({2, 2}, {2, 2}, mix);
  const auto mm = two_party_causal_membership(mixed);
  REQUIRE(mm);
  CHECK(mm->reconstruct() == mixed);
}

TEST_CASE("full and reduced classify searches agree") {
  // Two parties with bit wires: every consistent function, both searches.
  std::size_t consistent = 0;
  for (std::size_t code = 0; code < 256; code += 5) {
    std::vector<std::size_t> table(4);
    for (std::size_t o = 0; o < 4; ++o) table[o] = (code >> (2 * o)) & 3;
    const auto process = ProcessFunction({2, 2}, {2, 2}, table).to_process();
    if (!is_logically_consistent(process)) continue;
    ++consistent;
    ClassifyOptions reduced, full;
    full.copy_out_search = false;
    CHECK(classify(process, reduced).verdict == classify(process, full).verdict);
  }
  CHECK(consistent > 0);

  // Three parties, single game input: the full search is affordable.
  ClassifyOptions reduced, full;
  reduced.game_input_size = full.game_input_size = 1;
  full.copy_out_search = false;
  for (const auto& p : {presets::circular_mixture(), presets::majority(), presets::identity_chain()}) {
    CHECK(classify(p, reduced).verdict == classify(p, full).verdict);
  }
}

TEST_CASE("classify verdicts and witnesses") {
  CHECK(classify(presets::identity_chain()).verdict == CausalVerdict::Causal);
  for (const auto& p : {presets::circular_mixture(), presets::majority()}) {
    const auto c = classify(p);
    REQUIRE(c.verdict == CausalVerdict::NonCausal);
    REQUIRE(c.witness);
    // Oracle: recompute the behaviour and look for a party whose output
    // ignores everyone else's input with the other inputs held fixed.
    const auto d = induced_distribution(p, *c.witness);
    CHECK(d == *c.witness_behaviour);
    bool some_first = false;
    for (std::size_t q = 0; q < 3; ++q) {
      bool blind = true;
      for (std::size_t a = 0; a < 8 && blind; ++a)
        for (std::size_t other = 0; other < 3 && blind; ++other) {
          if (other == q) continue;
          const std::size_t flipped = a ^ (std::size_t{1} << (2 - other));
          blind = d.output_marginal(q, a) == d.output_marginal(q, flipped);
        }
      some_first = some_first || blind;
    }
    CHECK_FALSE(some_first);
  }
  CHECK_THROWS_AS(classify(presets::two_channel()), InconsistentProcess);
}

TEST_CASE("process files round-trip") {
  for (const auto& name : presets::process_names()) {
    const auto p = presets::process(name);
    CHECK(parse_process(format_process(p)) == p);
  }
  for (const auto& name : presets::distribution_names()) {
    const auto d = presets::distribution(name);
    CHECK(parse_distribution(format_distribution(d)) == d);
  }
  const PartyStrategy::Shape shape{2, 3, 2, 2};
  const auto s = PartyStrategy::deterministic(shape, [](std::size_t a, std::size_t i) {
    return std::pair<std::size_t, std::size_t>{(a + i) % 2, i % 2};
  });
  const LocalStrategy ls{s, s};
  CHECK(parse_strategy(format_strategy(ls)) == ls);
}

TEST_CASE("parse errors carry the line") {
  const std::string bad = "party R 2 2\n0 | 0 : 1\n1 | 1 : 1/0\n";
  try {
    parse_process(bad, "bad.proc");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.source() == "bad.proc");
  }
  CHECK_THROWS_AS(parse_process("party R 2 2\n0 | 0 : 1\n0 | 0 : 1\n"), ParseError);
  CHECK_THROWS_AS(parse_process("party R 2 2\n2 | 0 : 1\n"), ParseError);
  CHECK_THROWS_AS(parse_distribution("inputs 2\n0 | 0 : 1\n"), ParseError);
  CHECK_THROWS_AS(load_process("preset:nope"), std::invalid_argument);
}

TEST_CASE("comments and blank lines are ignored") {
  const auto p = parse_process("# loop\n\nparty R 2 2   # one party\n0 | 0 : 1\n1 | 1 : 1\n");
  CHECK(p == presets::identity_loop());
}

TEST_CASE("tensor is associative and keeps stochasticity") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    const auto a = random_stochastic(2, 3, rng);
    const auto b = random_stochastic(3, 2, rng);
    const auto c = random_stochastic(2, 2, rng);
    CHECK(tensor(tensor(a, b), c) == tensor(a, tensor(b, c)));
    CHECK(tensor(tensor(a, b), c).is_column_stochastic());
  }
}

TEST_CASE("op enumeration has m^n distinct entries") {
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t m = 1; m <= 3; ++m) {
      auto ops = enumerate_deterministic_ops(n, m);
      std::size_t expected = 1;
      for (std::size_t k = 0; k < n; ++k) expected *= m;
      CHECK(ops.size() == expected);
      std::sort(ops.begin(), ops.end());
      CHECK(std::adjacent_find(ops.begin(), ops.end()) == ops.end());
    }
}

TEST_CASE("mixed strategies on consistent processes are normalized") {
  std::mt19937_64 rng(19);
  for (const auto& p : {presets::circular_mixture(), presets::majority(), presets::identity_chain()}) {
    LocalStrategy s;
    for (int k = 0; k < 3; ++k) s.emplace_back(PartyStrategy::Shape{2, 2, 2, 2}, random_stochastic(4, 4, rng));
    const auto d = induced_distribution(p, s);
    CHECK(d.is_valid());
  }
}

TEST_CASE("every causal-order tuple on a causal process keeps a first party") {
  // All copy-out strategy tuples on the chain: 16 env-output maps per party.
  const auto process = presets::identity_chain();
  const PartyStrategy::Shape shape{2, 2, 2, 2};
  std::vector<PartyStrategy> maps;
  for (std::size_t code = 0; code < 16; ++code) {
    maps.push_back(PartyStrategy::deterministic(shape, [code](std::size_t a, std::size_t i) {
      return std::pair<std::size_t, std::size_t>{i, (code >> (a * 2 + i)) & 1};
    }));
  }
  std::size_t checked = 0;
  for (const auto& r : maps)
    for (const auto& s : maps)
      for (const auto& t : maps) {
        const auto rel = infer_relations(induced_distribution(process, LocalStrategy{r, s, t}));
        CHECK(rel.lemma1_satisfied);
        ++checked;
      }
  CHECK(checked == 4096);
}
