#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "causal/complex_matrix.hpp"
#include "causal/kernels.hpp"
#include "causal/operator_io.hpp"
#include "causal/process_matrix.hpp"

using namespace causal;

namespace {

constexpr double kTol = 1e-9;

ComplexOperator random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  ComplexOperator m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = cplx(n(rng), n(rng));
  return m;
}

ComplexOperator random_density(std::size_t d, std::mt19937_64& rng) {
  const auto a = random_matrix(d, d, rng);
  auto rho = a * a.adjoint();
  return rho * cplx(1.0 / rho.trace().real());
}

// Kraus operators of a random channel in -> out, from a random isometry.
std::vector<ComplexOperator> random_kraus(std::size_t in, std::size_t out, std::size_t k, std::mt19937_64& rng) {
  const auto v = random_unitary(out * k, rng);
  std::vector<ComplexOperator> ks;
  for (std::size_t j = 0; j < k; ++j) {
    ComplexOperator kj(out, in);
    for (std::size_t r = 0; r < out; ++r)
      for (std::size_t c = 0; c < in; ++c) kj.at(r, c) = v.at(j * out + r, c);
    ks.push_back(kj);
  }
  return ks;
}

ComplexOperator ket_bra(std::size_t rows, std::size_t cols, std::size_t r, std::size_t c) {
  ComplexOperator m(rows, cols);
  m.at(r, c) = 1;
  return m;
}

}  // namespace

TEST_CASE("scalar and vector kernels agree") {
  const auto* avx = kernels::avx2_table();
  if (avx == nullptr) {
    MESSAGE("no AVX2 on this machine, comparing the scalar table with itself");
    avx = &kernels::scalar_table();
  }
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n;
  for (std::size_t len : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 16u, 17u, 63u}) {
    std::vector<cplx> x(len), y(len);
    for (auto& v : x) v = {n(rng), n(rng)};
    for (auto& v : y) v = {n(rng), n(rng)};
    cplx ref = 0;
    for (std::size_t k = 0; k < len; ++k) ref += x[k] * y[k];
    CHECK(std::abs(kernels::scalar_table().dotu(x.data(), y.data(), len) - ref) < 1e-12 * (1 + len));
    CHECK(std::abs(avx->dotu(x.data(), y.data(), len) - ref) < 1e-12 * (1 + len));
    const cplx a(0.3, -1.7);
    auto y1 = y, y2 = y;
    kernels::scalar_table().axpy(a, x.data(), y1.data(), len);
    avx->axpy(a, x.data(), y2.data(), len);
    for (std::size_t k = 0; k < len; ++k) {
      CHECK(std::abs(y1[k] - (y[k] + a * x[k])) < 1e-12);
      CHECK(std::abs(y2[k] - y1[k]) < 1e-12);
    }
  }
}

TEST_CASE("kron and partial trace follow the index formula") {
  std::mt19937_64 rng(2);
  const auto a = random_matrix(2, 2, rng).with_dims({2});
  const auto b = random_matrix(3, 3, rng).with_dims({3});
  const auto k = kron(a, b);
  CHECK(k.dims() == std::vector<std::size_t>{2, 3});
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) CHECK(std::abs(k.at(i, j) - a.at(i / 3, j / 3) * b.at(i % 3, j % 3)) < kTol);
  const std::vector<std::size_t> second{1};
  CHECK(max_abs_diff(partial_trace(k, second), a * b.trace()) < kTol);
  const std::vector<std::size_t> swap{1, 0};
  CHECK(max_abs_diff(permute_subsystems(k, swap), kron(b, a)) < kTol);
  CHECK(std::abs(trace_product(k, k) - (k * k).trace()) < 1e-9);
}

TEST_CASE("contract_leading pairs with the leading factors") {
  std::mt19937_64 rng(4);
  const auto w = random_matrix(8, 8, rng).with_dims({2, 4});
  auto b = random_matrix(2, 2, rng).with_dims({2});
  auto c = random_matrix(4, 4, rng).with_dims({4});
  const auto r = contract_leading(b, w);
  CHECK(std::abs(trace_product(r, c) - (w * kron(b, c)).trace()) < 1e-9);
}

TEST_CASE("CJ operator round-trips a random channel") {
  std::mt19937_64 rng(5);
  for (auto [in, out] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}, {3, 2}}) {
    const auto ks = random_kraus(in, out, 3, rng);
    const auto j = cj_of(ks, in, out);
    const auto rho = random_density(in, rng);
    ComplexOperator direct(out, out);
    for (const auto& k : ks) direct += k * rho * k.adjoint();
    CHECK(max_abs_diff(apply_cj(j, in, out, rho), direct) < kTol);
    // Trace preservation shows up as Tr_O J = identity.
    const std::vector<std::size_t> o{1};
    CHECK(max_abs_diff(partial_trace(j, o), ComplexOperator::identity(in)) < kTol);
    // Entry formula J[(i,a),(j,b)] = sum_k conj(K[a,i]) K[b,j].
    cplx e = 0;
    for (const auto& k : ks) e += std::conj(k.at(1, 0)) * k.at(0, 1);
    CHECK(std::abs(j.at(0 * out + 1, 1 * out + 0) - e) < kTol);
  }
  // Identity channel: 2 |Psi><Psi| with |Psi> = (|00> + |11>)/sqrt 2.
  const auto id = cj_of_unitary(pauli::identity());
  CHECK(std::abs(id.at(0, 3) - 1.0) < kTol);
  CHECK(std::abs(id.at(0, 0) - 1.0) < kTol);
  CHECK(std::abs(id.at(1, 1)) < kTol);
}

TEST_CASE("Born rule for a state process") {
  // R and S measure their inputs in the computational basis and re-prepare
  // |0>. With rho on I_S (x) I_R, P(x_R, y_S) = <y x| rho |y x>.
  std::mt19937_64 rng(6);
  const auto rho = random_density(4, rng);
  const auto w = w_state(rho);
  std::vector<std::vector<std::vector<ComplexOperator>>> kraus(1);
  for (std::size_t x = 0; x < 2; ++x) kraus[0].push_back({ket_bra(2, 2, 0, x)});
  const auto inst = Instrument::from_kraus(2, 2, kraus);
  const std::vector<Instrument> both{inst, inst};
  const std::vector<std::size_t> settings{0, 0};
  const auto p = probability(w, both, settings);
  REQUIRE(p.size() == 4);
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y) CHECK(std::abs(p[x * 2 + y] - rho.at(y * 2 + x, y * 2 + x).real()) < kTol);
}

TEST_CASE("Born rule for a channel process") {
  // R discards its input and prepares psi; S measures. P(y) = |<y|psi>|^2.
  const double t = 0.7;
  const cplx psi0(std::cos(t), 0), psi1(0, std::sin(t));
  std::vector<std::vector<std::vector<ComplexOperator>>> rk(1, std::vector<std::vector<ComplexOperator>>(1));
  for (std::size_t i = 0; i < 2; ++i) {
    ComplexOperator k(2, 2);
    k.at(0, i) = psi0;
    k.at(1, i) = psi1;
    rk[0][0].push_back(k);
  }
  std::vector<std::vector<std::vector<ComplexOperator>>> sk(1);
  for (std::size_t y = 0; y < 2; ++y) sk[0].push_back({ket_bra(2, 2, 0, y)});
  const std::vector<Instrument> inst{Instrument::from_kraus(2, 2, rk), Instrument::from_kraus(2, 2, sk)};
  const std::vector<std::size_t> settings{0, 0};
  const auto p = probability(w_channel(), inst, settings);
  CHECK(std::abs(p[0] - std::norm(psi0)) < kTol);
  CHECK(std::abs(p[1] - std::norm(psi1)) < kTol);
}

TEST_CASE("random instruments give normalized distributions") {
  std::mt19937_64 rng(8);
  for (const auto& name : {"w-state", "w-channel", "w-superposed", "w-ocb"}) {
    const auto w = presets::process_matrix(name);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Instrument> inst;
      for (const auto& party : w.parties()) {
        inst.push_back(random_instrument(party.input_dim, party.output_dim, 2, 3, rng));
        CHECK(inst.back().trace_preservation_error() < kTol);
      }
      std::vector<std::size_t> settings(w.party_count());
      for (auto& s : settings) s = rng() % 2;
      double total = 0;
      for (double v : probability(w, inst, settings)) {
        CHECK(v > -kTol);
        total += v;
      }
      CHECK(std::abs(total - 1) < kTol);
    }
  }
}

TEST_CASE("validation of the example process matrices") {
  for (const auto& name : {"w-state", "w-channel", "w-superposed", "w-ocb"}) {
    INFO(name);
    CHECK(validate(presets::process_matrix(name)).valid());
  }
  const auto doubled = validate(presets::process_matrix("w-state").scaled(2));
  CHECK(doubled.positive);
  CHECK_FALSE(doubled.normalized);
  const auto loop = validate(w_channel_loop());
  CHECK(loop.positive);
  CHECK_FALSE(loop.normalized);
  CHECK(std::abs(loop.max_normalization_error - 1) < kTol);
  // A non-positive operator with the right normalization.
  auto op = presets::process_matrix("w-ocb").op();
  op.at(0, 0) -= 3;
  op.at(1, 1) += 3;
  CHECK_FALSE(validate(ProcessMatrix(presets::process_matrix("w-ocb").parties(), op)).positive);
}

TEST_CASE("loop of two channels gives no probability distribution") {
  // Identity at both parties closes the loop coherently: Tr of two
  // unnormalized maximally entangled rings overlapping fully, d^2 = 4.
  // A bit flip at one party leaves no consistent history.
  const auto id = cj_of_unitary(pauli::identity());
  const auto flip = cj_of_unitary(pauli::x());
  const std::vector<std::size_t> settings{0, 0};
  const std::vector<Instrument> same{Instrument(2, 2, {{id}}), Instrument(2, 2, {{id}})};
  CHECK(std::abs(probability(w_channel_loop(), same, settings)[0] - 4) < kTol);
  const std::vector<Instrument> flipped{Instrument(2, 2, {{flip}}), Instrument(2, 2, {{id}})};
  CHECK(std::abs(probability(w_channel_loop(), flipped, settings)[0]) < kTol);
}

TEST_CASE("OCB value and its independence from the prepared state") {
  const double target = (2 + std::sqrt(2.0)) / 4;
  CHECK(std::abs(ocb_value(ComplexOperator::identity(2) * cplx(0.5)) - target) < kTol);
  std::mt19937_64 rng(9);
  CHECK(std::abs(ocb_value(random_density(2, rng)) - target) < kTol);
}

TEST_CASE("commute test on Pauli pairs") {
  CHECK(commute_test(pauli::x(), pauli::x()).bit == 0);
  CHECK(commute_test(pauli::identity(), pauli::y()).bit == 0);
  CHECK(commute_test(pauli::x(), pauli::z()).bit == 1);
  CHECK(commute_test(pauli::y(), pauli::z()).bit == 1);
  CHECK_THROWS_AS(commute_test(pauli::x(), pauli::hadamard()), PromiseViolation);
}

TEST_CASE("random unitaries are unitary") {
  std::mt19937_64 rng(10);
  for (std::size_t d : {2u, 3u, 5u}) {
    const auto u = random_unitary(d, rng);
    CHECK(max_abs_diff(u * u.adjoint(), ComplexOperator::identity(d)) < kTol);
  }
}

TEST_CASE("eigenvalues of a known operator") {
  const auto ev = hermitian_eigenvalues(pauli::x() + pauli::z() * cplx(2));
  REQUIRE(ev.size() == 2);
  CHECK(std::abs(ev[0] + std::sqrt(5.0)) < kTol);
  CHECK(std::abs(ev[1] - std::sqrt(5.0)) < kTol);
  CHECK(traceless_hermitian_basis(3).size() == 8);
  CHECK(hermitian_basis(2).size() == 4);
}

TEST_CASE("operator files round-trip") {
  for (const auto& name : presets::process_matrix_names()) {
    const auto w = presets::process_matrix(name);
    const auto back = parse_process_matrix(format_process_matrix(w));
    CHECK(back.parties() == w.parties());
    CHECK(max_abs_diff(back.op(), w.op()) == 0);
  }
  const auto h = parse_operator("0.5,0 0.5\n0.5 -0.5,0\n");
  CHECK(max_abs_diff(h, pauli::hadamard() * cplx(1 / std::sqrt(2.0))) < kTol);
  CHECK_THROWS_AS(parse_operator("1 0 0\n"), ParseError);
  CHECK_THROWS_AS(parse_process_matrix("party R 2 2\n1 0\n"), ParseError);
}
