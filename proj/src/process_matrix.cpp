#include "causal/process_matrix.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include <Eigen/QR>

#include "causal/games.hpp"

namespace causal {

namespace {

std::vector<std::size_t> factor_dims(const std::vector<QuantumParty>& parties) {
  std::vector<std::size_t> dims;
  for (const auto& p : parties) {
    dims.push_back(p.input_dim);
    dims.push_back(p.output_dim);
  }
  return dims;
}

}  // namespace

ProcessMatrix::ProcessMatrix(std::vector<QuantumParty> parties, ComplexOperator w)
    : parties_(std::move(parties)), w_(std::move(w)) {
  if (parties_.empty()) throw std::invalid_argument("process matrix: no parties");
  auto dims = factor_dims(parties_);
  std::size_t n = 1;
  for (auto d : dims) n *= d;
  if (!w_.is_square() || w_.rows() != n) {
    throw std::invalid_argument("process matrix: operator side " + std::to_string(w_.rows()) +
                                " does not match the parties' dimension " + std::to_string(n));
  }
  w_.with_dims(std::move(dims));
}

ComplexOperator cj_of(std::span<const ComplexOperator> kraus, std::size_t in_dim, std::size_t out_dim) {
  ComplexOperator j(std::vector<std::size_t>{in_dim, out_dim});
  for (const auto& k : kraus) {
    if (k.rows() != out_dim || k.cols() != in_dim) throw std::invalid_argument("Kraus operator has the wrong shape");
    for (std::size_t i = 0; i < in_dim; ++i)
      for (std::size_t a = 0; a < out_dim; ++a) {
        const cplx left = std::conj(k.at(a, i));
        if (left == cplx{}) continue;
        for (std::size_t jj = 0; jj < in_dim; ++jj)
          for (std::size_t b = 0; b < out_dim; ++b) j.at(i * out_dim + a, jj * out_dim + b) += left * k.at(b, jj);
      }
  }
  return j;
}

ComplexOperator cj_of_unitary(const ComplexOperator& u) {
  if (!u.is_square()) throw std::invalid_argument("unitary must be square");
  return cj_of(std::span<const ComplexOperator>(&u, 1), u.rows(), u.rows());
}

ComplexOperator apply_cj(const ComplexOperator& cj, std::size_t in_dim, std::size_t out_dim,
                         const ComplexOperator& rho) {
  if (cj.rows() != in_dim * out_dim || rho.rows() != in_dim || rho.cols() != in_dim) {
    throw std::invalid_argument("apply_cj: dimensions do not match");
  }
  ComplexOperator out(out_dim, out_dim);
  for (std::size_t i = 0; i < in_dim; ++i)
    for (std::size_t j = 0; j < in_dim; ++j) {
      const cplx r = rho.at(i, j);
      if (r == cplx{}) continue;
      for (std::size_t a = 0; a < out_dim; ++a)
        for (std::size_t b = 0; b < out_dim; ++b) out.at(a, b) += r * std::conj(cj.at(i * out_dim + a, j * out_dim + b));
    }
  return out;
}

Instrument::Instrument(std::size_t in_dim, std::size_t out_dim, std::vector<std::vector<ComplexOperator>> elements)
    : in_(in_dim), out_(out_dim), elements_(std::move(elements)) {
  if (elements_.empty()) throw std::invalid_argument("instrument: no settings");
  for (auto& setting : elements_) {
    if (setting.empty()) throw std::invalid_argument("instrument: a setting has no outcomes");
    for (auto& e : setting) {
      if (!e.is_square() || e.rows() != in_dim * out_dim) throw std::invalid_argument("instrument: element has the wrong size");
      e.with_dims({in_dim, out_dim});
    }
  }
}

Instrument Instrument::from_kraus(std::size_t in_dim, std::size_t out_dim,
                                  const std::vector<std::vector<std::vector<ComplexOperator>>>& kraus) {
  std::vector<std::vector<ComplexOperator>> elements;
  for (const auto& setting : kraus) {
    auto& row = elements.emplace_back();
    for (const auto& outcome : setting) row.push_back(cj_of(outcome, in_dim, out_dim));
  }
  return Instrument(in_dim, out_dim, std::move(elements));
}

double Instrument::trace_preservation_error() const {
  double worst = 0;
  const std::size_t traced[] = {1};
  for (const auto& setting : elements_) {
    ComplexOperator sum(std::vector<std::size_t>{in_, out_});
    for (const auto& e : setting) sum += e;
    worst = std::max(worst, max_abs_diff(partial_trace(sum, traced), ComplexOperator::identity(in_)));
  }
  return worst;
}

std::vector<double> probability(const ProcessMatrix& w, std::span<const Instrument> instruments,
                                std::span<const std::size_t> settings) {
  const std::size_t n = w.party_count();
  if (instruments.size() != n || settings.size() != n) throw std::invalid_argument("expected one instrument per party");
  std::size_t joint = 1;
  for (std::size_t p = 0; p < n; ++p) {
    const auto& party = w.parties()[p];
    if (instruments[p].input_dim() != party.input_dim || instruments[p].output_dim() != party.output_dim) {
      throw std::invalid_argument("instrument of party '" + party.name + "' does not match its dimensions");
    }
    if (settings[p] >= instruments[p].settings()) throw std::invalid_argument("setting out of range");
    joint *= instruments[p].outcomes(settings[p]);
  }
  std::vector<double> out;
  out.reserve(joint);
  std::function<void(std::size_t, const ComplexOperator&)> rec = [&](std::size_t p, const ComplexOperator& r) {
    if (p == n) {
      out.push_back(r.at(0, 0).real());
      return;
    }
    const auto& inst = instruments[p];
    for (std::size_t x = 0; x < inst.outcomes(settings[p]); ++x) rec(p + 1, contract_leading(inst.element(settings[p], x), r));
  };
  rec(0, w.op());
  return out;
}

ValidationReport validate(const ProcessMatrix& w, double eps) {
  ValidationReport report;
  report.hermitian = w.op().is_hermitian(eps);
  const auto ev = hermitian_eigenvalues(report.hermitian ? w.op() : (w.op() + w.op().adjoint()) * cplx(0.5));
  report.min_eigenvalue = ev.front();
  report.positive = report.min_eigenvalue >= -eps;

  // Per party: the base point 1 (x) 1 / d_O and base + G_I (x) G_O with G_O
  // traceless; these affinely span all CJ operators with Tr_O J = 1_I.
  std::vector<std::vector<ComplexOperator>> gens;
  for (const auto& party : w.parties()) {
    auto& g = gens.emplace_back();
    const ComplexOperator base =
        ComplexOperator::identity({party.input_dim, party.output_dim}) * cplx(1.0 / static_cast<double>(party.output_dim));
    g.push_back(base);
    for (const auto& gi : hermitian_basis(party.input_dim))
      for (const auto& go : traceless_hermitian_basis(party.output_dim)) g.push_back(base + kron(gi, go));
  }
  std::vector<std::size_t> path(gens.size());
  std::function<bool(std::size_t, const ComplexOperator&)> rec = [&](std::size_t p, const ComplexOperator& r) {
    if (p == gens.size()) {
      ++report.elements_checked;
      const double err = std::abs(r.at(0, 0) - cplx(1));
      report.max_normalization_error = std::max(report.max_normalization_error, err);
      if (err > eps) {
        report.normalized = false;
        report.failing_elements = path;
        return false;
      }
      return true;
    }
    for (std::size_t k = 0; k < gens[p].size(); ++k) {
      path[p] = k;
      if (!rec(p + 1, contract_leading(gens[p][k], r))) return false;
    }
    return true;
  };
  rec(0, w.op());
  return report;
}

namespace {

ComplexOperator psi_projector() {
  const double s = 1 / std::sqrt(2.0);
  const std::vector<cplx> v{s, 0, 0, s};
  return ComplexOperator::outer(v);
}

std::vector<QuantumParty> qubit_parties(std::initializer_list<const char*> names) {
  std::vector<QuantumParty> parties;
  for (auto n : names) parties.push_back({n, 2, 2});
  return parties;
}

}  // namespace

ProcessMatrix w_state(const ComplexOperator& rho) {
  if (rho.rows() != 4 || !rho.is_square()) throw std::invalid_argument("w_state: rho must be a two-qubit operator");
  if (!rho.is_hermitian(kDefaultEpsilon) || hermitian_eigenvalues(rho).front() < -kDefaultEpsilon ||
      std::abs(rho.trace() - cplx(1)) > kDefaultEpsilon) {
    throw std::invalid_argument("w_state: rho is not a density operator");
  }
  ComplexOperator r = rho;
  r.with_dims({2, 2});
  // rho_{I_S I_R} (x) 1_{O_S O_R}, reordered to I_R O_R I_S O_S.
  const auto w = kron(r, ComplexOperator::identity({2, 2}));
  const std::size_t perm[] = {1, 3, 0, 2};
  return ProcessMatrix(qubit_parties({"R", "S"}), permute_subsystems(w, perm));
}

ProcessMatrix w_channel() {
  const ComplexOperator w = kron(kron(pauli::identity(), psi_projector().with_dims({2, 2})), pauli::identity());
  return ProcessMatrix(qubit_parties({"R", "S"}), w);
}

ProcessMatrix w_channel_loop() {
  // Links O_R -> I_S and O_S -> I_R, built as O_R I_S O_S I_R.
  ComplexOperator link = psi_projector() * cplx(2);
  link.with_dims({2, 2});
  const std::size_t perm[] = {3, 0, 1, 2};
  return ProcessMatrix(qubit_parties({"R", "S"}), permute_subsystems(kron(link, link), perm));
}

ProcessMatrix w_superposed() {
  // Factors I_R O_R I_S O_S I_T I_T'; links are unnormalized sum_j |jj>.
  std::vector<cplx> v(64);
  auto idx = [](std::size_t ir, std::size_t orr, std::size_t is, std::size_t os, std::size_t it, std::size_t c) {
    return ((((ir * 2 + orr) * 2 + is) * 2 + os) * 2 + it) * 2 + c;
  };
  const double s = 1 / std::sqrt(2.0);
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t k = 0; k < 2; ++k) {
      v[idx(0, j, j, k, k, 0)] += s;  // R then S then T, control 0
      v[idx(j, k, 0, j, k, 1)] += s;  // S then R then T, control 1
    }
  std::vector<QuantumParty> parties{{"R", 2, 2}, {"S", 2, 2}, {"T", 4, 1}};
  return ProcessMatrix(std::move(parties), ComplexOperator::outer(v));
}

ProcessMatrix w_ocb() {
  const auto one = pauli::identity(), z = pauli::z(), x = pauli::x();
  const ComplexOperator a[] = {one, z, z, one};
  const ComplexOperator b[] = {z, one, x, z};
  ComplexOperator w = ComplexOperator::identity({2, 2, 2, 2});
  w += (kron(a) + kron(b)) * cplx(1 / std::sqrt(2.0));
  w *= 0.25;
  return ProcessMatrix(qubit_parties({"R", "S"}), w);
}

std::pair<Instrument, Instrument> ocb_instruments(const ComplexOperator& rho) {
  if (rho.rows() != 2 || !rho.is_square()) throw std::invalid_argument("ocb: rho must be a qubit operator");
  const auto one = pauli::identity(), z = pauli::z(), x = pauli::x();
  auto sgn = [](std::size_t k) { return cplx(k % 2 == 0 ? 1.0 : -1.0); };
  std::vector<std::vector<ComplexOperator>> r(2), s(4);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t xo = 0; xo < 2; ++xo) r[a].push_back(kron(one + sgn(xo) * z, one + sgn(a) * z) * cplx(0.25));
  for (std::size_t b = 0; b < 2; ++b)
    for (std::size_t y = 0; y < 2; ++y) {
      s[2 * b + 0].push_back(kron(one + sgn(y) * x, one + sgn(b + y) * z) * cplx(0.25));
      s[2 * b + 1].push_back(kron(one + sgn(y) * z, rho) * cplx(0.5));
    }
  return {Instrument(2, 2, std::move(r)), Instrument(2, 2, std::move(s))};
}

double ocb_value(const ComplexOperator& rho) {
  const auto game = builtin_game("game1");
  const auto w = w_ocb();
  const auto [r, s] = ocb_instruments(rho);
  const Instrument inst[] = {r, s};
  double total = 0;
  for (std::size_t a = 0; a < game.input_sizes[0]; ++a)
    for (std::size_t bs = 0; bs < game.input_sizes[1]; ++bs) {
      const std::size_t settings[] = {a, bs};
      const std::size_t in[] = {a, bs};
      const auto p = probability(w, inst, settings);
      const double weight = game.input_distributions[0][a].to_double() * game.input_distributions[1][bs].to_double();
      for (std::size_t xo = 0; xo < 2; ++xo)
        for (std::size_t y = 0; y < 2; ++y) {
          const std::size_t out[] = {xo, y};
          if (game.wins(0, in, out)) total += weight * p[xo * 2 + y];
        }
    }
  return total;
}

CommuteResult commute_test(const ComplexOperator& b, const ComplexOperator& c, double eps) {
  if (b.rows() != 2 || c.rows() != 2 || !b.is_square() || !c.is_square()) {
    throw std::invalid_argument("commute_test: B and C must be qubit unitaries");
  }
  const ComplexOperator ids[] = {ComplexOperator::identity(2)};
  if (max_abs_diff(b.adjoint() * b, ids[0]) > 1e3 * eps || max_abs_diff(c.adjoint() * c, ids[0]) > 1e3 * eps) {
    throw std::invalid_argument("commute_test: B and C must be unitary");
  }
  const Instrument rb(2, 2, {{cj_of_unitary(b)}});
  const Instrument sc(2, 2, {{cj_of_unitary(c)}});
  // T measures the control in the +/- basis and discards the target.
  const double h = 1 / std::sqrt(2.0);
  std::vector<std::vector<ComplexOperator>> outcomes(2);
  for (std::size_t sign = 0; sign < 2; ++sign)
    for (std::size_t t = 0; t < 2; ++t) {
      ComplexOperator k(1, 4);
      k.at(0, t * 2 + 0) = h;
      k.at(0, t * 2 + 1) = sign == 0 ? h : -h;
      outcomes[sign].push_back(k);
    }
  const Instrument meter = Instrument::from_kraus(4, 1, {outcomes});
  const Instrument inst[] = {rb, sc, meter};
  const std::size_t settings[] = {0, 0, 0};
  const auto p = probability(w_superposed(), inst, settings);
  CommuteResult r{p[0] >= p[1] ? 0u : 1u, p[0], p[1]};
  if (std::min(p[0], p[1]) > eps) {
    throw PromiseViolation("commute_test: outcome is not deterministic (p+ = " + std::to_string(p[0]) +
                           ", p- = " + std::to_string(p[1]) + "); B and C neither commute nor anticommute");
  }
  return r;
}

ComplexOperator random_unitary(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  const auto n = static_cast<Eigen::Index>(d);
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = {g(rng), g(rng)};
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd rr = qr.matrixQR().triangularView<Eigen::Upper>();
  ComplexOperator u(d, d);
  for (Eigen::Index j = 0; j < n; ++j) {
    // Fix the phases so the distribution is unitarily invariant.
    const cplx diag = rr(j, j);
    const cplx phase = std::abs(diag) > 0 ? diag / std::abs(diag) : cplx(1);
    for (Eigen::Index i = 0; i < n; ++i) u.at(i, j) = q(i, j) * phase;
  }
  return u;
}

Instrument random_instrument(std::size_t in_dim, std::size_t out_dim, std::size_t settings, std::size_t outcomes,
                             std::mt19937_64& rng) {
  constexpr std::size_t kraus_per_outcome = 2;
  const std::size_t blocks = outcomes * kraus_per_outcome;
  const auto rows = static_cast<Eigen::Index>(blocks * out_dim);
  const auto cols = static_cast<Eigen::Index>(in_dim);
  if (rows < cols) throw std::invalid_argument("random_instrument: not enough room for an isometry");
  std::normal_distribution<double> g;
  std::vector<std::vector<std::vector<ComplexOperator>>> kraus(settings);
  for (auto& setting : kraus) {
    Eigen::MatrixXcd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = {g(rng), g(rng)};
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
    const Eigen::MatrixXcd v = qr.householderQ() * Eigen::MatrixXcd::Identity(rows, cols);
    setting.resize(outcomes);
    for (std::size_t blk = 0; blk < blocks; ++blk) {
      ComplexOperator k(out_dim, in_dim);
      for (std::size_t a = 0; a < out_dim; ++a)
        for (std::size_t i = 0; i < in_dim; ++i) {
          k.at(a, i) = v(static_cast<Eigen::Index>(blk * out_dim + a), static_cast<Eigen::Index>(i));
        }
      setting[blk / kraus_per_outcome].push_back(std::move(k));
    }
  }
  return Instrument::from_kraus(in_dim, out_dim, kraus);
}

}  // namespace causal
