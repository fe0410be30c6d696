#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "causal/complex_matrix.hpp"
#include "causal/errors.hpp"

namespace causal {

inline constexpr double kDefaultEpsilon = 1e-9;

struct QuantumParty {
  std::string name;
  std::size_t input_dim = 2;
  std::size_t output_dim = 2;

  friend bool operator==(const QuantumParty&, const QuantumParty&) = default;
};

/// Operator on I_1 (x) O_1 (x) I_2 (x) O_2 (x) ... in party order.
class ProcessMatrix {
 public:
  /// Throws std::invalid_argument if the operator's side does not match the
  /// parties' dimensions. Factor labels are reset to (I_1, O_1, I_2, ...).
  ProcessMatrix(std::vector<QuantumParty> parties, ComplexOperator w);

  const std::vector<QuantumParty>& parties() const { return parties_; }
  std::size_t party_count() const { return parties_.size(); }
  const ComplexOperator& op() const { return w_; }

  ProcessMatrix scaled(double s) const { return ProcessMatrix(parties_, w_ * cplx(s)); }

 private:
  std::vector<QuantumParty> parties_;
  ComplexOperator w_;
};

/// CJ operator of the CP map rho -> sum_k K rho K^dagger, on I (x) O:
/// J = sum_{ij} |i><j| (x) conj(M(|i><j|)). Under this convention
/// P = Tr(W (J_1 (x) J_2 ...)) and the identity channel maps to 2|Psi><Psi|.
ComplexOperator cj_of(std::span<const ComplexOperator> kraus, std::size_t in_dim, std::size_t out_dim);
ComplexOperator cj_of_unitary(const ComplexOperator& u);
/// Applies a map given by its CJ operator to rho (inverse of cj_of).
ComplexOperator apply_cj(const ComplexOperator& cj, std::size_t in_dim, std::size_t out_dim, const ComplexOperator& rho);

/// Local operation of one party: a CJ operator per (setting, outcome).
class Instrument {
 public:
  /// elements[setting][outcome], each on I (x) O.
  Instrument(std::size_t in_dim, std::size_t out_dim, std::vector<std::vector<ComplexOperator>> elements);

  /// kraus[setting][outcome] lists the Kraus operators (out x in).
  static Instrument from_kraus(std::size_t in_dim, std::size_t out_dim,
                               const std::vector<std::vector<std::vector<ComplexOperator>>>& kraus);

  std::size_t input_dim() const { return in_; }
  std::size_t output_dim() const { return out_; }
  std::size_t settings() const { return elements_.size(); }
  std::size_t outcomes(std::size_t setting) const { return elements_[setting].size(); }
  const ComplexOperator& element(std::size_t setting, std::size_t outcome) const {
    return elements_[setting][outcome];
  }

  /// Largest deviation of Tr_O(sum_x J_x) from the identity over settings.
  double trace_preservation_error() const;

 private:
  std::size_t in_;
  std::size_t out_;
  std::vector<std::vector<ComplexOperator>> elements_;
};

/// P(x_1..x_n | settings) = Re Tr(W (J_{x_1} (x) ... (x) J_{x_n})), indexed by
/// joint outcome (leftmost party most significant).
std::vector<double> probability(const ProcessMatrix& w, std::span<const Instrument> instruments,
                                std::span<const std::size_t> settings);

struct ValidationReport {
  bool hermitian = true;
  bool positive = true;
  double min_eigenvalue = 0;
  bool normalized = true;
  /// Largest |Tr(W (B_1 (x) ...)) - 1| seen.
  double max_normalization_error = 0;
  /// Index of the generating element per party where normalization failed.
  std::vector<std::size_t> failing_elements;
  std::uint64_t elements_checked = 0;

  bool valid() const { return hermitian && positive && normalized; }
};

/// Hermiticity, W >= -eps, and Tr(W (B_1 (x) ... (x) B_n)) = 1 for every
/// combination of the per-party affine generating sets of CPTP CJ operators.
ValidationReport validate(const ProcessMatrix& w, double eps = kDefaultEpsilon);

// Builders. Each party is a qubit unless stated otherwise.

/// rho on I_S (x) I_R, sent to both parties; outputs are discarded.
ProcessMatrix w_state(const ComplexOperator& rho);
/// Qubit channel R -> S.
ProcessMatrix w_channel();
/// Channels R -> S and S -> R at once (no longer a valid process).
ProcessMatrix w_channel_loop();
/// R -> S -> T superposed with S -> R -> T, control qubit to T. Party T has a
/// four-dimensional input (target (x) control) and no output.
ProcessMatrix w_superposed();
ProcessMatrix w_ocb();

/// R: setting a, outcome x. S: setting 2b + b', outcome y. The b' = 1
/// elements prepare `rho` on O_S.
std::pair<Instrument, Instrument> ocb_instruments(const ComplexOperator& rho);
/// Success probability of the two-party send-your-input game with w_ocb.
double ocb_value(const ComplexOperator& rho);

struct CommuteResult {
  /// 0: B and C commute, 1: they anticommute.
  std::size_t bit = 0;
  double p_commute = 0;
  double p_anticommute = 0;
};

/// One use each of B and C in the superposed-order process; the control is
/// measured in the +/- basis. Throws PromiseViolation when neither outcome has
/// probability within eps of one.
CommuteResult commute_test(const ComplexOperator& b, const ComplexOperator& c, double eps = kDefaultEpsilon);

/// Haar-like random unitary via QR of a complex Gaussian matrix.
ComplexOperator random_unitary(std::size_t d, std::mt19937_64& rng);
/// Random instrument: per setting, a random isometry split into `outcomes`
/// groups of Kraus operators.
Instrument random_instrument(std::size_t in_dim, std::size_t out_dim, std::size_t settings, std::size_t outcomes,
                             std::mt19937_64& rng);

}  // namespace causal
