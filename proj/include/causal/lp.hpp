#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "causal/rational.hpp"

namespace causal {

enum class Relation { LessEqual, Equal, GreaterEqual };

struct LinearConstraint {
  std::vector<Rational> coefficients;
  Relation relation = Relation::Equal;
  Rational rhs;
};

/// A finite system of linear (in)equalities over rational variables.
/// Variables are free unless marked non-negative.
class LinearSystem {
 public:
  explicit LinearSystem(std::size_t variables);

  std::size_t variables() const { return nonnegative_.size(); }
  const std::vector<LinearConstraint>& constraints() const { return constraints_; }
  bool is_nonnegative(std::size_t var) const { return nonnegative_[var]; }

  void require_nonnegative(std::size_t var);
  void add(std::vector<Rational> coefficients, Relation relation, Rational rhs);

  /// Exact check of every constraint and sign restriction.
  bool satisfied_by(std::span<const Rational> x) const;

 private:
  std::vector<bool> nonnegative_;
  std::vector<LinearConstraint> constraints_;
};

/// Decides feasibility exactly with a Phase-I simplex under Bland's rule.
/// Returns one exact solution, or nullopt if the system is infeasible.
std::optional<std::vector<Rational>> lp_feasible(const LinearSystem& system);

}  // namespace causal
