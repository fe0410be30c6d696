#include "causal/lp.hpp"

#include <stdexcept>

namespace causal {

LinearSystem::LinearSystem(std::size_t variables) : nonnegative_(variables, false) {}

void LinearSystem::require_nonnegative(std::size_t var) { nonnegative_.at(var) = true; }

void LinearSystem::add(std::vector<Rational> coefficients, Relation relation, Rational rhs) {
  if (coefficients.size() != variables()) throw std::invalid_argument("constraint width mismatch");
  constraints_.push_back({std::move(coefficients), relation, std::move(rhs)});
}

bool LinearSystem::satisfied_by(std::span<const Rational> x) const {
  if (x.size() != variables()) return false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (nonnegative_[j] && x[j].sign() < 0) return false;
  }
  for (const auto& c : constraints_) {
    Rational lhs;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (!c.coefficients[j].is_zero()) lhs += c.coefficients[j] * x[j];
    }
    switch (c.relation) {
      case Relation::LessEqual:
        if (lhs > c.rhs) return false;
        break;
      case Relation::Equal:
        if (lhs != c.rhs) return false;
        break;
      case Relation::GreaterEqual:
        if (lhs < c.rhs) return false;
        break;
    }
  }
  return true;
}

namespace {

// Dense Phase-I tableau in standard form A y = b, y >= 0, b >= 0, with one
// artificial column per row forming the starting basis.
class PhaseOne {
 public:
  PhaseOne(std::size_t rows, std::size_t structural)
      : rows_(rows), cols_(structural + rows), a_(rows * (cols_ + 1)), basis_(rows), cost_(cols_ + 1) {
    for (std::size_t r = 0; r < rows_; ++r) {
      basis_[r] = structural + r;
      at(r, structural + r) = 1;
    }
    structural_ = structural;
  }

  Rational& at(std::size_t r, std::size_t c) { return a_[r * (cols_ + 1) + c]; }
  Rational& rhs(std::size_t r) { return at(r, cols_); }

  // Returns true if the artificial sum can be driven to zero.
  bool solve() {
    // Reduced costs of "minimize sum of artificials" with artificials basic:
    // cost_j = -sum_r a_rj for structural columns, objective = -sum_r b_r.
    for (std::size_t c = 0; c <= cols_; ++c) cost_[c] = 0;
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < structural_; ++c) cost_[c] -= at(r, c);
      cost_[cols_] -= rhs(r);
    }
    for (;;) {
      // Bland: smallest-index entering column with negative reduced cost.
      std::size_t enter = cols_;
      for (std::size_t c = 0; c < cols_; ++c) {
        if (cost_[c].sign() < 0) {
          enter = c;
          break;
        }
      }
      if (enter == cols_) break;
      // Ratio test; ties broken by smallest basic variable index.
      std::size_t leave = rows_;
      Rational best;
      for (std::size_t r = 0; r < rows_; ++r) {
        const Rational& coef = at(r, enter);
        if (coef.sign() <= 0) continue;
        Rational ratio = rhs(r) / coef;
        if (leave == rows_ || ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
          leave = r;
          best = std::move(ratio);
        }
      }
      if (leave == rows_) throw std::logic_error("phase-one simplex is bounded below; unbounded ray impossible");
      pivot(leave, enter);
    }
    return cost_[cols_].is_zero();
  }

  std::vector<Rational> structural_values() {
    std::vector<Rational> y(structural_);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (basis_[r] < structural_) y[basis_[r]] = rhs(r);
    }
    return y;
  }

 private:
  void pivot(std::size_t row, std::size_t col) {
    const Rational inv = Rational(1) / at(row, col);
    for (std::size_t c = 0; c <= cols_; ++c) {
      if (!at(row, c).is_zero()) at(row, c) *= inv;
    }
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == row) continue;
      const Rational factor = at(r, col);
      if (factor.is_zero()) continue;
      for (std::size_t c = 0; c <= cols_; ++c) {
        const Rational& p = at(row, c);
        if (!p.is_zero()) at(r, c) -= factor * p;
      }
    }
    const Rational factor = cost_[col];
    if (!factor.is_zero()) {
      for (std::size_t c = 0; c <= cols_; ++c) {
        const Rational& p = at(row, c);
        if (!p.is_zero()) cost_[c] -= factor * p;
      }
    }
    basis_[row] = col;
  }

  std::size_t rows_;
  std::size_t cols_;
  std::size_t structural_ = 0;
  std::vector<Rational> a_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> cost_;
};

}  // namespace

std::optional<std::vector<Rational>> lp_feasible(const LinearSystem& system) {
  const std::size_t n = system.variables();
  // Column layout: one column per non-negative variable, two (plus, minus)
  // per free variable, then one slack per inequality.
  std::vector<std::size_t> plus(n), minus(n, SIZE_MAX);
  std::size_t col = 0;
  for (std::size_t j = 0; j < n; ++j) {
    plus[j] = col++;
    if (!system.is_nonnegative(j)) minus[j] = col++;
  }
  const auto& cons = system.constraints();
  std::vector<std::size_t> slack(cons.size(), SIZE_MAX);
  for (std::size_t r = 0; r < cons.size(); ++r) {
    if (cons[r].relation != Relation::Equal) slack[r] = col++;
  }

  PhaseOne tableau(cons.size(), col);
  for (std::size_t r = 0; r < cons.size(); ++r) {
    const auto& c = cons[r];
    const bool flip = c.rhs.sign() < 0;
    auto put = [&](std::size_t column, const Rational& v) {
      tableau.at(r, column) = flip ? -v : v;
    };
    for (std::size_t j = 0; j < n; ++j) {
      if (c.coefficients[j].is_zero()) continue;
      put(plus[j], c.coefficients[j]);
      if (minus[j] != SIZE_MAX) put(minus[j], -c.coefficients[j]);
    }
    if (c.relation == Relation::LessEqual) put(slack[r], Rational(1));
    if (c.relation == Relation::GreaterEqual) put(slack[r], Rational(-1));
    tableau.rhs(r) = flip ? -c.rhs : c.rhs;
  }

  if (!tableau.solve()) return std::nullopt;
  const auto y = tableau.structural_values();
  std::vector<Rational> x(n);
  for (std::size_t j = 0; j < n; ++j) {
    x[j] = y[plus[j]];
    if (minus[j] != SIZE_MAX) x[j] -= y[minus[j]];
  }
  return x;
}

}  // namespace causal
