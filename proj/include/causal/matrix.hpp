#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "causal/rational.hpp"

namespace causal {

/// Dense exact matrix, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);
  RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);

  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const Rational> entries() const { return data_; }

  Rational column_sum(std::size_t c) const;
  Rational trace() const;

  bool is_nonnegative() const;
  bool is_column_stochastic() const;
  /// Every entry is 0 or 1 and each column has exactly one 1.
  bool is_deterministic() const;

  RationalMatrix& operator+=(const RationalMatrix& o);
  RationalMatrix& operator*=(const Rational& s);
  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Kronecker product; entry ((ia,ib),(ja,jb)) = a[ia,ja] * b[ib,jb] with the
/// left factor most significant.
RationalMatrix tensor(const RationalMatrix& a, const RationalMatrix& b);

/// Column-stochastic matrix: every column is a probability vector. Columns are
/// indexed by the conditioning value, rows by the outcome.
class StochasticMatrix {
 public:
  /// Throws std::invalid_argument if `m` is not column-stochastic.
  explicit StochasticMatrix(RationalMatrix m);

  static StochasticMatrix identity(std::size_t n);

  const RationalMatrix& matrix() const { return m_; }
  std::size_t rows() const { return m_.rows(); }
  std::size_t cols() const { return m_.cols(); }
  const Rational& at(std::size_t r, std::size_t c) const { return m_.at(r, c); }

  friend bool operator==(const StochasticMatrix&, const StochasticMatrix&) = default;

 private:
  RationalMatrix m_;
};

StochasticMatrix tensor(const StochasticMatrix& a, const StochasticMatrix& b);

/// Basis vector e_k of length n: the stochastic encoding of the value k.
std::vector<Rational> basis_vector(std::size_t n, std::size_t k);
bool is_stochastic_vector(std::span<const Rational> v);

}  // namespace causal
