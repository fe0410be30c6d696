#include "causal/matrix.hpp"

#include <stdexcept>

namespace causal {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) throw std::invalid_argument("matrix entry count mismatch");
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t k = 0; k < n; ++k) m.at(k, k) = 1;
  return m;
}

Rational RationalMatrix::column_sum(std::size_t c) const {
  Rational s;
  for (std::size_t r = 0; r < rows_; ++r) s += at(r, c);
  return s;
}

Rational RationalMatrix::trace() const {
  if (rows_ != cols_) throw std::invalid_argument("trace of non-square matrix");
  Rational s;
  for (std::size_t k = 0; k < rows_; ++k) s += at(k, k);
  return s;
}

bool RationalMatrix::is_nonnegative() const {
  for (const auto& v : data_) {
    if (v.sign() < 0) return false;
  }
  return true;
}

bool RationalMatrix::is_column_stochastic() const {
  if (!is_nonnegative()) return false;
  for (std::size_t c = 0; c < cols_; ++c) {
    if (!column_sum(c).is_one()) return false;
  }
  return true;
}

bool RationalMatrix::is_deterministic() const {
  for (std::size_t c = 0; c < cols_; ++c) {
    std::size_t ones = 0;
    for (std::size_t r = 0; r < rows_; ++r) {
      const auto& v = at(r, c);
      if (v.is_one()) {
        ++ones;
      } else if (!v.is_zero()) {
        return false;
      }
    }
    if (ones != 1) return false;
  }
  return true;
}

RationalMatrix& RationalMatrix::operator+=(const RationalMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch in +=");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

RationalMatrix& RationalMatrix::operator*=(const Rational& s) {
  for (auto& v : data_) v *= s;
  return *this;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch in product");
  RationalMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Rational& bkj = b.at(k, j);
        if (!bkj.is_zero()) out.at(i, j) += aik * bkj;
      }
    }
  }
  return out;
}

RationalMatrix tensor(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ia = 0; ia < a.rows(); ++ia) {
    for (std::size_t ja = 0; ja < a.cols(); ++ja) {
      const Rational& x = a.at(ia, ja);
      if (x.is_zero()) continue;
      for (std::size_t ib = 0; ib < b.rows(); ++ib) {
        for (std::size_t jb = 0; jb < b.cols(); ++jb) {
          const Rational& y = b.at(ib, jb);
          if (!y.is_zero()) out.at(ia * b.rows() + ib, ja * b.cols() + jb) = x * y;
        }
      }
    }
  }
  return out;
}

StochasticMatrix::StochasticMatrix(RationalMatrix m) : m_(std::move(m)) {
  if (!m_.is_column_stochastic()) throw std::invalid_argument("matrix is not column-stochastic");
}

StochasticMatrix StochasticMatrix::identity(std::size_t n) {
  return StochasticMatrix(RationalMatrix::identity(n));
}

StochasticMatrix tensor(const StochasticMatrix& a, const StochasticMatrix& b) {
  return StochasticMatrix(tensor(a.matrix(), b.matrix()));
}

std::vector<Rational> basis_vector(std::size_t n, std::size_t k) {
  if (k >= n) throw std::out_of_range("basis vector index out of range");
  std::vector<Rational> v(n);
  v[k] = 1;
  return v;
}

bool is_stochastic_vector(std::span<const Rational> v) {
  Rational s;
  for (const auto& x : v) {
    if (x.sign() < 0) return false;
    s += x;
  }
  return s.is_one();
}

}  // namespace causal
