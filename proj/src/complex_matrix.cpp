#include "causal/complex_matrix.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "causal/kernels.hpp"

namespace causal {

namespace {

std::size_t product(const std::vector<std::size_t>& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

void require_same_shape(const ComplexOperator& a, const ComplexOperator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("operator shapes differ");
}

}  // namespace

ComplexOperator::ComplexOperator(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == cols) dims_ = {rows};
}

ComplexOperator::ComplexOperator(std::vector<std::size_t> dims)
    : rows_(product(dims)), cols_(rows_), dims_(std::move(dims)), data_(rows_ * cols_) {}

ComplexOperator::ComplexOperator(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) throw std::invalid_argument("operator entry count does not match its shape");
  if (rows == cols) dims_ = {rows};
}

ComplexOperator ComplexOperator::identity(std::size_t n) { return identity(std::vector<std::size_t>{n}); }

ComplexOperator ComplexOperator::identity(std::vector<std::size_t> dims) {
  ComplexOperator op(std::move(dims));
  for (std::size_t k = 0; k < op.rows_; ++k) op.at(k, k) = 1;
  return op;
}

ComplexOperator ComplexOperator::outer(std::span<const cplx> v) {
  ComplexOperator op(v.size(), v.size());
  for (std::size_t r = 0; r < v.size(); ++r)
    for (std::size_t c = 0; c < v.size(); ++c) op.at(r, c) = v[r] * std::conj(v[c]);
  return op;
}

ComplexOperator& ComplexOperator::with_dims(std::vector<std::size_t> dims) {
  if (!is_square() || product(dims) != rows_) throw std::invalid_argument("subsystem dimensions do not match");
  dims_ = std::move(dims);
  return *this;
}

cplx ComplexOperator::trace() const {
  cplx t = 0;
  for (std::size_t k = 0; k < std::min(rows_, cols_); ++k) t += at(k, k);
  return t;
}

ComplexOperator ComplexOperator::adjoint() const {
  ComplexOperator r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = std::conj(at(i, j));
  if (is_square()) r.dims_ = dims_;
  return r;
}

ComplexOperator ComplexOperator::transpose() const {
  ComplexOperator r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  if (is_square()) r.dims_ = dims_;
  return r;
}

ComplexOperator ComplexOperator::conjugate() const {
  ComplexOperator r = *this;
  for (auto& v : r.data_) v = std::conj(v);
  return r;
}

ComplexOperator& ComplexOperator::operator+=(const ComplexOperator& o) {
  require_same_shape(*this, o);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

ComplexOperator& ComplexOperator::operator-=(const ComplexOperator& o) {
  require_same_shape(*this, o);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

ComplexOperator& ComplexOperator::operator*=(cplx s) {
  for (auto& v : data_) v *= s;
  return *this;
}

ComplexOperator operator*(const ComplexOperator& a, const ComplexOperator& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("operator product: inner dimensions differ");
  ComplexOperator r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx v = a.at(i, k);
      if (v != cplx{}) kernels::axpy(v, b.row(k), r.row(i), b.cols());
    }
  }
  if (r.is_square() && a.dims() == b.dims()) r.dims_ = a.dims();
  return r;
}

double max_abs_diff(const ComplexOperator& a, const ComplexOperator& b) {
  require_same_shape(a, b);
  double m = 0;
  for (std::size_t k = 0; k < a.data_.size(); ++k) m = std::max(m, std::abs(a.data_[k] - b.data_[k]));
  return m;
}

bool ComplexOperator::is_hermitian(double eps) const {
  return is_square() && max_abs_diff(*this, adjoint()) <= eps;
}

ComplexOperator kron(const ComplexOperator& a, const ComplexOperator& b) {
  ComplexOperator r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ia = 0; ia < a.rows(); ++ia)
    for (std::size_t ja = 0; ja < a.cols(); ++ja) {
      const cplx v = a.at(ia, ja);
      if (v == cplx{}) continue;
      for (std::size_t ib = 0; ib < b.rows(); ++ib)
        for (std::size_t jb = 0; jb < b.cols(); ++jb) r.at(ia * b.rows() + ib, ja * b.cols() + jb) = v * b.at(ib, jb);
    }
  if (a.is_square() && b.is_square()) {
    auto dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    r.with_dims(std::move(dims));
  }
  return r;
}

ComplexOperator kron(std::span<const ComplexOperator> factors) {
  if (factors.empty()) return ComplexOperator::identity(1);
  ComplexOperator r = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) r = kron(r, factors[k]);
  return r;
}

namespace {

// Flat index -> per-factor digits, leftmost factor most significant.
std::vector<std::size_t> strides_of(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) s[k - 1] = s[k] * dims[k];
  return s;
}

}  // namespace

ComplexOperator permute_subsystems(const ComplexOperator& op, std::span<const std::size_t> perm) {
  const auto& dims = op.dims();
  if (perm.size() != dims.size()) throw std::invalid_argument("permutation has the wrong length");
  std::vector<std::size_t> new_dims;
  std::vector<bool> used(dims.size(), false);
  for (auto p : perm) {
    if (p >= dims.size() || used[p]) throw std::invalid_argument("not a permutation");
    used[p] = true;
    new_dims.push_back(dims[p]);
  }
  const auto old_strides = strides_of(dims);
  const auto new_strides = strides_of(new_dims);
  // map[new flat index] = old flat index
  std::vector<std::size_t> map(op.rows());
  for (std::size_t n = 0; n < op.rows(); ++n) {
    std::size_t o = 0;
    for (std::size_t k = 0; k < perm.size(); ++k) o += (n / new_strides[k] % new_dims[k]) * old_strides[perm[k]];
    map[n] = o;
  }
  ComplexOperator r(new_dims);
  for (std::size_t i = 0; i < op.rows(); ++i)
    for (std::size_t j = 0; j < op.cols(); ++j) r.at(i, j) = op.at(map[i], map[j]);
  return r;
}

ComplexOperator partial_trace(const ComplexOperator& op, std::span<const std::size_t> traced) {
  const auto& dims = op.dims();
  std::vector<bool> drop(dims.size(), false);
  for (auto t : traced) {
    if (t >= dims.size()) throw std::invalid_argument("partial trace: no such factor");
    drop[t] = true;
  }
  std::vector<std::size_t> kept_dims;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (!drop[k]) kept_dims.push_back(dims[k]);
  }
  if (kept_dims.empty()) kept_dims.push_back(1);
  const auto strides = strides_of(dims);
  const auto kept_strides = strides_of(kept_dims);
  ComplexOperator r(kept_dims);
  // Kept index of a flat index, and whether the traced digits of two flat
  // indices agree.
  auto kept_index = [&](std::size_t flat) {
    std::size_t idx = 0, kk = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
      if (drop[k]) continue;
      idx += (flat / strides[k] % dims[k]) * kept_strides[kk++];
    }
    return idx;
  };
  auto traced_equal = [&](std::size_t a, std::size_t b) {
    for (std::size_t k = 0; k < dims.size(); ++k) {
      if (drop[k] && a / strides[k] % dims[k] != b / strides[k] % dims[k]) return false;
    }
    return true;
  };
  for (std::size_t i = 0; i < op.rows(); ++i)
    for (std::size_t j = 0; j < op.cols(); ++j) {
      if (traced_equal(i, j)) r.at(kept_index(i), kept_index(j)) += op.at(i, j);
    }
  return r;
}

cplx trace_product(const ComplexOperator& a, const ComplexOperator& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) throw std::invalid_argument("trace_product: shapes differ");
  const ComplexOperator bt = b.transpose();
  cplx t = 0;
  for (std::size_t i = 0; i < a.rows(); ++i) t += kernels::dotu(a.row(i), bt.row(i), a.cols());
  return t;
}

ComplexOperator contract_leading(const ComplexOperator& b, const ComplexOperator& w) {
  const std::size_t d = b.rows();
  if (!b.is_square() || !w.is_square() || d == 0 || w.rows() % d != 0) {
    throw std::invalid_argument("contract_leading: dimensions do not divide");
  }
  const std::size_t m = w.rows() / d;
  // Remaining factors: drop leading ones whose product is d.
  std::vector<std::size_t> rest;
  std::size_t lead = 1;
  for (auto dim : w.dims()) {
    if (lead < d) {
      lead *= dim;
    } else {
      rest.push_back(dim);
    }
  }
  if (lead != d) rest = {m};
  if (rest.empty()) rest = {1};
  ComplexOperator r(rest);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const cplx bji = b.at(j, i);
      if (bji == cplx{}) continue;
      for (std::size_t row = 0; row < m; ++row) kernels::axpy(bji, w.row(i * m + row) + j * m, r.row(row), m);
    }
  return r;
}

std::vector<double> hermitian_eigenvalues(const ComplexOperator& op) {
  if (!op.is_square()) throw std::invalid_argument("eigenvalues of a non-square operator");
  const auto n = static_cast<Eigen::Index>(op.rows());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = op.at(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalue solver did not converge");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

namespace pauli {
ComplexOperator identity() { return ComplexOperator::identity(2); }
ComplexOperator x() { return ComplexOperator(2, 2, {0, 1, 1, 0}); }
ComplexOperator y() { return ComplexOperator(2, 2, {0, cplx(0, -1), cplx(0, 1), 0}); }
ComplexOperator z() { return ComplexOperator(2, 2, {1, 0, 0, -1}); }
ComplexOperator hadamard() {
  const double s = 1 / std::sqrt(2.0);
  return ComplexOperator(2, 2, {s, s, s, -s});
}
}  // namespace pauli

std::vector<ComplexOperator> hermitian_basis(std::size_t d) {
  std::vector<ComplexOperator> basis;
  for (std::size_t k = 0; k < d; ++k) {
    ComplexOperator e(d, d);
    e.at(k, k) = 1;
    basis.push_back(std::move(e));
  }
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = k + 1; l < d; ++l) {
      ComplexOperator s(d, d), a(d, d);
      s.at(k, l) = s.at(l, k) = 1;
      a.at(k, l) = cplx(0, -1);
      a.at(l, k) = cplx(0, 1);
      basis.push_back(std::move(s));
      basis.push_back(std::move(a));
    }
  return basis;
}

std::vector<ComplexOperator> traceless_hermitian_basis(std::size_t d) {
  std::vector<ComplexOperator> basis;
  for (std::size_t k = 1; k < d; ++k) {
    ComplexOperator e(d, d);
    e.at(0, 0) = 1;
    e.at(k, k) = -1;
    basis.push_back(std::move(e));
  }
  for (auto& b : hermitian_basis(d)) {
    if (b.trace() == cplx{}) basis.push_back(std::move(b));
  }
  return basis;
}

}  // namespace causal
