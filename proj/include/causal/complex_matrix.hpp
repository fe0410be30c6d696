#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace causal {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major. Square operators carry subsystem
/// dimensions whose product is the side length (leftmost factor most
/// significant); rectangular ones (Kraus operators) have none.
class ComplexOperator {
 public:
  ComplexOperator() = default;
  ComplexOperator(std::size_t rows, std::size_t cols);
  /// Square zero operator on the given factors.
  explicit ComplexOperator(std::vector<std::size_t> dims);
  ComplexOperator(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

  static ComplexOperator identity(std::size_t n);
  static ComplexOperator identity(std::vector<std::size_t> dims);
  /// |v><v| for a column vector v.
  static ComplexOperator outer(std::span<const cplx> v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  /// Relabels the factors; the product must equal the side length.
  ComplexOperator& with_dims(std::vector<std::size_t> dims);

  cplx& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const cplx* row(std::size_t r) const { return data_.data() + r * cols_; }
  cplx* row(std::size_t r) { return data_.data() + r * cols_; }
  const std::vector<cplx>& entries() const { return data_; }

  cplx trace() const;
  ComplexOperator adjoint() const;
  ComplexOperator transpose() const;
  ComplexOperator conjugate() const;

  ComplexOperator& operator+=(const ComplexOperator& o);
  ComplexOperator& operator-=(const ComplexOperator& o);
  ComplexOperator& operator*=(cplx s);
  friend ComplexOperator operator+(ComplexOperator a, const ComplexOperator& b) { return a += b; }
  friend ComplexOperator operator-(ComplexOperator a, const ComplexOperator& b) { return a -= b; }
  friend ComplexOperator operator*(ComplexOperator a, cplx s) { return a *= s; }
  friend ComplexOperator operator*(cplx s, ComplexOperator a) { return a *= s; }
  friend ComplexOperator operator*(const ComplexOperator& a, const ComplexOperator& b);

  /// Largest entry-wise modulus of a - b.
  friend double max_abs_diff(const ComplexOperator& a, const ComplexOperator& b);
  bool is_hermitian(double eps) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> dims_;
  std::vector<cplx> data_;
};

/// Kronecker product; the factor lists are concatenated.
ComplexOperator kron(const ComplexOperator& a, const ComplexOperator& b);
ComplexOperator kron(std::span<const ComplexOperator> factors);

/// Reorders the factors: factor k of the result is factor perm[k] of `op`.
ComplexOperator permute_subsystems(const ComplexOperator& op, std::span<const std::size_t> perm);

/// Partial trace over the factors listed in `traced`.
ComplexOperator partial_trace(const ComplexOperator& op, std::span<const std::size_t> traced);

/// Tr(a b) without forming the product.
cplx trace_product(const ComplexOperator& a, const ComplexOperator& b);

/// R[r, s] = sum_{i,j} b[j, i] w[(i, r), (j, s)] where b acts on the leading
/// factors of w (their combined dimension is b's side). Tr(w (b (x) c)) =
/// Tr(R c).
ComplexOperator contract_leading(const ComplexOperator& b, const ComplexOperator& w);

/// Eigenvalues of a Hermitian operator in ascending order.
std::vector<double> hermitian_eigenvalues(const ComplexOperator& op);

namespace pauli {
ComplexOperator identity();
ComplexOperator x();
ComplexOperator y();
ComplexOperator z();
ComplexOperator hadamard();
}  // namespace pauli

/// Hermitian basis of d x d matrices (d^2 elements): diagonal units and the
/// symmetric / antisymmetric off-diagonal pairs.
std::vector<ComplexOperator> hermitian_basis(std::size_t d);
/// Traceless Hermitian basis (d^2 - 1 elements).
std::vector<ComplexOperator> traceless_hermitian_basis(std::size_t d);

}  // namespace causal
