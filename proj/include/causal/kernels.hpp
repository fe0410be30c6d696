#pragma once

#include <complex>
#include <cstddef>

// Dense complex kernels behind the quantum side. Each has a scalar reference
// and, on x86-64 CPUs with AVX2+FMA, a vector variant picked at runtime.
namespace causal::kernels {

using cplx = std::complex<double>;

struct Table {
  const char* name;
  /// sum_k x[k] * y[k], no conjugation.
  cplx (*dotu)(const cplx* x, const cplx* y, std::size_t n);
  /// y[k] += a * x[k].
  void (*axpy)(cplx a, const cplx* x, cplx* y, std::size_t n);
};

const Table& scalar_table();
/// nullptr unless the AVX2 variant was built and the CPU supports it.
const Table* avx2_table();
/// The table used by the dispatching entry points below.
const Table& active();

inline cplx dotu(const cplx* x, const cplx* y, std::size_t n) { return active().dotu(x, y, n); }
inline void axpy(cplx a, const cplx* x, cplx* y, std::size_t n) { active().axpy(a, x, y, n); }

namespace scalar {
cplx dotu(const cplx* x, const cplx* y, std::size_t n);
void axpy(cplx a, const cplx* x, cplx* y, std::size_t n);
}  // namespace scalar

}  // namespace causal::kernels
