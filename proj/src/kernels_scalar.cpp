#include "causal/kernels.hpp"

namespace causal::kernels::scalar {

cplx dotu(const cplx* x, const cplx* y, std::size_t n) {
  double re = 0, im = 0;
  for (std::size_t k = 0; k < n; ++k) {
    re += x[k].real() * y[k].real() - x[k].imag() * y[k].imag();
    im += x[k].real() * y[k].imag() + x[k].imag() * y[k].real();
  }
  return {re, im};
}

void axpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    y[k] = {y[k].real() + a.real() * x[k].real() - a.imag() * x[k].imag(),
            y[k].imag() + a.real() * x[k].imag() + a.imag() * x[k].real()};
  }
}

}  // namespace causal::kernels::scalar
