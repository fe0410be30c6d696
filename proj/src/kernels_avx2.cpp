// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include "causal/kernels.hpp"

namespace causal::kernels::avx2 {

// A __m256d holds two complex numbers as (re0, im0, re1, im1).

cplx dotu(const cplx* x, const cplx* y, std::size_t n) {
  const double* xp = reinterpret_cast<const double*>(x);
  const double* yp = reinterpret_cast<const double*>(y);
  __m256d same = _mm256_setzero_pd();   // (xr*yr, xi*yi, ...)
  __m256d cross = _mm256_setzero_pd();  // (xr*yi, xi*yr, ...)
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d xv = _mm256_loadu_pd(xp + 2 * k);
    const __m256d yv = _mm256_loadu_pd(yp + 2 * k);
    same = _mm256_fmadd_pd(xv, yv, same);
    cross = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), cross);
  }
  alignas(32) double s[4], c[4];
  _mm256_store_pd(s, same);
  _mm256_store_pd(c, cross);
  double re = (s[0] + s[2]) - (s[1] + s[3]);
  double im = (c[0] + c[2]) + (c[1] + c[3]);
  for (; k < n; ++k) {
    re += x[k].real() * y[k].real() - x[k].imag() * y[k].imag();
    im += x[k].real() * y[k].imag() + x[k].imag() * y[k].real();
  }
  return {re, im};
}

void axpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const double* xp = reinterpret_cast<const double*>(x);
  double* yp = reinterpret_cast<double*>(y);
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set_pd(a.imag(), -a.imag(), a.imag(), -a.imag());
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d xv = _mm256_loadu_pd(xp + 2 * k);
    __m256d yv = _mm256_loadu_pd(yp + 2 * k);
    yv = _mm256_fmadd_pd(ar, xv, yv);
    // i * x = (-xi, xr)
    yv = _mm256_fmadd_pd(ai, _mm256_permute_pd(xv, 0b0101), yv);
    _mm256_storeu_pd(yp + 2 * k, yv);
  }
  for (; k < n; ++k) {
    y[k] = {y[k].real() + a.real() * x[k].real() - a.imag() * x[k].imag(),
            y[k].imag() + a.real() * x[k].imag() + a.imag() * x[k].real()};
  }
}

}  // namespace causal::kernels::avx2
