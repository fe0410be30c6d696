#include "causal/kernels.hpp"

namespace causal::kernels {

#if defined(CAUSAL_HAVE_AVX2_TU)
namespace avx2 {
cplx dotu(const cplx* x, const cplx* y, std::size_t n);
void axpy(cplx a, const cplx* x, cplx* y, std::size_t n);
}  // namespace avx2
#endif

const Table& scalar_table() {
  static const Table t{"scalar", &scalar::dotu, &scalar::axpy};
  return t;
}

const Table* avx2_table() {
#if defined(CAUSAL_HAVE_AVX2_TU)
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  static const Table t{"avx2", &avx2::dotu, &avx2::axpy};
  return ok ? &t : nullptr;
#else
  return nullptr;
#endif
}

const Table& active() {
  static const Table& t = avx2_table() ? *avx2_table() : scalar_table();
  return t;
}

}  // namespace causal::kernels
