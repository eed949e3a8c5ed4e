// Copyright 2026 The squeezelim Authors
// SPDX-License-Identifier: Apache-2.0

// Reference kernels. Every SIMD variant is tested for equivalence against these.

#include "sqz/numkernel/kernels.hpp"

namespace sqz::kernels {
namespace {

void axpy_scalar(std::size_t n, cplx a, const cplx* x, cplx* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

cplx dotu_scalar(std::size_t n, const cplx* x, const cplx* y) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += x[i].real() * y[i].real() - x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() + x[i].imag() * y[i].real();
  }
  return {re, im};
}

void gemv_scalar(std::size_t m, std::size_t k, const cplx* a, std::size_t lda, const cplx* x,
                 cplx* y) {
  for (std::size_t i = 0; i < m; ++i) y[i] = dotu_scalar(k, a + i * lda, x);
}

void gemm_acc_scalar(std::size_t m, std::size_t n, std::size_t k, const cplx* a, std::size_t lda,
                     const cplx* b, std::size_t ldb, cplx* c, std::size_t ldc) {
  for (std::size_t i = 0; i < m; ++i) {
    cplx* crow = c + i * ldc;
    for (std::size_t p = 0; p < k; ++p) {
      const cplx aip = a[i * lda + p];
      if (aip == cplx{}) continue;
      axpy_scalar(n, aip, b + p * ldb, crow);
    }
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable t{Isa::scalar, axpy_scalar, dotu_scalar, gemv_scalar, gemm_acc_scalar};
  return t;
}

}  // namespace sqz::kernels
