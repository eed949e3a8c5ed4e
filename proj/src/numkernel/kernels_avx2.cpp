// Copyright 2026 The squeezelim Authors
// SPDX-License-Identifier: Apache-2.0

// AVX2 + FMA kernels. Compiled with -mavx2 -mfma; only reached after a
// runtime CPU check in dispatch.cpp.
//
// std::complex<double> is layout-compatible with double[2], so a __m256d
// holds two interleaved complex values [re0, im0, re1, im1].

#include <immintrin.h>

#include "sqz/numkernel/kernels.hpp"

namespace sqz::kernels {
namespace {

inline const double* as_doubles(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* as_doubles(cplx* p) { return reinterpret_cast<double*>(p); }

// a * x for two packed complex values, a broadcast as (ar, ai).
inline __m256d cmul_broadcast(__m256d ar, __m256d ai, __m256d x) {
  const __m256d xs = _mm256_permute_pd(x, 0b0101);  // [im0, re0, im1, re1]
  // even lanes: ar*xr - ai*xi, odd lanes: ar*xi + ai*xr
  return _mm256_fmaddsub_pd(ar, x, _mm256_mul_pd(ai, xs));
}

void axpy_avx2(std::size_t n, cplx a, const cplx* x, cplx* y) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  const double* xd = as_doubles(x);
  double* yd = as_doubles(y);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x0 = _mm256_loadu_pd(xd + 2 * i);
    const __m256d x1 = _mm256_loadu_pd(xd + 2 * i + 4);
    __m256d y0 = _mm256_loadu_pd(yd + 2 * i);
    __m256d y1 = _mm256_loadu_pd(yd + 2 * i + 4);
    y0 = _mm256_add_pd(y0, cmul_broadcast(ar, ai, x0));
    y1 = _mm256_add_pd(y1, cmul_broadcast(ar, ai, x1));
    _mm256_storeu_pd(yd + 2 * i, y0);
    _mm256_storeu_pd(yd + 2 * i + 4, y1);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d x0 = _mm256_loadu_pd(xd + 2 * i);
    __m256d y0 = _mm256_loadu_pd(yd + 2 * i);
    _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(y0, cmul_broadcast(ar, ai, x0)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

cplx dotu_avx2(std::size_t n, const cplx* x, const cplx* y) {
  // acc_d accumulates [xr*yr, xi*yi, ...], acc_x accumulates [xr*yi, xi*yr, ...]
  __m256d acc_d0 = _mm256_setzero_pd();
  __m256d acc_x0 = _mm256_setzero_pd();
  __m256d acc_d1 = _mm256_setzero_pd();
  __m256d acc_x1 = _mm256_setzero_pd();
  const double* xd = as_doubles(x);
  const double* yd = as_doubles(y);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x0 = _mm256_loadu_pd(xd + 2 * i);
    const __m256d y0 = _mm256_loadu_pd(yd + 2 * i);
    const __m256d x1 = _mm256_loadu_pd(xd + 2 * i + 4);
    const __m256d y1 = _mm256_loadu_pd(yd + 2 * i + 4);
    acc_d0 = _mm256_fmadd_pd(x0, y0, acc_d0);
    acc_x0 = _mm256_fmadd_pd(x0, _mm256_permute_pd(y0, 0b0101), acc_x0);
    acc_d1 = _mm256_fmadd_pd(x1, y1, acc_d1);
    acc_x1 = _mm256_fmadd_pd(x1, _mm256_permute_pd(y1, 0b0101), acc_x1);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d x0 = _mm256_loadu_pd(xd + 2 * i);
    const __m256d y0 = _mm256_loadu_pd(yd + 2 * i);
    acc_d0 = _mm256_fmadd_pd(x0, y0, acc_d0);
    acc_x0 = _mm256_fmadd_pd(x0, _mm256_permute_pd(y0, 0b0101), acc_x0);
  }
  alignas(32) double d[4];
  alignas(32) double c[4];
  _mm256_store_pd(d, _mm256_add_pd(acc_d0, acc_d1));
  _mm256_store_pd(c, _mm256_add_pd(acc_x0, acc_x1));
  double re = (d[0] + d[2]) - (d[1] + d[3]);
  double im = (c[0] + c[2]) + (c[1] + c[3]);
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() - x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() + x[i].imag() * y[i].real();
  }
  return {re, im};
}

void gemv_avx2(std::size_t m, std::size_t k, const cplx* a, std::size_t lda, const cplx* x,
               cplx* y) {
  for (std::size_t i = 0; i < m; ++i) y[i] = dotu_avx2(k, a + i * lda, x);
}

void gemm_acc_avx2(std::size_t m, std::size_t n, std::size_t k, const cplx* a, std::size_t lda,
                   const cplx* b, std::size_t ldb, cplx* c, std::size_t ldc) {
  // Row-panel ikj ordering: each C row stays hot while B rows stream through.
  constexpr std::size_t kBlock = 64;
  for (std::size_t p0 = 0; p0 < k; p0 += kBlock) {
    const std::size_t p1 = p0 + kBlock < k ? p0 + kBlock : k;
    for (std::size_t i = 0; i < m; ++i) {
      cplx* crow = c + i * ldc;
      for (std::size_t p = p0; p < p1; ++p) {
        const cplx aip = a[i * lda + p];
        if (aip == cplx{}) continue;
        axpy_avx2(n, aip, b + p * ldb, crow);
      }
    }
  }
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable t{Isa::avx2, axpy_avx2, dotu_avx2, gemv_avx2, gemm_acc_avx2};
  return t;
}

}  // namespace sqz::kernels
