// Copyright 2026 The squeezelim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace sqz::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);

// Raw complex kernels. Matrices are row-major with explicit leading dimension.
struct KernelTable {
  Isa isa;
  // y += a * x
  void (*axpy)(std::size_t n, cplx a, const cplx* x, cplx* y);
  // sum_i x[i] * y[i], no conjugation
  cplx (*dotu)(std::size_t n, const cplx* x, const cplx* y);
  // y = A x for an m x k matrix A
  void (*gemv)(std::size_t m, std::size_t k, const cplx* a, std::size_t lda, const cplx* x,
               cplx* y);
  // C += A B with A m x k, B k x n, C m x n
  void (*gemm_acc)(std::size_t m, std::size_t n, std::size_t k, const cplx* a, std::size_t lda,
                   const cplx* b, std::size_t ldb, cplx* c, std::size_t ldc);
};

/// True when the variant was compiled in and the running CPU supports it.
bool available(Isa isa);

/// Kernel table for a specific ISA. Throws std::runtime_error if unavailable.
const KernelTable& table(Isa isa);

/// Best available ISA, unless overridden by SQZ_KERNEL=scalar in the environment.
Isa detect();

/// Process-wide active table. Defaults to detect().
const KernelTable& active();
void set_active(Isa isa);

const KernelTable& scalar_table();
#if defined(SQZ_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

}  // namespace sqz::kernels
