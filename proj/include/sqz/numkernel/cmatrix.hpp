// Copyright 2026 The squeezelim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace sqz {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

/// Dense complex matrix, row-major.
///
/// A default-constructed matrix is empty (0x0) and only useful as a
/// placeholder; every constructor taking dimensions requires rows, cols >= 1.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  /// Row-major initializer: CMatrix(2, 2, {a, b, c, d}) is [[a, b], [c, d]].
  CMatrix(std::size_t rows, std::size_t cols, std::initializer_list<cplx> values);
  CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> values);

  static CMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(std::span<const cplx> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  cplx* data() noexcept { return data_.data(); }
  const cplx* data() const noexcept { return data_.data(); }
  std::span<cplx> values() noexcept { return data_; }
  std::span<const cplx> values() const noexcept { return data_; }

  CMatrix adjoint() const;
  CMatrix transpose() const;
  CMatrix conj() const;
  cplx trace() const;
  double max_abs() const;

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(cplx s);
  CMatrix operator-() const;

  /// this += s * other
  CMatrix& add_scaled(cplx s, const CMatrix& other);

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(cplx s, CMatrix a);
CMatrix operator*(CMatrix a, cplx s);
/// Matrix product through the active kernel table.
CMatrix operator*(const CMatrix& a, const CMatrix& b);

CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix block_diagonal(const CMatrix& a, const CMatrix& b);

/// Column-stacking vectorization: vec(X)[i + j*rows] = X(i, j).
CVector vec(const CMatrix& x);
CMatrix unvec(std::span<const cplx> v, std::size_t rows, std::size_t cols);

CVector matvec(const CMatrix& a, std::span<const cplx> x);
cplx inner(std::span<const cplx> x, std::span<const cplx> y);  // <x, y>, antilinear in x
double norm2(std::span<const cplx> x);

}  // namespace sqz
