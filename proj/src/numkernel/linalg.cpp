// Copyright 2026 The squeezelim Authors
// SPDX-License-Identifier: Apache-2.0

#include "sqz/numkernel/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sqz {
namespace {

constexpr int kMaxTaylorTerms = 60;

void check_tol(double tol) {
  if (!(tol >= kExpmMinTol && tol <= kExpmMaxTol)) {
    throw std::invalid_argument("expm: tolerance " + std::to_string(tol) +
                                " outside [1e-15, 1e-6]");
  }
}

// Tail bound of the Taylor series after the term of order k, given that term's norm.
double taylor_tail(double term_norm, double b, int k) {
  const double ratio = b / (k + 2);
  return term_norm * (b / (k + 1)) / (1.0 - ratio);
}

}  // namespace

double norm1(const CMatrix& m) {
  double best = 0.0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) s += std::abs(m(i, j));
    best = std::max(best, s);
  }
  return best;
}

double norm_inf(const CMatrix& m) {
  double best = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += std::abs(m(i, j));
    best = std::max(best, s);
  }
  return best;
}

double norm1(std::span<const cplx> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::abs(z);
  return s;
}

CMatrix expm(const CMatrix& m, double tol) {
  if (!m.is_square()) throw std::invalid_argument("expm: matrix must be square");
  check_tol(tol);
  const std::size_t n = m.rows();
  const double nrm = norm1(m);
  if (!std::isfinite(nrm)) throw std::invalid_argument("expm: non-finite entries");

  int s = 0;
  double scaled = nrm;
  while (scaled > 0.5) {
    scaled *= 0.5;
    ++s;
  }
  const double local_tol = tol * std::ldexp(1.0, -s) * 0.1;
  const CMatrix b = std::ldexp(1.0, -s) * m;

  CMatrix result = CMatrix::identity(n);
  CMatrix term = CMatrix::identity(n);
  for (int k = 1; k <= kMaxTaylorTerms; ++k) {
    term = term * b;
    term *= 1.0 / k;
    result += term;
    if (taylor_tail(norm1(term), scaled, k) <= local_tol) break;
  }
  for (int i = 0; i < s; ++i) result = result * result;
  return result;
}

CVector expm_apply(const CMatrix& m, std::span<const cplx> v, double t, double tol) {
  if (!m.is_square()) throw std::invalid_argument("expm_apply: matrix must be square");
  if (m.cols() != v.size()) throw std::invalid_argument("expm_apply: dimension mismatch");
  check_tol(tol);
  if (t < 0.0) throw std::invalid_argument("expm_apply: negative time");

  CVector w(v.begin(), v.end());
  const double nrm = norm1(m) * t;
  if (!std::isfinite(nrm)) throw std::invalid_argument("expm_apply: non-finite entries");
  if (nrm == 0.0) return w;

  const auto pieces = static_cast<std::size_t>(std::ceil(nrm));
  const double h = t / static_cast<double>(pieces);
  const double b = nrm / static_cast<double>(pieces);  // <= 1
  const double local_tol = tol / static_cast<double>(pieces);

  CVector term(w.size());
  CVector next(w.size());
  for (std::size_t piece = 0; piece < pieces; ++piece) {
    term = w;
    const double wnorm = std::max(norm1(w), 1e-300);
    for (int k = 1; k <= kMaxTaylorTerms; ++k) {
      next = matvec(m, term);
      const double scale = h / k;
      double tnorm = 0.0;
      for (std::size_t i = 0; i < w.size(); ++i) {
        term[i] = next[i] * scale;
        w[i] += term[i];
        tnorm += std::abs(term[i]);
      }
      if (taylor_tail(tnorm, b, k) <= local_tol * wnorm) break;
    }
  }
  return w;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& h) {
  if (!h.is_square()) throw std::invalid_argument("hermitian_eigenvalues: matrix must be square");
  const std::size_t n = h.rows();
  // Real symmetric embedding [[Re, -Im], [Im, Re]]; its spectrum is that of h, doubled.
  const std::size_t m = 2 * n;
  std::vector<double> a(m * m);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * m + j]; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // symmetrize to absorb round-off asymmetry
      const cplx z = 0.5 * (h(i, j) + std::conj(h(j, i)));
      at(i, j) = z.real();
      at(i, j + n) = -z.imag();
      at(i + n, j) = z.imag();
      at(i + n, j + n) = z.real();
    }

  double scale = 0.0;
  for (double x : a) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return std::vector<double>(n, 0.0);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < m; ++p)
      for (std::size_t q = p + 1; q < m; ++q) off += at(p, q) * at(p, q);
    if (std::sqrt(off) <= 1e-17 * scale) break;

    for (std::size_t p = 0; p < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) {
        const double apq = at(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < m; ++k) {
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < m; ++k) {
          const double apk = at(p, k);
          const double aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }

  std::vector<double> eig(m);
  for (std::size_t i = 0; i < m; ++i) eig[i] = at(i, i);
  std::sort(eig.begin(), eig.end());
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = 0.5 * (eig[2 * i] + eig[2 * i + 1]);
  return out;
}

double opnorm(const CMatrix& m) {
  if (m.empty()) return 0.0;
  if (m.rows() == 1 || m.cols() == 1) {
    double s = 0.0;
    for (const auto& z : m.values()) s += std::norm(z);
    return std::sqrt(s);
  }
  const CMatrix gram = m.cols() <= m.rows() ? m.adjoint() * m : m * m.adjoint();
  const auto eig = hermitian_eigenvalues(gram);
  return std::sqrt(std::max(eig.back(), 0.0));
}

double unitarity_defect(const CMatrix& m) {
  return opnorm(m * m.adjoint() - CMatrix::identity(m.rows()));
}

double hermiticity_defect(const CMatrix& m) { return opnorm(m - m.adjoint()); }

}  // namespace sqz
