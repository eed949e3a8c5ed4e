// Copyright 2026 The squeezelim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sqz/model.hpp"

namespace sqz::ito {

using cplx = std::complex<double>;

/// Generators of the free *-algebra of system operators.
///
/// Lnc/Fnc/Hnc stand for the squeezing-dependent coefficients; they can be
/// rewritten in terms of L and Lstar with expand_coefficients(). X is the
/// formal operator a transfer generator acts on. The identity is the empty
/// word; scalars (including the coherent amplitude alpha) live in the
/// coefficients.
enum class Symbol : std::uint8_t {
  L,
  Lstar,
  S,
  Sstar,
  H,
  Hnc,
  Lnc,
  Lncstar,
  Fnc,
  Fncstar,
  X,
  Xstar,
};
inline constexpr std::size_t kSymbolCount = 12;

using Word = std::vector<Symbol>;

Symbol adjoint(Symbol s);
Word adjoint(const Word& w);
std::string to_string(Symbol s);
std::string to_string(const Word& w);
Word concat(const Word& a, const Word& b);

enum class Diff : std::uint8_t { dt, dA, dAstar, dLambda, dB, dBstar, dZ, dZstar };

Diff adjoint(Diff d);
bool is_hudson_parthasarathy(Diff d);
std::string to_string(Diff d);

/// Noncommutative polynomial in system symbols with complex coefficients.
/// Normal form: one entry per word, exact zeros removed.
class SystemPoly {
 public:
  using Map = std::map<Word, cplx>;

  SystemPoly() = default;
  static SystemPoly identity(cplx coeff = 1.0);
  static SystemPoly symbol(Symbol s, cplx coeff = 1.0);
  static SystemPoly word(Word w, cplx coeff = 1.0);

  void add(const Word& w, cplx coeff);
  cplx coefficient(const Word& w) const;
  const Map& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool contains(Symbol s) const;

  SystemPoly adjoint() const;

  SystemPoly& operator+=(const SystemPoly& o);
  SystemPoly& operator-=(const SystemPoly& o);
  SystemPoly& operator*=(cplx s);

  friend SystemPoly operator+(SystemPoly a, const SystemPoly& b) { return a += b; }
  friend SystemPoly operator-(SystemPoly a, const SystemPoly& b) { return a -= b; }
  friend SystemPoly operator*(cplx s, SystemPoly a) { return a *= s; }
  friend SystemPoly operator*(const SystemPoly& a, const SystemPoly& b);

 private:
  Map terms_;
};

/// Finite sum of (system word) x (noise differential) terms.
class ItoExpression {
 public:
  using Key = std::pair<Word, Diff>;
  using Map = std::map<Key, cplx>;

  ItoExpression() = default;
  static ItoExpression term(const SystemPoly& coeff, Diff d);

  void add(const Word& w, Diff d, cplx coeff);
  void add(const SystemPoly& coeff, Diff d);
  cplx coefficient(const Word& w, Diff d) const;
  const Map& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// The system polynomial multiplying differential d.
  SystemPoly part(Diff d) const;
  std::set<Diff> differentials() const;

  /// Antilinear: reverses words, conjugates coefficients, maps each differential to its adjoint.
  ItoExpression adjoint() const;

  ItoExpression& operator+=(const ItoExpression& o);
  ItoExpression& operator-=(const ItoExpression& o);
  ItoExpression& operator*=(cplx s);
  friend ItoExpression operator+(ItoExpression a, const ItoExpression& b) { return a += b; }
  friend ItoExpression operator-(ItoExpression a, const ItoExpression& b) { return a -= b; }
  friend ItoExpression operator*(cplx s, ItoExpression a) { return a *= s; }

 private:
  Map terms_;
};

std::string to_string(const SystemPoly& p);
std::string to_string(const ItoExpression& e);

class TableIncompleteError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Products of differentials, row = left factor.
class ItoTable {
 public:
  void set(Diff left, Diff right, ItoExpression product);
  /// Throws TableIncompleteError for a pair the table does not define.
  const ItoExpression& lookup(Diff left, Diff right) const;
  bool defines(Diff left, Diff right) const;

  /// dA dA* = dt, dA dLambda = dA, dLambda dA* = dA*, dLambda dLambda = dLambda,
  /// every other product of {dt, dA, dA*, dLambda} is zero.
  static const ItoTable& hudson_parthasarathy();

 private:
  std::map<std::pair<Diff, Diff>, ItoExpression> rules_;
};

/// Bilinear Ito product; words concatenate left then right.
ItoExpression ito_multiply(const ItoExpression& e1, const ItoExpression& e2,
                           const ItoTable& table = ItoTable::hudson_parthasarathy());

/// Replaces dB, dB*, dZ, dZ* by their linear combinations of dA and dA*.
ItoExpression substitute_squeezed(const ItoExpression& e, const SqueezeParams& p);

/// dt coefficients of the pairwise products of the squeezed noises.
struct NoiseTable {
  cplx BstarBstar, BstarB, BBstar, BB;
  cplx ZstarZstar, ZstarZ, ZZstar, ZZ;
};
NoiseTable derive_noise_table(const SqueezeParams& p);

/// Generator of X -> id (x) vacuum(V* X U): given dV* = V*{left} and dU = {right}U,
/// returns left_dt X + X right_dt + sum over Ito-reducible pairs of left_i X right_j
/// keeping only dt. Every other differential has zero vacuum expectation.
/// Both inputs must contain only Hudson-Parthasarathy differentials.
SystemPoly vacuum_generator(const ItoExpression& left, const ItoExpression& right);

/// Replace every occurrence of a symbol by a polynomial.
SystemPoly substitute(const SystemPoly& p, Symbol s, const SystemPoly& replacement);
ItoExpression substitute(const ItoExpression& e, Symbol s, const SystemPoly& replacement);

/// Rewrite Lnc, Fnc, Hnc (and adjoints) in terms of L and Lstar at parameters p.
SystemPoly expand_coefficients(const SystemPoly& poly, const SqueezeParams& p);
ItoExpression expand_coefficients(const ItoExpression& e, const SqueezeParams& p);

double max_difference(const SystemPoly& a, const SystemPoly& b);
double max_difference(const ItoExpression& a, const ItoExpression& b);

// ---------------------------------------------------------------------------
// Polynomial identity testing at random parameter points.

struct SampleParams {
  SqueezeParams squeeze;
  cplx alpha;
};

/// Deterministic draws: n log-uniform in [0.1, 1e3], theta uniform in
/// (-pi + 0.1, pi - 0.1), alpha uniform in the box [-2, 2]^2.
std::vector<SampleParams> draw_samples(std::size_t count, std::uint64_t seed);

using ExpressionFamily = std::function<ItoExpression(const SampleParams&)>;
using ErrorFunction = std::function<double(const SampleParams&)>;

struct IdentityCheck {
  bool passed = false;
  double max_error = 0.0;
  std::size_t samples = 0;
  SampleParams worst{};
};

IdentityCheck check_identity(const ErrorFunction& error, std::size_t samples, double tol,
                             std::uint64_t seed);

bool equal_within(const ExpressionFamily& e1, const ExpressionFamily& e2, std::size_t samples,
                  double tol, std::uint64_t seed);
bool equal_within(const ItoExpression& e1, const ItoExpression& e2, double tol);

}  // namespace sqz::ito
