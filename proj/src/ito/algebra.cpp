// Copyright 2026 The squeezelim Authors
// SPDX-License-Identifier: Apache-2.0

#include "sqz/ito/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace sqz::ito {

Symbol adjoint(Symbol s) {
  switch (s) {
    case Symbol::L: return Symbol::Lstar;
    case Symbol::Lstar: return Symbol::L;
    case Symbol::S: return Symbol::Sstar;
    case Symbol::Sstar: return Symbol::S;
    case Symbol::H: return Symbol::H;
    case Symbol::Hnc: return Symbol::Hnc;
    case Symbol::Lnc: return Symbol::Lncstar;
    case Symbol::Lncstar: return Symbol::Lnc;
    case Symbol::Fnc: return Symbol::Fncstar;
    case Symbol::Fncstar: return Symbol::Fnc;
    case Symbol::X: return Symbol::Xstar;
    case Symbol::Xstar: return Symbol::X;
  }
  return s;
}

Word adjoint(const Word& w) {
  Word r;
  r.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(adjoint(*it));
  return r;
}

std::string to_string(Symbol s) {
  switch (s) {
    case Symbol::L: return "L";
    case Symbol::Lstar: return "L*";
    case Symbol::S: return "S";
    case Symbol::Sstar: return "S*";
    case Symbol::H: return "H";
    case Symbol::Hnc: return "Hnc";
    case Symbol::Lnc: return "Lnc";
    case Symbol::Lncstar: return "Lnc*";
    case Symbol::Fnc: return "Fnc";
    case Symbol::Fncstar: return "Fnc*";
    case Symbol::X: return "X";
    case Symbol::Xstar: return "X*";
  }
  return "?";
}

std::string to_string(const Word& w) {
  if (w.empty()) return "I";
  std::string r;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) r += ' ';
    r += to_string(w[i]);
  }
  return r;
}

Word concat(const Word& a, const Word& b) {
  Word r;
  r.reserve(a.size() + b.size());
  r.insert(r.end(), a.begin(), a.end());
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

Diff adjoint(Diff d) {
  switch (d) {
    case Diff::dt: return Diff::dt;
    case Diff::dA: return Diff::dAstar;
    case Diff::dAstar: return Diff::dA;
    case Diff::dLambda: return Diff::dLambda;
    case Diff::dB: return Diff::dBstar;
    case Diff::dBstar: return Diff::dB;
    case Diff::dZ: return Diff::dZstar;
    case Diff::dZstar: return Diff::dZ;
  }
  return d;
}

bool is_hudson_parthasarathy(Diff d) {
  return d == Diff::dt || d == Diff::dA || d == Diff::dAstar || d == Diff::dLambda;
}

std::string to_string(Diff d) {
  switch (d) {
    case Diff::dt: return "dt";
    case Diff::dA: return "dA";
    case Diff::dAstar: return "dA*";
    case Diff::dLambda: return "dLambda";
    case Diff::dB: return "dB";
    case Diff::dBstar: return "dB*";
    case Diff::dZ: return "dZ";
    case Diff::dZstar: return "dZ*";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// SystemPoly

SystemPoly SystemPoly::identity(cplx coeff) { return word({}, coeff); }
SystemPoly SystemPoly::symbol(Symbol s, cplx coeff) { return word({s}, coeff); }

SystemPoly SystemPoly::word(Word w, cplx coeff) {
  SystemPoly p;
  p.add(w, coeff);
  return p;
}

void SystemPoly::add(const Word& w, cplx coeff) {
  if (coeff == cplx{}) return;
  auto [it, inserted] = terms_.try_emplace(w, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == cplx{}) terms_.erase(it);
  }
}

cplx SystemPoly::coefficient(const Word& w) const {
  const auto it = terms_.find(w);
  return it == terms_.end() ? cplx{} : it->second;
}

bool SystemPoly::contains(Symbol s) const {
  return std::any_of(terms_.begin(), terms_.end(), [s](const auto& t) {
    return std::find(t.first.begin(), t.first.end(), s) != t.first.end();
  });
}

SystemPoly SystemPoly::adjoint() const {
  SystemPoly r;
  for (const auto& [w, c] : terms_) r.add(ito::adjoint(w), std::conj(c));
  return r;
}

SystemPoly& SystemPoly::operator+=(const SystemPoly& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

SystemPoly& SystemPoly::operator-=(const SystemPoly& o) {
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

SystemPoly& SystemPoly::operator*=(cplx s) {
  if (s == cplx{}) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, c] : terms_) c *= s;
  return *this;
}

SystemPoly operator*(const SystemPoly& a, const SystemPoly& b) {
  SystemPoly r;
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) r.add(concat(wa, wb), ca * cb);
  return r;
}

// ---------------------------------------------------------------------------
// ItoExpression

ItoExpression ItoExpression::term(const SystemPoly& coeff, Diff d) {
  ItoExpression e;
  e.add(coeff, d);
  return e;
}

void ItoExpression::add(const Word& w, Diff d, cplx coeff) {
  if (coeff == cplx{}) return;
  auto [it, inserted] = terms_.try_emplace(Key{w, d}, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == cplx{}) terms_.erase(it);
  }
}

void ItoExpression::add(const SystemPoly& coeff, Diff d) {
  for (const auto& [w, c] : coeff.terms()) add(w, d, c);
}

cplx ItoExpression::coefficient(const Word& w, Diff d) const {
  const auto it = terms_.find(Key{w, d});
  return it == terms_.end() ? cplx{} : it->second;
}

SystemPoly ItoExpression::part(Diff d) const {
  SystemPoly p;
  for (const auto& [key, c] : terms_)
    if (key.second == d) p.add(key.first, c);
  return p;
}

std::set<Diff> ItoExpression::differentials() const {
  std::set<Diff> ds;
  for (const auto& [key, c] : terms_) ds.insert(key.second);
  return ds;
}

ItoExpression ItoExpression::adjoint() const {
  ItoExpression r;
  for (const auto& [key, c] : terms_) r.add(ito::adjoint(key.first), ito::adjoint(key.second), std::conj(c));
  return r;
}

ItoExpression& ItoExpression::operator+=(const ItoExpression& o) {
  for (const auto& [key, c] : o.terms_) add(key.first, key.second, c);
  return *this;
}

ItoExpression& ItoExpression::operator-=(const ItoExpression& o) {
  for (const auto& [key, c] : o.terms_) add(key.first, key.second, -c);
  return *this;
}

ItoExpression& ItoExpression::operator*=(cplx s) {
  if (s == cplx{}) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, c] : terms_) c *= s;
  return *this;
}

namespace {

std::string format_coeff(cplx c) {
  std::ostringstream os;
  os.precision(6);
  os << '(' << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
  return os.str();
}

}  // namespace

std::string to_string(const SystemPoly& p) {
  if (p.is_zero()) return "0";
  std::string r;
  for (const auto& [w, c] : p.terms()) {
    if (!r.empty()) r += " + ";
    r += format_coeff(c) + ' ' + to_string(w);
  }
  return r;
}

std::string to_string(const ItoExpression& e) {
  if (e.is_zero()) return "0";
  std::string r;
  for (const auto& [key, c] : e.terms()) {
    if (!r.empty()) r += " + ";
    r += format_coeff(c) + ' ' + to_string(key.first) + ' ' + to_string(key.second);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Tables and products

void ItoTable::set(Diff left, Diff right, ItoExpression product) {
  rules_[{left, right}] = std::move(product);
}

bool ItoTable::defines(Diff left, Diff right) const { return rules_.contains({left, right}); }

const ItoExpression& ItoTable::lookup(Diff left, Diff right) const {
  const auto it = rules_.find({left, right});
  if (it == rules_.end()) {
    throw TableIncompleteError("Ito table has no rule for " + to_string(left) + " * " +
                               to_string(right));
  }
  return it->second;
}

const ItoTable& ItoTable::hudson_parthasarathy() {
  static const ItoTable table = [] {
    ItoTable t;
    const Diff hp[] = {Diff::dt, Diff::dA, Diff::dAstar, Diff::dLambda};
    for (Diff l : hp)
      for (Diff r : hp) t.set(l, r, {});
    const auto unit = [](Diff d) { return ItoExpression::term(SystemPoly::identity(), d); };
    t.set(Diff::dA, Diff::dAstar, unit(Diff::dt));
    t.set(Diff::dA, Diff::dLambda, unit(Diff::dA));
    t.set(Diff::dLambda, Diff::dAstar, unit(Diff::dAstar));
    t.set(Diff::dLambda, Diff::dLambda, unit(Diff::dLambda));
    return t;
  }();
  return table;
}

ItoExpression ito_multiply(const ItoExpression& e1, const ItoExpression& e2, const ItoTable& table) {
  ItoExpression r;
  for (const auto& [k1, c1] : e1.terms()) {
    for (const auto& [k2, c2] : e2.terms()) {
      const ItoExpression& prod = table.lookup(k1.second, k2.second);
      if (prod.is_zero()) continue;
      const Word w12 = concat(k1.first, k2.first);
      for (const auto& [k3, c3] : prod.terms()) r.add(concat(w12, k3.first), k3.second, c1 * c2 * c3);
    }
  }
  return r;
}

ItoExpression substitute_squeezed(const ItoExpression& e, const SqueezeParams& p) {
  const cplx n = p.n;
  // dB  = (n+c)/s dA* + (n+1+c)/s dA      dB* = (n+cbar)/s dA + (n+1+cbar)/s dA*
  // dZ  = (n+c)/s (dA* + dA)              dZ* = (n+cbar)/s (dA + dA*)
  ItoExpression r;
  for (const auto& [key, c] : e.terms()) {
    const Word& w = key.first;
    switch (key.second) {
      case Diff::dB:
        r.add(w, Diff::dAstar, c * (n + p.c) / p.s);
        r.add(w, Diff::dA, c * (n + 1.0 + p.c) / p.s);
        break;
      case Diff::dBstar:
        r.add(w, Diff::dA, c * (n + p.cbar) / p.s);
        r.add(w, Diff::dAstar, c * (n + 1.0 + p.cbar) / p.s);
        break;
      case Diff::dZ:
        r.add(w, Diff::dAstar, c * (n + p.c) / p.s);
        r.add(w, Diff::dA, c * (n + p.c) / p.s);
        break;
      case Diff::dZstar:
        r.add(w, Diff::dA, c * (n + p.cbar) / p.s);
        r.add(w, Diff::dAstar, c * (n + p.cbar) / p.s);
        break;
      default:
        r.add(w, key.second, c);
        break;
    }
  }
  return r;
}

NoiseTable derive_noise_table(const SqueezeParams& p) {
  const auto unit = [&](Diff d) {
    return substitute_squeezed(ItoExpression::term(SystemPoly::identity(), d), p);
  };
  const auto dt_coeff = [&](Diff l, Diff r) {
    const ItoExpression prod = ito_multiply(unit(l), unit(r));
    return prod.coefficient({}, Diff::dt);
  };
  NoiseTable t;
  t.BstarBstar = dt_coeff(Diff::dBstar, Diff::dBstar);
  t.BstarB = dt_coeff(Diff::dBstar, Diff::dB);
  t.BBstar = dt_coeff(Diff::dB, Diff::dBstar);
  t.BB = dt_coeff(Diff::dB, Diff::dB);
  t.ZstarZstar = dt_coeff(Diff::dZstar, Diff::dZstar);
  t.ZstarZ = dt_coeff(Diff::dZstar, Diff::dZ);
  t.ZZstar = dt_coeff(Diff::dZ, Diff::dZstar);
  t.ZZ = dt_coeff(Diff::dZ, Diff::dZ);
  return t;
}

SystemPoly vacuum_generator(const ItoExpression& left, const ItoExpression& right) {
  for (const auto* e : {&left, &right}) {
    for (Diff d : e->differentials()) {
      if (!is_hudson_parthasarathy(d)) {
        throw std::invalid_argument("vacuum_generator: differential " + to_string(d) +
                                    " must be rewritten in dA, dA*, dLambda, dt first");
      }
    }
  }
  const SystemPoly x = SystemPoly::symbol(Symbol::X);
  SystemPoly g = left.part(Diff::dt) * x + x * right.part(Diff::dt);

  const ItoTable& hp = ItoTable::hudson_parthasarathy();
  for (const auto& [kl, cl] : left.terms()) {
    for (const auto& [kr, cr] : right.terms()) {
      const ItoExpression& prod = hp.lookup(kl.second, kr.second);
      const SystemPoly dt_part = prod.part(Diff::dt);
      if (dt_part.is_zero()) continue;
      const SystemPoly sandwich =
          SystemPoly::word(kl.first, cl) * x * SystemPoly::word(kr.first, cr) * dt_part;
      g += sandwich;
    }
  }
  return g;
}

SystemPoly substitute(const SystemPoly& p, Symbol s, const SystemPoly& replacement) {
  SystemPoly r;
  for (const auto& [w, c] : p.terms()) {
    SystemPoly acc = SystemPoly::identity(c);
    Word run;
    for (Symbol sym : w) {
      if (sym == s) {
        acc = acc * SystemPoly::word(run) * replacement;
        run.clear();
      } else {
        run.push_back(sym);
      }
    }
    acc = acc * SystemPoly::word(run);
    r += acc;
  }
  return r;
}

ItoExpression substitute(const ItoExpression& e, Symbol s, const SystemPoly& replacement) {
  ItoExpression r;
  for (const auto& [key, c] : e.terms()) {
    r.add(substitute(SystemPoly::word(key.first, c), s, replacement), key.second);
  }
  return r;
}

SystemPoly expand_coefficients(const SystemPoly& poly, const SqueezeParams& p) {
  const cplx n = p.n;
  const SystemPoly L = SystemPoly::symbol(Symbol::L);
  const SystemPoly Ls = SystemPoly::symbol(Symbol::Lstar);
  const cplx g = (n + 1.0 + p.cbar) / p.s;
  const cplx b = (n + p.cbar) / p.s;
  const cplx dl = (n + p.c) / p.s;

  const SystemPoly lnc = g * L - dl * Ls;
  const SystemPoly fnc = b * L - dl * Ls;
  SystemPoly inner = ((n + p.cbar) / p.s2) * (L * L);
  inner -= ((n + p.c) / p.s2) * (Ls * Ls);
  inner += ((p.cbar - p.c) / p.s2) * (Ls * L);
  const SystemPoly hnc = cplx{0.0, -0.5} * inner;

  SystemPoly r = substitute(poly, Symbol::Lnc, lnc);
  r = substitute(r, Symbol::Lncstar, lnc.adjoint());
  r = substitute(r, Symbol::Fnc, fnc);
  r = substitute(r, Symbol::Fncstar, fnc.adjoint());
  r = substitute(r, Symbol::Hnc, hnc);
  return r;
}

ItoExpression expand_coefficients(const ItoExpression& e, const SqueezeParams& p) {
  ItoExpression r;
  for (const auto& [key, c] : e.terms()) {
    r.add(expand_coefficients(SystemPoly::word(key.first, c), p), key.second);
  }
  return r;
}

double max_difference(const SystemPoly& a, const SystemPoly& b) {
  const SystemPoly diff = a - b;
  double m = 0.0;
  for (const auto& [w, c] : diff.terms()) m = std::max(m, std::abs(c));
  return m;
}

double max_difference(const ItoExpression& a, const ItoExpression& b) {
  const ItoExpression diff = a - b;
  double m = 0.0;
  for (const auto& [key, c] : diff.terms()) m = std::max(m, std::abs(c));
  return m;
}

// ---------------------------------------------------------------------------
// Sampling

std::vector<SampleParams> draw_samples(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> log_n(std::log(0.1), std::log(1e3));
  std::uniform_real_distribution<double> theta(-std::numbers::pi + 0.1, std::numbers::pi - 0.1);
  std::uniform_real_distribution<double> box(-2.0, 2.0);
  std::vector<SampleParams> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double n = std::exp(log_n(rng));
    const double th = theta(rng);
    const double ar = box(rng);
    const double ai = box(rng);
    out.push_back({make_squeeze_params(n, th), {ar, ai}});
  }
  return out;
}

IdentityCheck check_identity(const ErrorFunction& error, std::size_t samples, double tol,
                             std::uint64_t seed) {
  if (samples == 0) throw std::invalid_argument("check_identity: samples must be >= 1");
  IdentityCheck result;
  result.samples = samples;
  bool first = true;
  for (const auto& sp : draw_samples(samples, seed)) {
    const double err = error(sp);
    if (first || !(err <= result.max_error)) {
      result.max_error = err;
      result.worst = sp;
      first = false;
    }
  }
  result.passed = result.max_error < tol;
  return result;
}

bool equal_within(const ExpressionFamily& e1, const ExpressionFamily& e2, std::size_t samples,
                  double tol, std::uint64_t seed) {
  return check_identity(
             [&](const SampleParams& sp) { return max_difference(e1(sp), e2(sp)); }, samples,
             tol, seed)
      .passed;
}

bool equal_within(const ItoExpression& e1, const ItoExpression& e2, double tol) {
  return max_difference(e1, e2) < tol;
}

}  // namespace sqz::ito
