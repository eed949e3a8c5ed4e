// Copyright 2026 The squeezelim Authors
// SPDX-License-Identifier: Apache-2.0

#include "sqz/ito/identities.hpp"

#include <algorithm>
#include <cmath>

#include "sqz/ito/qsde_library.hpp"

namespace sqz::ito {
namespace {

SystemPoly sym(Symbol s) { return SystemPoly::symbol(s); }

ItoExpression set_gauge_trivial(const ItoExpression& e) {
  ItoExpression r = substitute(e, Symbol::S, SystemPoly::identity());
  return substitute(r, Symbol::Sstar, SystemPoly::identity());
}

double max_of(std::initializer_list<double> xs) {
  double m = 0.0;
  for (double x : xs) m = std::isnan(x) ? x : std::max(m, x);
  return m;
}

}  // namespace

double squeezed_table_error(const SampleParams& sp) {
  const SqueezeParams& p = sp.squeeze;
  const NoiseTable t = derive_noise_table(p);
  return max_of({std::abs(t.BstarBstar - p.cbar), std::abs(t.BstarB - p.n),
                 std::abs(t.BBstar - (p.n + 1.0)), std::abs(t.BB - p.c)});
}

double z_table_error(const SampleParams& sp) {
  const SqueezeParams& p = sp.squeeze;
  const NoiseTable t = derive_noise_table(p);
  return max_of({std::abs(t.ZstarZstar - (p.cbar - (p.n + p.cbar) / p.s2)),
                 std::abs(t.ZstarZ - p.n), std::abs(t.ZZstar - p.n),
                 std::abs(t.ZZ - (p.c - (p.n + p.c) / p.s2))});
}

double squeezed_qsde_rewrite_error(const SampleParams& sp) {
  const SqueezeParams& p = sp.squeeze;
  return max_difference(substitute_squeezed(squeezed_driven_qsde(p), p),
                        expand_coefficients(qsde_without_gauge(), p));
}

double z_qsde_rewrite_error(const SampleParams& sp) {
  const SqueezeParams& p = sp.squeeze;
  return max_difference(expand_coefficients(substitute_squeezed(z_driven_qsde_v(p), p), p),
                        expand_coefficients(set_gauge_trivial(qsde_v()), p));
}

double generator_identity_error(const SampleParams& sp) {
  const SqueezeParams& p = sp.squeeze;
  return max_difference(expand_coefficients(at_identity(transfer_generator_poly(sp.alpha)), p),
                        expand_coefficients(generator_at_identity(sp.alpha), p));
}

double generator_closed_form_error(const SampleParams& sp) {
  const SqueezeParams& p = sp.squeeze;
  return max_difference(expand_coefficients(at_identity(transfer_generator_poly(sp.alpha)), p),
                        generator_at_identity_closed(sp.alpha, p));
}

std::vector<IdentityResult> run_identity_suite(std::size_t samples, double tol, std::uint64_t seed) {
  std::vector<IdentityResult> out;
  const auto run = [&](std::string name, const ErrorFunction& f) {
    out.push_back({std::move(name), check_identity(f, samples, tol, seed)});
  };

  run("squeezed Ito table (dB*dB* = cbar dt, dB*dB = n dt, dBdB* = (n+1) dt, dBdB = c dt)",
      squeezed_table_error);
  run("Z Ito table (cbar - (n+cbar)/s2, n, n, c - (n+c)/s2)", z_table_error);
  run("B-driven QSDE rewritten in dA, dA* equals the gauge-free U equation",
      squeezed_qsde_rewrite_error);
  run("Z-driven V equation rewritten in dA, dA* equals the V equation at S = I",
      z_qsde_rewrite_error);
  run("F_nc is skew-adjoint", [](const SampleParams& sp) {
    const SystemPoly f = sym(Symbol::Fnc) + sym(Symbol::Fncstar);
    return max_difference(expand_coefficients(f, sp.squeeze), SystemPoly{});
  });
  run("H_nc is self-adjoint", [](const SampleParams& sp) {
    const SystemPoly h = expand_coefficients(sym(Symbol::Hnc), sp.squeeze);
    return max_difference(h, h.adjoint());
  });
  run("L_nc - F_nc = L / s", [](const SampleParams& sp) {
    const SystemPoly d = expand_coefficients(sym(Symbol::Lnc) - sym(Symbol::Fnc), sp.squeeze);
    return max_difference(d, (1.0 / sp.squeeze.s) * sym(Symbol::L));
  });
  run("Weyl-dressed U equation matches the coherent-state U equation at S = I",
      [](const SampleParams& sp) {
        return max_difference(set_gauge_trivial(dress_with_weyl(qsde_u(), sp.alpha)),
                              set_gauge_trivial(generator_u(sp.alpha)));
      });
  run("Weyl-dressed V equation matches the coherent-state V* equation at S = I",
      [](const SampleParams& sp) {
        return max_difference(set_gauge_trivial(dress_with_weyl(qsde_v(), sp.alpha).adjoint()),
                              set_gauge_trivial(generator_v_adjoint(sp.alpha)));
      });
  run("vacuum generator at X = I, coefficient form", generator_identity_error);
  run("vacuum generator at X = I, closed form -L*L/(2 s2) + (conj(a) L - a L*)/s",
      generator_closed_form_error);
  run("vacuum generator carries no scattering term", [](const SampleParams& sp) {
    const SystemPoly g = transfer_generator_poly(sp.alpha);
    return (g.contains(Symbol::S) || g.contains(Symbol::Sstar)) ? 1.0 : 0.0;
  });
  run("vacuum generator annihilates I when F_nc = L_nc and H_nc = 0", [](const SampleParams& sp) {
    SystemPoly g = transfer_generator_poly(sp.alpha);
    g = substitute(g, Symbol::Fnc, sym(Symbol::Lnc));
    g = substitute(g, Symbol::Fncstar, sym(Symbol::Lncstar));
    g = substitute(g, Symbol::Hnc, SystemPoly{});
    return max_difference(expand_coefficients(at_identity(g), sp.squeeze), SystemPoly{});
  });
  return out;
}

}  // namespace sqz::ito
