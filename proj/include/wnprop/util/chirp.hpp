#pragma once
#include <cmath>
#include <complex>
#include <stdexcept>

#include "wnprop/util/complexops.hpp"
#include "wnprop/util/quadrature.hpp"

namespace wnprop {

// Integrals of the form  int_0^b amp(u) exp(i c / (2 u^2)) du  with c >= 0 and
// amp smooth up to u = 0.  They arise from propagator time integrals after the
// gap substitution tau = t - u^2: the Fresnel phase (x-y)^2/2(t-tau) turns into
// an infinitely oscillatory but integrable endpoint chirp.
//
// Strategy: below a cut U the chirp is integrated by parts twice,
//   int a E du = -(u^3 E /(ic)) [a + g1] + int g2 E du ,  g1 = (a'u^3+3au^2)/(ic),
// and the remaining integral (amplitude O(u^4/c^2)) is dropped; above U a plain
// adaptive rule on geometrically split ranges resolves the finitely many
// oscillations.  The cut is chosen so the dropped piece stays below tol.
template <class F>
cdouble chirp_endpoint_integral(F&& amp, double c, double b, double tol) {
  if (c < 0) throw std::invalid_argument("chirp_endpoint_integral: c < 0");
  if (b <= 0) return {};
  const double a0 = std::abs(amp(std::min(1e-3 * b, 0.5 * b)));
  const double scale = std::max(a0, 1e-30);

  // Weak chirp: total phase below a few radians even at tiny u is impossible
  // (phase diverges at 0), but if c is so small that the IBP cut lands at a
  // macroscopic u, the tail is negligible and this reduces to plain adaptive.
  double U;
  if (c == 0.0) {
    U = 0.0;
  } else {
    U = std::pow(tol * c * c / (30.0 * scale), 0.2);
    U = std::min(U, 0.25 * b);
  }

  cdouble tail{};
  if (U > 0.0) {
    const double h = 0.125 * U;
    cdouble aU = amp(U);
    cdouble ap = (amp(U + h) - amp(U - h)) / (2.0 * h);
    const cdouble ic(0.0, c);
    cdouble g1 = (ap * U * U * U + 3.0 * aU * U * U) / ic;
    cdouble E = std::exp(cdouble(0.0, 0.5 * c / (U * U)));
    tail = -(U * U * U * E / ic) * (aU + g1);
  }

  auto f = [&](double u) { return amp(u) * std::exp(cdouble(0.0, 0.5 * c / (u * u))); };
  if (U == 0.0) {
    // c == 0: no chirp at all.
    return adaptive_gk<cdouble>([&](double u) { return amp(u); }, 0.0, b, tol, 1e-13);
  }
  int n_oct = 1;
  for (double v = U; v < b; v *= 2.0) ++n_oct;
  const double seg_tol = 0.5 * tol / n_oct;
  cdouble main{};
  double lo = U;
  while (lo < b) {
    double hi = std::min(2.0 * lo, b);
    main += adaptive_gk<cdouble>(f, lo, hi, seg_tol, 1e-13);
    lo = hi;
  }
  return tail + main;
}

}  // namespace wnprop
