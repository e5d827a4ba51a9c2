#pragma once
#include <complex>
#include <numbers>

namespace wnprop {

using cdouble = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cdouble iu{0.0, 1.0};

// Principal square root, cut along (-inf, 0].  std::sqrt already uses this
// branch; the alias exists so call sites state the convention.
inline cdouble sqrt_principal(cdouble z) { return std::sqrt(z); }

// z^(-d/2) built from the principal root, so that i^(-1/2) = e^{-i pi/4}.
inline cdouble pow_neg_half(cdouble z, int d) {
  cdouble r = 1.0 / sqrt_principal(z);
  cdouble out = 1.0;
  for (int j = 0; j < d; ++j) out *= r;
  return out;
}

inline double sqr(double x) { return x * x; }
inline cdouble sqr(cdouble z) { return z * z; }

}  // namespace wnprop
