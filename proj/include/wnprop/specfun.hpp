#pragma once
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "wnprop/util/complexops.hpp"

namespace wnprop {

// Physicists' Hermite polynomial H_n(z), complex argument, forward recurrence
// H_{n+1} = 2z H_n - 2n H_{n-1}.  Fixed so that the Wick powers satisfy
// <:x^{(x)n}:, xi^{(x)n}> = 2^{-n/2}|xi|^n H_n(<x,xi>/(sqrt2 |xi|)).
// Refused above n = 300: the forward recurrence (and double range) degrade.
inline cdouble hermite(int n, cdouble z) {
  if (n < 0) throw std::invalid_argument("hermite: n < 0");
  if (n > 300) throw std::invalid_argument("hermite: n > 300 refused");
  cdouble hm1 = 0.0, h = 1.0;
  for (int k = 0; k < n; ++k) {
    cdouble hp = 2.0 * z * h - 2.0 * double(k) * hm1;
    hm1 = h;
    h = hp;
  }
  return h;
}

// Scaled sequence G_n = H_n(z) s^n / n! for all n = 0..N in one pass.
// G_{n+1} = (2 z s G_n - 2 s^2 G_{n-1}) / (n+1); overflow-free even where
// H_n itself would leave double range.
inline std::vector<cdouble> hermite_scaled(int N, cdouble z, cdouble s) {
  std::vector<cdouble> g(N + 1);
  g[0] = 1.0;
  if (N == 0) return g;
  g[1] = 2.0 * z * s;
  for (int n = 1; n < N; ++n)
    g[n + 1] = (2.0 * z * s * g[n] - 2.0 * s * s * g[n - 1]) / double(n + 1);
  return g;
}

// Jacobi theta  theta(rho,tau) = sum_n exp(pi i n^2 tau + 2 pi i n rho),
// Im tau > 0.  Summed to absolute tail < 1e-15.
inline cdouble theta(cdouble rho, cdouble tau) {
  if (tau.imag() <= 0.0) throw std::domain_error("theta: Im tau <= 0");
  cdouble sum = 1.0;
  const double decay = pi * tau.imag();
  // n_max from e^{-pi n^2 Im tau} alone can be beaten by large |Im rho|;
  // keep adding until two consecutive term pairs drop below threshold.
  int small_run = 0;
  for (int n = 1; n <= 100000; ++n) {
    cdouble quad = std::exp(iu * pi * double(n) * double(n) * tau);
    cdouble term = quad * (std::exp(2.0 * pi * iu * double(n) * rho) +
                           std::exp(-2.0 * pi * iu * double(n) * rho));
    sum += term;
    if (std::abs(term) < 1e-16 * (1.0 + std::abs(sum))) {
      if (++small_run >= 2 && decay * (2 * n + 1) > 1.0) return sum;
    } else {
      small_run = 0;
    }
  }
  throw std::runtime_error("theta: series did not converge");
}

inline double log_gamma(double x) {
  if (x <= 0.0) throw std::domain_error("log_gamma: x <= 0");
  return std::lgamma(x);
}

inline double gamma_fn(double x) { return std::exp(log_gamma(x)); }

// Closed form of the singular simplex integral
//   int_{Lambda_n} prod_{j=1}^{n+1} (2 pi |t_j - t_{j-1}|)^{-alpha} d^n t
//     = (Gamma(1-alpha)/(2 pi)^alpha)^{n+1} |Delta|^{n(1-alpha)-alpha}
//       / Gamma((n+1)(1-alpha)),   alpha < 1.
// Evaluated in log space; no overflow for n <= 200.
inline double simplex_singular_volume(int n, double alpha, double interval) {
  if (alpha >= 1.0) throw std::domain_error("simplex_singular_volume: alpha >= 1");
  if (n < 0 || interval <= 0.0) throw std::invalid_argument("simplex_singular_volume");
  double lg = (n + 1) * (log_gamma(1.0 - alpha) - alpha * std::log(2.0 * pi)) +
              (n * (1.0 - alpha) - alpha) * std::log(interval) -
              log_gamma((n + 1) * (1.0 - alpha));
  return std::exp(lg);
}

}  // namespace wnprop
