#pragma once
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "wnprop/gridfn.hpp"
#include "wnprop/specfun.hpp"
#include "wnprop/util/chirp.hpp"
#include "wnprop/util/complexops.hpp"

namespace wnprop {

struct PropagatorQuery {
  int d = 1;
  std::vector<double> x0, x;
  double t0 = 0.0, t = 1.0;
  std::optional<double> k;  // oscillator frequency, harmonic engines only

  void validate() const {
    if (d < 1 || static_cast<int>(x0.size()) != d || static_cast<int>(x.size()) != d)
      throw std::invalid_argument("PropagatorQuery: dimension mismatch");
    if (!(t > t0)) throw std::domain_error("PropagatorQuery: t <= t0");
    if (k) {
      double kd = *k * (t - t0);
      if (!(kd > 0.0 && kd < 0.5 * pi))
        throw std::domain_error("PropagatorQuery: k|Delta| outside (0, pi/2)");
    }
  }
};

// Test function per space dimension (empty = theta = 0).
using TestFn = std::vector<GridFunction>;

// Plain free propagator K0(x,t|y,s) = (2 pi i (t-s))^{-d/2} e^{i(x-y)^2/2(t-s)}.
inline cdouble k0_free(int d, const std::vector<double>& x, double t, const std::vector<double>& y,
                       double s) {
  if (!(t > s)) throw std::domain_error("k0_free: t <= s");
  double dt = t - s, q = 0;
  for (int j = 0; j < d; ++j) q += sqr(x[j] - y[j]);
  return pow_neg_half(2.0 * pi * iu * dt, d) * std::exp(iu * q / (2.0 * dt));
}

// T-transform of the free Feynman integrand:
// (2 pi i |D|)^{-d/2} exp(-(i/2)|th|^2 - (1/2i|D|)(int_D th + x - x0)^2).
inline cdouble t_free(const PropagatorQuery& q, const TestFn& theta = {}) {
  q.validate();
  if (theta.empty()) return k0_free(q.d, q.x, q.t, q.x0, q.t0);
  if (static_cast<int>(theta.size()) != q.d) throw std::invalid_argument("t_free: theta size");
  double dt = q.t - q.t0;
  cdouble expo = 0;
  for (int j = 0; j < q.d; ++j) {
    cdouble nsq = theta[j].integral_sq(theta[j].lo(), theta[j].hi());
    cdouble a = theta[j].integral(q.t0, q.t) + (q.x[j] - q.x0[j]);
    expo += -0.5 * iu * nsq - a * a / (2.0 * iu * dt);
  }
  return pow_neg_half(2.0 * pi * iu * dt, q.d) * std::exp(expo);
}

// Sourced free propagator (one segment, d = 1), Green's function of
// (i d_t + 1/2 d_x^2 - xidot(t) x):
// K0^(xidot)(x1,t1|x0,t0) = (2 pi i |D|)^{-1/2} exp(i x0 xi(t0) - i x1 xi(t1)
//   - (i/2) int_D xi^2 + (i/2|D|)(int_D xi + x1 - x0)^2).
inline cdouble k0_sourced(double x1, double t1, double x0, double t0, const GridFunction& xi) {
  if (!(t1 > t0)) throw std::domain_error("k0_sourced: t1 <= t0");
  double dt = t1 - t0;
  cdouble I = xi.integral(t0, t1);
  cdouble nsq = xi.integral_sq(t0, t1);
  cdouble a = I + (x1 - x0);
  cdouble expo = iu * (x0 * xi.value(t0) - x1 * xi.value(t1)) - 0.5 * iu * nsq +
                 iu / (2.0 * dt) * a * a;
  return pow_neg_half(2.0 * pi * iu * dt, 1) * std::exp(expo);
}

namespace detail {
// T I0 for one segment [s0,s1] of a pinned chain; |theta|^2 runs over the
// whole grid window.
inline cdouble t_free_segment(int d, const std::vector<double>& x1, double s1,
                              const std::vector<double>& x0, double s0, const TestFn& theta) {
  double dt = s1 - s0;
  if (theta.empty()) return k0_free(d, x1, s1, x0, s0);
  cdouble expo = 0;
  for (int j = 0; j < d; ++j) {
    cdouble nsq = theta[j].integral_sq(theta[j].lo(), theta[j].hi());
    cdouble a = theta[j].integral(s0, s1) + (x1[j] - x0[j]);
    expo += -0.5 * iu * nsq - a * a / (2.0 * iu * dt);
  }
  return pow_neg_half(2.0 * pi * iu * dt, d) * std::exp(expo);
}
}  // namespace detail

struct Pin {
  std::vector<double> x;
  double t;
};

// T(J prod_j delta^d(x(t_j)-x_j))(theta) = e^{(i n/2)|theta|^2} prod T I0(segment).
inline cdouble t_free_pinned(const PropagatorQuery& q, const std::vector<Pin>& pins,
                             const TestFn& theta = {}) {
  q.validate();
  double prev = q.t0;
  for (auto& p : pins) {
    if (!(p.t > prev && p.t < q.t)) throw std::domain_error("t_free_pinned: pins not ordered");
    prev = p.t;
  }
  cdouble phase = 1.0;
  if (!theta.empty() && !pins.empty()) {
    cdouble nsq = 0;
    for (auto& th : theta) nsq += th.integral_sq(th.lo(), th.hi());
    phase = std::exp(0.5 * iu * double(pins.size()) * nsq);
  }
  cdouble prod = 1.0;
  std::vector<double> xa = q.x0;
  double ta = q.t0;
  for (auto& p : pins) {
    prod *= detail::t_free_segment(q.d, p.x, p.t, xa, ta, theta);
    xa = p.x;
    ta = p.t;
  }
  prod *= detail::t_free_segment(q.d, q.x, q.t, xa, ta, theta);
  return phase * prod;
}

namespace detail {
// Forced-oscillator T-transform for one segment (d = 1).  full_norm_sq:
// |theta|^2 over the whole window (T I_h) or over the segment only (K_h with
// the endpoint phases added by the caller).
inline cdouble harmonic_core(double x1, double s1, double x0, double s0, double k,
                             const GridFunction* th, bool full_window) {
  double dt = s1 - s0;
  double kd = k * dt;
  if (!(kd > 0.0 && kd < 0.5 * pi)) throw std::domain_error("harmonic: k|Delta| outside (0,pi/2)");
  double sn = std::sin(kd), cs = std::cos(kd);
  cdouble pref = sqrt_principal(k / (2.0 * pi * iu * sn));
  cdouble bracket = (x0 * x0 + x1 * x1) * cs - 2.0 * x0 * x1;
  cdouble nsq = 0;
  if (th) {
    nsq = full_window ? th->integral_sq(th->lo(), th->hi()) : th->integral_sq(s0, s1);
    cdouble A = th->integral_weighted(s0, s1, [&](double u) { return std::cos(k * (u - s0)); });
    cdouble B = th->integral_weighted(s0, s1, [&](double u) { return std::cos(k * (s1 - u)); });
    // double time integral: inner cumulative G(u) = int_{s0}^{u} th cos k(.-s0)
    cdouble dbl = 0;
    {
      static const QuadNodes gl = gauss_legendre(6);
      int cells = std::max(64, static_cast<int>(dt / th->step()) + 1);
      double h = dt / cells;
      cdouble G = 0;
      for (int c = 0; c < cells; ++c) {
        double a = s0 + c * h, b = a + h;
        double mid = 0.5 * (a + b), hh = 0.5 * (b - a);
        for (int j = 0; j < 6; ++j) {
          double u = mid + hh * gl.x[j];
          cdouble Gu = G + th->integral_weighted(a, u, [&](double v) { return std::cos(k * (v - s0)); });
          dbl += gl.w[j] * hh * th->value(u) * std::cos(k * (s1 - u)) * Gu;
        }
        G += th->integral_weighted(a, b, [&](double v) { return std::cos(k * (v - s0)); });
      }
    }
    bracket += 2.0 * x1 * A - 2.0 * x0 * B + 2.0 * dbl;
  }
  return pref * std::exp(-0.5 * iu * nsq + iu * k / (2.0 * sn) * bracket);
}
}  // namespace detail

// Full forced-oscillator T-transform (Mehler kernel at theta = 0).
inline cdouble t_harmonic(const PropagatorQuery& q, const GridFunction* theta = nullptr) {
  q.validate();
  if (q.d != 1) throw std::invalid_argument("t_harmonic: d = 1 only");
  if (!q.k) throw std::invalid_argument("t_harmonic: query has no k");
  return detail::harmonic_core(q.x[0], q.t, q.x0[0], q.t0, *q.k, theta, true);
}

// K_h^(xidot): propagator of 1/2 k^2 x^2 + x xidot(t) on one segment;
// depends on xi only through its restriction to the segment.
inline cdouble kh_sourced(double x1, double t1, double x0, double t0, double k,
                          const GridFunction& xi) {
  cdouble core = detail::harmonic_core(x1, t1, x0, t0, k, &xi, false);
  return core * std::exp(iu * (x0 * xi.value(t0) - x1 * xi.value(t1)));
}

// T(I_h prod delta)(theta) = e^{(i n/2)|theta|^2} prod T I_h(segment)(theta).
inline cdouble t_harmonic_pinned(const PropagatorQuery& q, const std::vector<Pin>& pins,
                                 const GridFunction* theta = nullptr) {
  q.validate();
  if (q.d != 1) throw std::invalid_argument("t_harmonic_pinned: d = 1 only");
  if (!q.k) throw std::invalid_argument("t_harmonic_pinned: query has no k");
  double prev = q.t0;
  for (auto& p : pins) {
    if (!(p.t > prev && p.t < q.t)) throw std::domain_error("t_harmonic_pinned: pins not ordered");
    prev = p.t;
  }
  cdouble phase = 1.0;
  if (theta && !pins.empty())
    phase = std::exp(0.5 * iu * double(pins.size()) * theta->integral_sq(theta->lo(), theta->hi()));
  cdouble prod = 1.0;
  double xa = q.x0[0], ta = q.t0;
  for (auto& p : pins) {
    prod *= detail::harmonic_core(p.x[0], p.t, xa, ta, *q.k, theta, true);
    xa = p.x[0];
    ta = p.t;
  }
  prod *= detail::harmonic_core(q.x[0], q.t, xa, ta, *q.k, theta, true);
  return phase * prod;
}

// Quantum mechanics on a circle with smeared final state
// F(phi) = sum_l a_l e^{il phi}:
// T I(theta) = e^{-(i/2) int th^2} sum_l a_l exp(-(i/2) l^2 t + i l(phi0 - int_0^t th)).
inline cdouble circle_propagator(const std::vector<std::pair<int, cdouble>>& a_coeffs, double phi0,
                                 double t, const GridFunction* theta = nullptr) {
  if (a_coeffs.empty()) throw std::invalid_argument("circle_propagator: empty coefficient list");
  cdouble pre = 1.0;
  cdouble th_int = 0.0;
  if (theta) {
    pre = std::exp(-0.5 * iu * theta->integral_sq(theta->lo(), theta->hi()));
    th_int = theta->integral(0.0, t);
  }
  cdouble s = 0;
  for (auto& [l, al] : a_coeffs)
    s += al * std::exp(-0.5 * iu * double(l) * double(l) * t +
                       iu * double(l) * (phi0 - th_int));
  return pre * s;
}

// S-transform of the scaled Donsker delta sigma_z delta(<.,eta> - a);
// eta real, thp = <theta, eta>.
inline cdouble s_scaled_donsker(double eta_norm_sq, cdouble a, cdouble z, cdouble thp) {
  cdouble arg = thp - a / z;
  return std::exp(-arg * arg / (2.0 * eta_norm_sq)) /
         (sqrt_principal(cdouble(2.0 * pi * eta_norm_sq)) * z);
}

// S-transform of the periodized sum  sum_n sigma_z delta(<.,eta> - a + n),
// valid for Re z^{-2} > 0:
//   S sigma_z delta (theta) * theta-function(rho, tau),
// rho = i(thp - a/z)/(2 pi z |eta|^2), tau = i/(2 pi z^2 |eta|^2).
inline cdouble donsker_series_s(const std::vector<double>& eta, cdouble a, cdouble z,
                                cdouble theta_pair) {
  double q = 0;
  for (double e : eta) q += e * e;
  cdouble zinv2 = 1.0 / (z * z);
  if (!(zinv2.real() > 0.0)) throw std::domain_error("donsker_series_s: z outside S_0");
  cdouble rho = iu * (theta_pair - a / z) / (2.0 * pi * z * q);
  cdouble tau = iu / (2.0 * pi * z * z * q);
  return s_scaled_donsker(q, a, z, theta_pair) * theta(rho, tau);
}

// Expected local time (d = 1): S/T-transform value of
// L(tau,a) = (1/tau) int_0^tau delta(B(t)-a) dt, endpoint substitution t = u^2.
// theta may be null (propagator value); requires Re a^2 >= 0.
inline cdouble local_time_expectation(cdouble a, double tau, const GridFunction* theta = nullptr) {
  if (!(tau > 0)) throw std::invalid_argument("local_time_expectation: tau <= 0");
  double re_a2 = (a * a).real();
  if (re_a2 < -1e-14 * std::max(1.0, std::norm(a)))
    throw std::domain_error("local_time_expectation: Re a^2 < 0");
  auto cumtheta = [&](double t) -> cdouble { return theta ? theta->integral(0.0, t) : cdouble{}; };
  const double b = std::sqrt(tau);
  const double pref = 2.0 / (tau * std::sqrt(2.0 * pi));
  if (std::abs(a) == 0.0 || re_a2 > 1e-12 * std::norm(a)) {
    // damped (or trivially smooth) endpoint: plain adaptive in u
    auto f = [&](double u) -> cdouble {
      cdouble c = cumtheta(u * u) - a;
      cdouble w = -c * c / (2.0 * u * u);
      if (w.real() < -745.0) return 0.0;  // fully damped; avoids exp(-inf + i inf)
      return std::exp(w);
    };
    if (std::abs(a) == 0.0 && !theta) return pref * b;  // integrand is 1 exactly
    return pref * adaptive_gk<cdouble>(f, 1e-12 * b, b, 0.0, 1e-12);
  }
  // Re a^2 ~ 0, a != 0: oscillatory endpoint exp(-a^2/2u^2); factor the chirp.
  double beta = -(a * a).imag();  // e^{-a^2/2u^2} = e^{i beta/2u^2}
  auto amp = [&](double u) -> cdouble {
    cdouble c = cumtheta(u * u);
    return std::exp((2.0 * a * c - c * c) / (2.0 * u * u));
  };
  if (beta >= 0.0) return pref * chirp_endpoint_integral(amp, beta, b, 1e-11);
  cdouble v = chirp_endpoint_integral([&](double u) { return std::conj(amp(u)); }, -beta, b, 1e-11);
  return pref * std::conj(v);
}

}  // namespace wnprop
