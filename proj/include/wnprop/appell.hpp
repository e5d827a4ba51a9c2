#pragma once
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "wnprop/util/complexops.hpp"
#include "wnprop/util/poly.hpp"
#include "wnprop/util/quadrature.hpp"

namespace wnprop {

// Smooth positive density rho(x) = sum_i w_i exp(p_i(x)) / Z with polynomial
// exponents; derivatives come from the exact recursion q_{n+1} = q_n' + q_n p'
// (rho_i^{(n)} = q_{n,i} e^{p_i}), so Q_n = (-1)^n rho^{(n)}/rho is closed form.
class Density1D {
 public:
  struct Component {
    double w;
    Poly<double> p;
  };

  Density1D(std::vector<Component> comps, double L, double eps_mu = 1e30)
      : comps_(std::move(comps)), L_(L), eps_mu_(eps_mu) {
    long double z = adaptive_gk<long double>(
        [&](double x) { return unnormalized(x); }, -L_, L_, 0.0, 1e-14);
    Z_ = static_cast<double>(z);
    if (!(Z_ > 0)) throw std::invalid_argument("Density1D: not normalizable");
  }

  static Density1D gaussian() {
    return Density1D({{1.0, Poly<double>({0.0, 0.0, -0.5})}}, 12.0);
  }
  static Density1D quartic() {  // rho ~ e^{-x^4}
    return Density1D({{1.0, Poly<double>({0.0, 0.0, 0.0, 0.0, -1.0})}}, 3.2);
  }
  static Density1D gaussian_mixture(double w1, double m1, double s1, double w2, double m2,
                                    double s2) {
    auto comp = [](double m, double s) {
      // -(x-m)^2 / (2 s^2)
      return Poly<double>({-m * m / (2 * s * s), m / (s * s), -1.0 / (2 * s * s)});
    };
    double L = std::max(std::abs(m1) + 12 * s1, std::abs(m2) + 12 * s2);
    return Density1D({{w1, comp(m1, s1)}, {w2, comp(m2, s2)}}, L);
  }

  double domain() const { return L_; }
  double eps_mu() const { return eps_mu_; }

  long double unnormalized(long double x) const {
    long double s = 0;
    for (auto& c : comps_) s += c.w * std::exp(static_cast<long double>(c.p(x)));
    return s;
  }
  double rho(double x) const { return static_cast<double>(unnormalized(x)) / Z_; }

  // rho^{(n)}(x) (normalized).
  long double rho_deriv(int n, long double x) const {
    ensure_derivs(n);
    long double s = 0;
    for (std::size_t i = 0; i < comps_.size(); ++i)
      s += comps_[i].w * static_cast<long double>(dq_[i][n](x)) *
           std::exp(static_cast<long double>(comps_[i].p(x)));
    return s / Z_;
  }

  template <class F, class T = long double>
  T integrate(F&& f, double tol = 1e-13) const {
    return adaptive_gk<T>([&](double x) { return f(x) * static_cast<T>(rho(x)); }, -L_, L_, 0.0,
                          tol);
  }

  // Moments by the Stieltjes relation sum_r a_r M_{m+r} + m M_{m-1} = 0
  // (p' = sum a_r x^r, boundary-free for decaying exp(p)); only deg p' seed
  // moments per component come from quadrature, the rest are exact up to
  // rounding.  Direct high-order quadrature would lose ~1e-6 to cancellation.
  std::vector<long double> moments(int upto) const {
    std::vector<long double> total(upto + 1, 0.0L);
    long double z = 0;
    for (auto& comp : comps_) {
      auto dp = comp.p.derivative();
      int d = std::max(dp.degree(), 0);
      if (dp.c.empty() || dp.c.back() == 0.0)
        throw std::runtime_error("Density1D::moments: degenerate exponent");
      std::vector<long double> M(std::max(upto + 1, d + 1), 0.0L);
      for (int m = 0; m < d; ++m)
        M[m] = adaptive_gk<long double>(
            [&](double x) {
              long double v = std::exp(static_cast<long double>(comp.p(x)));
              for (int j = 0; j < m; ++j) v *= x;
              return v;
            },
            -L_, L_, 0.0, 1e-15);
      for (int m = 0; m + d < static_cast<int>(M.size()); ++m) {
        long double s = m > 0 ? m * M[m - 1] : 0.0L;
        for (int r = 0; r < d; ++r) s += static_cast<long double>(dp.c[r]) * M[m + r];
        M[m + d] = -s / static_cast<long double>(dp.c[d]);
      }
      for (int m = 0; m <= upto; ++m) total[m] += comp.w * M[m];
      z += comp.w * M[0];
    }
    for (auto& v : total) v /= z;
    return total;
  }

 private:
  void ensure_derivs(int n) const {
    if (dq_.empty()) {
      dq_.resize(comps_.size());
      for (std::size_t i = 0; i < comps_.size(); ++i) dq_[i] = {Poly<double>::constant(1.0)};
    }
    for (std::size_t i = 0; i < comps_.size(); ++i) {
      auto dp = comps_[i].p.derivative();
      while (static_cast<int>(dq_[i].size()) <= n)
        dq_[i].push_back(dq_[i].back().derivative() + dq_[i].back() * dp);
    }
  }

  std::vector<Component> comps_;
  double L_, eps_mu_, Z_ = 0;
  mutable std::vector<std::vector<Poly<double>>> dq_;
};

// l_mu(theta) = int e^{theta x} d mu(x), adaptive quadrature.
inline cdouble laplace_transform(const Density1D& mu, cdouble theta) {
  if (std::abs(theta.real()) >= mu.eps_mu())
    throw std::domain_error("laplace_transform: theta outside analyticity strip");
  auto val = adaptive_gk<std::complex<long double>>(
      [&](double x) {
        return std::exp(std::complex<long double>(theta.real() * x, theta.imag() * x)) *
               static_cast<long double>(mu.rho(x));
      },
      -mu.domain(), mu.domain(), 0.0, 1e-13);
  return {static_cast<double>(val.real()), static_cast<double>(val.imag())};
}

// Appell P-system data: moments M_n, reciprocal-series values P_n(0), and the
// monic polynomials P_n(x) = sum_k C(n,k) P_{n-k}(0) x^k.
struct AppellSystem1D {
  int N = 0;
  std::vector<double> moments;  // M_0..M_{2N}
  std::vector<double> p0;       // P_n(0), EGF coefficients of 1/l_mu
  std::vector<Poly<double>> P;  // P_0..P_N
};

inline double factorialb(int n) {
  static const auto table = [] {
    std::vector<double> t(171);
    t[0] = 1.0;
    for (int k = 1; k <= 170; ++k) t[k] = t[k - 1] * k;
    return t;
  }();
  return table[n];
}

inline double binom(int n, int k) {
  return factorialb(n) / (factorialb(k) * factorialb(n - k));
}

inline std::vector<double> density_moments(const Density1D& mu, int upto) {
  auto m = mu.moments(upto);
  return std::vector<double>(m.begin(), m.end());
}

inline AppellSystem1D appell_p(const Density1D& mu, int N) {
  AppellSystem1D sys;
  sys.N = N;
  sys.moments = density_moments(mu, 2 * N);
  if (std::abs(sys.moments[0] - 1.0) > 1e-10)
    throw std::runtime_error("appell_p: density not normalized");
  // EGF reciprocal: b_0 = 1, b_r = -sum_{k>=1} C(r,k) M_k b_{r-k}.
  sys.p0.assign(N + 1, 0.0);
  sys.p0[0] = 1.0;
  for (int r = 1; r <= N; ++r) {
    double s = 0;
    for (int k = 1; k <= r; ++k) s += binom(r, k) * sys.moments[k] * sys.p0[r - k];
    sys.p0[r] = -s;
  }
  sys.P.resize(N + 1);
  for (int n = 0; n <= N; ++n) {
    std::vector<double> c(n + 1);
    for (int k = 0; k <= n; ++k) c[k] = binom(n, k) * sys.p0[n - k];
    sys.P[n] = Poly<double>(std::move(c));
  }
  return sys;
}

// Q_n^mu(x) = (-1)^n rho^{(n)}(x)/rho(x).
inline double appell_q(const Density1D& mu, int n, double x) {
  long double r = mu.rho(x);
  if (!(r > 1e-300)) throw std::domain_error("appell_q: rho(x) underflow");
  long double d = mu.rho_deriv(n, x);
  return static_cast<double>(((n % 2) ? -d : d) / r);
}

// <<Q_n, P_m>>_mu = int Q_n P_m rho dx = (-1)^n int rho^{(n)} P_m dx; expected
// delta_{nm} n! (scalar kernels).
inline double biorthogonality(const Density1D& mu, int n, int m,
                              const AppellSystem1D* sys_opt = nullptr) {
  AppellSystem1D local;
  if (!sys_opt) {
    local = appell_p(mu, std::max(n, m));
    sys_opt = &local;
  }
  const auto& Pm = sys_opt->P[m];
  long double v = adaptive_gk<long double>(
      [&](double x) { return mu.rho_deriv(n, x) * static_cast<long double>(Pm(x)); },
      -mu.domain(), mu.domain(), 3e-10, 1e-14, 52);
  return static_cast<double>((n % 2) ? -v : v);
}

// Monomial -> P-basis coefficients via x^j = sum_n C(j,n) P_n(x) M_{j-n}.
inline std::vector<double> to_p_basis(const AppellSystem1D& sys, const Poly<double>& phi) {
  int deg = phi.degree();
  if (deg > sys.N) throw std::invalid_argument("to_p_basis: degree exceeds system cap");
  std::vector<double> out(sys.N + 1, 0.0);
  for (int j = 0; j <= deg; ++j)
    for (int n = 0; n <= j; ++n) out[n] += phi.c[j] * binom(j, n) * sys.moments[j - n];
  return out;
}

struct RadonNikodymResult {
  cdouble series;      // Q-series pairing sum_n (-z)^n phi_n
  cdouble quadrature;  // int phi(x - z) d mu(x)
};

// <<rho_mu(z,.), phi>> both as the generating Q-series and by shifted
// quadrature; rho_mu(-z,.) = sum (1/n!) Q_n(z^{(x)n}).
inline RadonNikodymResult radon_nikodym_general(const Density1D& mu, cdouble z,
                                                const Poly<double>& phi) {
  auto sys = appell_p(mu, std::max(phi.degree(), 0));
  auto coeffs = to_p_basis(sys, phi);
  RadonNikodymResult r{};
  cdouble zn = 1.0;
  double tail = 0;
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    cdouble term = zn * coeffs[n];
    r.series += term;
    tail = std::abs(term);
    zn *= -z;
  }
  (void)tail;  // finite polynomial: the series terminates exactly
  auto q = adaptive_gk<std::complex<long double>>(
      [&](double x) {
        auto v = phi(cdouble(x, 0) - z);
        return std::complex<long double>(v.real(), v.imag()) *
               static_cast<long double>(mu.rho(x));
      },
      -mu.domain(), mu.domain(), 0.0, 1e-13);
  r.quadrature = {static_cast<double>(q.real()), static_cast<double>(q.imag())};
  return r;
}

// (S_mu phi(theta), C_mu phi(theta)) for phi given in the P-basis.
// S_mu phi = L_mu phi / l_mu; C_mu phi(theta) = sum_n phi^{(n)} theta^n.
inline std::pair<cdouble, cdouble> s_mu_and_c_mu(const Density1D& mu,
                                                 const std::vector<double>& phi_p, cdouble theta) {
  if (std::abs(theta.real()) >= mu.eps_mu())
    throw std::domain_error("s_mu_and_c_mu: theta outside analyticity strip");
  int N = static_cast<int>(phi_p.size()) - 1;
  auto sys = appell_p(mu, N);
  Poly<double> phi;
  for (int n = 0; n <= N; ++n) phi = phi + phi_p[n] * sys.P[n];
  auto lphi = adaptive_gk<std::complex<long double>>(
      [&](double x) {
        std::complex<long double> e =
            std::exp(std::complex<long double>(theta.real() * x, theta.imag() * x));
        return e * static_cast<long double>(phi(x)) * static_cast<long double>(mu.rho(x));
      },
      -mu.domain(), mu.domain(), 0.0, 1e-13);
  cdouble l = laplace_transform(mu, theta);
  cdouble S = cdouble(static_cast<double>(lphi.real()), static_cast<double>(lphi.imag())) / l;
  cdouble C = 0;
  cdouble tn = 1.0;
  for (int n = 0; n <= N; ++n) {
    C += phi_p[n] * tn;
    tn *= theta;
  }
  return {S, C};
}

// Re-decompose a Q-series from measure mu_hat into measure mu:
// Phi^{(n)} = sum_{k+l+m=n} (1/(l! m!)) Phi_hat^{(k)} P_l^mu(0) M_m^{mu_hat}.
inline std::vector<cdouble> change_of_measure(const std::vector<cdouble>& phi_hat,
                                              const Density1D& mu, const Density1D& mu_hat) {
  int N = static_cast<int>(phi_hat.size()) - 1;
  auto sys_mu = appell_p(mu, N);
  auto M_hat = density_moments(mu_hat, N);
  std::vector<cdouble> out(N + 1);
  for (int n = 0; n <= N; ++n) {
    cdouble s = 0;
    for (int k = 0; k <= n; ++k)
      for (int l = 0; l + k <= n; ++l) {
        int m = n - k - l;
        s += phi_hat[k] * sys_mu.p0[l] * M_hat[m] / (factorialb(l) * factorialb(m));
      }
    out[n] = s;
  }
  return out;
}

// Charlier polynomials for the Poisson analogue, normalized by the
// generating function e^{-lambda t}(1+t)^x; orthogonality
// sum_x c_n c_m poisson_lambda(x) = delta_{nm} n! lambda^n.
inline double charlier(int n, double x, double lambda) {
  double cm1 = 0.0, c = 1.0;
  for (int k = 0; k < n; ++k) {
    double cp = (x - k - lambda) * c - k * lambda * cm1;
    cm1 = c;
    c = cp;
  }
  return c;
}

inline double poisson_pmf(int x, double lambda) {
  return std::exp(-lambda + x * std::log(lambda) - std::lgamma(x + 1.0));
}

}  // namespace wnprop
