#pragma once
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace wnprop {

struct QuadNodes {
  std::vector<double> x, w;
};

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on P_n.
inline QuadNodes gauss_legendre(int n) {
  QuadNodes q;
  q.x.resize(n);
  q.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p0 = 0, p1 = 0;
    for (int it = 0; it < 100; ++it) {
      p0 = 1.0;
      p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      double dp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = -p0 / dp;
      x += dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double dp = n * (x * p0 - p1) / (x * x - 1.0);
    q.x[i] = -x;
    q.x[n - 1 - i] = x;
    q.w[i] = q.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return q;
}

// Gauss-Hermite nodes/weights for weight e^{-x^2} on (-inf,inf).
inline QuadNodes gauss_hermite(int n) {
  QuadNodes q;
  q.x.resize(n);
  q.w.resize(n);
  const double pim4 = 0.7511255444649425;  // pi^{-1/4}
  double x = 0;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    if (i == 0)
      x = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    else if (i == 1)
      x -= 1.14 * std::pow(n, 0.426) / x;
    else if (i == 2)
      x = 1.86 * x - 0.86 * q.x[n - 1];
    else if (i == 3)
      x = 1.91 * x - 0.91 * q.x[n - 2];
    else
      x = 2.0 * x - q.x[n - i + 1];
    double p0 = 0, p1 = 0;
    for (int it = 0; it < 200; ++it) {
      p0 = pim4;
      p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = x * std::sqrt(2.0 / (j + 1.0)) * p1 - std::sqrt(double(j) / (j + 1.0)) * p2;
      }
      double dp = std::sqrt(2.0 * n) * p1;
      double dx = -p0 / dp;
      x += dx;
      if (std::abs(dx) < 1e-14) break;
    }
    q.x[n - 1 - i] = x;
    q.x[i] = -x;
    double dp = std::sqrt(2.0 * n) * p1;
    q.w[n - 1 - i] = q.w[i] = 2.0 / (dp * dp);
  }
  return q;
}

namespace detail {
// 15-point Kronrod with embedded 7-point Gauss, abscissae on [0,1] side.
inline constexpr std::array<double, 8> gk_xk = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr std::array<double, 8> gk_wk = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr std::array<double, 4> gk_wg = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};
}  // namespace detail

// Globally adaptive Gauss-Kronrod 15(7); F maps double -> T (double or complex).
template <class T, class F>
T adaptive_gk(F&& f, double a, double b, double abs_tol, double rel_tol = 1e-12,
              int max_depth = 52) {
  struct Seg {
    double a, b;
    T val;
    double err;
    int depth;
  };
  using Scalar = decltype(std::real(T{}));
  auto eval = [&](double lo, double hi) {
    double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    T ik{}, ig{};
    for (int j = 0; j < 7; ++j) {
      T fp = f(c + h * detail::gk_xk[j]);
      T fm = f(c - h * detail::gk_xk[j]);
      ik += (fp + fm) * static_cast<Scalar>(detail::gk_wk[j]);
      if (j % 2 == 1) ig += (fp + fm) * static_cast<Scalar>(detail::gk_wg[j / 2]);
    }
    T f0 = f(c);
    ik += f0 * static_cast<Scalar>(detail::gk_wk[7]);
    ig += f0 * static_cast<Scalar>(detail::gk_wg[3]);
    ik *= static_cast<Scalar>(h);
    ig *= static_cast<Scalar>(h);
    return Seg{lo, hi, ik, static_cast<double>(std::abs(ik - ig)), 0};
  };
  std::vector<Seg> segs{eval(a, b)};
  T total = segs[0].val;
  double err = segs[0].err;
  for (int iter = 0; iter < 20000; ++iter) {
    if (err < abs_tol + rel_tol * std::abs(total)) break;
    std::size_t worst = 0;
    for (std::size_t i = 1; i < segs.size(); ++i)
      if (segs[i].err > segs[worst].err) worst = i;
    Seg s = segs[worst];
    if (s.depth >= max_depth) break;
    double mid = 0.5 * (s.a + s.b);
    Seg l = eval(s.a, mid), r = eval(mid, s.b);
    l.depth = r.depth = s.depth + 1;
    total += l.val + r.val - s.val;
    err += l.err + r.err - s.err;
    segs[worst] = l;
    segs.push_back(r);
    if (err < 0) {  // recompute accumulated error estimate
      err = 0;
      for (auto& sg : segs) err += sg.err;
    }
  }
  return total;
}

// Fixed-order Gauss-Legendre on [a,b].
template <class T, class F>
T gl_integrate(F&& f, double a, double b, const QuadNodes& q) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  T acc{};
  for (std::size_t j = 0; j < q.x.size(); ++j) acc += q.w[j] * f(c + h * q.x[j]);
  return h * acc;
}

}  // namespace wnprop
