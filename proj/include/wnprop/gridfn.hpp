#pragma once
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "wnprop/util/complexops.hpp"
#include "wnprop/util/quadrature.hpp"

namespace wnprop {

// Test function xi sampled on a uniform time grid together with derivative
// values.  Interpolation is cubic Hermite per cell, integrals use the
// derivative-corrected trapezoid  h/2 (f0+f1) + h^2/12 (d0-d1)  (O(h^4) global).
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(double a, double b, std::vector<cdouble> values, std::vector<cdouble> derivs)
      : a_(a), b_(b), v_(std::move(values)), dv_(std::move(derivs)) {
    if (v_.size() < 16) throw std::invalid_argument("GridFunction: fewer than 16 points");
    if (dv_.size() != v_.size()) throw std::invalid_argument("GridFunction: derivative size");
    h_ = (b_ - a_) / (v_.size() - 1);
    build_cumulative();
  }

  template <class F, class DF>
  static GridFunction sample(F&& f, DF&& df, double a, double b, int n) {
    std::vector<cdouble> v(n), d(n);
    double h = (b - a) / (n - 1);
    for (int i = 0; i < n; ++i) {
      v[i] = f(a + i * h);
      d[i] = df(a + i * h);
    }
    return GridFunction(a, b, std::move(v), std::move(d));
  }
  template <class F>
  static GridFunction sample_fd(F&& f, double a, double b, int n) {
    std::vector<cdouble> v(n), d(n);
    double h = (b - a) / (n - 1);
    for (int i = 0; i < n; ++i) v[i] = f(a + i * h);
    for (int i = 0; i < n; ++i) {
      if (i == 0)
        d[i] = (-1.5 * v[0] + 2.0 * v[1] - 0.5 * v[2]) / h;
      else if (i == n - 1)
        d[i] = (1.5 * v[n - 1] - 2.0 * v[n - 2] + 0.5 * v[n - 3]) / h;
      else
        d[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
    }
    return GridFunction(a, b, std::move(v), std::move(d));
  }

  static GridFunction zero(double a, double b) {
    return GridFunction(a, b, std::vector<cdouble>(16, 0.0), std::vector<cdouble>(16, 0.0));
  }

  double lo() const { return a_; }
  double hi() const { return b_; }
  double step() const { return h_; }
  int points() const { return static_cast<int>(v_.size()); }

  cdouble value(double t) const {
    auto [i, s] = locate(t);
    return hermite_cell(v_[i], v_[i + 1], h_ * dv_[i], h_ * dv_[i + 1], s);
  }
  cdouble deriv(double t) const {
    auto [i, s] = locate(t);
    return (6 * s * s - 6 * s) * (v_[i] - v_[i + 1]) / h_ + (3 * s * s - 4 * s + 1) * dv_[i] +
           (3 * s * s - 2 * s) * dv_[i + 1];
  }

  // int_{t1}^{t2} f dt
  cdouble integral(double t1, double t2) const {
    return cum_at(t2, cum_, v_, dv_) - cum_at(t1, cum_, v_, dv_);
  }
  // int_{t1}^{t2} f^2 dt
  cdouble integral_sq(double t1, double t2) const {
    return cum_at(t2, cumsq_, v2_, dv2_) - cum_at(t1, cumsq_, v2_, dv2_);
  }
  // int_{t1}^{t2} f(t) w(t) dt for a smooth weight, 4-point Gauss per cell.
  template <class W>
  cdouble integral_weighted(double t1, double t2, W&& w) const {
    static const QuadNodes gl = gauss_legendre(4);
    if (t2 < t1) return -integral_weighted(t2, t1, w);
    cdouble acc = 0;
    double lo = t1;
    while (lo < t2 - 1e-14 * (b_ - a_ + 1.0)) {
      int cell = cell_index(lo + 1e-12 * h_);
      double hi = std::min(a_ + (cell + 1) * h_, t2);
      if (hi <= lo + 1e-16) break;
      double c = 0.5 * (lo + hi), hh = 0.5 * (hi - lo);
      cdouble part = 0;
      for (int j = 0; j < 4; ++j) {
        double t = c + hh * gl.x[j];
        part += gl.w[j] * value(t) * w(t);
      }
      acc += part * hh;
      lo = hi;
    }
    return acc;
  }

 private:
  static cdouble hermite_cell(cdouble f0, cdouble f1, cdouble hd0, cdouble hd1, double s) {
    double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * f0 + (s3 - 2 * s2 + s) * hd0 + (-2 * s3 + 3 * s2) * f1 +
           (s3 - s2) * hd1;
  }

  std::pair<int, double> locate(double t) const {
    if (t < a_ - 1e-9 * h_ || t > b_ + 1e-9 * h_)
      throw std::out_of_range("GridFunction: t outside grid");
    int i = cell_index(t);
    double s = (t - (a_ + i * h_)) / h_;
    if (s < 0) s = 0;
    if (s > 1) s = 1;
    return {i, s};
  }
  int cell_index(double t) const {
    int i = static_cast<int>((t - a_) / h_);
    if (i < 0) i = 0;
    if (i >= points() - 1) i = points() - 2;
    return i;
  }

  void build_cumulative() {
    int n = points();
    v2_.resize(n);
    dv2_.resize(n);
    for (int i = 0; i < n; ++i) {
      v2_[i] = v_[i] * v_[i];
      dv2_[i] = 2.0 * v_[i] * dv_[i];
    }
    cum_ = cumulative(v_, dv_);
    cumsq_ = cumulative(v2_, dv2_);
  }
  std::vector<cdouble> cumulative(const std::vector<cdouble>& f,
                                  const std::vector<cdouble>& d) const {
    std::vector<cdouble> c(f.size());
    c[0] = 0;
    for (std::size_t i = 0; i + 1 < f.size(); ++i)
      c[i + 1] = c[i] + 0.5 * h_ * (f[i] + f[i + 1]) + h_ * h_ / 12.0 * (d[i] - d[i + 1]);
    return c;
  }
  // cumulative at an arbitrary point: node value + partial Hermite-cell integral
  cdouble cum_at(double t, const std::vector<cdouble>& c, const std::vector<cdouble>& f,
                 const std::vector<cdouble>& d) const {
    auto [i, s] = locate(t);
    if (s == 0.0) return c[i];
    double s2 = s * s, s3 = s2 * s, s4 = s3 * s;
    cdouble part = (0.5 * s4 - s3 + s) * f[i] +
                   (0.25 * s4 - (2.0 / 3.0) * s3 + 0.5 * s2) * (h_ * d[i]) +
                   (-0.5 * s4 + s3) * f[i + 1] + (0.25 * s4 - s3 / 3.0) * (h_ * d[i + 1]);
    return c[i] + h_ * part;
  }

  double a_ = 0, b_ = 1, h_ = 1;
  std::vector<cdouble> v_, dv_, v2_, dv2_;
  std::vector<cdouble> cum_, cumsq_;
};

}  // namespace wnprop
