#pragma once
#include <algorithm>
#include <cstddef>
#include <vector>

namespace wnprop {

// Dense univariate polynomial, coefficient c[k] on x^k.
template <class T>
struct Poly {
  std::vector<T> c;

  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : c(std::move(coeffs)) { trim(); }
  static Poly constant(T v) { return Poly{{v}}; }

  int degree() const { return static_cast<int>(c.size()) - 1; }

  void trim() {
    while (!c.empty() && c.back() == T{}) c.pop_back();
  }

  template <class X>
  auto operator()(X x) const {
    using R = decltype(T{} * x);
    R acc{};
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
    return acc;
  }

  Poly derivative() const {
    Poly d;
    if (c.size() <= 1) return d;
    d.c.resize(c.size() - 1);
    for (std::size_t k = 1; k < c.size(); ++k) d.c[k - 1] = c[k] * T(k);
    return d;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()));
    for (std::size_t k = 0; k < a.c.size(); ++k) r.c[k] += a.c[k];
    for (std::size_t k = 0; k < b.c.size(); ++k) r.c[k] += b.c[k];
    r.trim();
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    if (a.c.empty() || b.c.empty()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, T{});
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
  }
  friend Poly operator*(T s, const Poly& a) {
    Poly r = a;
    for (auto& v : r.c) v *= s;
    r.trim();
    return r;
  }
};

}  // namespace wnprop
