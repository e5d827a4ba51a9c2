#include <catch2/catch_amalgamated.hpp>

#include <cstdint>

#include "wnprop/specfun.hpp"
#include "wnprop/util/quadrature.hpp"

using namespace wnprop;
using Catch::Approx;

static double factorial_ref(int n) {
  double f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

TEST_CASE("hermite basics") {
  CHECK(hermite(0, {3.7, -1.2}) == cdouble(1.0, 0.0));
  CHECK(hermite(2, {0.0, 0.0}).real() == Approx(-2.0));
  // H4(x) = 16x^4 - 48x^2 + 12 at sqrt(2): 64 - 96 + 12 = -20
  CHECK(hermite(4, {std::sqrt(2.0), 0.0}).real() == Approx(-20.0).margin(1e-12));
  CHECK_THROWS_AS(hermite(-1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(hermite(301, 0.0), std::invalid_argument);
}

TEST_CASE("hermite three-term recurrence, exact integer arithmetic") {
  // spot check at integer arguments against an exact int64 recurrence
  for (std::int64_t zi : {-2, 0, 1, 3}) {
    std::int64_t hm1 = 0, h = 1;
    for (int n = 0; n <= 12; ++n) {
      CHECK(hermite(n, cdouble(double(zi), 0.0)).real() == Approx(double(h)).margin(1e-9));
      std::int64_t hp = 2 * zi * h - 2 * std::int64_t(n) * hm1;
      hm1 = h;
      h = hp;
    }
  }
}

TEST_CASE("hermite growth bound (Szego asymptotics, safety factor 2)") {
  for (cdouble lam : {cdouble(0.4, 0.3), cdouble(-1.1, 0.8), cdouble(0.0, 1.5)}) {
    for (int n = 50; n <= 200; n += 25) {
      double lhs = std::log(std::abs(hermite(n, lam)));
      double rhs = 0.5 * (log_gamma(n + 1.0) + n * std::log(2.0)) +
                   std::sqrt(2.0 * n) * std::abs(lam.imag()) + std::log(2.0);
      CHECK(lhs <= rhs);
    }
  }
}

static long double hermite_ld(int n, long double z) {
  long double hm1 = 0, h = 1;
  for (int k = 0; k < n; ++k) {
    long double hp = 2 * z * h - 2 * k * hm1;
    hm1 = h;
    h = hp;
  }
  return h;
}

TEST_CASE("hermite orthogonality by quadrature") {
  // int 2^{-n} H_n(x/sqrt2) H_m(x/sqrt2) e^{-x^2/2}/sqrt(2 pi) dx = delta n!
  // (long double: the n! ~ 5e8 scale leaves ~1e-11 cancellation noise)
  const long double rt2 = std::sqrt(2.0L);
  const long double dens = 1.0L / std::sqrt(2.0L * (long double)pi);
  for (int n = 0; n <= 12; ++n)
    for (int m = n; m <= 12; ++m) {
      long double s = adaptive_gk<long double>(
          [&](double x) {
            long double u = (long double)x / rt2;
            return std::pow(2.0L, -0.5L * (n + m)) * hermite_ld(n, u) * hermite_ld(m, u) *
                   std::exp(-0.5L * x * (long double)x) * dens;
          },
          -14.0, 14.0, 1e-11, 1e-13);
      double expect = (n == m) ? factorial_ref(n) : 0.0;
      CHECK(std::abs(double(s) - expect) < 1e-10 * std::max(1.0, expect));
    }
}

TEST_CASE("theta function") {
  cdouble tau(0.0, 1.0);
  // direct summation oracle in long double
  long double re = 0, im = 0;
  for (int n = -8; n <= 8; ++n) {
    long double q = std::exp(-(long double)(pi)*n * n);
    re += q;
  }
  cdouble v = theta(0.0, tau);
  CHECK(std::abs(v.real() - double(re)) < 1e-15);
  CHECK(std::abs(v.imag() - double(im)) < 1e-15);
  CHECK(v.real() == Approx(1.0864348112).epsilon(1e-9));

  // integer shift periodicity and rho -> -rho symmetry
  for (auto [rho, t] : {std::pair<cdouble, cdouble>{{0.3, 0.1}, {0.2, 0.7}},
                        {{-1.2, 0.4}, {0.0, 0.33}},
                        {{0.05, -0.6}, {-0.3, 1.4}}}) {
    CHECK(std::abs(theta(rho + 1.0, t) - theta(rho, t)) < 1e-12 * std::abs(theta(rho, t)));
    CHECK(std::abs(theta(-rho, t) - theta(rho, t)) < 1e-12 * std::abs(theta(rho, t)));
  }
  CHECK_THROWS_AS(theta(0.1, cdouble(0.3, -0.2)), std::domain_error);
}

TEST_CASE("theta truncation is converged") {
  // doubling the cutoff changes the value by < 1e-14: emulate by comparing
  // against a manual sum with double the built-in effective range
  cdouble rho(0.21, 0.13), tau(0.37, 0.29);
  cdouble manual = 1.0;
  for (int n = 1; n <= 400; ++n)
    manual += std::exp(iu * pi * double(n) * double(n) * tau) *
              (std::exp(2.0 * pi * iu * double(n) * rho) + std::exp(-2.0 * pi * iu * double(n) * rho));
  CHECK(std::abs(theta(rho, tau) - manual) < 1e-14 * std::abs(manual));
}

TEST_CASE("gamma wrapper") {
  CHECK(gamma_fn(0.5) == Approx(std::sqrt(pi)).epsilon(1e-13));
  CHECK(gamma_fn(5.0) == Approx(24.0).epsilon(1e-13));
  CHECK_THROWS_AS(log_gamma(-1.0), std::domain_error);
}

TEST_CASE("simplex singular volume: closed form") {
  // n=0: no integration, single factor (2 pi |Delta|)^{-alpha}
  CHECK(simplex_singular_volume(0, 0.5, 1.0) ==
        Approx(std::pow(2.0 * pi, -0.5)).epsilon(1e-13));
  // n=1, alpha=0: plain simplex volume |Delta|^n / n!
  CHECK(simplex_singular_volume(1, 0.0, 2.0) == Approx(2.0).epsilon(1e-13));
  CHECK(simplex_singular_volume(3, 0.0, 1.5) == Approx(std::pow(1.5, 3) / 6.0).epsilon(1e-13));
  CHECK_THROWS_AS(simplex_singular_volume(2, 1.0, 1.0), std::domain_error);
  // no overflow up to n = 200
  CHECK(std::isfinite(simplex_singular_volume(200, 0.5, 1.0)));
}

TEST_CASE("simplex singular volume vs nested quadrature oracle (n=3, alpha=1/2)") {
  // I3 = int_{0<t1<t2<t3<1} prod_{gaps} (2 pi gap)^{-1/2}; integrate innermost
  // first with u^2 substitutions at both singular endpoints.
  auto inner = [&](double t2) {
    // int_0^{t2} (2 pi (t2-t1))^{-1/2} (2 pi t1)^{-1/2} dt1 = pi / (2 pi) = 1/2
    double m = 0.5 * t2;
    auto left = adaptive_gk<double>(
        [&](double u) {
          double t1 = u * u;
          return 2.0 * u / std::sqrt(2.0 * pi * (t2 - t1)) / std::sqrt(2.0 * pi * t1);
        },
        1e-300, std::sqrt(m), 1e-12);
    auto right = adaptive_gk<double>(
        [&](double u) {
          double t1 = t2 - u * u;
          return 2.0 * u / std::sqrt(2.0 * pi * (t2 - t1)) / std::sqrt(2.0 * pi * t1);
        },
        1e-300, std::sqrt(t2 - m), 1e-12);
    return left + right;
  };
  auto mid = [&](double t3) {
    auto left = adaptive_gk<double>(
        [&](double u) {
          double t2 = u * u;
          return 2.0 * u * inner(t2) / std::sqrt(2.0 * pi * (t3 - t2));
        },
        1e-300, std::sqrt(0.5 * t3), 1e-11);
    auto right = adaptive_gk<double>(
        [&](double u) {
          double t2 = t3 - u * u;
          return 2.0 * u * inner(t2) / std::sqrt(2.0 * pi * (t3 - t2));
        },
        1e-300, std::sqrt(0.5 * t3), 1e-11);
    return left + right;
  };
  auto outer = adaptive_gk<double>(
      [&](double u) {
        double t3 = 1.0 - u * u;
        return 2.0 * u * mid(t3) / std::sqrt(2.0 * pi * (1.0 - t3));
      },
      1e-300, 1.0, 1e-10);
  CHECK(outer == Approx(simplex_singular_volume(3, 0.5, 1.0)).margin(1e-8));
}
