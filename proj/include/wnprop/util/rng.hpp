#pragma once
#include <cmath>
#include <cstdint>

namespace wnprop {

// Philox-4x32-10 counter-based generator.  Streams are indexed by a 64-bit
// path id; draws within a stream by a 64-bit counter.  No state is carried
// between calls, so path generation parallelizes with reproducible output.
struct Philox {
  std::uint32_t key0, key1;

  explicit Philox(std::uint64_t seed)
      : key0(static_cast<std::uint32_t>(seed)), key1(static_cast<std::uint32_t>(seed >> 32)) {}

  static void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
  }

  // One 128-bit block: counter = (stream, ctr).
  void block(std::uint64_t stream, std::uint64_t ctr, std::uint32_t out[4]) const {
    std::uint32_t c0 = static_cast<std::uint32_t>(ctr);
    std::uint32_t c1 = static_cast<std::uint32_t>(ctr >> 32);
    std::uint32_t c2 = static_cast<std::uint32_t>(stream);
    std::uint32_t c3 = static_cast<std::uint32_t>(stream >> 32);
    std::uint32_t k0 = key0, k1 = key1;
    for (int round = 0; round < 10; ++round) {
      std::uint32_t hi0, lo0, hi1, lo1;
      mulhilo(0xD2511F53u, c0, hi0, lo0);
      mulhilo(0xCD9E8D57u, c2, hi1, lo1);
      std::uint32_t n0 = hi1 ^ c1 ^ k0;
      std::uint32_t n1 = lo1;
      std::uint32_t n2 = hi0 ^ c3 ^ k1;
      std::uint32_t n3 = lo0;
      c0 = n0;
      c1 = n1;
      c2 = n2;
      c3 = n3;
      k0 += 0x9E3779B9u;
      k1 += 0xBB67AE85u;
    }
    out[0] = c0;
    out[1] = c1;
    out[2] = c2;
    out[3] = c3;
  }

  // Uniform in (0,1), two per block.
  double uniform(std::uint64_t stream, std::uint64_t idx) const {
    std::uint32_t r[4];
    block(stream, idx >> 1, r);
    std::uint64_t bits = (idx & 1) ? (static_cast<std::uint64_t>(r[2]) << 32 | r[3])
                                   : (static_cast<std::uint64_t>(r[0]) << 32 | r[1]);
    return ((bits >> 11) + 0.5) * (1.0 / 9007199254740992.0);
  }

  // Standard normal via the Acklam rational inverse-CDF (~1.1e-9 relative);
  // pure arithmetic keeps streams reproducible across libm implementations.
  double normal(std::uint64_t stream, std::uint64_t idx) const {
    return normal_quantile(uniform(stream, idx));
  }

  static double normal_quantile(double p) {
    static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                -2.759285104469687e+02, 1.383577518672690e+02,
                                -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                -1.556989798598866e+02, 6.680131188771972e+01,
                                -1.328068155288572e+01};
    static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                -2.400758277161838e+00, -2.549732539343734e+00,
                                4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double q, r;
    if (p < plow) {
      q = std::sqrt(-2.0 * std::log(p));
      return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
             ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - plow) {
      q = std::sqrt(-2.0 * std::log(1.0 - p));
      return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
             ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    q = p - 0.5;
    r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
};

}  // namespace wnprop
