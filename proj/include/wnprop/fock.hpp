#pragma once
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

#include "wnprop/specfun.hpp"
#include "wnprop/util/complexops.hpp"

namespace wnprop {

inline double factorial(int n) {
  static const auto table = [] {
    std::vector<double> t(171);
    t[0] = 1.0;
    for (int k = 1; k <= 170; ++k) t[k] = t[k - 1] * k;
    return t;
  }();
  if (n < 0 || n > 170) throw std::invalid_argument("factorial out of range");
  return table[n];
}

// Finite orthonormal basis e_1..e_D of H with |e_j|_p = lambda_j^p.
// lambda_j > 1 keeps sum lambda_j^{-2p} (the HS norm of the embedding) finite
// and computable for every p > 0.
struct WeightedBasis {
  int dim = 0;
  std::vector<double> weights;

  static WeightedBasis standard(int D) {
    WeightedBasis b;
    b.dim = D;
    b.weights.resize(D);
    for (int j = 0; j < D; ++j) b.weights[j] = j + 2.0;  // lambda_j = j+1 with j from 1
    return b;
  }
  void validate() const {
    if (dim <= 0 || static_cast<int>(weights.size()) != dim)
      throw std::invalid_argument("WeightedBasis: bad dimension");
    double prev = 1.0;
    for (double w : weights) {
      if (w <= prev) throw std::invalid_argument("WeightedBasis: weights must exceed 1, increasing");
      prev = w;
    }
  }
  friend bool operator==(const WeightedBasis& a, const WeightedBasis& b) {
    return a.dim == b.dim && a.weights == b.weights;
  }
  double hs_norm_sq(double p) const {  // |Tr|^2_{-p} = sum lambda_j^{-2p}
    double s = 0;
    for (double w : weights) s += std::pow(w, -2.0 * p);
    return s;
  }
};

using MultiIndex = std::vector<int>;

inline int mi_total(const MultiIndex& m) {
  int s = 0;
  for (int v : m) s += v;
  return s;
}
inline double mi_factorial(const MultiIndex& m) {
  double f = 1.0;
  for (int v : m) f *= factorial(v);
  return f;
}

// Degree-n symmetric kernel, coefficients on the symmetrized monomial basis
// e^_m = sym(e_1^{(x)m_1} (x) ... (x) e_D^{(x)m_D}); <e^_m, e^_m> = m!/n!.
// In this basis the symmetric tensor product is plain multi-index addition.
struct SymKernel {
  int degree = 0;
  int dim = 0;
  std::map<MultiIndex, cdouble> coeff;

  SymKernel() = default;
  SymKernel(int deg, int D) : degree(deg), dim(D) {}

  void add(const MultiIndex& m, cdouble v) {
    if (std::abs(v) == 0.0) return;
    auto [it, fresh] = coeff.try_emplace(m, v);
    if (!fresh) {
      it->second += v;
      if (std::abs(it->second) == 0.0) coeff.erase(it);
    }
  }
  SymKernel& operator*=(cdouble s) {
    for (auto& [m, v] : coeff) v *= s;
    return *this;
  }
  friend SymKernel operator+(SymKernel a, const SymKernel& b) {
    if (a.degree != b.degree || a.dim != b.dim) throw std::invalid_argument("SymKernel add: shape");
    for (auto& [m, v] : b.coeff) a.add(m, v);
    return a;
  }
  // |kernel|_p^2 with Gram factors m!/n! and weights lambda_j^{2 p m_j}.
  double norm_sq(const WeightedBasis& basis, double p = 0.0) const {
    double s = 0;
    double nf = factorial(degree);
    for (auto& [m, v] : coeff) {
      double g = mi_factorial(m) / nf;
      if (p != 0.0)
        for (int j = 0; j < dim; ++j)
          if (m[j]) g *= std::pow(basis.weights[j], 2.0 * p * m[j]);
      s += std::norm(v) * g;
    }
    return s;
  }
};

// Bilinear pairing <a, b> of two degree-n kernels (no conjugation).
inline cdouble kernel_pairing(const SymKernel& a, const SymKernel& b) {
  if (a.degree != b.degree) throw std::invalid_argument("kernel_pairing: degree");
  cdouble s = 0;
  double nf = factorial(a.degree);
  const auto *small = &a.coeff, *big = &b.coeff;
  if (small->size() > big->size()) std::swap(small, big);
  for (auto& [m, v] : *small) {
    auto it = big->find(m);
    if (it != big->end()) s += v * it->second * (mi_factorial(m) / nf);
  }
  return s;
}

// Finite chaos expansion phi = sum_{n<=N} <:w^{(x)n}:, phi^{(n)}>.
struct ChaosVector {
  WeightedBasis basis;
  std::vector<SymKernel> kernels;  // index = degree
  bool truncated = false;          // a binary op dropped degrees above N_trunc

  ChaosVector() = default;
  ChaosVector(WeightedBasis b, int n_trunc) : basis(std::move(b)) {
    kernels.reserve(n_trunc + 1);
    for (int n = 0; n <= n_trunc; ++n) kernels.emplace_back(n, basis.dim);
  }
  int max_degree() const { return static_cast<int>(kernels.size()) - 1; }

  static ChaosVector unit(const WeightedBasis& b, int n_trunc) {
    ChaosVector v(b, n_trunc);
    v.kernels[0].add(MultiIndex(b.dim, 0), 1.0);
    return v;
  }
  cdouble coefficient(const MultiIndex& m) const {
    int n = mi_total(m);
    if (n > max_degree()) return 0.0;
    auto it = kernels[n].coeff.find(m);
    return it == kernels[n].coeff.end() ? cdouble{} : it->second;
  }
  ChaosVector& operator+=(const ChaosVector& o) {
    if (!(basis == o.basis)) throw std::invalid_argument("basis mismatch");
    if (o.max_degree() > max_degree()) kernels.resize(o.kernels.size(), SymKernel());
    for (int n = 0; n <= o.max_degree(); ++n) {
      if (kernels[n].dim == 0) kernels[n] = SymKernel(n, basis.dim);
      kernels[n] = kernels[n] + o.kernels[n];
    }
    return *this;
  }
  ChaosVector& operator*=(cdouble s) {
    for (auto& k : kernels) k *= s;
    return *this;
  }
};

namespace detail {
inline void require_same_basis(const ChaosVector& a, const ChaosVector& b) {
  if (!(a.basis == b.basis)) throw std::invalid_argument("basis mismatch");
}

// Enumerate kappa with 0 <= kappa <= cap (componentwise) and |kappa| = k.
template <class Fn>
void for_each_bounded_index(const MultiIndex& cap, int k, MultiIndex& cur, int pos, Fn&& fn) {
  if (pos == static_cast<int>(cap.size())) {
    if (k == 0) fn(cur);
    return;
  }
  int hi = std::min(cap[pos], k);
  for (int v = 0; v <= hi; ++v) {
    cur[pos] = v;
    for_each_bounded_index(cap, k - v, cur, pos + 1, fn);
  }
  cur[pos] = 0;
}
}  // namespace detail

// Wick product: kernel-level symmetrized tensor convolution
// Xi^{(n)} = sum_k Phi^{(k)} (x)^ Psi^{(n-k)}; degrees above the common
// truncation are dropped and flagged.
inline ChaosVector wick_product(const ChaosVector& a, const ChaosVector& b) {
  detail::require_same_basis(a, b);
  int nt = std::min(a.max_degree(), b.max_degree());
  ChaosVector out(a.basis, nt);
  out.truncated = a.truncated || b.truncated || (a.max_degree() + b.max_degree() > nt &&
                                                 [&] {
                                                   for (int p = 0; p <= a.max_degree(); ++p)
                                                     for (int q = 0; q <= b.max_degree(); ++q)
                                                       if (p + q > nt && !a.kernels[p].coeff.empty() &&
                                                           !b.kernels[q].coeff.empty())
                                                         return true;
                                                   return false;
                                                 }());
  for (int p = 0; p <= a.max_degree(); ++p)
    for (int q = 0; q <= b.max_degree() && p + q <= nt; ++q)
      for (auto& [ma, va] : a.kernels[p].coeff)
        for (auto& [mb, vb] : b.kernels[q].coeff) {
          MultiIndex m(ma);
          for (int j = 0; j < out.basis.dim; ++j) m[j] += mb[j];
          out.kernels[p + q].add(m, va * vb);
        }
  return out;
}

// k-fold contraction with symmetrization,  e^_a (x)^_k e^_b =
//   sum_{|kappa|=k, kappa<=a, kappa<=b} c(kappa) e^_{a+b-2 kappa}.
inline void contract_accumulate(const SymKernel& a, const SymKernel& b, int k, double weight,
                                SymKernel& out) {
  int M = a.degree, N = b.degree;
  double pref = factorial(M - k) * factorial(N - k) / (factorial(M) * factorial(N)) * factorial(k);
  for (auto& [ma, va] : a.coeff)
    for (auto& [mb, vb] : b.coeff) {
      MultiIndex cap(ma.size());
      for (std::size_t j = 0; j < cap.size(); ++j) cap[j] = std::min(ma[j], mb[j]);
      MultiIndex cur(cap.size(), 0);
      detail::for_each_bounded_index(cap, k, cur, 0, [&](const MultiIndex& kappa) {
        double c = pref * mi_factorial(ma) * mi_factorial(mb) / mi_factorial(kappa);
        MultiIndex g(ma.size());
        double den = 1.0;
        for (std::size_t j = 0; j < g.size(); ++j) {
          g[j] = ma[j] + mb[j] - 2 * kappa[j];
          den *= factorial(ma[j] - kappa[j]) * factorial(mb[j] - kappa[j]);
        }
        out.add(g, weight * va * vb * (c / den));
      });
    }
}

// Pointwise (Wiener) product via the contraction formula
// f^{(l)} = sum_{m+n=l} sum_k k! C(m+k,k) C(n+k,k) phi^{(m+k)} (x)^_k psi^{(n+k)}.
inline ChaosVector wiener_product(const ChaosVector& a, const ChaosVector& b) {
  detail::require_same_basis(a, b);
  int nt = std::min(a.max_degree(), b.max_degree());
  ChaosVector out(a.basis, nt);
  out.truncated = a.truncated || b.truncated || a.max_degree() + b.max_degree() > nt;
  for (int p = 0; p <= a.max_degree(); ++p)
    for (int q = 0; q <= b.max_degree(); ++q) {
      int kmax = std::min(p, q);
      for (int k = 0; k <= kmax; ++k) {
        int l = p + q - 2 * k;
        if (l > nt) continue;
        int m = p - k, n = q - k;
        double w = factorial(k) * (factorial(m + k) / (factorial(m) * factorial(k))) *
                   (factorial(n + k) / (factorial(n) * factorial(k)));
        contract_accumulate(a.kernels[p], b.kernels[q], k, w, out.kernels[l]);
      }
    }
  return out;
}

// Iterated trace  tr^k phi^{(n+2k)} contracting pairs of slots against
// Tr = sum_j e_j (x) e_j;  tr e^_m = sum_j m_j(m_j-1)/(N(N-1)) e^_{m-2e_j}.
inline SymKernel trace_contract(const SymKernel& kernel, int k) {
  if (k < 0 || kernel.degree < 2 * k) throw std::invalid_argument("trace_contract: degree < 2k");
  SymKernel cur = kernel;
  for (int it = 0; it < k; ++it) {
    int N = cur.degree;
    SymKernel next(N - 2, cur.dim);
    for (auto& [m, v] : cur.coeff)
      for (std::size_t j = 0; j < m.size(); ++j)
        if (m[j] >= 2) {
          MultiIndex g = m;
          g[j] -= 2;
          next.add(g, v * (double(m[j]) * (m[j] - 1)) / (double(N) * (N - 1)));
        }
    cur = std::move(next);
  }
  return cur;
}

// Scaling operator sigma_z phi(w) = phi(z w) on kernels:
// phi~^{(n)} = z^n sum_k ((n+2k)!/(k! n!)) ((z^2-1)/2)^k tr^k phi^{(n+2k)}.
inline ChaosVector scale(const ChaosVector& phi, cdouble z) {
  ChaosVector out(phi.basis, phi.max_degree());
  out.truncated = phi.truncated;
  cdouble w = 0.5 * (z * z - 1.0);
  for (int n = 0; n <= phi.max_degree(); ++n) {
    cdouble zn = std::pow(z, n);
    cdouble wk = 1.0;
    for (int k = 0; n + 2 * k <= phi.max_degree(); ++k) {
      if (k > 0) wk *= w;
      if (!phi.kernels[n + 2 * k].coeff.empty()) {
        double comb = factorial(n + 2 * k) / (factorial(k) * factorial(n));
        SymKernel tr = trace_contract(phi.kernels[n + 2 * k], k);
        tr *= zn * wk * comb;
        out.kernels[n] = out.kernels[n] + tr;
      }
    }
  }
  return out;
}

// Gamma_z: multiply kernel of degree n by z^n (second quantization of z*id).
inline ChaosVector gamma_scale(const ChaosVector& phi, cdouble z) {
  ChaosVector out = phi;
  cdouble zn = 1.0;
  for (int n = 0; n <= out.max_degree(); ++n) {
    if (n > 0) zn *= z;
    out.kernels[n] *= zn;
  }
  return out;
}

// Kernels of J_z = Nexp(1/2 (1 - z^{-2}) <w,w>):  J^{(2k)} = ((z^2-1)/2)^k
// sum_{|kappa|=k} e^_{2 kappa} / kappa!; S-transform exp(-(1-z^2)/2 <th,th>).
inline ChaosVector jz_vector(const WeightedBasis& basis, cdouble z, int n_trunc) {
  ChaosVector out(basis, n_trunc);
  cdouble w = 0.5 * (z * z - 1.0);
  cdouble wk = 1.0;
  for (int k = 0; 2 * k <= n_trunc; ++k) {
    if (k > 0) wk *= w;
    MultiIndex cap(basis.dim, k), cur(basis.dim, 0);
    detail::for_each_bounded_index(cap, k, cur, 0, [&](const MultiIndex& kappa) {
      MultiIndex m(kappa);
      for (auto& v : m) v *= 2;
      out.kernels[2 * k].add(m, wk / mi_factorial(kappa));
    });
  }
  return out;
}

// Shift tau_eta phi = phi(. + eta):
// sum_k sum_l C(k+l,k) <:w^{(x)l}:, (eta^{(x)k}, phi^{(k+l)})>.
inline ChaosVector shift(const ChaosVector& phi, const std::vector<cdouble>& eta) {
  if (static_cast<int>(eta.size()) != phi.basis.dim) throw std::invalid_argument("shift: eta size");
  ChaosVector out(phi.basis, phi.max_degree());
  out.truncated = phi.truncated;
  for (int deg = 0; deg <= phi.max_degree(); ++deg) {
    const SymKernel& src = phi.kernels[deg];
    if (src.coeff.empty()) continue;
    for (int k = 0; k <= deg; ++k) {
      int l = deg - k;
      double binom = factorial(k + l) / (factorial(k) * factorial(l));
      for (auto& [m, v] : src.coeff) {
        MultiIndex cur(m.size(), 0);
        detail::for_each_bounded_index(m, k, cur, 0, [&](const MultiIndex& kappa) {
          cdouble etak = 1.0;
          for (std::size_t j = 0; j < kappa.size(); ++j)
            for (int r = 0; r < kappa[j]; ++r) etak *= eta[j];
          double c = factorial(k) / mi_factorial(kappa) * mi_factorial(m) / factorial(deg) *
                     factorial(l);
          MultiIndex g(m.size());
          double den = 1.0;
          for (std::size_t j = 0; j < g.size(); ++j) {
            g[j] = m[j] - kappa[j];
            den *= factorial(g[j]);
          }
          out.kernels[l].add(g, v * etak * binom * (c / den));
        });
      }
    }
  }
  return out;
}

// Apply a per-slot linear substitution e_j -> sum_i A[i][j] e_i to a kernel
// (used for composition with projections).
inline SymKernel apply_linear(const SymKernel& kernel, const std::vector<std::vector<double>>& A) {
  int D = kernel.dim;
  SymKernel out(kernel.degree, D);
  for (auto& [m, v] : kernel.coeff) {
    std::map<MultiIndex, cdouble> poly{{MultiIndex(D, 0), v}};
    for (int j = 0; j < D; ++j)
      for (int rep = 0; rep < m[j]; ++rep) {
        std::map<MultiIndex, cdouble> next;
        for (auto& [g, c] : poly)
          for (int i = 0; i < D; ++i) {
            if (A[i][j] == 0.0) continue;
            MultiIndex g2 = g;
            ++g2[i];
            next[g2] += c * A[i][j];
          }
        poly = std::move(next);
      }
    for (auto& [g, c] : poly) out.add(g, c);
  }
  return out;
}

// Composition with the projection P_perp w = w - <w,eta> eta, |eta| = 1:
// phi~^{(n)} = sum_k ((n+2k)!/(k! n!)) (-1/2)^k P_perp^{(x)n} (eta^{(x)2k}, phi^{(n+2k)}).
inline ChaosVector project_perp(const ChaosVector& phi, const std::vector<double>& eta) {
  int D = phi.basis.dim;
  if (static_cast<int>(eta.size()) != D) throw std::invalid_argument("project_perp: eta size");
  double nrm = 0;
  for (double e : eta) nrm += e * e;
  if (std::abs(nrm - 1.0) > 1e-12) throw std::invalid_argument("project_perp: |eta| != 1");

  std::vector<std::vector<double>> A(D, std::vector<double>(D, 0.0));
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) A[i][j] = (i == j ? 1.0 : 0.0) - eta[i] * eta[j];

  // eta^{(x)2k} as a kernel for the contraction step
  ChaosVector out(phi.basis, phi.max_degree());
  out.truncated = phi.truncated;
  std::vector<cdouble> eta_c(eta.begin(), eta.end());
  for (int n = 0; n <= phi.max_degree(); ++n) {
    SymKernel acc(n, D);
    for (int k = 0; n + 2 * k <= phi.max_degree(); ++k) {
      const SymKernel& src = phi.kernels[n + 2 * k];
      if (src.coeff.empty()) continue;
      double comb = factorial(n + 2 * k) / (factorial(k) * factorial(n));
      double sgn = std::pow(-0.5, k);
      // (eta^{(x)2k}, phi^{(n+2k)}) with the same component formula as shift
      for (auto& [m, v] : src.coeff) {
        MultiIndex cur(m.size(), 0);
        detail::for_each_bounded_index(m, 2 * k, cur, 0, [&](const MultiIndex& kappa) {
          double etak = 1.0;
          for (std::size_t j = 0; j < kappa.size(); ++j) etak *= std::pow(eta[j], kappa[j]);
          double c = factorial(2 * k) / mi_factorial(kappa) * mi_factorial(m) /
                     factorial(n + 2 * k) * factorial(n);
          MultiIndex g(m.size());
          double den = 1.0;
          for (std::size_t j = 0; j < g.size(); ++j) {
            g[j] = m[j] - kappa[j];
            den *= factorial(g[j]);
          }
          acc.add(g, v * etak * comb * sgn * (c / den));
        });
      }
    }
    out.kernels[n] = apply_linear(acc, A);
  }
  return out;
}

// Chaos kernels of Donsker's delta  delta(<.,eta> - a):
// f^{(n)} = e^{-a^2/2q}/sqrt(2 pi q) * (1/n!) H_n(a/sqrt(2q)) (2q)^{-n/2} eta^{(x)n},
// q = <eta,eta> (bilinear), principal branch, q off the cut (-inf, 0].
inline ChaosVector donsker_kernels(const WeightedBasis& basis, const std::vector<cdouble>& eta,
                                   cdouble a, int N) {
  if (static_cast<int>(eta.size()) != basis.dim)
    throw std::invalid_argument("donsker_kernels: eta size");
  cdouble q = 0;
  for (auto e : eta) q += e * e;
  if (q.imag() == 0.0 && q.real() <= 0.0)
    throw std::domain_error("donsker_kernels: <eta,eta> on the branch cut");
  cdouble rt2q = sqrt_principal(2.0 * q);
  cdouble pref = std::exp(-a * a / (2.0 * q)) / sqrt_principal(2.0 * pi * q);
  // G_n = H_n(a/sqrt(2q)) (2q)^{-n/2} / n!, overflow-safe scaled recurrence.
  auto g = hermite_scaled(N, a / rt2q, 1.0 / rt2q);
  ChaosVector out(basis, N);
  for (int n = 0; n <= N; ++n) {
    // eta^{(x)n} = sum_{|m|=n} (n!/m!) eta^m e^_m
    MultiIndex cap(basis.dim, n), cur(basis.dim, 0);
    detail::for_each_bounded_index(cap, n, cur, 0, [&](const MultiIndex& m) {
      cdouble em = 1.0;
      for (std::size_t j = 0; j < m.size(); ++j)
        for (int r = 0; r < m[j]; ++r) em *= eta[j];
      out.kernels[n].add(m, pref * g[n] * (factorial(n) / mi_factorial(m)) * em);
    });
  }
  return out;
}

// Pointwise value  phi(x) = sum_n <:x^{(x)n}:, phi^{(n)}> with the Wick powers
// expanded coordinatewise: <:x^{(x)n}:, e^_m> = prod_j 2^{-m_j/2} H_{m_j}(x_j/sqrt2).
inline cdouble evaluate(const ChaosVector& phi, const std::vector<cdouble>& x) {
  if (static_cast<int>(x.size()) != phi.basis.dim) throw std::invalid_argument("evaluate: x size");
  int D = phi.basis.dim;
  int nmax = phi.max_degree();
  std::vector<std::vector<cdouble>> he(D);
  const double inv_rt2 = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < D; ++j) {
    he[j].resize(nmax + 1);
    for (int n = 0; n <= nmax; ++n)
      he[j][n] = std::pow(inv_rt2, n) * hermite(n, x[j] * inv_rt2);
  }
  cdouble s = 0;
  for (auto& k : phi.kernels)
    for (auto& [m, v] : k.coeff) {
      cdouble w = v;
      for (int j = 0; j < D; ++j) w *= he[j][m[j]];
      s += w;
    }
  return s;
}

// S phi(theta) = sum_n <phi^{(n)}, theta^{(x)n}> = sum_m c_m theta^m.
inline cdouble s_transform(const ChaosVector& phi, const std::vector<cdouble>& theta) {
  if (static_cast<int>(theta.size()) != phi.basis.dim)
    throw std::invalid_argument("s_transform: theta size");
  cdouble s = 0;
  for (auto& k : phi.kernels)
    for (auto& [m, v] : k.coeff) {
      cdouble w = v;
      for (std::size_t j = 0; j < m.size(); ++j)
        for (int r = 0; r < m[j]; ++r) w *= theta[j];
      s += w;
    }
  return s;
}

// Dual pairing <<Phi, phi>> = sum_n n! <Phi^{(n)}, phi^{(n)}> (bilinear).
inline cdouble dual_pairing(const ChaosVector& a, const ChaosVector& b) {
  detail::require_same_basis(a, b);
  cdouble s = 0;
  int n = std::min(a.max_degree(), b.max_degree());
  for (int d = 0; d <= n; ++d)
    s += factorial(d) * kernel_pairing(a.kernels[d], b.kernels[d]);
  return s;
}

// <<delta(<.,eta>-a), phi>> = (2 pi)^{-1/2} e^{-a^2/2} E(P tau_{a eta} phi);
// computed through shift and projection, the degree-0 kernel is E(.).
inline cdouble pair_with_donsker(const ChaosVector& phi, const std::vector<double>& eta,
                                 cdouble a) {
  double nrm = 0;
  for (double e : eta) nrm += e * e;
  if (std::abs(nrm - 1.0) > 1e-12) throw std::invalid_argument("pair_with_donsker: |eta| != 1");
  std::vector<cdouble> a_eta(eta.size());
  for (std::size_t j = 0; j < eta.size(); ++j) a_eta[j] = a * eta[j];
  ChaosVector shifted = shift(phi, a_eta);
  ChaosVector projected = project_perp(shifted, eta);
  cdouble e0 = projected.kernels[0].coeff.empty()
                   ? cdouble{}
                   : projected.kernels[0].coeff.begin()->second;
  return std::exp(-0.5 * a * a) / std::sqrt(2.0 * pi) * e0;
}

// ||phi||^2_{p,q,beta} = sum_n (n!)^{1+beta} 2^{nq} |phi^{(n)}|_p^2.
inline double chaos_norm_sq(const ChaosVector& phi, double p, double q, double beta) {
  double s = 0;
  for (int n = 0; n <= phi.max_degree(); ++n)
    s += std::pow(factorial(n), 1.0 + beta) * std::pow(2.0, n * q) *
         phi.kernels[n].norm_sq(phi.basis, p);
  return s;
}

// |theta|_{-p} for theta in C^D (used by the growth-vs-norm estimates).
inline double minus_p_norm(const WeightedBasis& basis, const std::vector<cdouble>& theta,
                           double p) {
  double s = 0;
  for (int j = 0; j < basis.dim; ++j) s += std::norm(theta[j]) * std::pow(basis.weights[j], -2.0 * p);
  return std::sqrt(s);
}

}  // namespace wnprop
