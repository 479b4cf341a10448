#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the library's numerical kernels.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

// P(K >= n) for K ~ Poisson(nu), summed term by term from lgamma.
inline double poisson_tail(double nu, int n) {
  double acc = 0.0;
  const int top = static_cast<int>(nu + 40.0 * std::sqrt(nu + 1.0) + 200.0);
  for (int k = top; k >= n; --k) {
    acc += std::exp(-nu + k * std::log(nu > 0 ? nu : 1e-300) - std::lgamma(k + 1.0));
  }
  if (nu == 0.0) return n <= 0 ? 1.0 : 0.0;
  return acc;
}

// Mass of the m-photon-added coherent state on {n, n+1, ...}, from the
// closed-form weights e^-nu nu^(k-m) k! / ((k-m)!^2 m! L_m(-nu)).
inline double pacs_tail(double nu, int m, int n) {
  double lag_prev = 1.0, lag = 1.0 + nu;  // L_0(-nu), L_1(-nu)
  double lm = 1.0;
  if (m == 1) lm = lag;
  for (int k = 1; k < m; ++k) {
    const double next = ((2.0 * k + 1.0 + nu) * lag - k * lag_prev) / (k + 1.0);
    lag_prev = lag;
    lag = next;
    if (k + 1 == m) lm = lag;
  }
  const double log_norm = std::lgamma(m + 1.0) + std::log(lm);
  double acc = 0.0;
  const int top = static_cast<int>(nu + m + 40.0 * std::sqrt(nu + 1.0) + 200.0);
  for (int k = top; k >= std::max(n, m); --k) {
    const double lw = -nu + (k - m) * std::log(nu) + std::lgamma(k + 1.0) - 2.0 * std::lgamma(k - m + 1.0) - log_norm;
    acc += std::exp(lw);
  }
  return acc;
}

// Number of eigenvalues of the symmetric tridiagonal matrix below x.
inline int sturm_count(const std::vector<double>& d, const std::vector<double>& e, double x) {
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double off = i == 0 ? 0.0 : e[i - 1] * e[i - 1];
    q = d[i] - x - (i == 0 ? 0.0 : off / q);
    if (q == 0.0) q = -1e-300;
    if (q < 0.0) ++count;
  }
  return count;
}

inline std::vector<double> bisection_eigenvalues(const std::vector<double>& d, const std::vector<double>& e) {
  double lo = d[0], hi = d[0];
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double r = (i > 0 ? std::abs(e[i - 1]) : 0.0) + (i + 1 < d.size() ? std::abs(e[i]) : 0.0);
    lo = std::min(lo, d[i] - r);
    hi = std::max(hi, d[i] + r);
  }
  std::vector<double> out;
  for (int k = 0; k < static_cast<int>(d.size()); ++k) {
    double a = lo - 1.0, b = hi + 1.0;
    for (int it = 0; it < 200; ++it) {
      const double m = 0.5 * (a + b);
      if (sturm_count(d, e, m) > k) b = m; else a = m;
    }
    out.push_back(0.5 * (a + b));
  }
  return out;
}

// Dense complex matrix, row-major.
struct CMat {
  int n = 0;
  std::vector<cplx> a;
  explicit CMat(int n_) : n(n_), a(static_cast<std::size_t>(n_) * n_) {}
  cplx& operator()(int r, int c) { return a[static_cast<std::size_t>(r) * n + c]; }
  cplx operator()(int r, int c) const { return a[static_cast<std::size_t>(r) * n + c]; }
};

inline CMat matmul(const CMat& x, const CMat& y) {
  CMat z(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      const cplx v = x(i, k);
      if (v == cplx{}) continue;
      for (int j = 0; j < x.n; ++j) z(i, j) += v * y(k, j);
    }
  return z;
}

// exp(M) by scaling and squaring with a Taylor series.
inline CMat expm(CMat m) {
  double norm = 0.0;
  for (int i = 0; i < m.n; ++i) {
    double row = 0.0;
    for (int j = 0; j < m.n; ++j) row += std::abs(m(i, j));
    norm = std::max(norm, row);
  }
  int s = 0;
  while (norm > 0.25) {
    norm /= 2.0;
    ++s;
  }
  for (auto& v : m.a) v /= std::pow(2.0, s);
  CMat result(m.n), term(m.n);
  for (int i = 0; i < m.n; ++i) result(i, i) = term(i, i) = 1.0;
  for (int k = 1; k <= 24; ++k) {
    term = matmul(term, m);
    for (auto& v : term.a) v /= static_cast<double>(k);
    for (std::size_t i = 0; i < result.a.size(); ++i) result.a[i] += term.a[i];
  }
  for (int i = 0; i < s; ++i) result = matmul(result, result);
  return result;
}

// Two modes each truncated at `cut` quanta; index = field * (cut + 1) + atom.
struct TwoModeDense {
  int cut;
  int dim;
  CMat h;
  TwoModeDense(int cut_, double omega, double omega0, double gamma, double g)
      : cut(cut_), dim((cut_ + 1) * (cut_ + 1)), h(dim) {
    auto idx = [&](int f, int a) { return f * (cut + 1) + a; };
    for (int f = 0; f <= cut; ++f)
      for (int a = 0; a <= cut; ++a) {
        const int i = idx(f, a);
        h(i, i) = omega * f + omega0 * a + gamma * a * (a - 1.0);
        // a+ b: field up, atom down
        if (a >= 1 && f + 1 <= cut) {
          const int j = idx(f + 1, a - 1);
          const double v = g * std::sqrt((f + 1.0) * a);
          h(j, i) += v;
          h(i, j) += v;
        }
      }
  }
  int index(int f, int a) const { return f * (cut + 1) + a; }
};

inline double logistic_lyapunov(double x0, int n, int burn) {
  double x = x0;
  for (int i = 0; i < burn; ++i) x = 4.0 * x * (1.0 - x);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    acc += std::log(std::abs(4.0 - 8.0 * x));
    x = 4.0 * x * (1.0 - x);
  }
  return acc / n;
}

// Largest Lyapunov exponent of the Henon map from Jacobian products with
// Gram-Schmidt renormalization of one tangent vector.
inline double henon_lyapunov(double a, double b, int n, int burn) {
  double x = 0.1, y = 0.1;
  for (int i = 0; i < burn; ++i) {
    const double xn = 1.0 - a * x * x + y;
    y = b * x;
    x = xn;
  }
  double vx = 1.0, vy = 0.0, acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double nvx = -2.0 * a * x * vx + vy;
    const double nvy = b * vx;
    const double len = std::hypot(nvx, nvy);
    acc += std::log(len);
    vx = nvx / len;
    vy = nvy / len;
    const double xn = 1.0 - a * x * x + y;
    y = b * x;
    x = xn;
  }
  return acc / n;
}

inline std::vector<double> logistic_series(double x0, int n, int burn) {
  std::vector<double> v;
  double x = x0;
  for (int i = 0; i < burn; ++i) x = 4.0 * x * (1.0 - x);
  for (int i = 0; i < n; ++i) {
    v.push_back(x);
    x = 4.0 * x * (1.0 - x);
  }
  return v;
}

inline std::vector<double> henon_series(int n, int burn, double a = 1.4, double b = 0.3) {
  std::vector<double> v;
  double x = 0.1, y = 0.1;
  for (int i = 0; i < n + burn; ++i) {
    if (i >= burn) v.push_back(x);
    const double xn = 1.0 - a * x * x + y;
    y = b * x;
    x = xn;
  }
  return v;
}

inline std::vector<double> white_noise(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = u(rng);
  return v;
}

// Mutual information by direct double loop over equal-width bins.
inline double brute_mi(const std::vector<double>& x, int lag, int bins) {
  const double lo = *std::min_element(x.begin(), x.end());
  const double hi = *std::max_element(x.begin(), x.end());
  auto bin = [&](double v) { return std::min(bins - 1, static_cast<int>((v - lo) / ((hi - lo) / bins))); };
  const std::size_t n = x.size() - lag;
  std::vector<std::vector<double>> joint(bins, std::vector<double>(bins, 0.0));
  for (std::size_t k = 0; k < n; ++k) joint[bin(x[k])][bin(x[k + lag])] += 1.0 / n;
  std::vector<double> pa(bins, 0.0), pb(bins, 0.0);
  for (int a = 0; a < bins; ++a)
    for (int b = 0; b < bins; ++b) {
      pa[a] += joint[a][b];
      pb[b] += joint[a][b];
    }
  double mi = 0.0;
  for (int a = 0; a < bins; ++a)
    for (int b = 0; b < bins; ++b)
      if (joint[a][b] > 0) mi += joint[a][b] * std::log(joint[a][b] / (pa[a] * pb[b]));
  return mi;
}

// False-nearest-neighbour fraction with an O(n^2) neighbour scan.
inline double brute_fnn_fraction(const std::vector<double>& x, int delay, int d, double r_tol, double a_tol) {
  const int n = static_cast<int>(x.size()) - d * delay;
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= x.size();
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  const double sigma = std::sqrt(var / x.size());
  int valid = 0, bad = 0;
  for (int i = 0; i < n; ++i) {
    double best = INFINITY;
    int bj = -1;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      double s = 0.0;
      for (int c = 0; c < d; ++c) s += (x[i + c * delay] - x[j + c * delay]) * (x[i + c * delay] - x[j + c * delay]);
      s = std::sqrt(s);
      if (s <= 1e-10 * sigma) continue;
      if (s < best) {
        best = s;
        bj = j;
      }
    }
    if (bj < 0) continue;
    ++valid;
    const double gap = std::abs(x[i + d * delay] - x[bj + d * delay]);
    if (gap / best > r_tol || std::hypot(best, gap) / sigma > a_tol) ++bad;
  }
  return static_cast<double>(bad) / valid;
}

}  // namespace oracle
