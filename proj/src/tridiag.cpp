#include "wprs/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "wprs/error.hpp"

namespace wprs::eigen {

void SymTridiag::validate() const {
  require(!diag.empty(), ErrorCode::invalid_argument, "tridiagonal matrix must have D >= 1");
  require(offdiag.size() + 1 == diag.size(), ErrorCode::dimension_mismatch,
          fmt::format("offdiag length {} for D = {}", offdiag.size(), diag.size()));
  for (double v : diag) require(std::isfinite(v), ErrorCode::invalid_argument, "non-finite diagonal");
  for (double v : offdiag) {
    require(std::isfinite(v), ErrorCode::invalid_argument, "non-finite off-diagonal");
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

EigenDecomposition decompose(const SymTridiag& m) {
  m.validate();
  const std::size_t n = m.dim();
  std::vector<double> d = m.diag;
  std::vector<double> e(n, 0.0);
  std::copy(m.offdiag.begin(), m.offdiag.end(), e.begin());
  DenseMatrix z = DenseMatrix::identity(n);

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    for (;;) {
      std::size_t mm = l;
      for (; mm + 1 < n; ++mm) {
        const double dd = std::abs(d[mm]) + std::abs(d[mm + 1]);
        if (std::abs(e[mm]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (mm == l) break;
      if (++iter > kMaxIterationsPerEigenvalue) {
        throw Error(ErrorCode::no_convergence,
                    fmt::format("eigenvalue {} of {} did not converge in {} sweeps", l, n,
                                kMaxIterationsPerEigenvalue));
      }
      // shift from the leading 2x2 block
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[mm] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      std::size_t i = mm;
      bool deflated = false;
      while (i-- > l) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[mm] = 0.0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        for (std::size_t k = 0; k < n; ++k) {
          f = z(k, i + 1);
          z(k, i + 1) = s * z(k, i) + c * f;
          z(k, i) = c * z(k, i) - s * f;
        }
      }
      if (deflated) continue;
      d[l] -= p;
      e[l] = g;
      e[mm] = 0.0;
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = DenseMatrix(n);
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t src = order[s];
    out.eigenvalues[s] = d[src];
    double sign = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (std::abs(z(k, src)) > 1e-12) {
        sign = z(k, src) < 0.0 ? -1.0 : 1.0;
        break;
      }
    }
    for (std::size_t k = 0; k < n; ++k) out.eigenvectors(k, s) = sign * z(k, src);
  }
  return out;
}

}  // namespace wprs::eigen
