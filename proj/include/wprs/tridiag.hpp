#pragma once

#include <cstddef>
#include <vector>

namespace wprs::eigen {

struct SymTridiag {
  std::vector<double> diag;     // length D
  std::vector<double> offdiag;  // length D - 1

  std::size_t dim() const noexcept { return diag.size(); }
  void validate() const;
};

// Row-major square matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  static DenseMatrix identity(std::size_t n);

  std::size_t dim() const noexcept { return n_; }
  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * n_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * n_ + c]; }
  const std::vector<double>& data() const noexcept { return data_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

// Column s of `eigenvectors` belongs to eigenvalues[s]; eigenvalues ascend.
// Each column has its first component with |v| > 1e-12 positive.
struct EigenDecomposition {
  std::vector<double> eigenvalues;
  DenseMatrix eigenvectors;

  std::size_t dim() const noexcept { return eigenvalues.size(); }
};

inline constexpr int kMaxIterationsPerEigenvalue = 50;

// Implicit QL with shifts (tql2 lineage). Throws no_convergence when an
// eigenvalue needs more than kMaxIterationsPerEigenvalue sweeps.
EigenDecomposition decompose(const SymTridiag& m);

}  // namespace wprs::eigen
