#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace wprs::embed {

struct EmbeddingSpec {
  int delay = 1;
  int dimension = 1;

  void validate() const;
};

enum class Metric { euclidean, maxnorm };

// Delay vectors v_i = (x_i, x_{i+delay}, ..., x_{i+(dim-1)delay}) viewed in
// place over a series; nothing is copied.
class DelayVectors {
 public:
  DelayVectors(std::span<const double> x, EmbeddingSpec spec);

  std::int64_t size() const noexcept { return count_; }
  int dimension() const noexcept { return spec_.dimension; }
  int delay() const noexcept { return spec_.delay; }
  double coord(std::int64_t i, int c) const noexcept {
    return x_[static_cast<std::size_t>(i + static_cast<std::int64_t>(c) * spec_.delay)];
  }
  double distance(std::int64_t i, std::int64_t j, Metric m) const noexcept;

 private:
  std::span<const double> x_;
  EmbeddingSpec spec_;
  std::int64_t count_ = 0;
};

// Which points a neighbour query may return.
struct NeighborFilter {
  std::int64_t theiler = 0;      // require |i - j| > theiler
  std::int64_t limit = -1;       // require j < limit (-1: all points)
  double min_distance = -1.0;    // require distance > min_distance
};

struct Neighbor {
  std::int64_t index = -1;
  double distance = std::numeric_limits<double>::infinity();
};

// Box-assisted search: points are binned on their first min(dim, 2)
// coordinates. Results equal the brute-force scans below, including the
// smallest-index tie-break.
class BoxGrid {
 public:
  BoxGrid(const DelayVectors& v, Metric metric, double box_size = 0.0);

  Neighbor nearest(std::int64_t i, const NeighborFilter& f) const;
  // All j with distance <= eps, ascending index.
  std::vector<std::int64_t> within(std::int64_t i, double eps, const NeighborFilter& f) const;

  double box_size() const noexcept { return r_; }

 private:
  std::int64_t box_of(double v, int axis) const noexcept;
  template <class Visit>
  void visit_ring(std::int64_t bx, std::int64_t by, std::int64_t ring, Visit&& visit) const;

  const DelayVectors& v_;
  Metric metric_;
  int axes_ = 1;
  double r_ = 1.0;
  double lo_[2] = {0.0, 0.0};
  std::int64_t nb_[2] = {1, 1};
  std::vector<std::int64_t> start_;  // CSR offsets per box
  std::vector<std::int64_t> items_;
};

Neighbor nearest_brute(const DelayVectors& v, Metric metric, std::int64_t i,
                       const NeighborFilter& f);
std::vector<std::int64_t> within_brute(const DelayVectors& v, Metric metric, std::int64_t i,
                                       double eps, const NeighborFilter& f);

}  // namespace wprs::embed
