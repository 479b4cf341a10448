#include "wprs/neighbors.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "wprs/error.hpp"

namespace wprs::embed {

void EmbeddingSpec::validate() const {
  require(delay >= 1, ErrorCode::invalid_argument, "delay must be >= 1");
  require(dimension >= 1, ErrorCode::invalid_argument, "dimension must be >= 1");
}

DelayVectors::DelayVectors(std::span<const double> x, EmbeddingSpec spec) : x_(x), spec_(spec) {
  spec.validate();
  const auto span = static_cast<std::int64_t>(spec.dimension - 1) * spec.delay;
  const auto n = static_cast<std::int64_t>(x.size());
  require(n > span, ErrorCode::series_too_short,
          fmt::format("series of length {} is too short for dimension {} and delay {}", n,
                      spec.dimension, spec.delay));
  count_ = n - span;
}

double DelayVectors::distance(std::int64_t i, std::int64_t j, Metric m) const noexcept {
  double acc = 0.0;
  for (int c = 0; c < spec_.dimension; ++c) {
    const double d = coord(i, c) - coord(j, c);
    if (m == Metric::euclidean) {
      acc += d * d;
    } else {
      acc = std::max(acc, std::abs(d));
    }
  }
  return m == Metric::euclidean ? std::sqrt(acc) : acc;
}

namespace {

bool admissible(std::int64_t i, std::int64_t j, const NeighborFilter& f) {
  if (j == i) return false;
  if (std::abs(i - j) <= f.theiler) return false;
  if (f.limit >= 0 && j >= f.limit) return false;
  return true;
}

void offer(Neighbor& best, std::int64_t j, double d) {
  if (d < best.distance || (d == best.distance && j < best.index)) best = {j, d};
}

}  // namespace

BoxGrid::BoxGrid(const DelayVectors& v, Metric metric, double box_size)
    : v_(v), metric_(metric), axes_(std::min(v.dimension(), 2)) {
  const std::int64_t n = v.size();
  double hi[2] = {0.0, 0.0};
  for (int a = 0; a < axes_; ++a) {
    lo_[a] = hi[a] = v.coord(0, a);
    for (std::int64_t i = 1; i < n; ++i) {
      lo_[a] = std::min(lo_[a], v.coord(i, a));
      hi[a] = std::max(hi[a], v.coord(i, a));
    }
  }
  if (box_size > 0.0) {
    r_ = box_size;
  } else {
    // aim for a few points per occupied box
    const double per_axis = axes_ == 1 ? static_cast<double>(n) / 4.0 : std::sqrt(static_cast<double>(n) / 4.0);
    double range = 0.0;
    for (int a = 0; a < axes_; ++a) range = std::max(range, hi[a] - lo_[a]);
    r_ = range > 0.0 ? range / std::max(1.0, per_axis) : 1.0;
  }
  std::int64_t total = 1;
  for (int a = 0; a < axes_; ++a) {
    nb_[a] = static_cast<std::int64_t>(std::floor((hi[a] - lo_[a]) / r_)) + 1;
    total *= nb_[a];
  }
  require(total <= (std::int64_t{1} << 26), ErrorCode::invalid_argument,
          "neighbour grid box size too small for the data range");

  std::vector<std::int64_t> key(static_cast<std::size_t>(n));
  start_.assign(static_cast<std::size_t>(total + 1), 0);
  for (std::int64_t i = 0; i < n; ++i) {
    std::int64_t k = box_of(v.coord(i, 0), 0);
    if (axes_ == 2) k = k * nb_[1] + box_of(v.coord(i, 1), 1);
    key[static_cast<std::size_t>(i)] = k;
    ++start_[static_cast<std::size_t>(k + 1)];
  }
  for (std::size_t b = 1; b < start_.size(); ++b) start_[b] += start_[b - 1];
  items_.resize(static_cast<std::size_t>(n));
  std::vector<std::int64_t> fill(start_.begin(), start_.end() - 1);
  for (std::int64_t i = 0; i < n; ++i) {
    items_[static_cast<std::size_t>(fill[static_cast<std::size_t>(key[static_cast<std::size_t>(i)])]++)] = i;
  }
}

std::int64_t BoxGrid::box_of(double v, int axis) const noexcept {
  const auto b = static_cast<std::int64_t>(std::floor((v - lo_[axis]) / r_));
  return std::clamp<std::int64_t>(b, 0, nb_[axis] - 1);
}

template <class Visit>
void BoxGrid::visit_ring(std::int64_t bx, std::int64_t by, std::int64_t ring, Visit&& visit) const {
  auto scan = [&](std::int64_t x, std::int64_t y) {
    if (x < 0 || x >= nb_[0]) return;
    std::int64_t k = x;
    if (axes_ == 2) {
      if (y < 0 || y >= nb_[1]) return;
      k = x * nb_[1] + y;
    }
    for (auto p = start_[static_cast<std::size_t>(k)]; p < start_[static_cast<std::size_t>(k + 1)]; ++p) {
      visit(items_[static_cast<std::size_t>(p)]);
    }
  };
  if (axes_ == 1) {
    scan(bx - ring, 0);
    if (ring > 0) scan(bx + ring, 0);
    return;
  }
  if (ring == 0) {
    scan(bx, by);
    return;
  }
  for (std::int64_t x = bx - ring; x <= bx + ring; ++x) {
    scan(x, by - ring);
    scan(x, by + ring);
  }
  for (std::int64_t y = by - ring + 1; y <= by + ring - 1; ++y) {
    scan(bx - ring, y);
    scan(bx + ring, y);
  }
}

Neighbor BoxGrid::nearest(std::int64_t i, const NeighborFilter& f) const {
  const std::int64_t bx = box_of(v_.coord(i, 0), 0);
  const std::int64_t by = axes_ == 2 ? box_of(v_.coord(i, 1), 1) : 0;
  const std::int64_t max_ring = std::max(nb_[0], nb_[1]);
  Neighbor best;
  for (std::int64_t ring = 0; ring <= max_ring; ++ring) {
    visit_ring(bx, by, ring, [&](std::int64_t j) {
      if (!admissible(i, j, f)) return;
      const double d = v_.distance(i, j, metric_);
      if (d > f.min_distance) offer(best, j, d);
    });
    // anything beyond this ring is farther than ring * r on a binned axis
    if (best.index >= 0 && best.distance < static_cast<double>(ring) * r_) break;
  }
  return best;
}

std::vector<std::int64_t> BoxGrid::within(std::int64_t i, double eps, const NeighborFilter& f) const {
  const std::int64_t bx = box_of(v_.coord(i, 0), 0);
  const std::int64_t by = axes_ == 2 ? box_of(v_.coord(i, 1), 1) : 0;
  const std::int64_t rings = std::min<std::int64_t>(static_cast<std::int64_t>(std::ceil(eps / r_)) + 1,
                                                    std::max(nb_[0], nb_[1]));
  std::vector<std::int64_t> out;
  for (std::int64_t ring = 0; ring <= rings; ++ring) {
    visit_ring(bx, by, ring, [&](std::int64_t j) {
      if (!admissible(i, j, f)) return;
      const double d = v_.distance(i, j, metric_);
      if (d <= eps && d > f.min_distance) out.push_back(j);
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

Neighbor nearest_brute(const DelayVectors& v, Metric metric, std::int64_t i, const NeighborFilter& f) {
  Neighbor best;
  for (std::int64_t j = 0; j < v.size(); ++j) {
    if (!admissible(i, j, f)) continue;
    const double d = v.distance(i, j, metric);
    if (d > f.min_distance) offer(best, j, d);
  }
  return best;
}

std::vector<std::int64_t> within_brute(const DelayVectors& v, Metric metric, std::int64_t i,
                                       double eps, const NeighborFilter& f) {
  std::vector<std::int64_t> out;
  for (std::int64_t j = 0; j < v.size(); ++j) {
    if (!admissible(i, j, f)) continue;
    const double d = v.distance(i, j, metric);
    if (d <= eps && d > f.min_distance) out.push_back(j);
  }
  return out;
}

}  // namespace wprs::embed
