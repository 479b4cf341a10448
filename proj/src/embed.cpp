#include "wprs/embed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include <fmt/format.h>

#include "wprs/error.hpp"
#include "wprs/stats.hpp"

namespace wprs::embed {

namespace {

std::vector<int> bin_indices(std::span<const double> x, int bins) {
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  require(*hi > *lo, ErrorCode::constant_series, "mutual information of a constant series");
  const double w = (*hi - *lo) / bins;
  std::vector<int> idx(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    idx[k] = std::min(bins - 1, static_cast<int>((x[k] - *lo) / w));
  }
  return idx;
}

double mutual_information_at(const std::vector<int>& idx, int bins, int lag) {
  const std::size_t n = idx.size() - static_cast<std::size_t>(lag);
  std::vector<double> joint(static_cast<std::size_t>(bins) * bins, 0.0);
  std::vector<double> pa(static_cast<std::size_t>(bins), 0.0), pb(static_cast<std::size_t>(bins), 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const int a = idx[k];
    const int b = idx[k + static_cast<std::size_t>(lag)];
    joint[static_cast<std::size_t>(a) * bins + b] += 1.0;
    pa[static_cast<std::size_t>(a)] += 1.0;
    pb[static_cast<std::size_t>(b)] += 1.0;
  }
  const double inv = 1.0 / static_cast<double>(n);
  double mi = 0.0;
  for (int a = 0; a < bins; ++a) {
    for (int b = 0; b < bins; ++b) {
      const double c = joint[static_cast<std::size_t>(a) * bins + b];
      if (c == 0.0) continue;
      mi += c * inv * std::log(c * static_cast<double>(n) / (pa[static_cast<std::size_t>(a)] * pb[static_cast<std::size_t>(b)]));
    }
  }
  return mi;
}

void check_mi_args(const TimeSeries& series, int max_lag, int bins) {
  require(max_lag >= 2, ErrorCode::invalid_argument, "max_lag must be >= 2");
  require(bins >= 2, ErrorCode::invalid_argument, "bins must be >= 2");
  require(series.size() > 10 * static_cast<std::size_t>(max_lag), ErrorCode::series_too_short,
          fmt::format("series length {} must exceed 10 * max_lag = {}", series.size(), 10 * max_lag));
}

MutualInformation pick_delay(std::vector<double> curve, int radius) {
  MutualInformation r;
  r.curve = std::move(curve);
  const int max_lag = static_cast<int>(r.curve.size()) - 1;
  r.radius = radius > 0 ? radius : std::max(1, max_lag / 10);
  const auto [lo, hi] = std::minmax_element(r.curve.begin() + 1, r.curve.end());
  if (*hi - *lo < 0.01 * r.curve[0]) {
    r.flat = true;
    r.delay = 1;
    return r;
  }
  for (int l = 1; l + r.radius <= max_lag; ++l) {
    bool minimum = true;
    for (int m = std::max(0, l - r.radius); m <= l + r.radius && minimum; ++m) {
      if (m != l && !(r.curve[static_cast<std::size_t>(l)] < r.curve[static_cast<std::size_t>(m)])) minimum = false;
    }
    if (minimum) {
      r.delay = l;
      return r;
    }
  }
  r.no_minimum = true;
  r.delay = max_lag;
  return r;
}

}  // namespace

MutualInformation mutual_information_delay(const TimeSeries& series, int max_lag, int bins, int radius) {
  check_mi_args(series, max_lag, bins);
  const auto idx = bin_indices(series.view(), bins);
  std::vector<double> curve(static_cast<std::size_t>(max_lag + 1));
#pragma omp parallel for schedule(dynamic)
  for (int l = 0; l <= max_lag; ++l) curve[static_cast<std::size_t>(l)] = mutual_information_at(idx, bins, l);
  return pick_delay(std::move(curve), radius);
}

MutualInformation mutual_information_delay_reference(const TimeSeries& series, int max_lag, int bins,
                                                     int radius) {
  check_mi_args(series, max_lag, bins);
  const auto idx = bin_indices(series.view(), bins);
  std::vector<double> curve(static_cast<std::size_t>(max_lag + 1));
  for (int l = 0; l <= max_lag; ++l) curve[static_cast<std::size_t>(l)] = mutual_information_at(idx, bins, l);
  return pick_delay(std::move(curve), radius);
}

namespace {

std::vector<std::int64_t> reference_points(std::int64_t limit, std::int64_t cap) {
  const std::int64_t n = cap > 0 ? std::min(limit, cap) : limit;
  std::vector<std::int64_t> out(static_cast<std::size_t>(n));
  for (std::int64_t r = 0; r < n; ++r) {
    out[static_cast<std::size_t>(r)] = static_cast<std::int64_t>(
        static_cast<long double>(r) * static_cast<long double>(limit) / static_cast<long double>(n));
  }
  return out;
}

}  // namespace

FnnResult false_nearest_neighbors(const TimeSeries& series, int delay, int d_max, const FnnOptions& opt) {
  require(d_max >= 2, ErrorCode::invalid_argument, "d_max must be >= 2");
  require(delay >= 1, ErrorCode::invalid_argument, "delay must be >= 1");
  require(opt.r_tol > 0.0 && opt.a_tol > 0.0, ErrorCode::invalid_argument, "FNN tolerances must be > 0");
  const auto x = series.view();
  const auto n = static_cast<std::int64_t>(x.size());
  require(n - static_cast<std::int64_t>(d_max) * delay >= 20, ErrorCode::insufficient_points,
          fmt::format("series length {} too short for d_max = {} at delay {}", n, d_max, delay));
  const double sigma = stats::stddev(x);
  require(sigma > 0.0, ErrorCode::constant_series, "false nearest neighbours of a constant series");

  FnnResult res;
  for (int d = 1; d <= d_max; ++d) {
    // vectors of dimension d whose (d+1)-th coordinate exists
    const DelayVectors v(x.first(static_cast<std::size_t>(n - delay)), EmbeddingSpec{delay, d});
    const BoxGrid grid(v, Metric::euclidean);
    const auto refs = reference_points(v.size(), opt.max_reference_points);
    const NeighborFilter filter{opt.theiler, -1, 1e-10 * sigma};
    const auto nref = static_cast<std::int64_t>(refs.size());
    std::int64_t valid = 0, false_nn = 0;
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : valid, false_nn)
    for (std::int64_t r = 0; r < nref; ++r) {
      const std::int64_t i = refs[static_cast<std::size_t>(r)];
      const Neighbor nb = grid.nearest(i, filter);
      if (nb.index < 0) continue;
      const std::size_t ext = static_cast<std::size_t>(d) * static_cast<std::size_t>(delay);
      const double gap = std::abs(x[static_cast<std::size_t>(i) + ext] - x[static_cast<std::size_t>(nb.index) + ext]);
      const double r_next = std::hypot(nb.distance, gap);
      ++valid;
      if (gap / nb.distance > opt.r_tol || r_next / sigma > opt.a_tol) ++false_nn;
    }
    require(valid > 0, ErrorCode::insufficient_points,
            fmt::format("no admissible neighbours in dimension {}", d));
    res.fnn_fractions.push_back(static_cast<double>(false_nn) / static_cast<double>(valid));
    if (!res.found && res.fnn_fractions.back() < opt.threshold) {
      res.found = true;
      res.dimension = d;
    }
  }
  return res;
}

std::vector<std::vector<double>> delay_embed(const TimeSeries& series, const EmbeddingSpec& spec) {
  const DelayVectors v(series.view(), spec);
  std::vector<std::vector<double>> out(static_cast<std::size_t>(v.size()));
  for (std::int64_t i = 0; i < v.size(); ++i) {
    auto& row = out[static_cast<std::size_t>(i)];
    row.resize(static_cast<std::size_t>(spec.dimension));
    for (int c = 0; c < spec.dimension; ++c) row[static_cast<std::size_t>(c)] = v.coord(i, c);
  }
  return out;
}

std::string_view to_string(LyapunovMethod m) noexcept {
  return m == LyapunovMethod::rosenstein ? "rosenstein" : "kantz";
}

LinearRegion select_linear_region(const std::vector<double>& curve) {
  LinearRegion best;
  const auto H = static_cast<std::int64_t>(curve.size()) - 1;
  if (H < 1) return best;
  std::vector<double> local(static_cast<std::size_t>(H));
  for (std::int64_t k = 0; k < H; ++k) local[static_cast<std::size_t>(k)] = curve[static_cast<std::size_t>(k + 1)] - curve[static_cast<std::size_t>(k)];

  std::int64_t best_len = 0;
  for (std::int64_t a = 1; a + 3 <= H; ++a) {
    double sk = 0.0, ss = 0.0, skk = 0.0, sks = 0.0;
    double lmin = std::numeric_limits<double>::infinity(), lmax = -lmin;
    for (std::int64_t b = a; b <= H; ++b) {
      const double k = static_cast<double>(b);
      const double s = curve[static_cast<std::size_t>(b)];
      sk += k;
      ss += s;
      skk += k * k;
      sks += k * s;
      if (b > a) {
        lmin = std::min(lmin, local[static_cast<std::size_t>(b - 1)]);
        lmax = std::max(lmax, local[static_cast<std::size_t>(b - 1)]);
      }
      const std::int64_t len = b - a + 1;
      if (len < 4 || len <= best_len) continue;
      const double m = static_cast<double>(len);
      const double slope = (m * sks - sk * ss) / (m * skk - sk * sk);
      const double tol = 0.1 * std::abs(slope);
      if (lmax - slope <= tol && slope - lmin <= tol) {
        best_len = len;
        best.lo = a;
        best.hi = b;
        best.found = true;
      }
    }
  }
  if (!best.found) {
    best.lo = H >= 2 ? 1 : 0;
    best.hi = H;
  }
  std::vector<double> xs, ys;
  for (std::int64_t k = best.lo; k <= best.hi; ++k) {
    xs.push_back(static_cast<double>(k));
    ys.push_back(curve[static_cast<std::size_t>(k)]);
  }
  const auto f = stats::least_squares(xs, ys);
  best.slope = f.slope;
  best.r2 = f.r2;
  return best;
}

namespace {

struct DivergenceSetup {
  std::int64_t limit = 0;
  std::vector<std::int64_t> refs;
};

DivergenceSetup setup_divergence(const DelayVectors& v, const LyapunovOptions& opt) {
  require(opt.horizon >= 4, ErrorCode::invalid_argument, "horizon must be >= 4");
  require(opt.theiler >= 0, ErrorCode::invalid_argument, "theiler window must be >= 0");
  require(v.size() > 10 * opt.horizon, ErrorCode::insufficient_points,
          fmt::format("{} embedded points; need more than 10 * horizon = {}", v.size(), 10 * opt.horizon));
  DivergenceSetup s;
  s.limit = v.size() - opt.horizon;
  s.refs = reference_points(s.limit, opt.max_reference_points);
  return s;
}

LyapunovResult finish(std::vector<double> sums, std::vector<std::int64_t> counts, LyapunovMethod method,
                      const EmbeddingSpec& spec, double dt, std::int64_t refs_used, ErrorCode empty_code) {
  require(refs_used > 0, empty_code, "no reference point has an admissible neighbour");
  LyapunovResult r;
  r.divergence.resize(sums.size());
  for (std::size_t k = 0; k < sums.size(); ++k) {
    require(counts[k] > 0, empty_code, fmt::format("no finite log distance at step {}", k));
    r.divergence[k] = sums[k] / static_cast<double>(counts[k]);
  }
  const auto region = select_linear_region(r.divergence);
  r.fit_lo = region.lo;
  r.fit_hi = region.hi;
  r.fit_r2 = region.r2;
  r.linear_region_found = region.found;
  r.lambda_max = region.slope / dt;
  r.method = method;
  r.embedding = spec;
  r.dt = dt;
  r.reference_points = refs_used;
  return r;
}

}  // namespace

LyapunovResult lyapunov_rosenstein(const TimeSeries& series, const EmbeddingSpec& spec,
                                   const LyapunovOptions& opt) {
  const DelayVectors v(series.view(), spec);
  const auto s = setup_divergence(v, opt);
  const auto H = static_cast<std::size_t>(opt.horizon);
  const NeighborFilter filter{opt.theiler, s.limit, 0.0};
  std::optional<BoxGrid> grid;
  if (!opt.brute_force) grid.emplace(v, Metric::euclidean);

  const auto nref = static_cast<std::int64_t>(s.refs.size());
  std::vector<std::int64_t> partner(s.refs.size(), -1);
#pragma omp parallel for schedule(dynamic, 32)
  for (std::int64_t r = 0; r < nref; ++r) {
    const std::int64_t i = s.refs[static_cast<std::size_t>(r)];
    const Neighbor nb = grid ? grid->nearest(i, filter) : nearest_brute(v, Metric::euclidean, i, filter);
    partner[static_cast<std::size_t>(r)] = nb.index;
  }

  std::vector<double> sums(H + 1, 0.0);
  std::vector<std::int64_t> counts(H + 1, 0);
  std::int64_t used = 0;
  for (std::size_t r = 0; r < s.refs.size(); ++r) {
    const std::int64_t j = partner[r];
    if (j < 0) continue;
    ++used;
    const std::int64_t i = s.refs[r];
    for (std::size_t k = 0; k <= H; ++k) {
      const auto dk = static_cast<std::int64_t>(k);
      const double d = v.distance(i + dk, j + dk, Metric::euclidean);
      if (d > 0.0) {
        sums[k] += std::log(d);
        ++counts[k];
      }
    }
  }
  return finish(std::move(sums), std::move(counts), LyapunovMethod::rosenstein, spec, series.dt, used,
                ErrorCode::insufficient_neighbors);
}

LyapunovResult lyapunov_kantz(const TimeSeries& series, const EmbeddingSpec& spec, const LyapunovOptions& opt) {
  require(opt.epsilon_frac > 0.0, ErrorCode::invalid_argument, "epsilon_frac must be > 0");
  require(opt.max_neighbors >= 1, ErrorCode::invalid_argument, "max_neighbors must be >= 1");
  const DelayVectors v(series.view(), spec);
  const auto s = setup_divergence(v, opt);
  const auto H = static_cast<std::size_t>(opt.horizon);
  const double eps = opt.epsilon_frac * stats::stddev(series.view());
  const NeighborFilter filter{opt.theiler, s.limit, -1.0};
  std::optional<BoxGrid> grid;
  if (!opt.brute_force) grid.emplace(v, Metric::maxnorm);

  const auto nref = static_cast<std::int64_t>(s.refs.size());
  // per reference point: log of the mean neighbour distance at each step
  std::vector<double> logs(s.refs.size() * (H + 1), std::numeric_limits<double>::quiet_NaN());
  std::vector<char> has(s.refs.size(), 0);
#pragma omp parallel for schedule(dynamic, 32)
  for (std::int64_t r = 0; r < nref; ++r) {
    const std::int64_t i = s.refs[static_cast<std::size_t>(r)];
    auto nbs = grid ? grid->within(i, eps, filter) : within_brute(v, Metric::maxnorm, i, eps, filter);
    if (nbs.empty()) continue;
    if (static_cast<std::int64_t>(nbs.size()) > opt.max_neighbors) nbs.resize(static_cast<std::size_t>(opt.max_neighbors));
    has[static_cast<std::size_t>(r)] = 1;
    for (std::size_t k = 0; k <= H; ++k) {
      const auto dk = static_cast<std::int64_t>(k);
      double acc = 0.0;
      for (auto j : nbs) acc += v.distance(i + dk, j + dk, Metric::maxnorm);
      acc /= static_cast<double>(nbs.size());
      if (acc > 0.0) logs[static_cast<std::size_t>(r) * (H + 1) + k] = std::log(acc);
    }
  }

  std::vector<double> sums(H + 1, 0.0);
  std::vector<std::int64_t> counts(H + 1, 0);
  std::int64_t used = 0;
  for (std::size_t r = 0; r < s.refs.size(); ++r) {
    if (!has[r]) continue;
    ++used;
    for (std::size_t k = 0; k <= H; ++k) {
      const double l = logs[r * (H + 1) + k];
      if (std::isnan(l)) continue;
      sums[k] += l;
      ++counts[k];
    }
  }
  return finish(std::move(sums), std::move(counts), LyapunovMethod::kantz, spec, series.dt, used,
                ErrorCode::empty_neighborhoods);
}

Classification classify(const LyapunovResult& r, double threshold) {
  require(threshold > 0.0, ErrorCode::invalid_argument, "classification threshold must be > 0");
  Classification c;
  const bool above = r.lambda_max > threshold;
  c.chaotic = above && r.linear_region_found && r.fit_r2 >= kMinLinearR2;
  c.ambiguous = above && !c.chaotic;
  return c;
}

}  // namespace wprs::embed
