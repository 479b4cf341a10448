#include "wprs/recur.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "wprs/error.hpp"
#include "wprs/stats.hpp"

namespace wprs::recur {

void Cell::validate() const {
  require(std::isfinite(lower) && std::isfinite(upper) && lower < upper, ErrorCode::invalid_argument,
          fmt::format("cell [{}, {}) needs lower < upper", lower, upper));
}

Cell median_cell(std::span<const double> values, double width) {
  require(!values.empty(), ErrorCode::invalid_argument, "median of an empty series");
  require(width > 0.0, ErrorCode::invalid_argument, "cell width must be > 0");
  std::vector<double> v(values.begin(), values.end());
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  double med = v[mid];
  if (v.size() % 2 == 0) {
    const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    med = 0.5 * (med + lo);
  }
  return {med - 0.5 * width, med + 0.5 * width};
}

std::vector<std::int64_t> cell_events(std::span<const double> values, const Cell& cell, Mode mode) {
  cell.validate();
  std::vector<std::int64_t> ev;
  bool prev_in = false;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const bool in = cell.contains(values[k]);
    if (in && (mode == Mode::visit || !prev_in)) ev.push_back(static_cast<std::int64_t>(k));
    prev_in = in;
  }
  return ev;
}

double ReturnTimeHistogram::mean_tau() const {
  if (total_events == 0) return 0.0;
  double acc = 0.0;
  for (const auto& [tau, c] : counts) acc += static_cast<double>(tau) * static_cast<double>(c);
  return acc / static_cast<double>(total_events);
}

ReturnTimeHistogram return_times_from_events(std::span<const std::int64_t> events, int order,
                                             double dt, Mode mode) {
  require(order == 1 || order == 2, ErrorCode::invalid_argument, "return order must be 1 or 2");
  require(events.size() > static_cast<std::size_t>(order), ErrorCode::no_events,
          fmt::format("{} cell events; need at least {}", events.size(), order + 1));
  ReturnTimeHistogram h;
  h.dt = dt;
  h.mode = mode;
  h.order = order;
  for (std::size_t k = static_cast<std::size_t>(order); k < events.size(); ++k) {
    ++h.counts[events[k] - events[k - static_cast<std::size_t>(order)]];
    ++h.total_events;
  }
  return h;
}

ReturnTimeHistogram first_return_times(const TimeSeries& series, const Cell& cell, Mode mode) {
  require(series.size() >= 2, ErrorCode::series_too_short, "series length must be >= 2");
  const auto ev = cell_events(series.view(), cell, mode);
  return return_times_from_events(ev, 1, series.dt, mode);
}

ReturnTimeHistogram second_return_times(const TimeSeries& series, const Cell& cell, Mode mode) {
  require(series.size() >= 2, ErrorCode::series_too_short, "series length must be >= 2");
  const auto ev = cell_events(series.view(), cell, mode);
  return return_times_from_events(ev, 2, series.dt, mode);
}

ExponentialFit fit_exponential(const ReturnTimeHistogram& h) {
  require(h.total_events >= kMinEventsForFit, ErrorCode::insufficient_events,
          fmt::format("{} return times; need at least {}", h.total_events, kMinEventsForFit));
  require(h.counts.size() >= 2, ErrorCode::degenerate_support,
          "single-valued return-time support; exponential fit undefined");

  ExponentialFit fit;
  const double total = static_cast<double>(h.total_events);
  const double mean_tau = h.mean_tau();
  fit.rate = 1.0 / (mean_tau * h.dt);

  // Empirical CDF is a step function on the integer lattice; between support
  // points it is flat while the model CDF rises, so the extremes sit at each
  // support point and one lattice step before the next.
  double cum = 0.0;
  double ks = 0.0;
  for (const auto& [tau, c] : h.counts) {
    const double before = 1.0 - std::exp(-fit.rate * h.dt * static_cast<double>(tau - 1));
    ks = std::max(ks, std::abs(cum - before));
    cum += static_cast<double>(c) / total;
    const double at = 1.0 - std::exp(-fit.rate * h.dt * static_cast<double>(tau));
    ks = std::max(ks, std::abs(cum - at));
  }
  fit.ks_stat = std::min(1.0, ks);

  fit.bin_width = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(mean_tau / 10.0)));
  std::map<std::int64_t, std::int64_t> binned;
  for (const auto& [tau, c] : h.counts) binned[(tau - 1) / fit.bin_width] += c;
  std::vector<double> xs, ys;
  for (const auto& [b, c] : binned) {
    if (c < kMinBinCount) continue;
    const double w = static_cast<double>(fit.bin_width);
    xs.push_back((static_cast<double>(b) * w + 0.5 * (w + 1.0)) * h.dt);
    ys.push_back(std::log(static_cast<double>(c)));
  }
  fit.bins_used = static_cast<int>(xs.size());
  if (xs.size() < 3) {
    fit.loglin_r2 = std::numeric_limits<double>::quiet_NaN();
    fit.loglin_slope = std::numeric_limits<double>::quiet_NaN();
  } else {
    const auto lf = stats::least_squares(xs, ys);
    fit.loglin_r2 = lf.r2;
    fit.loglin_slope = lf.slope;
  }
  return fit;
}

std::int64_t support_sparsity(const ReturnTimeHistogram& h, double mass) {
  require(mass > 0.0 && mass < 1.0, ErrorCode::invalid_argument, "mass must lie in (0, 1)");
  std::vector<std::int64_t> c;
  c.reserve(h.counts.size());
  for (const auto& kv : h.counts) c.push_back(kv.second);
  std::sort(c.begin(), c.end(), std::greater<>());
  const double need = mass * static_cast<double>(h.total_events);
  double acc = 0.0;
  std::int64_t k = 0;
  for (auto v : c) {
    acc += static_cast<double>(v);
    ++k;
    if (acc >= need) break;
  }
  return k;
}

DensityHistogram invariant_density(const TimeSeries& series, double bin_width) {
  require(bin_width > 0.0 && std::isfinite(bin_width), ErrorCode::invalid_argument,
          "bin width must be > 0");
  require(!series.values.empty(), ErrorCode::series_too_short, "empty series");
  const auto [lo, hi] = std::minmax_element(series.values.begin(), series.values.end());
  DensityHistogram d;
  d.bin_width = bin_width;
  d.origin = *lo;
  const auto nbins = static_cast<std::size_t>(std::floor((*hi - *lo) / bin_width)) + 1;
  d.counts.assign(nbins, 0);
  for (double v : series.values) {
    auto b = static_cast<std::size_t>(std::floor((v - d.origin) / bin_width));
    ++d.counts[std::min(b, nbins - 1)];
  }
  d.normalization = 1.0 / (static_cast<double>(series.size()) * bin_width);
  return d;
}

std::vector<std::pair<double, double>> return_map(const TimeSeries& series, bool bypass_maxima) {
  const auto& x = series.values;
  std::vector<std::pair<double, double>> out;
  if (bypass_maxima) {
    require(x.size() >= 2, ErrorCode::fewer_than_two_maxima, "need at least two samples");
    for (std::size_t k = 0; k + 1 < x.size(); ++k) out.emplace_back(x[k], x[k + 1]);
    return out;
  }
  require(x.size() >= 3, ErrorCode::series_too_short, "series length must be >= 3");
  std::vector<double> maxima;
  for (std::size_t k = 1; k + 1 < x.size(); ++k) {
    if (x[k - 1] < x[k] && x[k] >= x[k + 1]) maxima.push_back(x[k]);
  }
  require(maxima.size() >= 2, ErrorCode::fewer_than_two_maxima,
          fmt::format("{} local maxima found", maxima.size()));
  for (std::size_t k = 0; k + 1 < maxima.size(); ++k) out.emplace_back(maxima[k], maxima[k + 1]);
  return out;
}

namespace {

struct RpSetup {
  RecurrencePlotData data;
  std::vector<double> window;  // samples the distance reads from
  embed::EmbeddingSpec spec{1, 1};
};

RpSetup prepare_rp(const TimeSeries& series, std::int64_t start, std::int64_t len, double frac,
                   std::optional<embed::EmbeddingSpec> emb) {
  require(frac > 0.0 && std::isfinite(frac), ErrorCode::invalid_argument, "epsilon_frac must be > 0");
  require(len >= 2, ErrorCode::window_too_small, fmt::format("window length {} < 2", len));
  require(start >= 0, ErrorCode::invalid_argument, "window start must be >= 0");
  RpSetup s;
  if (emb) {
    emb->validate();
    s.spec = *emb;
  }
  const std::int64_t reach = static_cast<std::int64_t>(s.spec.dimension - 1) * s.spec.delay;
  require(start + len + reach <= static_cast<std::int64_t>(series.size()), ErrorCode::window_too_small,
          fmt::format("window [{}, {}) plus embedding reach {} exceeds series length {}", start,
                      start + len, reach, series.size()));
  s.window.assign(series.values.begin() + start, series.values.begin() + start + len + reach);
  s.data.window_start = start;
  s.data.window_len = len;
  s.data.embedding = emb;
  s.data.epsilon = frac * stats::stddev(std::span<const double>(s.window.data(), static_cast<std::size_t>(len)));
  return s;
}

}  // namespace

RecurrencePlotData recurrence_matrix(const TimeSeries& series, std::int64_t window_start,
                                     std::int64_t window_len, double epsilon_frac,
                                     std::optional<embed::EmbeddingSpec> embedding) {
  auto s = prepare_rp(series, window_start, window_len, epsilon_frac, embedding);
  const embed::DelayVectors v(s.window, s.spec);
  const double eps = s.data.epsilon;
  const std::int64_t n = window_len;
  std::vector<std::vector<std::int64_t>> rows(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i) {
    auto& row = rows[static_cast<std::size_t>(i)];
    for (std::int64_t j = i + 1; j < n; ++j) {
      if (v.distance(i, j, embed::Metric::maxnorm) <= eps) row.push_back(j);
    }
  }
  std::size_t total = 0;
  for (const auto& r : rows) total += r.size();
  s.data.pairs.reserve(total);
  for (std::int64_t i = 0; i < n; ++i) {
    for (auto j : rows[static_cast<std::size_t>(i)]) s.data.pairs.emplace_back(window_start + i, window_start + j);
  }
  return std::move(s.data);
}

RecurrencePlotData recurrence_matrix_reference(const TimeSeries& series, std::int64_t window_start,
                                               std::int64_t window_len, double epsilon_frac,
                                               std::optional<embed::EmbeddingSpec> embedding) {
  auto s = prepare_rp(series, window_start, window_len, epsilon_frac, embedding);
  const auto d = static_cast<std::size_t>(s.spec.dimension);
  const auto tau = static_cast<std::size_t>(s.spec.delay);
  for (std::size_t i = 0; i < static_cast<std::size_t>(window_len); ++i) {
    for (std::size_t j = i + 1; j < static_cast<std::size_t>(window_len); ++j) {
      double dist = 0.0;
      for (std::size_t c = 0; c < d; ++c) dist = std::max(dist, std::abs(s.window[i + c * tau] - s.window[j + c * tau]));
      if (dist <= s.data.epsilon) {
        s.data.pairs.emplace_back(window_start + static_cast<std::int64_t>(i),
                                  window_start + static_cast<std::int64_t>(j));
      }
    }
  }
  return std::move(s.data);
}

}  // namespace wprs::recur
