#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "wprs/neighbors.hpp"
#include "wprs/series.hpp"

namespace wprs::recur {

// Half-open value interval [lower, upper).
struct Cell {
  double lower = 0.0;
  double upper = 1.0;

  void validate() const;
  bool contains(double x) const noexcept { return x >= lower && x < upper; }
};

// Cell of the given width centred on the median of the series.
Cell median_cell(std::span<const double> values, double width);

// entry: event when the series enters the cell (in at k, out at k-1; index 0
// counts if inside). visit: every in-cell sample is an event.
enum class Mode { entry, visit };

std::vector<std::int64_t> cell_events(std::span<const double> values, const Cell& cell, Mode mode);

struct ReturnTimeHistogram {
  std::map<std::int64_t, std::int64_t> counts;  // tau (steps) -> count
  std::int64_t total_events = 0;
  double dt = 1.0;
  Mode mode = Mode::entry;
  int order = 1;  // 1: successive events, 2: every other event

  double mean_tau() const;
};

ReturnTimeHistogram first_return_times(const TimeSeries& series, const Cell& cell,
                                       Mode mode = Mode::entry);
ReturnTimeHistogram second_return_times(const TimeSeries& series, const Cell& cell,
                                        Mode mode = Mode::entry);

// Histogram of event-index differences at the given lag (1 or 2).
ReturnTimeHistogram return_times_from_events(std::span<const std::int64_t> events, int order,
                                             double dt, Mode mode);

struct ExponentialFit {
  double rate = 0.0;       // 1 / mean(tau dt)
  double ks_stat = 0.0;    // sup over the tau lattice of |F_emp - F_exp|
  double loglin_r2 = 0.0;  // NaN when fewer than 3 bins qualify
  double loglin_slope = 0.0;
  std::int64_t bin_width = 1;  // in steps
  int bins_used = 0;
};

inline constexpr std::int64_t kMinEventsForFit = 100;
inline constexpr std::int64_t kMinBinCount = 10;

// log-linear R^2 is computed on tau rebinned to width ceil(mean tau / 10),
// keeping bins with at least kMinBinCount events.
ExponentialFit fit_exponential(const ReturnTimeHistogram& h);

// Fewest distinct tau values holding at least `mass` of all events.
std::int64_t support_sparsity(const ReturnTimeHistogram& h, double mass);

struct DensityHistogram {
  double bin_width = 1.0;
  double origin = 0.0;  // left edge of bin 0
  std::vector<std::int64_t> counts;
  double normalization = 1.0;  // sum counts * bin_width * normalization = 1

  double density(std::size_t b) const { return static_cast<double>(counts[b]) * normalization; }
  double center(std::size_t b) const { return origin + (static_cast<double>(b) + 0.5) * bin_width; }
};

DensityHistogram invariant_density(const TimeSeries& series, double bin_width);

// Pairs (M_k, M_{k+1}) of successive strict local maxima
// (x[k-1] < x[k] >= x[k+1]). With bypass_maxima the series is taken as
// already discrete and every (x_k, x_{k+1}) is emitted.
std::vector<std::pair<double, double>> return_map(const TimeSeries& series, bool bypass_maxima = false);

struct RecurrencePlotData {
  std::int64_t window_start = 0;
  std::int64_t window_len = 0;
  double epsilon = 0.0;
  std::optional<embed::EmbeddingSpec> embedding;
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;  // i < j, sorted
};

inline constexpr std::int64_t kDefaultRecurrenceWindow = 4000;

// eps = epsilon_frac * stddev of the windowed values. Distance is |x_i - x_j|,
// or the max-norm over delay vectors when an embedding is given.
RecurrencePlotData recurrence_matrix(const TimeSeries& series, std::int64_t window_start,
                                     std::int64_t window_len, double epsilon_frac,
                                     std::optional<embed::EmbeddingSpec> embedding = std::nullopt);

RecurrencePlotData recurrence_matrix_reference(const TimeSeries& series, std::int64_t window_start,
                                               std::int64_t window_len, double epsilon_frac,
                                               std::optional<embed::EmbeddingSpec> embedding = std::nullopt);

}  // namespace wprs::recur
