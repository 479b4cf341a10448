#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "wprs/neighbors.hpp"
#include "wprs/series.hpp"

namespace wprs::embed {

struct MutualInformation {
  int delay = 1;
  std::vector<double> curve;  // I(lag), lag = 0..max_lag
  bool no_minimum = false;    // no strict local minimum; delay = max_lag
  bool flat = false;          // curve range < 1% of I(0); delay = 1
  int radius = 1;
};

// Histogram mutual information with `bins` equal-width bins. The delay is the
// first lag l in 1..max_lag-radius with I(l) strictly below every I(m),
// 0 <= |m - l| <= radius. radius <= 0 selects max(1, max_lag / 10), which
// steps over the ripple equal-width bins put on smooth signals.
MutualInformation mutual_information_delay(const TimeSeries& series, int max_lag, int bins, int radius = 0);
MutualInformation mutual_information_delay_reference(const TimeSeries& series, int max_lag, int bins,
                                                     int radius = 0);

struct FnnOptions {
  double r_tol = 10.0;  // |x_{i+d tau} - x_{j+d tau}| / R_d
  double a_tol = 2.0;   // R_{d+1} / stddev
  double threshold = 0.01;
  std::int64_t theiler = 0;
  std::int64_t max_reference_points = 20000;
};

struct FnnResult {
  int dimension = 0;  // 0 when no d <= d_max qualifies
  bool found = false;
  std::vector<double> fnn_fractions;  // index d - 1
};

FnnResult false_nearest_neighbors(const TimeSeries& series, int delay, int d_max,
                                  const FnnOptions& opt = {});

std::vector<std::vector<double>> delay_embed(const TimeSeries& series, const EmbeddingSpec& spec);

enum class LyapunovMethod { rosenstein, kantz };
std::string_view to_string(LyapunovMethod m) noexcept;

struct LyapunovOptions {
  std::int64_t theiler = 0;
  std::int64_t horizon = 20;
  std::int64_t max_reference_points = 4000;
  double epsilon_frac = 0.05;     // kantz
  std::int64_t max_neighbors = 32;  // kantz
  bool brute_force = false;       // neighbour search without the grid
};

struct LinearRegion {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  double slope = 0.0;
  double r2 = 0.0;
  bool found = false;
};

// Longest window [a, b], a >= 1, b - a >= 3, whose successive slopes all lie
// within +-10% of the window's least-squares slope; earliest on ties. Falls
// back to the full range [1, end] with found = false.
LinearRegion select_linear_region(const std::vector<double>& curve);

struct LyapunovResult {
  std::vector<double> divergence;  // S(dk), dk = 0..horizon
  double lambda_max = 0.0;         // slope / dt
  std::int64_t fit_lo = 0;
  std::int64_t fit_hi = 0;
  double fit_r2 = 0.0;
  bool linear_region_found = false;
  LyapunovMethod method = LyapunovMethod::rosenstein;
  EmbeddingSpec embedding;
  double dt = 1.0;
  std::int64_t reference_points = 0;
};

LyapunovResult lyapunov_rosenstein(const TimeSeries& series, const EmbeddingSpec& spec,
                                   const LyapunovOptions& opt = {});
LyapunovResult lyapunov_kantz(const TimeSeries& series, const EmbeddingSpec& spec,
                              const LyapunovOptions& opt = {});

inline constexpr double kDefaultClassifyThreshold = 0.01;
inline constexpr double kMinLinearR2 = 0.95;

struct Classification {
  bool chaotic = false;
  bool ambiguous = false;  // lambda above threshold but no acceptable linear fit
};

Classification classify(const LyapunovResult& r, double threshold = kDefaultClassifyThreshold);

}  // namespace wprs::embed
