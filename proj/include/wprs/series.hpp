#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace wprs {

// Uniformly sampled real observable. Sample k sits at time k * dt; "tau"
// throughout the analysis code means a sample-index difference.
struct TimeSeries {
  double dt = 1.0;
  std::vector<double> values;
  std::string observable;
  std::string model;
  std::map<std::string, double> params;

  std::size_t size() const noexcept { return values.size(); }
  std::span<const double> view() const noexcept { return values; }

  // Throws invalid_argument unless dt > 0 and every value is finite.
  void validate() const;
};

}  // namespace wprs
