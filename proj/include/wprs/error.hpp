#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wprs {

enum class ErrorCode {
  invalid_argument,
  truncation_insufficient,
  cap_exceeded,
  dimension_mismatch,
  no_convergence,
  no_events,
  insufficient_events,
  degenerate_support,
  constant_series,
  insufficient_points,
  series_too_short,
  insufficient_neighbors,
  empty_neighborhoods,
  window_too_small,
  fewer_than_two_maxima,
  io,
  format,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure the library reports carries one of the codes above so callers
// (and the CLI exit-status mapping) can branch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::truncation_insufficient: return "truncation-insufficient";
    case ErrorCode::cap_exceeded: return "cap-exceeded";
    case ErrorCode::dimension_mismatch: return "dimension-mismatch";
    case ErrorCode::no_convergence: return "no-convergence";
    case ErrorCode::no_events: return "no-events";
    case ErrorCode::insufficient_events: return "insufficient-events";
    case ErrorCode::degenerate_support: return "degenerate-support";
    case ErrorCode::constant_series: return "constant-series";
    case ErrorCode::insufficient_points: return "insufficient-points";
    case ErrorCode::series_too_short: return "series-too-short";
    case ErrorCode::insufficient_neighbors: return "insufficient-neighbors";
    case ErrorCode::empty_neighborhoods: return "empty-neighborhoods";
    case ErrorCode::window_too_small: return "window-too-small";
    case ErrorCode::fewer_than_two_maxima: return "fewer-than-two-maxima";
    case ErrorCode::io: return "io";
    case ErrorCode::format: return "format";
  }
  return "unknown";
}

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) throw Error(code, what);
}

}  // namespace wprs
