#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "wprs/embed.hpp"
#include "wprs/recur.hpp"
#include "wprs/series.hpp"

namespace wprs::io {

// Binary layout, little-endian:
//   0  "WPRS"   4  u16 version   6  10 reserved zero bytes
//   16 u64 count   24 f64 dt   32 count * f64
inline constexpr std::uint16_t kSeriesVersion = 1;
inline constexpr std::size_t kHeaderBytes = 32;

void write_series(const std::filesystem::path& path, const TimeSeries& series);
TimeSeries read_series(const std::filesystem::path& path);

// <series>.json next to the binary: observable, model, params, dt, count.
std::filesystem::path sidecar_path(const std::filesystem::path& series_path);
void write_sidecar(const std::filesystem::path& series_path, const TimeSeries& series);

// Loads the binary and, when present, the sidecar metadata.
TimeSeries load_series(const std::filesystem::path& path);

void write_csv(const std::filesystem::path& path, const TimeSeries& series);

// Text exports. Each starts with "# key = value" lines echoing `options`.
using Options = std::vector<std::pair<std::string, std::string>>;

void write_histogram(const std::filesystem::path& path, const recur::ReturnTimeHistogram& h,
                     const Options& options);
void write_density(const std::filesystem::path& path, const recur::DensityHistogram& d,
                   const Options& options);
void write_pairs(const std::filesystem::path& path,
                 const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs, const Options& options);
void write_points(const std::filesystem::path& path, const std::vector<std::pair<double, double>>& points,
                  const Options& options);
void write_curve(const std::filesystem::path& path, const std::vector<double>& curve, std::int64_t first_index,
                 const Options& options);

// Reads back a two-column (tau, count) export.
recur::ReturnTimeHistogram read_histogram(const std::filesystem::path& path, double dt);

}  // namespace wprs::io
