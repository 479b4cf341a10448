#include "wprs/series_io.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "wprs/error.hpp"

namespace wprs {

void TimeSeries::validate() const {
  require(dt > 0.0 && std::isfinite(dt), ErrorCode::invalid_argument, "dt must be > 0");
  for (std::size_t k = 0; k < values.size(); ++k) {
    require(std::isfinite(values[k]), ErrorCode::invalid_argument, fmt::format("non-finite value at {}", k));
  }
}

}  // namespace wprs

namespace wprs::io {

namespace fs = std::filesystem;

namespace {

template <class U>
void put_le(std::vector<unsigned char>& buf, std::size_t at, U v) {
  for (std::size_t b = 0; b < sizeof(U); ++b) buf[at + b] = static_cast<unsigned char>((v >> (8 * b)) & 0xff);
}

template <class U>
U get_le(const unsigned char* p) {
  U v = 0;
  for (std::size_t b = 0; b < sizeof(U); ++b) v |= static_cast<U>(p[b]) << (8 * b);
  return v;
}

std::ofstream open_out(const fs::path& path, std::ios::openmode mode = std::ios::out) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, mode | std::ios::trunc);
  require(static_cast<bool>(out), ErrorCode::io, fmt::format("cannot open {} for writing", path.string()));
  return out;
}

std::string header(const Options& options) {
  std::string h;
  for (const auto& [k, v] : options) h += fmt::format("# {} = {}\n", k, v);
  return h;
}

void write_text(const fs::path& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
  require(static_cast<bool>(out), ErrorCode::io, fmt::format("write to {} failed", path.string()));
}

}  // namespace

void write_series(const fs::path& path, const TimeSeries& series) {
  series.validate();
  std::vector<unsigned char> buf(kHeaderBytes + 8 * series.size(), 0);
  std::memcpy(buf.data(), "WPRS", 4);
  put_le<std::uint16_t>(buf, 4, kSeriesVersion);
  put_le<std::uint64_t>(buf, 16, series.size());
  put_le<std::uint64_t>(buf, 24, std::bit_cast<std::uint64_t>(series.dt));
  for (std::size_t k = 0; k < series.size(); ++k) {
    put_le<std::uint64_t>(buf, kHeaderBytes + 8 * k, std::bit_cast<std::uint64_t>(series.values[k]));
  }
  auto out = open_out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  require(static_cast<bool>(out), ErrorCode::io, fmt::format("write to {} failed", path.string()));
}

TimeSeries read_series(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::io, fmt::format("cannot open {}", path.string()));
  std::array<unsigned char, kHeaderBytes> head{};
  in.read(reinterpret_cast<char*>(head.data()), kHeaderBytes);
  require(in.gcount() == static_cast<std::streamsize>(kHeaderBytes), ErrorCode::format,
          fmt::format("{}: truncated header", path.string()));
  require(std::memcmp(head.data(), "WPRS", 4) == 0, ErrorCode::format, fmt::format("{}: bad magic", path.string()));
  const auto version = get_le<std::uint16_t>(head.data() + 4);
  require(version == kSeriesVersion, ErrorCode::format,
          fmt::format("{}: unsupported version {}", path.string(), version));
  const auto count = get_le<std::uint64_t>(head.data() + 16);
  TimeSeries s;
  s.dt = std::bit_cast<double>(get_le<std::uint64_t>(head.data() + 24));
  const auto size = fs::file_size(path);
  require(size == kHeaderBytes + 8 * count, ErrorCode::format,
          fmt::format("{}: {} bytes, header announces {} values", path.string(), size, count));
  std::vector<unsigned char> payload(8 * count);
  in.read(reinterpret_cast<char*>(payload.data()), static_cast<std::streamsize>(payload.size()));
  require(static_cast<bool>(in), ErrorCode::io, fmt::format("{}: short read", path.string()));
  s.values.resize(count);
  for (std::size_t k = 0; k < count; ++k) s.values[k] = std::bit_cast<double>(get_le<std::uint64_t>(payload.data() + 8 * k));
  s.validate();
  return s;
}

fs::path sidecar_path(const fs::path& series_path) {
  fs::path p = series_path;
  p += ".json";
  return p;
}

void write_sidecar(const fs::path& series_path, const TimeSeries& series) {
  nlohmann::ordered_json j;
  j["format"] = "WPRS";
  j["version"] = kSeriesVersion;
  j["count"] = series.size();
  j["dt"] = series.dt;
  j["observable"] = series.observable;
  j["model"] = series.model;
  j["params"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : series.params) j["params"][k] = v;
  write_text(sidecar_path(series_path), j.dump(2) + "\n");
}

TimeSeries load_series(const fs::path& path) {
  TimeSeries s = read_series(path);
  const auto side = sidecar_path(path);
  if (!fs::exists(side)) return s;
  std::ifstream in(side);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::format, fmt::format("{}: {}", side.string(), e.what()));
  }
  s.observable = j.value("observable", "");
  s.model = j.value("model", "");
  if (j.contains("params")) {
    for (const auto& [k, v] : j["params"].items()) {
      if (v.is_number()) s.params[k] = v.get<double>();
    }
  }
  return s;
}

void write_csv(const fs::path& path, const TimeSeries& series) {
  std::string text = "t,value\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    text += fmt::format("{},{}\n", static_cast<double>(k) * series.dt, series.values[k]);
  }
  write_text(path, text);
}

void write_histogram(const fs::path& path, const recur::ReturnTimeHistogram& h, const Options& options) {
  std::string text = header(options);
  text += "# tau count\n";
  for (const auto& [tau, c] : h.counts) text += fmt::format("{} {}\n", tau, c);
  write_text(path, text);
}

void write_density(const fs::path& path, const recur::DensityHistogram& d, const Options& options) {
  std::string text = header(options);
  text += "# bin_center count density\n";
  for (std::size_t b = 0; b < d.counts.size(); ++b) {
    text += fmt::format("{} {} {}\n", d.center(b), d.counts[b], d.density(b));
  }
  write_text(path, text);
}

void write_pairs(const fs::path& path, const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs,
                 const Options& options) {
  std::string text = header(options);
  text += "# i j\n";
  for (const auto& [i, j] : pairs) text += fmt::format("{} {}\n", i, j);
  write_text(path, text);
}

void write_points(const fs::path& path, const std::vector<std::pair<double, double>>& points, const Options& options) {
  std::string text = header(options);
  text += "# x y\n";
  for (const auto& [x, y] : points) text += fmt::format("{} {}\n", x, y);
  write_text(path, text);
}

void write_curve(const fs::path& path, const std::vector<double>& curve, std::int64_t first_index,
                 const Options& options) {
  std::string text = header(options);
  text += "# k value\n";
  for (std::size_t k = 0; k < curve.size(); ++k) {
    text += fmt::format("{} {}\n", first_index + static_cast<std::int64_t>(k), curve[k]);
  }
  write_text(path, text);
}

recur::ReturnTimeHistogram read_histogram(const fs::path& path, double dt) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::io, fmt::format("cannot open {}", path.string()));
  recur::ReturnTimeHistogram h;
  h.dt = dt;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::int64_t tau = 0, c = 0;
    require(static_cast<bool>(ls >> tau >> c), ErrorCode::format, fmt::format("{}: bad line '{}'", path.string(), line));
    h.counts[tau] += c;
    h.total_events += c;
  }
  return h;
}

}  // namespace wprs::io
