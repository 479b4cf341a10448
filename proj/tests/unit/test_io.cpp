#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>

#include <doctest.h>

#include "wprs/error.hpp"
#include "wprs/series_io.hpp"

namespace fs = std::filesystem;
using namespace wprs;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "wprs_test_io";
  fs::create_directories(dir);
  return dir / name;
}

std::vector<unsigned char> bytes_of(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("series round trip is bit exact") {
  TimeSeries s;
  s.dt = 1e-3;
  s.values = {0.0, -0.0, 1.0 / 3.0, std::numeric_limits<double>::denorm_min(), 1e308, -2.5e-300};
  s.observable = "x";
  s.model = "kerr";
  s.params = {{"nu", 1.0}};
  const auto p = scratch("rt.wprs");
  io::write_series(p, s);
  io::write_sidecar(p, s);
  const auto r = io::load_series(p);
  REQUIRE(r.size() == s.size());
  CHECK(std::memcmp(r.values.data(), s.values.data(), s.size() * sizeof(double)) == 0);
  CHECK(r.dt == s.dt);
  CHECK(r.observable == "x");
  CHECK(r.model == "kerr");
  CHECK(r.params.at("nu") == 1.0);
}

TEST_CASE("header layout") {
  TimeSeries s;
  s.dt = 0.5;
  s.values = {1.0, 2.0};
  const auto p = scratch("hdr.wprs");
  io::write_series(p, s);
  const auto b = bytes_of(p);
  REQUIRE(b.size() == io::kHeaderBytes + 16);
  CHECK(std::memcmp(b.data(), "WPRS", 4) == 0);
  CHECK(b[4] == 1);
  CHECK(b[5] == 0);
  for (int i = 6; i < 16; ++i) CHECK(b[static_cast<std::size_t>(i)] == 0);
  CHECK(b[16] == 2);
  double dt = 0.0;
  std::memcpy(&dt, b.data() + 24, 8);
  CHECK(dt == 0.5);
}

TEST_CASE("corrupt files are rejected") {
  TimeSeries s;
  s.values = {1.0, 2.0, 3.0};
  const auto p = scratch("bad.wprs");
  io::write_series(p, s);
  fs::resize_file(p, fs::file_size(p) - 4);
  CHECK_THROWS_AS(io::read_series(p), Error);

  {
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    f << "NOPE and some more bytes to pass the header length";
  }
  CHECK_THROWS_AS(io::read_series(p), Error);
  CHECK_THROWS_AS(io::read_series(scratch("missing.wprs")), Error);
}

TEST_CASE("histogram export reads back") {
  TimeSeries s;
  s.dt = 0.1;
  for (int k = 0; k < 5000; ++k) s.values.push_back(std::sin(0.37 * k) * std::cos(0.0519 * k));
  const recur::Cell c{-0.1, 0.1};
  const auto h = recur::first_return_times(s, c, recur::Mode::entry);
  const auto p = scratch("h.txt");
  io::write_histogram(p, h, {{"task", "f1"}, {"cell", "-0.1:0.1"}});
  std::ifstream f(p);
  std::string first;
  std::getline(f, first);
  CHECK(first == "# task = f1");
  const auto r = io::read_histogram(p, s.dt);
  CHECK(r.counts == h.counts);
  CHECK(r.total_events == h.total_events);
}
