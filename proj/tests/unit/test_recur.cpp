#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "wprs/error.hpp"
#include "wprs/recur.hpp"

using namespace wprs;
using namespace wprs::recur;

namespace {

TimeSeries make(std::vector<double> v, double dt = 1.0) {
  TimeSeries s;
  s.dt = dt;
  s.values = std::move(v);
  return s;
}

TimeSeries sine(std::size_t n, double period) {
  std::vector<double> v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = std::sin(2.0 * std::numbers::pi * static_cast<double>(k) / period);
  return make(std::move(v));
}

TimeSeries golden_rotation(std::size_t n) {
  const double theta = (std::sqrt(5.0) - 1.0) / 2.0;
  std::vector<double> v(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double x = static_cast<double>(k) * theta;
    v[k] = x - std::floor(x);
  }
  return make(std::move(v));
}

// indicator series: 1 at event times of a Bernoulli(p) process
TimeSeries bernoulli_events(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution hit(p);
  std::vector<double> v(n, 0.0);
  for (auto& x : v) x = hit(rng) ? 1.0 : 0.0;
  return make(std::move(v));
}

}  // namespace

TEST_CASE("cells and events") {
  CHECK_THROWS_AS((Cell{1.0, 1.0}.validate()), Error);
  Cell c{0.0, 1.0};
  CHECK(c.contains(0.0));
  CHECK_FALSE(c.contains(1.0));
  auto ev = cell_events(std::vector<double>{0.5, 0.5, 2.0, 0.5, 0.2, 3.0}, c, Mode::entry);
  CHECK(ev == std::vector<std::int64_t>{0, 3});
  auto all = cell_events(std::vector<double>{0.5, 0.5, 2.0, 0.5, 0.2, 3.0}, c, Mode::visit);
  CHECK(all == std::vector<std::int64_t>{0, 1, 3, 4});

  auto m = median_cell(std::vector<double>{3.0, 1.0, 2.0, 10.0}, 0.01);
  CHECK(m.lower == doctest::Approx(2.495));
  CHECK(m.upper == doctest::Approx(2.505));
}

TEST_CASE("first return times") {
  auto per = first_return_times(sine(10000, 100.0), {0.99, 1.01});
  REQUIRE(per.counts.size() == 1);
  CHECK(per.counts.begin()->first == 100);
  CHECK(per.total_events == 99);

  auto rot = first_return_times(golden_rotation(1000000), {0.0, 0.05});
  CHECK(rot.counts.size() <= 3);

  std::vector<double> alt;
  for (int k = 0; k < 50; ++k) alt.push_back(k % 2 == 0 ? 0.0 : 1.0);
  auto two = first_return_times(make(alt), {0.5, 1.5});
  REQUIRE(two.counts.size() == 1);
  CHECK(two.counts.at(2) == 24);

  CHECK_THROWS_AS(first_return_times(make({0.0, 5.0, 5.0}), {0.0, 1.0}), Error);
  CHECK_THROWS_AS(first_return_times(make({0.0}), {0.0, 1.0}), Error);
}

TEST_CASE("second return times") {
  auto per = second_return_times(sine(10000, 100.0), {0.99, 1.01});
  REQUIRE(per.counts.size() == 1);
  CHECK(per.counts.begin()->first == 200);

  auto s = bernoulli_events(1000000, 0.01, 5);
  const Cell cell{0.5, 1.5};
  const auto ev = cell_events(s.view(), cell, Mode::visit);
  auto f1 = first_return_times(s, cell, Mode::visit);
  auto f2 = second_return_times(s, cell, Mode::visit);
  double adj = 0.0;
  for (std::size_t k = 2; k < ev.size(); ++k) adj += static_cast<double>(ev[k] - ev[k - 2]);
  adj /= static_cast<double>(ev.size() - 2);
  CHECK(f2.mean_tau() == doctest::Approx(adj).epsilon(1e-14));
  CHECK(f2.mean_tau() == doctest::Approx(2.0 * f1.mean_tau()).epsilon(1e-3));

  // two-event gamma shape beats a single exponential on F2
  const double lg = 2.0 / f2.mean_tau();
  const double le = 1.0 / f2.mean_tau();
  double ll_gamma = 0.0, ll_exp = 0.0;
  for (const auto& [tau, c] : f2.counts) {
    const double t = static_cast<double>(tau);
    ll_gamma += c * (2.0 * std::log(lg) + std::log(t) - lg * t);
    ll_exp += c * (std::log(le) - le * t);
  }
  CHECK(ll_gamma > ll_exp);

  CHECK_THROWS_AS(second_return_times(make({0.5, 2.0, 0.5}), {0.0, 1.0}), Error);
}

TEST_CASE("invariants of return-time histograms") {
  auto rot = golden_rotation(200000);
  const Cell cell{0.3, 0.4};
  CHECK(cell_events(rot.view(), cell, Mode::entry).size() <= cell_events(rot.view(), cell, Mode::visit).size());

  auto s = sine(50000, 37.3);
  auto shifted = s;
  for (auto& v : shifted.values) v += 7.25;
  auto h1 = first_return_times(s, {0.2, 0.3});
  auto h2 = first_return_times(shifted, {7.45, 7.55});
  CHECK(h1.counts == h2.counts);

  auto relabeled = s;
  relabeled.dt = 1e-3;
  auto h3 = first_return_times(relabeled, {0.2, 0.3});
  CHECK(h3.counts == h1.counts);
  CHECK(h3.mean_tau() * h3.dt == doctest::Approx(h1.mean_tau() * 1e-3));
}

TEST_CASE("exponential fit") {
  std::mt19937_64 rng(11);
  std::exponential_distribution<double> expo(0.5);
  const double dt = 0.01;
  std::vector<std::int64_t> events{0};
  for (int i = 0; i < 100000; ++i) {
    const auto tau = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(expo(rng) / dt)));
    events.push_back(events.back() + tau);
  }
  auto h = return_times_from_events(events, 1, dt, Mode::entry);
  auto fit = fit_exponential(h);
  CHECK(fit.rate == doctest::Approx(0.5).epsilon(0.02));
  CHECK(fit.ks_stat < 0.01);
  CHECK(fit.loglin_r2 > 0.99);
  CHECK(fit.loglin_slope == doctest::Approx(-0.5).epsilon(0.05));

  auto per = first_return_times(sine(100000, 100.0), {0.99, 1.01});
  CHECK_THROWS_WITH_AS(fit_exponential(per), doctest::Contains("degenerate"), Error);

  auto rot = first_return_times(golden_rotation(1000000), {0.0, 0.05});
  auto rfit = fit_exponential(rot);
  CHECK(rfit.ks_stat > 0.2);
  CHECK(rfit.ks_stat <= 1.0);

  auto few = first_return_times(sine(2000, 100.0), {0.99, 1.01});
  CHECK_THROWS_AS(fit_exponential(few), Error);
}

TEST_CASE("support sparsity") {
  CHECK(support_sparsity(first_return_times(sine(100000, 100.0), {0.99, 1.01}), 0.9) == 1);
  CHECK(support_sparsity(first_return_times(golden_rotation(1000000), {0.0, 0.05}), 0.99) <= 3);
  auto geo = first_return_times(bernoulli_events(1000000, 0.01, 9), {0.5, 1.5}, Mode::visit);
  CHECK(support_sparsity(geo, 0.9) > 50);
  CHECK_THROWS_AS(support_sparsity(geo, 1.0), Error);
}

TEST_CASE("invariant density") {
  auto c = invariant_density(make(std::vector<double>(100, 3.0)), 0.1);
  CHECK(c.counts.size() == 1);
  CHECK(c.counts[0] == 100);

  auto s = sine(1000000, 997.0 * std::numbers::sqrt2);
  auto d = invariant_density(s, 0.02);
  const std::size_t n = d.counts.size();
  CHECK(d.density(0) > 3.0 * d.density(n / 2));
  CHECK(d.density(n - 1) > 3.0 * d.density(n / 2));
  for (std::size_t b = n / 2 + 1; b + 1 < n; ++b) CHECK(d.counts[b] >= 0.98 * d.counts[b - 1]);

  auto noise = make(oracle::white_noise(5000, 3));
  auto dn = invariant_density(noise, 0.037);
  double total = 0.0;
  for (auto k : dn.counts) total += static_cast<double>(k) * dn.bin_width * dn.normalization;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(invariant_density(noise, 0.0), Error);
}

TEST_CASE("return map") {
  auto pairs = return_map(sine(2000, 100.0));
  CHECK(pairs.size() == 19);
  for (auto [a, b] : pairs) {
    CHECK(a == doctest::Approx(1.0));
    CHECK(b == doctest::Approx(1.0));
  }

  std::vector<double> v;
  for (int p = 0; p < 10; ++p) {
    const double peak = p % 2 == 0 ? 1.0 : 0.5;
    v.insert(v.end(), {0.0, peak / 2, peak, peak / 2});
  }
  v.push_back(0.0);
  auto alt = return_map(make(v));
  REQUIRE(alt.size() == 9);
  for (std::size_t k = 0; k < alt.size(); ++k) {
    CHECK(alt[k].first == (k % 2 == 0 ? 1.0 : 0.5));
    CHECK(alt[k].second == (k % 2 == 0 ? 0.5 : 1.0));
  }

  auto logi = return_map(make(oracle::logistic_series(0.3, 5000, 100)), true);
  for (auto [x, y] : logi) CHECK(std::abs(y - 4.0 * x * (1.0 - x)) < 1e-12);

  CHECK_THROWS_AS(return_map(make({0.0, 1.0, 0.0, -1.0})), Error);
  CHECK_THROWS_AS(return_map(make({0.0, 1.0})), Error);
}

TEST_CASE("recurrence matrix") {
  auto c = recurrence_matrix(make(std::vector<double>(50, 1.0)), 0, 50, 0.1);
  CHECK(c.pairs.size() == 50u * 49u / 2u);
  for (auto [i, j] : c.pairs) CHECK(i < j);

  auto s = sine(2000, 100.0);
  auto rp = recurrence_matrix(s, 500, 300, 0.05, embed::EmbeddingSpec{25, 2});
  std::size_t expected = 0;
  for (int i = 0; i < 300; ++i)
    for (int j = i + 1; j < 300; ++j) expected += (j - i) % 100 == 0;
  CHECK(rp.pairs.size() == expected);
  for (auto [i, j] : rp.pairs) {
    CHECK((j - i) % 100 == 0);
    CHECK(i >= 500);
    CHECK(j < 800);
  }

  auto noise = make(oracle::white_noise(3000, 4));
  auto a = recurrence_matrix(noise, 100, 1500, 0.2);
  auto b = recurrence_matrix_reference(noise, 100, 1500, 0.2);
  CHECK(a.pairs == b.pairs);
  CHECK(std::is_sorted(a.pairs.begin(), a.pairs.end()));
  auto ae = recurrence_matrix(noise, 0, 1000, 0.3, embed::EmbeddingSpec{2, 3});
  auto be = recurrence_matrix_reference(noise, 0, 1000, 0.3, embed::EmbeddingSpec{2, 3});
  CHECK(ae.pairs == be.pairs);

  CHECK_THROWS_AS(recurrence_matrix(noise, 0, 1, 0.1), Error);
  CHECK_THROWS_AS(recurrence_matrix(noise, 2500, 1000, 0.1), Error);
  CHECK_THROWS_AS(recurrence_matrix(noise, 0, 100, 0.0), Error);
}
