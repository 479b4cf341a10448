#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "wprs/error.hpp"
#include "wprs/kerr.hpp"

using namespace wprs;
using namespace wprs::fock;
using namespace wprs::kerr;

TEST_CASE("kerr spectrum") {
  auto s = kerr_spectrum(1.0, 0.01, 2000);
  CHECK(s.energies[0] == 0.0);
  CHECK(s.energies[1] == 0.0);
  CHECK(s.energies[2] == 2.0);
  CHECK(s.energies[3] == doctest::Approx(6.06).epsilon(1e-15));
  for (int n = 1; n <= 2000; ++n) CHECK(s.energies[n] >= s.energies[n - 1]);
  auto big = kerr_spectrum(1.0, 0.0, 1000000);
  CHECK(big.energies[1000000] == 1000000.0 * 999999.0);
  CHECK_THROWS_AS(kerr_spectrum(1.0, 0.0, 0), Error);
}

TEST_CASE("diagonal evolution") {
  const int nmax = choose_truncation(1.0, 0);
  auto s0 = coherent_amplitudes(1.0, nmax);
  auto spec = kerr_spectrum(1.0, 0.0, nmax);
  auto same = evolve_diagonal(s0, spec, 0.0);
  for (int n = 0; n <= nmax; ++n) CHECK(same[n] == s0[n]);

  for (int k = 1; k <= 3; ++k) {
    auto st = evolve_diagonal(s0, spec, k * std::numbers::pi);
    CHECK(std::norm(overlap(s0, st)) >= 1.0 - 1e-10);
  }

  auto pacs = pacs_amplitudes(std::sqrt(5.0), 5, choose_truncation(std::sqrt(5.0), 5));
  auto ps = kerr_spectrum(1.0, 0.01, pacs.n_max());
  for (double t : {0.37, 12.5, 1234.567}) {
    auto fwd = evolve_diagonal(pacs, ps, t);
    double nrm = 0.0;
    for (auto c : fwd.amplitudes()) nrm += std::norm(c);
    CHECK(std::abs(nrm - 1.0) < 1e-14);
    CHECK(std::abs(mean_photon_number(fwd) - mean_photon_number(pacs)) < 1e-12);
    auto back = evolve_diagonal(fwd, ps, -t);
    for (int n = 0; n <= pacs.n_max(); ++n) CHECK(std::abs(back[n] - pacs[n]) < 1e-12);
  }
  CHECK_THROWS_AS(evolve_diagonal(s0, kerr_spectrum(1.0, 0.0, nmax + 1), 1.0), Error);
}

TEST_CASE("x series") {
  auto vac = coherent_amplitudes(0.0, 4);
  auto vs = generate_series_x(vac, kerr_spectrum(1.0, 0.01, 4), 1e-3, 1000);
  for (double v : vs.values) CHECK(v == 0.0);

  const int nmax = choose_truncation(1.0, 0);
  auto s0 = coherent_amplitudes(1.0, nmax);
  const double dt = 1e-3;
  auto rev = generate_series_x(s0, kerr_spectrum(1.0, 0.0, nmax), dt, 4000);
  CHECK(rev.values[0] == doctest::Approx(std::numbers::sqrt2).epsilon(1e-12));
  const auto k = static_cast<std::size_t>(std::lround(std::numbers::pi / dt));
  CHECK(std::abs(rev.values[k] - rev.values[0]) < 1e-5);

  auto spec = kerr_spectrum(1.0, 0.01, nmax);
  const std::int64_t steps = 300000;
  auto fast = generate_series_x(s0, spec, dt, steps);
  CHECK(fast.size() == static_cast<std::size_t>(steps));
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> pick(0, steps - 1);
  double bound = 0.0;
  for (int n = 0; n < nmax; ++n) bound += std::sqrt(n + 1.0) * std::abs(s0[n]) * std::abs(s0[n + 1]);
  bound *= std::numbers::sqrt2;
  for (int i = 0; i < 100; ++i) {
    const auto kk = pick(rng);
    const double direct = quadrature_expectation(evolve_diagonal(s0, spec, static_cast<double>(kk) * dt));
    CHECK(std::abs(fast.values[static_cast<std::size_t>(kk)] - direct) < 1e-9);
  }
  for (double v : fast.values) CHECK(std::abs(v) <= bound + 1e-12);

  auto ref = generate_series_x_reference(s0, spec, dt, 25000);
  for (std::size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(ref.values[i] - fast.values[i]) < 1e-10);
  CHECK(fast.params.at("chi_prime") == 0.01);

  CHECK_THROWS_AS(generate_series_x(s0, spec, dt, 0), Error);
}
