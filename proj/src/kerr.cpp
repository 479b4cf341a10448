#include "wprs/kerr.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "wprs/error.hpp"

namespace wprs::kerr {

namespace {

void check_compatible(const fock::FockState& state, const SingleModeSpectrum& spec) {
  require(state.n_max() == spec.n_max(), ErrorCode::dimension_mismatch,
          fmt::format("state n_max {} vs spectrum n_max {}", state.n_max(), spec.n_max()));
}

TimeSeries make_series(const fock::FockState& state0, const SingleModeSpectrum& spec, double dt,
                       std::int64_t steps) {
  require(steps >= 1, ErrorCode::invalid_argument, "steps must be >= 1");
  require(dt > 0.0 && std::isfinite(dt), ErrorCode::invalid_argument, "dt must be > 0");
  check_compatible(state0, spec);
  TimeSeries out;
  out.dt = dt;
  out.values.resize(static_cast<std::size_t>(steps));
  out.observable = "x";
  out.model = "kerr";
  out.params = {{"chi", spec.chi}, {"chi_prime", spec.chi_prime}, {"n_max", spec.n_max()}};
  if (const auto& p = state0.provenance()) {
    out.params["nu"] = p->nu();
    out.params["m"] = p->m;
  }
  return out;
}

}  // namespace

SingleModeSpectrum kerr_spectrum(double chi, double chi_prime, int n_max) {
  require(n_max >= 1, ErrorCode::invalid_argument, "n_max must be >= 1");
  SingleModeSpectrum spec;
  spec.chi = chi;
  spec.chi_prime = chi_prime;
  spec.energies.resize(static_cast<std::size_t>(n_max + 1));
  for (std::int64_t n = 0; n <= n_max; ++n) {
    // integer factors are exact for n <= 1e6 (n^3 < 2^63)
    const std::int64_t p2 = n * (n - 1);
    const std::int64_t p3 = p2 * (n - 2);
    spec.energies[static_cast<std::size_t>(n)] =
        chi * static_cast<double>(p2) + chi_prime * static_cast<double>(p3);
  }
  return spec;
}

fock::FockState evolve_diagonal(const fock::FockState& state0, const SingleModeSpectrum& spec,
                                double t) {
  check_compatible(state0, spec);
  const auto a = state0.amplitudes();
  std::vector<fock::cplx> out(a.size());
  for (std::size_t n = 0; n < a.size(); ++n) {
    out[n] = a[n] * std::polar(1.0, -reduced_phase(spec.energies[n], t));
  }
  return fock::FockState::from_amplitudes(std::move(out), state0.provenance());
}

TimeSeries generate_series_x(const fock::FockState& state0, const SingleModeSpectrum& spec,
                             double dt, std::int64_t steps) {
  TimeSeries out = make_series(state0, spec, dt, steps);
  const auto a = state0.amplitudes();
  const std::size_t dim = a.size();

  std::vector<double> rot_re(dim), rot_im(dim), sqrt_n(dim);
  for (std::size_t n = 0; n < dim; ++n) {
    const double th = reduced_phase(spec.energies[n], dt);
    rot_re[n] = std::cos(th);
    rot_im[n] = -std::sin(th);
    sqrt_n[n] = std::sqrt(static_cast<double>(n));
  }

  const std::int64_t block = kPhaseResyncInterval;
  const std::int64_t n_blocks = (steps + block - 1) / block;
  double* values = out.values.data();

#pragma omp parallel
  {
    std::vector<double> zr(dim), zi(dim);
#pragma omp for schedule(static)
    for (std::int64_t b = 0; b < n_blocks; ++b) {
      const std::int64_t k0 = b * block;
      const std::int64_t k1 = std::min(steps, k0 + block);
      const double t0 = static_cast<double>(k0) * dt;
      for (std::size_t n = 0; n < dim; ++n) {
        const auto z = a[n] * std::polar(1.0, -reduced_phase(spec.energies[n], t0));
        zr[n] = z.real();
        zi[n] = z.imag();
      }
      for (std::int64_t k = k0; k < k1; ++k) {
        double acc = 0.0;
        for (std::size_t n = 1; n < dim; ++n) {
          acc += sqrt_n[n] * (zr[n - 1] * zr[n] + zi[n - 1] * zi[n]);
        }
        values[k] = std::numbers::sqrt2 * acc;
        for (std::size_t n = 0; n < dim; ++n) {
          const double re = zr[n] * rot_re[n] - zi[n] * rot_im[n];
          const double im = zr[n] * rot_im[n] + zi[n] * rot_re[n];
          zr[n] = re;
          zi[n] = im;
        }
      }
    }
  }
  return out;
}

TimeSeries generate_series_x_reference(const fock::FockState& state0,
                                       const SingleModeSpectrum& spec, double dt,
                                       std::int64_t steps) {
  TimeSeries out = make_series(state0, spec, dt, steps);
  for (std::int64_t k = 0; k < steps; ++k) {
    const auto state = evolve_diagonal(state0, spec, static_cast<double>(k) * dt);
    out.values[static_cast<std::size_t>(k)] = fock::quadrature_expectation(state);
  }
  return out;
}

}  // namespace wprs::kerr
