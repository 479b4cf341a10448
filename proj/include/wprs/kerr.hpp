#pragma once

#include <cstdint>
#include <vector>

#include "wprs/fock.hpp"
#include "wprs/phase.hpp"
#include "wprs/series.hpp"

namespace wprs::kerr {

// Steps between exact phase recomputations in the incremental series kernel.
inline constexpr std::int64_t kPhaseResyncInterval = 10000;

// Spectrum of H = chi a+^2 a^2 + chi' a+^3 a^3 (hbar = 1), which is diagonal in
// the photon number: E_n = chi n(n-1) + chi' n(n-1)(n-2).
struct SingleModeSpectrum {
  double chi = 1.0;
  double chi_prime = 0.0;
  std::vector<double> energies;

  int n_max() const noexcept { return static_cast<int>(energies.size()) - 1; }
};

SingleModeSpectrum kerr_spectrum(double chi, double chi_prime, int n_max);

// c_n(t) = c_n(0) exp(-i E_n t)
fock::FockState evolve_diagonal(const fock::FockState& state0, const SingleModeSpectrum& spec,
                                double t);

// <x>(k dt) for k = 0..steps-1. Phases advance by a per-step rotation and are
// recomputed from the absolute time every kPhaseResyncInterval steps; blocks
// between resyncs are independent and run in parallel.
TimeSeries generate_series_x(const fock::FockState& state0, const SingleModeSpectrum& spec,
                             double dt, std::int64_t steps);

// Serial reference: every sample evaluated directly from the absolute time.
TimeSeries generate_series_x_reference(const fock::FockState& state0,
                                       const SingleModeSpectrum& spec, double dt,
                                       std::int64_t steps);

}  // namespace wprs::kerr
