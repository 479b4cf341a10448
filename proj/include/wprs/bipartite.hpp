#pragma once

#include <cstdint>
#include <vector>

#include "wprs/fock.hpp"
#include "wprs/series.hpp"
#include "wprs/tridiag.hpp"

namespace wprs::bipartite {

using fock::cplx;

// H = omega a+a + omega0 b+b + gamma b+^2 b^2 + g (a+b + b+a), hbar = 1.
struct TwoModeParams {
  double omega = 1.0;
  double omega0 = 1.0;
  double gamma = 0.0;
  double g = 1.0;

  void validate() const;
};

// Sectors whose field weight |c_N|^2 falls below this are dropped.
inline constexpr double kSectorPruneWeight = 1e-14;

// Time samples per block in the series kernel; phases are recomputed from the
// absolute time at the start of every block.
inline constexpr std::int64_t kTimeBlock = 64;

// Block of fixed N = a+a + b+b in the basis |N-n; n>, n = number of atom quanta.
eigen::SymTridiag build_sector(int N, const TwoModeParams& p);

struct SectorState {
  int N = 0;
  eigen::EigenDecomposition eig;
  std::vector<cplx> initial_coeffs;  // |N; 0> in the eigenbasis
  cplx initial_amp{0.0, 0.0};        // c_N of the field state
};

// Field state x atom ground state, split into the sectors it touches.
std::vector<SectorState> decompose_initial(const fock::FockState& field, const TwoModeParams& p);

// Expectation values sampled at t = k dt.
struct Observables {
  double dt = 1.0;
  std::vector<double> field;  // <a+a>
  std::vector<double> atom;   // <b+b>
  std::vector<double> norm;   // <psi|psi>
};

Observables evolve_observables(const std::vector<SectorState>& sectors, double dt,
                               std::int64_t steps);

// Serial reference: each sample evaluated directly from exp(-i lambda t).
Observables evolve_observables_reference(const std::vector<SectorState>& sectors, double dt,
                                         std::int64_t steps);

// <a+a>(k dt) as a TimeSeries.
TimeSeries photon_number_series(const std::vector<SectorState>& sectors, const TwoModeParams& p,
                                double dt, std::int64_t steps);

}  // namespace wprs::bipartite
