#include "wprs/bipartite.hpp"

#include <cmath>

#include <fmt/format.h>

#include "wprs/error.hpp"
#include "wprs/phase.hpp"

namespace wprs::bipartite {

void TwoModeParams::validate() const {
  require(std::isfinite(omega) && std::isfinite(omega0) && std::isfinite(gamma) && std::isfinite(g),
          ErrorCode::invalid_argument, "two-mode parameters must be finite");
  require(g >= 0.0, ErrorCode::invalid_argument, "coupling g must be >= 0");
}

eigen::SymTridiag build_sector(int N, const TwoModeParams& p) {
  require(N >= 0, ErrorCode::invalid_argument, "sector N must be >= 0");
  p.validate();
  eigen::SymTridiag m;
  m.diag.resize(static_cast<std::size_t>(N + 1));
  m.offdiag.resize(static_cast<std::size_t>(N));
  for (int n = 0; n <= N; ++n) {
    m.diag[static_cast<std::size_t>(n)] =
        p.omega * (N - n) + p.omega0 * n + p.gamma * static_cast<double>(n) * (n - 1);
  }
  for (int n = 1; n <= N; ++n) {
    m.offdiag[static_cast<std::size_t>(n - 1)] =
        p.g * std::sqrt(static_cast<double>(n) * static_cast<double>(N - n + 1));
  }
  return m;
}

std::vector<SectorState> decompose_initial(const fock::FockState& field, const TwoModeParams& p) {
  p.validate();
  const auto amps = field.amplitudes();
  std::vector<int> kept;
  for (int N = 0; N <= field.n_max(); ++N) {
    if (std::norm(amps[static_cast<std::size_t>(N)]) >= kSectorPruneWeight) kept.push_back(N);
  }
  std::vector<SectorState> out(kept.size());
  const auto count = static_cast<std::int64_t>(kept.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      const int N = kept[static_cast<std::size_t>(i)];
      SectorState s;
      s.N = N;
      s.eig = eigen::decompose(build_sector(N, p));
      s.initial_coeffs.resize(static_cast<std::size_t>(N + 1));
      for (int k = 0; k <= N; ++k) {
        s.initial_coeffs[static_cast<std::size_t>(k)] = s.eig.eigenvectors(0, static_cast<std::size_t>(k));
      }
      s.initial_amp = amps[static_cast<std::size_t>(N)];
      out[static_cast<std::size_t>(i)] = std::move(s);
    } catch (...) {
#pragma omp critical(wprs_bipartite_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

namespace {

Observables make_observables(double dt, std::int64_t steps) {
  require(steps >= 1, ErrorCode::invalid_argument, "steps must be >= 1");
  require(dt > 0.0 && std::isfinite(dt), ErrorCode::invalid_argument, "dt must be > 0");
  Observables o;
  o.dt = dt;
  o.field.assign(static_cast<std::size_t>(steps), 0.0);
  o.atom.assign(static_cast<std::size_t>(steps), 0.0);
  o.norm.assign(static_cast<std::size_t>(steps), 0.0);
  return o;
}

}  // namespace

Observables evolve_observables(const std::vector<SectorState>& sectors, double dt,
                               std::int64_t steps) {
  Observables o = make_observables(dt, steps);
  const std::int64_t B = kTimeBlock;
  const std::int64_t n_blocks = (steps + B - 1) / B;

#pragma omp parallel
  {
    // z[s*B + j]: eigen-coefficient s at sample j of the block; u likewise over n
    std::vector<double> zr, zi, ur, ui;
#pragma omp for schedule(static)
    for (std::int64_t blk = 0; blk < n_blocks; ++blk) {
      const std::int64_t k0 = blk * B;
      const std::int64_t len = std::min(B, steps - k0);
      const double t0 = static_cast<double>(k0) * dt;
      double* field = o.field.data() + k0;
      double* atom = o.atom.data() + k0;
      double* norm = o.norm.data() + k0;

      for (const auto& sec : sectors) {
        const std::size_t D = sec.eig.dim();
        const double w = std::norm(sec.initial_amp);
        zr.assign(D * B, 0.0);
        zi.assign(D * B, 0.0);
        ur.assign(D * B, 0.0);
        ui.assign(D * B, 0.0);
        for (std::size_t s = 0; s < D; ++s) {
          const double lam = sec.eig.eigenvalues[s];
          const cplx step = std::polar(1.0, -reduced_phase(lam, dt));
          cplx z = sec.initial_coeffs[s] * std::polar(1.0, -reduced_phase(lam, t0));
          for (std::int64_t j = 0; j < len; ++j) {
            zr[s * B + j] = z.real();
            zi[s * B + j] = z.imag();
            z *= step;
          }
        }
        const auto& V = sec.eig.eigenvectors;
        for (std::size_t n = 0; n < D; ++n) {
          double* urn = ur.data() + n * B;
          double* uin = ui.data() + n * B;
          for (std::size_t s = 0; s < D; ++s) {
            const double v = V(n, s);
            const double* zrs = zr.data() + s * B;
            const double* zis = zi.data() + s * B;
            for (std::int64_t j = 0; j < B; ++j) {
              urn[j] += v * zrs[j];
              uin[j] += v * zis[j];
            }
          }
        }
        for (std::size_t n = 0; n < D; ++n) {
          const double nf = static_cast<double>(sec.N) - static_cast<double>(n);
          const double na = static_cast<double>(n);
          for (std::int64_t j = 0; j < len; ++j) {
            const double p = w * (ur[n * B + j] * ur[n * B + j] + ui[n * B + j] * ui[n * B + j]);
            field[j] += nf * p;
            atom[j] += na * p;
            norm[j] += p;
          }
        }
      }
    }
  }
  return o;
}

Observables evolve_observables_reference(const std::vector<SectorState>& sectors, double dt,
                                         std::int64_t steps) {
  Observables o = make_observables(dt, steps);
  for (std::int64_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    for (const auto& sec : sectors) {
      const std::size_t D = sec.eig.dim();
      const double w = std::norm(sec.initial_amp);
      std::vector<cplx> z(D);
      for (std::size_t s = 0; s < D; ++s) {
        z[s] = sec.initial_coeffs[s] * std::polar(1.0, -reduced_phase(sec.eig.eigenvalues[s], t));
      }
      for (std::size_t n = 0; n < D; ++n) {
        cplx u{0.0, 0.0};
        for (std::size_t s = 0; s < D; ++s) u += sec.eig.eigenvectors(n, s) * z[s];
        const double p = w * std::norm(u);
        o.field[static_cast<std::size_t>(k)] += (sec.N - static_cast<double>(n)) * p;
        o.atom[static_cast<std::size_t>(k)] += static_cast<double>(n) * p;
        o.norm[static_cast<std::size_t>(k)] += p;
      }
    }
  }
  return o;
}

TimeSeries photon_number_series(const std::vector<SectorState>& sectors, const TwoModeParams& p,
                                double dt, std::int64_t steps) {
  p.validate();
  Observables o = evolve_observables(sectors, dt, steps);
  TimeSeries out;
  out.dt = dt;
  out.values = std::move(o.field);
  out.observable = "a+a";
  out.model = "bipartite";
  out.params = {{"omega", p.omega}, {"omega0", p.omega0}, {"gamma", p.gamma}, {"g", p.g},
                {"sectors", static_cast<double>(sectors.size())}};
  return out;
}

}  // namespace wprs::bipartite
