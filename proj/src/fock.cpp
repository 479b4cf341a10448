#include "wprs/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "wprs/error.hpp"

namespace wprs::fock {

namespace {

// log|c_k| for the unnormalized photon-added amplitudes
//   c_k = e^{-nu/2} alpha^{k-m} sqrt(k!) / (k-m)!,   k >= m,
// accumulated by the ratio c_{k+1}/c_k = alpha sqrt(k+1) / (k+1-m) so no
// factorial is ever formed. m = 0 is the coherent-state recursion
// c_{k+1} = c_k alpha / sqrt(k+1).
std::vector<double> log_magnitudes(double abs_alpha, int m, int k_max) {
  const double nu = abs_alpha * abs_alpha;
  const double log_alpha =
      abs_alpha > 0.0 ? std::log(abs_alpha) : -std::numeric_limits<double>::infinity();
  std::vector<double> out(static_cast<std::size_t>(k_max + 1),
                          -std::numeric_limits<double>::infinity());
  if (m > k_max) return out;
  double acc = -0.5 * nu + 0.5 * std::lgamma(static_cast<double>(m) + 1.0);
  out[static_cast<std::size_t>(m)] = acc;
  for (int k = m; k < k_max; ++k) {
    acc += log_alpha + 0.5 * std::log(static_cast<double>(k + 1)) -
           std::log(static_cast<double>(k + 1 - m));
    out[static_cast<std::size_t>(k + 1)] = acc;
  }
  return out;
}

// log(m! L_m(-nu)); the squared norm of (a^dagger)^m |alpha>.
double log_pacs_norm(double nu, int m) {
  return std::lgamma(static_cast<double>(m) + 1.0) + std::log(laguerre(m, -nu));
}

std::vector<double> normalized_probabilities(cplx alpha, int m, int k_max) {
  const double abs_alpha = std::abs(alpha);
  const auto logs = log_magnitudes(abs_alpha, m, k_max);
  const double log_norm = log_pacs_norm(abs_alpha * abs_alpha, m);
  std::vector<double> p(logs.size());
  for (std::size_t k = 0; k < logs.size(); ++k) p[k] = std::exp(2.0 * logs[k] - log_norm);
  return p;
}

}  // namespace

void TruncationPolicy::validate() const {
  require(epsilon_trunc > 0.0 && epsilon_trunc < 1.0, ErrorCode::invalid_argument,
          "epsilon_trunc must lie in (0, 1)");
  require(n_max_cap >= 1, ErrorCode::invalid_argument, "n_max_cap must be >= 1");
}

FockState::FockState(std::vector<cplx> amps, std::optional<Provenance> provenance,
                     double captured)
    : amps_(std::move(amps)), provenance_(provenance), captured_mass_(captured) {}

FockState FockState::from_amplitudes(std::vector<cplx> amplitudes,
                                     std::optional<Provenance> provenance) {
  require(!amplitudes.empty(), ErrorCode::invalid_argument, "empty amplitude vector");
  double sq = 0.0;
  for (const auto& c : amplitudes) {
    require(std::isfinite(c.real()) && std::isfinite(c.imag()), ErrorCode::invalid_argument,
            "non-finite amplitude");
    sq += std::norm(c);
  }
  require(sq > 0.0, ErrorCode::invalid_argument, "zero amplitude vector");
  const double inv = 1.0 / std::sqrt(sq);
  for (auto& c : amplitudes) c *= inv;
  return FockState(std::move(amplitudes), provenance, 1.0);
}

FockState FockState::number_state(int n, int n_max) {
  require(n >= 0 && n <= n_max, ErrorCode::invalid_argument,
          fmt::format("number state |{}> does not fit n_max = {}", n, n_max));
  std::vector<cplx> amps(static_cast<std::size_t>(n_max + 1), cplx{0.0, 0.0});
  amps[static_cast<std::size_t>(n)] = 1.0;
  return FockState(std::move(amps), std::nullopt, 1.0);
}

FockState pacs_amplitudes(cplx alpha, int m, int n_max, double epsilon_trunc) {
  require(m >= 0, ErrorCode::invalid_argument, "photon-added count m must be >= 0");
  require(n_max >= m + 1, ErrorCode::invalid_argument,
          fmt::format("n_max = {} must be at least m + 1 = {}", n_max, m + 1));
  require(epsilon_trunc > 0.0 && epsilon_trunc < 1.0, ErrorCode::invalid_argument,
          "epsilon_trunc must lie in (0, 1)");

  const double abs_alpha = std::abs(alpha);
  const double phase = std::arg(alpha);
  const auto logs = log_magnitudes(abs_alpha, m, n_max);
  const double half_log_norm = 0.5 * log_pacs_norm(abs_alpha * abs_alpha, m);

  std::vector<cplx> amps(static_cast<std::size_t>(n_max + 1), cplx{0.0, 0.0});
  double captured = 0.0;
  for (int k = m; k <= n_max; ++k) {
    const double mag = std::exp(logs[static_cast<std::size_t>(k)] - half_log_norm);
    const double theta = std::remainder(static_cast<double>(k - m) * phase, 2.0 * std::numbers::pi);
    amps[static_cast<std::size_t>(k)] = std::polar(mag, theta);
    captured += mag * mag;
  }
  if (captured < 1.0 - epsilon_trunc) {
    throw Error(ErrorCode::truncation_insufficient,
                fmt::format("n_max = {} keeps only {:.3e} of the probability mass (need >= 1 - {:.1e})",
                            n_max, captured, epsilon_trunc));
  }
  const double inv = 1.0 / std::sqrt(captured);
  for (auto& c : amps) c *= inv;
  return FockState(std::move(amps), Provenance{alpha, m}, captured);
}

FockState coherent_amplitudes(cplx alpha, int n_max, double epsilon_trunc) {
  require(n_max >= 1, ErrorCode::invalid_argument, "n_max must be >= 1");
  return pacs_amplitudes(alpha, 0, n_max, epsilon_trunc);
}

double laguerre(int m, double x) {
  require(m >= 0, ErrorCode::invalid_argument, "Laguerre order must be >= 0");
  if (m == 0) return 1.0;
  double prev = 1.0;     // L_0
  double cur = 1.0 - x;  // L_1
  for (int k = 1; k < m; ++k) {
    const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double pacs_mean_photon_closed_form(double nu, int m) {
  return (m + 1.0) * laguerre(m + 1, -nu) / laguerre(m, -nu) - 1.0;
}

double mean_photon_number(const FockState& state) {
  double acc = 0.0;
  const auto a = state.amplitudes();
  for (std::size_t n = 0; n < a.size(); ++n) acc += static_cast<double>(n) * std::norm(a[n]);
  return acc;
}

double photon_number_variance(const FockState& state) {
  const double mean = mean_photon_number(state);
  double acc = 0.0;
  const auto a = state.amplitudes();
  for (std::size_t n = 0; n < a.size(); ++n) {
    const double d = static_cast<double>(n) - mean;
    acc += d * d * std::norm(a[n]);
  }
  return acc;
}

double quadrature_expectation(const FockState& state) {
  const auto a = state.amplitudes();
  double acc = 0.0;
  for (std::size_t n = 1; n < a.size(); ++n) {
    acc += std::sqrt(static_cast<double>(n)) * (std::conj(a[n - 1]) * a[n]).real();
  }
  return std::numbers::sqrt2 * acc;
}

cplx overlap(const FockState& s1, const FockState& s2) {
  require(s1.n_max() == s2.n_max(), ErrorCode::dimension_mismatch,
          fmt::format("overlap of states with n_max {} and {}", s1.n_max(), s2.n_max()));
  const auto a = s1.amplitudes();
  const auto b = s2.amplitudes();
  cplx acc{0.0, 0.0};
  for (std::size_t n = 0; n < a.size(); ++n) acc += std::conj(a[n]) * b[n];
  return acc;
}

int choose_truncation(cplx alpha, int m, const TruncationPolicy& policy) {
  policy.validate();
  require(m >= 0, ErrorCode::invalid_argument, "photon-added count m must be >= 0");
  const double nu = std::norm(alpha);
  const int floor_n = std::max(1, m + 1);
  int start = static_cast<int>(std::ceil(nu + m + 8.0 * std::sqrt(nu + 1.0) + 20.0));
  start = std::max(start, floor_n);

  // Evaluate the distribution far enough past the heuristic that the
  // discarded remainder is negligible against epsilon, then sum the tail
  // explicitly from the top down.
  int k_max = std::max(start, policy.n_max_cap) + 1;
  for (;;) {
    const auto p = normalized_probabilities(alpha, m, k_max);
    const bool past_mode = static_cast<double>(k_max) > nu + m + 1.0;
    if (!past_mode || p.back() > 1e-6 * policy.epsilon_trunc) {
      k_max *= 2;
      require(k_max < (1 << 26), ErrorCode::cap_exceeded, "photon-number tail does not decay");
      continue;
    }
    // tail[n] = sum_{k >= n-1} p_k
    std::vector<double> suffix(p.size() + 1, 0.0);
    for (std::size_t k = p.size(); k-- > 0;) suffix[k] = suffix[k + 1] + p[k];
    auto tail_ok = [&](int n) { return suffix[static_cast<std::size_t>(n - 1)] < policy.epsilon_trunc; };

    int n = std::min(start, k_max);
    while (n <= k_max && !tail_ok(n)) ++n;
    if (n > policy.n_max_cap || n > k_max) {
      throw Error(ErrorCode::cap_exceeded,
                  fmt::format("truncation for nu = {}, m = {} exceeds cap {}", nu, m, policy.n_max_cap));
    }
    while (n - 1 >= floor_n && tail_ok(n - 1)) --n;
    return n;
  }
}

}  // namespace wprs::fock
