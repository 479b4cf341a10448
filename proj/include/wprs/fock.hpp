#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace wprs::fock {

using cplx = std::complex<double>;

inline constexpr double kDefaultTruncationEpsilon = 1e-12;

// (alpha, m) the state was built from; m = 0 is a plain coherent state.
struct Provenance {
  cplx alpha{0.0, 0.0};
  int m = 0;

  double nu() const { return std::norm(alpha); }
};

struct TruncationPolicy {
  double epsilon_trunc = kDefaultTruncationEpsilon;
  int n_max_cap = 4096;

  void validate() const;
};

// Pure state of one bosonic mode on the photon numbers 0..n_max. Immutable;
// amplitudes always have unit norm.
class FockState {
 public:
  // Normalizes the given amplitudes. Throws on an empty or all-zero vector.
  static FockState from_amplitudes(std::vector<cplx> amplitudes,
                                   std::optional<Provenance> provenance = std::nullopt);
  static FockState number_state(int n, int n_max);

  int n_max() const noexcept { return static_cast<int>(amps_.size()) - 1; }
  std::span<const cplx> amplitudes() const noexcept { return amps_; }
  cplx operator[](int n) const { return amps_.at(static_cast<std::size_t>(n)); }
  const std::optional<Provenance>& provenance() const noexcept { return provenance_; }

  // Probability mass the truncated basis held before renormalization.
  double captured_mass() const noexcept { return captured_mass_; }

 private:
  FockState(std::vector<cplx> amps, std::optional<Provenance> provenance, double captured);

  std::vector<cplx> amps_;
  std::optional<Provenance> provenance_;
  double captured_mass_ = 1.0;

  friend FockState coherent_amplitudes(cplx, int, double);
  friend FockState pacs_amplitudes(cplx, int, int, double);
};

// |alpha> truncated at n_max and renormalized.
FockState coherent_amplitudes(cplx alpha, int n_max,
                              double epsilon_trunc = kDefaultTruncationEpsilon);

// (a^dagger)^m |alpha> / sqrt(m! L_m(-|alpha|^2)), truncated at n_max and renormalized.
FockState pacs_amplitudes(cplx alpha, int m, int n_max,
                          double epsilon_trunc = kDefaultTruncationEpsilon);

// Laguerre polynomial L_m(x) by the three-term recurrence.
double laguerre(int m, double x);

// (m+1) L_{m+1}(-nu) / L_m(-nu) - 1
double pacs_mean_photon_closed_form(double nu, int m);

double mean_photon_number(const FockState& state);
double photon_number_variance(const FockState& state);

// <x> with x = (a + a^dagger)/sqrt(2).
double quadrature_expectation(const FockState& state);

// <s1|s2>
cplx overlap(const FockState& s1, const FockState& s2);

// Smallest n_max (<= cap) for which the photon-number mass on
// {n_max - 1, n_max, n_max + 1, ...} is below epsilon_trunc. This bounds both
// the discarded tail and the weight of the last two retained levels.
int choose_truncation(cplx alpha, int m, const TruncationPolicy& policy = {});

}  // namespace wprs::fock
