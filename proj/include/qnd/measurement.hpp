#pragma once

// Gaussian photon-number measurement of finite resolution delta_n.
//
// The measurement operator for pointer outcome n_m is
//
//   P(n_m) = (2 pi dn^2)^(-1/4) exp(-(n - n_m)^2 / (4 dn^2)),
//
// diagonal in the number basis. Outcome densities, post-measurement states and
// post-measurement coherence <a>_f all follow from applying it to a pure state.
// Integrals over n_m use a composite trapezoid rule on a uniform grid; the
// integrands are sums of Gaussians, for which the rule converges spectrally.

#include <cstddef>
#include <vector>

#include "qnd/fock.hpp"

namespace qnd {

inline constexpr double kDensityFloor = 1e-300;
inline constexpr double kExcessNoiseClampTol = 1e-9;

struct MeasurementConfig {
  double delta_n = 1.0;
  double grid_min = 0.0;
  double grid_max = 1.0;
  double grid_step = 0.1;
  double quad_tol = 1e-8;

  // Throws InvalidParam unless delta_n > 0, grid_step > 0, grid_min < grid_max.
  void validate() const;

  // Uniform grid on [-8 dn, n_max + 8 dn] with step min(dn/8, 1/16). The
  // second bound keeps cos(2 pi n_m) resolved at large dn.
  static MeasurementConfig covering(int n_max, double delta_n, double quad_tol = 1e-8);

  // The grid always hits both endpoints; the effective step is <= grid_step.
  std::size_t point_count() const;
  double point(std::size_t i) const;
  double effective_step() const;
};

// Composite trapezoid over the configured grid. F: double -> double or Complex.
template <class F>
auto integrate(const MeasurementConfig& config, F&& f) -> decltype(f(0.0)) {
  config.validate();
  const std::size_t count = config.point_count();
  using Value = decltype(f(0.0));
  Value sum = 0.5 * (f(config.point(0)) + f(config.point(count - 1)));
  for (std::size_t i = 1; i + 1 < count; ++i) sum += f(config.point(i));
  return sum * config.effective_step();
}

// Gaussian weight multiplying amplitude n.
double measurement_kernel(double n, double n_m, double delta_n);

// P(n_m)|psi> without renormalization; density is its squared norm.
struct UnnormalizedState {
  std::vector<Complex> amplitudes;
  double density = 0.0;
};

struct OutcomeRecord {
  double n_m = 0.0;
  double density = 0.0;
  PureState post_state = PureState::number(0, 0);
  Complex coherence;
};

UnnormalizedState apply_measurement_operator(const PureState& state, double n_m,
                                             double delta_n);

// <psi| P^2(n_m) |psi>, a Poisson-weighted sum of Gaussians in n_m.
double outcome_density(const PureState& state, double n_m, double delta_n);

// <psi| P(n_m) a P(n_m) |psi>; equals <a>_f(n_m) * P(n_m).
Complex coherence_density(const PureState& state, double n_m, double delta_n);

// P(n_m) and <psi|P a P|psi> from one pass over the kernel.
struct OutcomeMoments {
  double density = 0.0;
  Complex coherence_density;
};
OutcomeMoments outcome_moments(const PureState& state, double n_m, double delta_n);

// Throws ZeroProbability when the density is below kDensityFloor.
OutcomeRecord measure(const PureState& state, double n_m, double delta_n);

// <a>_f(n_m) = <psi|P a P|psi> / <psi|P^2|psi>.
Complex coherence_after(const PureState& state, double n_m, double delta_n);

// Integral of P(n_m) over the grid.
double total_probability(const PureState& state, const MeasurementConfig& config);

// Outcome-averaged <a>_f. Throws GridTooNarrow if the grid holds less than
// 1 - quad_tol of the probability.
Complex average_coherence(const PureState& state, const MeasurementConfig& config);

// Outcome-averaged density matrix, integral of P|psi><psi|P dn_m, row-major
// dim x dim. Same grid check as average_coherence.
std::vector<Complex> averaged_density_matrix(const PureState& state,
                                             const MeasurementConfig& config);

// exp(-(n - n')^2 / (8 dn^2)): damping of rho_{n n'} by an unread measurement.
double dephasing_kernel(int n, int n_prime, double delta_n);

// exp(-1/(8 dn^2)); the average reduction of <a>. Infinite dn gives 1.
double decoherence_factor(double delta_n);

// Phase variance whose Gaussian dephasing reproduces the measurement's
// amplitude reduction: 1/(4 dn^2). Infinite dn gives 0.
double equivalent_phase_noise(double delta_n);

struct ExcessNoise {
  double total = 0.0;    // -2 ln(ratio)
  double minimum = 0.0;  // equivalent_phase_noise(dn)
  double excess = 0.0;
  bool clamped = false;          // |negative excess| <= kExcessNoiseClampTol set to 0
  bool below_quantum_limit = false;  // negative beyond the clamp tolerance
};

// Phase noise beyond the measurement minimum implied by an observed amplitude
// ratio |<a>_f(av.)| / |<a>_i| in (0, 1].
ExcessNoise infer_excess_noise(double observed_ratio, double delta_n);

}  // namespace qnd
