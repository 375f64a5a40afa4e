#include "qnd/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qnd/error.hpp"

namespace qnd {

namespace {

void check_resolution(double delta_n) {
  if (!(delta_n > 0.0) || std::isnan(delta_n))
    throw InvalidParam("delta_n must be positive, got " + std::to_string(delta_n));
}

void check_outcome(double n_m) {
  if (!std::isfinite(n_m)) throw InvalidParam("outcome n_m must be finite");
}

// Exponent of the operator kernel, -(n - n_m)^2 / (4 dn^2).
double kernel_exponent(double n, double n_m, double delta_n) {
  const double d = n - n_m;
  return -d * d / (4.0 * delta_n * delta_n);
}

double kernel_prefactor(double delta_n) {
  return std::pow(2.0 * std::numbers::pi * delta_n * delta_n, -0.25);
}

void check_grid_mass(const PureState& state, const MeasurementConfig& config) {
  const double mass = total_probability(state, config);
  if (mass < 1.0 - config.quad_tol)
    throw GridTooNarrow("outcome grid holds probability " + std::to_string(mass));
}

}  // namespace

void MeasurementConfig::validate() const {
  check_resolution(delta_n);
  if (!(grid_step > 0.0)) throw InvalidParam("grid_step must be positive");
  if (!(grid_min < grid_max)) throw InvalidParam("grid_min must be below grid_max");
  if (!std::isfinite(grid_min) || !std::isfinite(grid_max))
    throw InvalidParam("grid bounds must be finite");
  if (!(quad_tol > 0.0)) throw InvalidParam("quad_tol must be positive");
}

MeasurementConfig MeasurementConfig::covering(int n_max, double delta_n, double quad_tol) {
  check_resolution(delta_n);
  if (!std::isfinite(delta_n)) throw InvalidParam("covering grid needs a finite delta_n");
  MeasurementConfig config;
  config.delta_n = delta_n;
  config.grid_min = -8.0 * delta_n;
  config.grid_max = n_max + 8.0 * delta_n;
  config.grid_step = std::min(delta_n / 8.0, 1.0 / 16.0);
  config.quad_tol = quad_tol;
  return config;
}

std::size_t MeasurementConfig::point_count() const {
  return static_cast<std::size_t>(std::ceil((grid_max - grid_min) / grid_step - 1e-9)) + 1;
}

double MeasurementConfig::effective_step() const {
  return (grid_max - grid_min) / static_cast<double>(point_count() - 1);
}

double MeasurementConfig::point(std::size_t i) const {
  if (i + 1 == point_count()) return grid_max;
  return grid_min + static_cast<double>(i) * effective_step();
}

double measurement_kernel(double n, double n_m, double delta_n) {
  check_resolution(delta_n);
  return kernel_prefactor(delta_n) * std::exp(kernel_exponent(n, n_m, delta_n));
}

UnnormalizedState apply_measurement_operator(const PureState& state, double n_m,
                                             double delta_n) {
  check_resolution(delta_n);
  check_outcome(n_m);
  const double pre = kernel_prefactor(delta_n);
  UnnormalizedState out;
  out.amplitudes.resize(state.dimension());
  for (std::size_t n = 0; n < state.dimension(); ++n) {
    out.amplitudes[n] =
        state[n] * (pre * std::exp(kernel_exponent(static_cast<double>(n), n_m, delta_n)));
    out.density += std::norm(out.amplitudes[n]);
  }
  return out;
}

double outcome_density(const PureState& state, double n_m, double delta_n) {
  check_resolution(delta_n);
  check_outcome(n_m);
  const double two_var = 2.0 * delta_n * delta_n;
  double sum = 0.0;
  for (std::size_t n = 0; n < state.dimension(); ++n) {
    const double d = static_cast<double>(n) - n_m;
    sum += state.probability(n) * std::exp(-d * d / two_var);
  }
  return sum / std::sqrt(std::numbers::pi * two_var);
}

Complex coherence_density(const PureState& state, double n_m, double delta_n) {
  check_resolution(delta_n);
  check_outcome(n_m);
  const auto c = state.amplitudes();
  const double pre2 = kernel_prefactor(delta_n) * kernel_prefactor(delta_n);
  Complex sum = 0.0;
  for (std::size_t n = 0; n + 1 < c.size(); ++n) {
    const double e = kernel_exponent(static_cast<double>(n), n_m, delta_n) +
                     kernel_exponent(static_cast<double>(n + 1), n_m, delta_n);
    sum += std::conj(c[n]) * c[n + 1] * (std::sqrt(static_cast<double>(n + 1)) * std::exp(e));
  }
  return pre2 * sum;
}

OutcomeMoments outcome_moments(const PureState& state, double n_m, double delta_n) {
  check_resolution(delta_n);
  check_outcome(n_m);
  const auto c = state.amplitudes();
  const double pre = kernel_prefactor(delta_n);
  OutcomeMoments out;
  double g_prev = 0.0;
  for (std::size_t n = 0; n < c.size(); ++n) {
    const double g = pre * std::exp(kernel_exponent(static_cast<double>(n), n_m, delta_n));
    out.density += std::norm(c[n]) * g * g;
    if (n > 0)
      out.coherence_density +=
          std::conj(c[n - 1]) * c[n] * (std::sqrt(static_cast<double>(n)) * g_prev * g);
    g_prev = g;
  }
  return out;
}

OutcomeRecord measure(const PureState& state, double n_m, double delta_n) {
  const double density = outcome_density(state, n_m, delta_n);
  if (!(density >= kDensityFloor))
    throw ZeroProbability("outcome density at n_m=" + std::to_string(n_m) +
                          " underflows; outcome outside the state's support");

  // Shift exponents by their maximum over the support; the post-state is
  // invariant under the common scale.
  std::vector<double> exponent(state.dimension());
  double shift = -INFINITY;
  for (std::size_t n = 0; n < state.dimension(); ++n) {
    exponent[n] = kernel_exponent(static_cast<double>(n), n_m, delta_n);
    if (state.probability(n) > 0.0) shift = std::max(shift, exponent[n]);
  }
  std::vector<Complex> amps(state.dimension());
  for (std::size_t n = 0; n < state.dimension(); ++n)
    amps[n] = state[n] * std::exp(exponent[n] - shift);

  OutcomeRecord record;
  record.n_m = n_m;
  record.density = density;
  record.post_state = PureState::from_amplitudes(std::move(amps));
  record.coherence = expectation_a(record.post_state);
  return record;
}

Complex coherence_after(const PureState& state, double n_m, double delta_n) {
  return measure(state, n_m, delta_n).coherence;
}

double total_probability(const PureState& state, const MeasurementConfig& config) {
  return integrate(config, [&](double n_m) { return outcome_density(state, n_m, config.delta_n); });
}

Complex average_coherence(const PureState& state, const MeasurementConfig& config) {
  check_grid_mass(state, config);
  return integrate(config,
                   [&](double n_m) { return coherence_density(state, n_m, config.delta_n); });
}

std::vector<Complex> averaged_density_matrix(const PureState& state,
                                             const MeasurementConfig& config) {
  check_grid_mass(state, config);
  const std::size_t dim = state.dimension();
  std::vector<Complex> rho(dim * dim);
  const std::size_t count = config.point_count();
  const double h = config.effective_step();
  for (std::size_t i = 0; i < count; ++i) {
    const double weight = (i == 0 || i + 1 == count) ? 0.5 * h : h;
    const auto image = apply_measurement_operator(state, config.point(i), config.delta_n);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c)
        rho[r * dim + c] += weight * image.amplitudes[r] * std::conj(image.amplitudes[c]);
  }
  return rho;
}

double dephasing_kernel(int n, int n_prime, double delta_n) {
  check_resolution(delta_n);
  const double d = static_cast<double>(n - n_prime);
  return std::exp(-d * d / (8.0 * delta_n * delta_n));
}

double decoherence_factor(double delta_n) {
  check_resolution(delta_n);
  return std::exp(-1.0 / (8.0 * delta_n * delta_n));
}

double equivalent_phase_noise(double delta_n) {
  check_resolution(delta_n);
  return 1.0 / (4.0 * delta_n * delta_n);
}

ExcessNoise infer_excess_noise(double observed_ratio, double delta_n) {
  if (!(observed_ratio > 0.0 && observed_ratio <= 1.0))
    throw InvalidParam("observed amplitude ratio must lie in (0, 1]");
  ExcessNoise out;
  out.total = -2.0 * std::log(observed_ratio);
  out.minimum = equivalent_phase_noise(delta_n);
  out.excess = out.total - out.minimum;
  if (out.excess < 0.0) {
    if (out.excess >= -kExcessNoiseClampTol) {
      out.excess = 0.0;
      out.clamped = true;
    } else {
      out.below_quantum_limit = true;
    }
  }
  return out;
}

}  // namespace qnd
