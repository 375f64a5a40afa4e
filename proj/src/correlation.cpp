#include "qnd/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qnd/error.hpp"

namespace qnd {

namespace {

constexpr double kPi = std::numbers::pi;

void check_grid_mass(const PureState& state, const MeasurementConfig& config) {
  const double mass = total_probability(state, config);
  if (mass < 1.0 - config.quad_tol)
    throw GridTooNarrow("outcome grid holds probability " + std::to_string(mass));
}

}  // namespace

double quantization(double n_m) { return std::cos(2.0 * kPi * n_m); }

double average_quantization_closed_form(double delta_n) {
  if (!(delta_n > 0.0)) throw InvalidParam("delta_n must be positive");
  return std::exp(-2.0 * kPi * kPi * delta_n * delta_n);
}

Complex correlation_closed_form(Complex initial_coherence, double delta_n) {
  return -2.0 * average_quantization_closed_form(delta_n) * decoherence_factor(delta_n) *
         initial_coherence;
}

double correlation_peak_resolution() { return 0.5 / std::sqrt(kPi); }

double average_quantization(const PureState& state, const MeasurementConfig& config) {
  check_grid_mass(state, config);
  return integrate(config, [&](double n_m) {
    return quantization(n_m) * outcome_density(state, n_m, config.delta_n);
  });
}

Complex quantization_coherence_product(const PureState& state, const MeasurementConfig& config) {
  check_grid_mass(state, config);
  return integrate(config, [&](double n_m) {
    return quantization(n_m) * coherence_density(state, n_m, config.delta_n);
  });
}

double AnalyticDeltas::max_abs() const {
  return std::max({std::abs(q_bar), std::abs(avg_coherence), std::abs(product),
                   std::abs(correlation)});
}

CorrelationReport quantization_coherence_correlation(const PureState& state,
                                                     const MeasurementConfig& config) {
  config.validate();
  // One pass over the grid for all four integrands.
  const std::size_t count = config.point_count();
  const double h = config.effective_step();
  double mass = 0.0;
  CorrelationReport r;
  r.delta_n = config.delta_n;
  for (std::size_t i = 0; i < count; ++i) {
    const double w = (i == 0 || i + 1 == count) ? 0.5 * h : h;
    const double n_m = config.point(i);
    const auto m = outcome_moments(state, n_m, config.delta_n);
    const double q = quantization(n_m);
    mass += w * m.density;
    r.q_bar += w * q * m.density;
    r.avg_coherence += w * m.coherence_density;
    r.q_coherence_product += w * q * m.coherence_density;
  }
  if (mass < 1.0 - config.quad_tol)
    throw GridTooNarrow("outcome grid holds probability " + std::to_string(mass));
  r.correlation = r.q_coherence_product - r.q_bar * r.avg_coherence;

  const Complex a_i = expectation_a(state);
  const double q_cf = average_quantization_closed_form(config.delta_n);
  const Complex avg_cf = decoherence_factor(config.delta_n) * a_i;
  r.correlation_closed_form = correlation_closed_form(a_i, config.delta_n);
  r.analytic_deltas.q_bar = r.q_bar - q_cf;
  r.analytic_deltas.avg_coherence = r.avg_coherence - avg_cf;
  r.analytic_deltas.product = r.q_coherence_product + q_cf * avg_cf;
  r.analytic_deltas.correlation = r.correlation - r.correlation_closed_form;
  r.consistent = r.analytic_deltas.max_abs() < config.quad_tol;
  return r;
}

CorrelationReport quantization_coherence_correlation(const CoherentParams& params,
                                                     const MeasurementConfig& config) {
  return quantization_coherence_correlation(coherent_state(params), config);
}

Complex parity_ordered_correlation(const PureState& state) {
  const auto psi = state.amplitudes();
  const auto sandwiched = apply_parity(apply_annihilation(apply_parity(psi)));
  const auto parity_sq = apply_parity(apply_parity(psi));
  return inner_product(psi, sandwiched) - inner_product(psi, parity_sq) * expectation_a(state);
}

OrderingPair ordering_ambiguity_demo(const PureState& state) {
  const auto psi = state.amplitudes();
  const auto a_then_pi2 = apply_parity(apply_parity(apply_annihilation(psi)));  // Pi^2 a
  const auto pi2_then_a = apply_annihilation(apply_parity(apply_parity(psi)));  // a Pi^2
  OrderingPair out;
  out.symmetric = 0.5 * (inner_product(psi, pi2_then_a) + inner_product(psi, a_then_pi2));
  out.sandwiched = inner_product(psi, apply_parity(apply_annihilation(apply_parity(psi))));
  return out;
}

}  // namespace qnd
