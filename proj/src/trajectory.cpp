#include "qnd/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qnd/error.hpp"

namespace qnd {

Rng Rng::split() { return Rng(engine_()); }

double Rng::normal(double mean, double stddev) {
  return std::normal_distribution<double>(mean, stddev)(engine_);
}

double Rng::uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

OutcomeSampler::OutcomeSampler(const PureState& state, double delta_n) : delta_n_(delta_n) {
  if (!(delta_n > 0.0) || !std::isfinite(delta_n))
    throw InvalidParam("sampling needs a finite positive delta_n");
  const auto p = state.probabilities();
  cumulative_.resize(p.size());
  std::partial_sum(p.begin(), p.end(), cumulative_.begin());
}

double OutcomeSampler::operator()(Rng& rng) const {
  const double u = rng.uniform() * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) --it;
  const auto n = static_cast<double>(it - cumulative_.begin());
  return rng.normal(n, delta_n_);
}

double OutcomeSampler::cdf(double n_m) const {
  double sum = 0.0, prev = 0.0;
  for (std::size_t n = 0; n < cumulative_.size(); ++n) {
    const double w = cumulative_[n] - prev;
    prev = cumulative_[n];
    sum += w * 0.5 * std::erfc(-(n_m - static_cast<double>(n)) / (delta_n_ * std::numbers::sqrt2));
  }
  return sum / cumulative_.back();
}

OutcomeRecord sample_outcome(const PureState& state, double delta_n, Rng& rng) {
  const OutcomeSampler sampler(state, delta_n);
  return measure(state, sampler(rng), delta_n);
}

double Trajectory::mean_outcome() const {
  if (steps.empty()) return 0.0;
  double s = 0.0;
  for (const auto& step : steps) s += step.n_m;
  return s / static_cast<double>(steps.size());
}

Trajectory repeated_measurement(const PureState& state, double delta_n, int count, Rng& rng) {
  if (count < 1) throw InvalidParam("repeated measurement needs count >= 1");
  Trajectory traj;
  traj.seed = rng.seed();
  traj.delta_n = delta_n;
  traj.steps.reserve(static_cast<std::size_t>(count));
  PureState current = state;
  for (int i = 0; i < count; ++i) {
    auto record = sample_outcome(current, delta_n, rng);
    current = std::move(record.post_state);
    traj.steps.push_back({record.n_m, expectation_n(current), variance_n(current),
                          std::abs(record.coherence)});
  }
  traj.final_state = std::move(current);
  return traj;
}

namespace {

MonteCarloRatio summarize(double sum, double sum_sq, int samples) {
  MonteCarloRatio out;
  const double n = samples;
  out.mean = sum / n;
  const double var = std::max(0.0, (sum_sq - n * out.mean * out.mean) / (n - 1.0));
  out.standard_error = std::sqrt(var / n);
  return out;
}

void check_samples(int samples) {
  if (samples < 2) throw InvalidParam("Monte Carlo estimate needs at least two samples");
}

}  // namespace

MonteCarloRatio mc_measurement_ratio(const PureState& state, double delta_n, int samples,
                                     Rng& rng) {
  check_samples(samples);
  const Complex a_i = expectation_a(state);
  if (std::abs(a_i) == 0.0) throw InvalidParam("ratio undefined for <a>_i = 0");
  if (std::isinf(delta_n)) return {1.0, 0.0};
  const OutcomeSampler sampler(state, delta_n);
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double r = (measure(state, sampler(rng), delta_n).coherence / a_i).real();
    sum += r;
    sum_sq += r * r;
  }
  return summarize(sum, sum_sq, samples);
}

MonteCarloRatio mc_dephasing_ratio(const PureState& state, double phase_variance, int samples,
                                   Rng& rng) {
  check_samples(samples);
  if (!(phase_variance >= 0.0)) throw InvalidParam("phase variance must be non-negative");
  const Complex a_i = expectation_a(state);
  if (std::abs(a_i) == 0.0) throw InvalidParam("ratio undefined for <a>_i = 0");
  const double sigma = std::sqrt(phase_variance);
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double theta = sigma > 0.0 ? rng.normal(0.0, sigma) : 0.0;
    const double r = (expectation_a(rotate_phase(state, theta)) / a_i).real();
    sum += r;
    sum_sq += r * r;
  }
  return summarize(sum, sum_sq, samples);
}

PhaseDiffusionResult phase_diffusion_equivalence(const CoherentParams& params, double delta_n,
                                                 int samples, Rng& rng) {
  if (samples < 1000) throw InvalidParam("phase diffusion comparison needs >= 1000 samples");
  if (!(params.magnitude() > 0.0)) throw InvalidParam("phase diffusion needs alpha != 0");
  const PureState state = coherent_state(params);
  PhaseDiffusionResult out;
  out.analytic_ratio = decoherence_factor(delta_n);
  out.measurement = mc_measurement_ratio(state, delta_n, samples, rng);
  out.dephasing = mc_dephasing_ratio(state, equivalent_phase_noise(delta_n), samples, rng);
  return out;
}

}  // namespace qnd
