#pragma once

// Monte Carlo sampling of measurement outcomes and repeated-measurement
// trajectories.
//
// P(n_m) = sum_n |c_n|^2 N(n_m; n, dn^2) is a Gaussian mixture, so an outcome
// is drawn exactly by picking n with probability |c_n|^2 and adding Gaussian
// pointer noise of width dn.

#include <cstdint>
#include <random>
#include <vector>

#include "qnd/fock.hpp"
#include "qnd/measurement.hpp"

namespace qnd {

// Seedable, splittable generator (mt19937_64). The algorithm is fixed per
// release so identical seeds give identical streams.
class Rng {
 public:
  using result_type = std::mt19937_64::result_type;

  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }
  // Independent child stream seeded from this stream's next output.
  Rng split();

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  double normal(double mean, double stddev);
  double uniform();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// Precomputed mixture sampler for one state and resolution.
class OutcomeSampler {
 public:
  OutcomeSampler(const PureState& state, double delta_n);
  double operator()(Rng& rng) const;
  // Exact CDF of the outcome density.
  double cdf(double n_m) const;

 private:
  std::vector<double> cumulative_;
  double delta_n_;
};

OutcomeRecord sample_outcome(const PureState& state, double delta_n, Rng& rng);

struct TrajectoryStep {
  double n_m = 0.0;
  double mean_n = 0.0;
  double variance_n = 0.0;
  double abs_coherence = 0.0;
};

struct Trajectory {
  std::uint64_t seed = 0;
  double delta_n = 0.0;
  std::vector<TrajectoryStep> steps;
  PureState final_state = PureState::number(0, 0);

  double mean_outcome() const;
};

// count sequential measurements at fixed dn, each on the previous post-state.
Trajectory repeated_measurement(const PureState& state, double delta_n, int count, Rng& rng);

struct MonteCarloRatio {
  double mean = 0.0;
  double standard_error = 0.0;
};

// Re(<a>_f / <a>_i) averaged over sampled measurement outcomes.
MonteCarloRatio mc_measurement_ratio(const PureState& state, double delta_n, int samples,
                                     Rng& rng);
// Re(<a>_rot / <a>_i) averaged over rotations exp(-i theta n), theta ~ N(0, phase_variance).
MonteCarloRatio mc_dephasing_ratio(const PureState& state, double phase_variance, int samples,
                                   Rng& rng);

struct PhaseDiffusionResult {
  MonteCarloRatio measurement;
  MonteCarloRatio dephasing;
  double analytic_ratio = 0.0;  // exp(-1/(8 dn^2))
};

// Compares measurement back-action with Gaussian phase noise of variance
// 1/(4 dn^2). Needs samples >= 1000.
PhaseDiffusionResult phase_diffusion_equivalence(const CoherentParams& params, double delta_n,
                                                 int samples, Rng& rng);

}  // namespace qnd
