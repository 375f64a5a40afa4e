#include "qnd/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <ostream>

#include "qnd/approximations.hpp"
#include "qnd/correlation.hpp"
#include "qnd/error.hpp"
#include "qnd/fock.hpp"
#include "qnd/measurement.hpp"
#include "qnd/table.hpp"
#include "qnd/trajectory.hpp"

namespace qnd::cli {

namespace {

constexpr double kPi = std::numbers::pi;

class Recorder {
 public:
  Recorder(CriterionResult& result, double tol_scale) : r_(result), scale_(tol_scale) {}

  void near(const std::string& label, double computed, double expected, double tol) {
    add(label, Check::Kind::Absolute, computed, expected, tol * scale_,
        std::abs(computed - expected) <= tol * scale_);
  }
  void relative(const std::string& label, double computed, double expected, double tol) {
    add(label, Check::Kind::Relative, computed, expected, tol * scale_,
        std::abs(computed - expected) <= tol * scale_ * std::abs(expected));
  }
  void at_most(const std::string& label, double computed, double bound) {
    add(label, Check::Kind::AtMost, computed, bound, 0.0, computed <= bound);
  }
  void at_least(const std::string& label, double computed, double bound) {
    add(label, Check::Kind::AtLeast, computed, bound, 0.0, computed >= bound);
  }
  void info(const std::string& label, double computed) {
    add(label, Check::Kind::Info, computed, 0.0, 0.0, true);
  }

 private:
  void add(const std::string& label, Check::Kind kind, double computed, double expected,
           double tol, bool passed) {
    r_.checks.push_back({label, kind, computed, expected, tol, passed && std::isfinite(computed)});
  }
  CriterionResult& r_;
  double scale_;
};

std::string dn_label(const char* what, double dn) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s (dn=%g)", what, dn);
  return buf;
}

const CoherentParams kBenchmark(3.0, 0.0);

PureState benchmark_state() { return coherent_state(kBenchmark); }

// Complex Gaussian amplitudes on levels [n_lo, dim - 1].
PureState random_state(Rng& rng, int dim, int n_lo) {
  std::vector<Complex> amps(static_cast<std::size_t>(dim));
  for (int n = n_lo; n < dim; ++n)
    amps[static_cast<std::size_t>(n)] = {rng.normal(0.0, 1.0), rng.normal(0.0, 1.0)};
  return PureState::from_amplitudes(std::move(amps));
}

int uniform_int(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(std::floor(rng.uniform() * (hi - lo + 1)));
}

// 1. Fringe modulation factors 2 Qbar.
void fringe_modulation(Recorder& rec, const VerifyOptions&) {
  const PureState state = benchmark_state();
  for (auto [dn, quoted] : {std::pair{0.4, 0.085}, std::pair{0.3, 0.338}}) {
    const auto cfg = MeasurementConfig::covering(state.n_max(), dn);
    const double mod = 2.0 * average_quantization(state, cfg);
    rec.near(dn_label("2 Qbar vs closed form", dn), mod, 2.0 * average_quantization_closed_form(dn),
             1e-3);
    rec.near(dn_label("2 Qbar vs quoted", dn), mod, quoted, 2e-3);
  }
}

// 2. Average decoherence factors.
void average_decoherence(Recorder& rec, const VerifyOptions&) {
  const PureState state = benchmark_state();
  for (auto [dn, quoted] : {std::pair{0.3, 0.25}, std::pair{0.2, 0.044}}) {
    const auto cfg = MeasurementConfig::covering(state.n_max(), dn);
    const double ratio = std::abs(average_coherence(state, cfg)) / kBenchmark.magnitude();
    rec.near(dn_label("|<a>_f(av)|/|alpha| vs exp(-1/(8dn^2))", dn), ratio,
             decoherence_factor(dn), 1e-6);
    rec.near(dn_label("|<a>_f(av)|/|alpha| vs quoted", dn), ratio, quoted, 1e-3);
  }
}

// 3. Integer / half-integer likelihood ratios, exact kernel.
void likelihood_ratios(Recorder& rec, const VerifyOptions&) {
  const PureState state = benchmark_state();
  auto ratio = [&](double dn) {
    return outcome_density(state, 9.0, dn) / outcome_density(state, 9.5, dn);
  };
  auto fringe_ratio = [](double dn) {
    return quantization_sum(9.0, dn, 0.0) / quantization_sum(9.5, dn, 0.0);
  };
  rec.near(dn_label("P(9)/P(9.5)", 0.4), ratio(0.4), 1.19, 0.03);
  rec.near(dn_label("P(9)/P(9.5)", 0.3), ratio(0.3), 2.0, 0.1);
  rec.relative(dn_label("P(9)/P(9.5)", 0.2), ratio(0.2), 10.0, 0.2);
  for (double dn : {0.4, 0.3, 0.2})
    rec.info(dn_label("quantization factor ratio, envelope removed", dn), fringe_ratio(dn));
}

// 4. Coherence fringe contrast at dn = 0.3.
void coherence_contrast(Recorder& rec, const VerifyOptions&) {
  const PureState state = benchmark_state();
  const double dn = 0.3;
  const double a_int = std::abs(coherence_after(state, 9.0, dn));
  const double a_half = std::abs(coherence_after(state, 9.5, dn));
  const double cl_int = std::abs(classical_coherence(kBenchmark, dn, 9.0));
  const double cl_half = std::abs(classical_coherence(kBenchmark, dn, 9.5));
  rec.near("reduction contrast (|a_f|/|a_class| at 9.5 over 9)", (a_half / cl_half) / (a_int / cl_int),
           4.0, 0.5);
  rec.info("raw |a_f(9.5)| / |a_f(9)|", a_half / a_int);
}

// 5. Deep-quantum half-integer coherence at dn = 0.2.
void half_integer_coherence(Recorder& rec, const VerifyOptions&) {
  const PureState state = benchmark_state();
  const double dn = 0.2;
  const double a_half = std::abs(coherence_after(state, 9.5, dn));
  const double a_int = std::abs(coherence_after(state, 9.0, dn));
  const double classical = decoherence_factor(dn) * std::sqrt(10.0);
  rec.relative("|a_f(9.5)| vs sqrt(10)/2", a_half, std::sqrt(10.0) / 2.0, 0.02);
  rec.at_least("|a_f(9.5)| vs 10 x e^{-3.125} sqrt(10)", a_half, 10.0 * classical);
  rec.at_most("|a_f(9)| vs e^{-3.125} sqrt(10) / 10", a_int, classical / 10.0);
}

// 6. Lowest-order accuracy thresholds.
void lowest_order_accuracy(Recorder& rec, const VerifyOptions&) {
  for (double dn : {0.27, 0.30, 0.35}) {
    const auto r = error_report(kBenchmark, dn);
    rec.at_most(dn_label("max truncation error", dn), r.max_truncation_error, 0.01);
    rec.info(dn_label("max error vs exact kernel", dn), r.max_exact_error);
  }
  for (double dn : {0.23, 0.25}) {
    const auto r = error_report(kBenchmark, dn);
    rec.at_most(dn_label("max truncation error", dn), r.max_truncation_error, 0.10);
    rec.info(dn_label("max error vs exact kernel", dn), r.max_exact_error);
  }
  const auto broken = error_report(kBenchmark, 0.15);
  rec.at_least(dn_label("regime warning raised", 0.15), broken.regime_warning ? 1.0 : 0.0, 1.0);
  rec.at_least(dn_label("truncation error beyond 10%", 0.15), broken.max_truncation_error, 0.10);
}

// 7. Correlation maximum.
void correlation_maximum(Recorder& rec, const VerifyOptions&) {
  const PureState state = benchmark_state();
  auto abs_c = [&](double dn) {
    return std::abs(
        quantization_coherence_correlation(state, MeasurementConfig::covering(state.n_max(), dn))
            .correlation);
  };
  const double peak = golden_section_argmax(abs_c, 0.1, 1.0, 1e-5);
  rec.near("argmax |C| vs 1/(2 sqrt(pi))", peak, correlation_peak_resolution(), 1e-4);
  const auto report =
      quantization_coherence_correlation(state, MeasurementConfig::covering(state.n_max(), peak));
  const double e = std::exp(-kPi / 2.0);
  rec.near("Qbar at peak vs e^{-pi/2}", report.q_bar, e, 1e-4);
  rec.near("decoherence at peak vs e^{-pi/2}",
           std::abs(report.avg_coherence) / kBenchmark.magnitude(), e, 1e-4);
}

// 8. Exact factorization of the Q-weighted coherence integral.
void exact_factorization(Recorder& rec, const VerifyOptions& opt) {
  Rng rng(opt.seed + 8);
  std::vector<PureState> states;
  for (int i = 0; i < 50; ++i) states.push_back(random_state(rng, uniform_int(rng, 8, 64), 5));
  for (double dn : {0.2, 0.3, 0.5, 1.0}) {
    double worst = 0.0;
    for (const auto& s : states) {
      const auto cfg = MeasurementConfig::covering(s.n_max(), dn);
      const Complex quad = quantization_coherence_product(s, cfg);
      const Complex closed = -average_quantization_closed_form(dn) * decoherence_factor(dn) *
                             expectation_a(s);
      worst = std::max(worst, std::abs(quad - closed));
    }
    rec.near(dn_label("max |quadrature - closed form| over 50 states", dn), worst, 0.0, 1e-8);
  }
}

// 9. Parity identities.
void parity_identities(Recorder& rec, const VerifyOptions& opt) {
  Rng rng(opt.seed + 9);
  double worst_corr = 0.0, worst_order = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto s = random_state(rng, uniform_int(rng, 1, 64), 0);
    const Complex a = expectation_a(s);
    worst_corr = std::max(worst_corr, std::abs(parity_ordered_correlation(s) + 2.0 * a));
    const auto pair = ordering_ambiguity_demo(s);
    worst_order = std::max({worst_order, std::abs(pair.symmetric - a), std::abs(pair.sandwiched + a)});
  }
  rec.near("max |<Pi a Pi> - <Pi^2><a> + 2<a>|", worst_corr, 0.0, 1e-10);
  rec.near("max ordering-pair deviation from (<a>, -<a>)", worst_order, 0.0, 1e-10);
}

// 10. POVM completeness and purity.
void completeness_and_purity(Recorder& rec, const VerifyOptions& opt) {
  Rng rng(opt.seed + 10);
  double worst_mass = 0.0, worst_norm = 0.0;
  for (int i = 0; i < 30; ++i) {
    const auto s = random_state(rng, uniform_int(rng, 1, 64), 0);
    std::vector<double> resolutions{0.1, 5.0, 0.1 + 4.9 * rng.uniform()};
    for (double dn : resolutions) {
      const auto cfg = MeasurementConfig::covering(s.n_max(), dn);
      worst_mass = std::max(worst_mass, std::abs(total_probability(s, cfg) - 1.0));
      const OutcomeSampler sampler(s, dn);
      for (int k = 0; k < 5; ++k) {
        const auto rec_k = measure(s, sampler(rng), dn);
        worst_norm = std::max(worst_norm, std::abs(rec_k.post_state.norm_squared() - 1.0));
      }
    }
  }
  rec.near("max |integral P dn_m - 1|", worst_mass, 0.0, 1e-8);
  rec.near("max |post-state norm - 1|", worst_norm, 0.0, 1e-12);
}

// 11. Repeated-measurement convergence and the martingale property.
void repeated_convergence(Recorder& rec, const VerifyOptions& opt) {
  const PureState state = benchmark_state();
  const double dn = 1.0;
  const int count = 100;
  Rng rng(opt.seed + 11);
  const auto traj = repeated_measurement(state, dn, count, rng);
  const auto effective = measure(state, traj.mean_outcome(), dn / std::sqrt(count)).post_state;
  rec.at_least("fidelity with single dn=0.1 effective measurement", fidelity(traj.final_state, effective),
               1.0 - 1e-10);

  const int trajectories = 10000;
  const auto prior = state.probabilities();
  std::vector<double> sum(prior.size()), sum_sq(prior.size());
  for (int t = 0; t < trajectories; ++t) {
    Rng child = rng.split();
    const auto p = repeated_measurement(state, dn, count, child).final_state.probabilities();
    for (std::size_t n = 0; n < p.size(); ++n) {
      sum[n] += p[n];
      sum_sq[n] += p[n] * p[n];
    }
  }
  double worst_z = 0.0;
  for (std::size_t n = 0; n < prior.size(); ++n) {
    if (prior[n] < 1e-3) continue;
    const double mean = sum[n] / trajectories;
    const double var = (sum_sq[n] - trajectories * mean * mean) / (trajectories - 1.0);
    const double se = std::sqrt(std::max(var, 0.0) / trajectories);
    worst_z = std::max(worst_z, std::abs(mean - prior[n]) / se);
  }
  rec.near("martingale: max |E[p_n] - p_n| / SE (p_n >= 1e-3)", worst_z, 0.0, 3.0);
}

// 12. Phase-diffusion equivalence.
void phase_diffusion(Recorder& rec, const VerifyOptions& opt) {
  const auto noise = opt.phase_noise ? opt.phase_noise : equivalent_phase_noise;
  const PureState state = benchmark_state();
  Rng rng(opt.seed + 12);
  for (double dn : {0.3, 0.5, 1.0}) {
    const double expected = decoherence_factor(dn);
    const auto cfg = MeasurementConfig::covering(state.n_max(), dn);
    const double quad = std::abs(average_coherence(state, cfg)) / kBenchmark.magnitude();
    rec.near(dn_label("exp(-dphi^2/2) vs averaged measurement coherence", dn),
             std::exp(-noise(dn) / 2.0), quad, 1e-8);

    const auto meas = mc_measurement_ratio(state, dn, 100000, rng);
    const auto deph = mc_dephasing_ratio(state, noise(dn), 100000, rng);
    rec.near(dn_label("MC measurement ratio", dn), meas.mean, expected, 5.0 * meas.standard_error);
    rec.near(dn_label("MC dephasing ratio", dn), deph.mean, expected, 5.0 * deph.standard_error);
  }
}

struct Criterion {
  int id;
  const char* group;
  const char* title;
  void (*run)(Recorder&, const VerifyOptions&);
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list{
      {1, "fringes", "Fringe modulation factors", fringe_modulation},
      {2, "decoherence", "Average decoherence factors", average_decoherence},
      {3, "fringes", "Integer/half-integer likelihood ratios", likelihood_ratios},
      {4, "fringes", "Coherence fringe contrast", coherence_contrast},
      {5, "fringes", "Deep-quantum half-integer coherence", half_integer_coherence},
      {6, "approximations", "Lowest-order accuracy thresholds", lowest_order_accuracy},
      {7, "correlation", "Correlation maximum", correlation_maximum},
      {8, "correlation", "Exact factorization property", exact_factorization},
      {9, "parity", "Parity identities", parity_identities},
      {10, "measurement", "POVM completeness and purity", completeness_and_purity},
      {11, "trajectory", "Repeated-measurement convergence", repeated_convergence},
      {12, "decoherence", "Phase-diffusion equivalence", phase_diffusion},
  };
  return list;
}

const char* kind_symbol(Check::Kind kind) {
  switch (kind) {
    case Check::Kind::Absolute: return "+/-";
    case Check::Kind::Relative: return "+/- rel";
    case Check::Kind::AtMost: return "<=";
    case Check::Kind::AtLeast: return ">=";
    case Check::Kind::Info: return "";
  }
  return "";
}

}  // namespace

bool CriterionResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const std::vector<std::string>& acceptance_groups() {
  static const std::vector<std::string> groups{"fringes",     "decoherence", "approximations",
                                               "correlation", "parity",      "measurement",
                                               "trajectory"};
  return groups;
}

std::vector<CriterionResult> run_acceptance(const VerifyOptions& options) {
  if (!(options.tol_scale > 0.0)) throw InvalidParam("tol-scale must be positive");
  const auto& groups = acceptance_groups();
  bool by_group = std::find(groups.begin(), groups.end(), options.only) != groups.end();
  int by_id = 0;
  if (!options.only.empty() && !by_group) {
    try {
      std::size_t used = 0;
      by_id = std::stoi(options.only, &used);
      if (used != options.only.size()) by_id = 0;
    } catch (const std::exception&) {
      by_id = 0;
    }
    if (by_id < 1 || by_id > static_cast<int>(criteria().size()))
      throw InvalidParam("unknown verification group '" + options.only + "'");
  }

  std::vector<CriterionResult> results;
  for (const auto& c : criteria()) {
    if (by_group && options.only != c.group) continue;
    if (by_id != 0 && by_id != c.id) continue;
    CriterionResult result{c.id, c.group, c.title, {}};
    Recorder rec(result, options.tol_scale);
    try {
      c.run(rec, options);
    } catch (const Error& e) {
      result.checks.push_back({std::string("raised: ") + e.what(), Check::Kind::Info, 0.0, 0.0, 0.0,
                               false});
    }
    results.push_back(std::move(result));
  }
  return results;
}

void print_report(const std::vector<CriterionResult>& results, std::ostream& out) {
  out << "qnd " << kVersion << " acceptance report\n";
  char line[256];
  for (const auto& r : results) {
    std::snprintf(line, sizeof line, "%s [%2d] %-15s %s\n", r.passed() ? "PASS" : "FAIL", r.id,
                  r.group.c_str(), r.title.c_str());
    out << line;
    for (const auto& c : r.checks) {
      if (c.kind == Check::Kind::Info) {
        std::snprintf(line, sizeof line, "         %-4s %s = %.10g\n", c.passed ? "info" : "err",
                      c.label.c_str(), c.computed);
      } else if (c.kind == Check::Kind::AtMost || c.kind == Check::Kind::AtLeast) {
        std::snprintf(line, sizeof line, "         %-4s %s = %.10g (%s %.10g)\n",
                      c.passed ? "ok" : "FAIL", c.label.c_str(), c.computed, kind_symbol(c.kind),
                      c.expected);
      } else {
        std::snprintf(line, sizeof line, "         %-4s %s = %.10g (expected %.10g %s %.3g)\n",
                      c.passed ? "ok" : "FAIL", c.label.c_str(), c.computed, c.expected,
                      kind_symbol(c.kind), c.tolerance);
      }
      out << line;
    }
  }
  const auto passed = std::count_if(results.begin(), results.end(),
                                    [](const CriterionResult& r) { return r.passed(); });
  out << passed << "/" << results.size() << " criteria passed\n";
}

bool all_passed(const std::vector<CriterionResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CriterionResult& r) { return r.passed(); });
}

}  // namespace qnd::cli
