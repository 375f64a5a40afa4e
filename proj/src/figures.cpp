#include "qnd/figures.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "qnd/approximations.hpp"
#include "qnd/correlation.hpp"
#include "qnd/error.hpp"
#include "qnd/fock.hpp"
#include "qnd/measurement.hpp"
#include "qnd/trajectory.hpp"

namespace qnd::cli {

namespace {

// Runs body(i) for i in [0, n) over a few threads; each i writes its own slot.
template <class Body>
void parallel_for(std::size_t n, Body body) {
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(n, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) body(i);
    });
}

std::vector<double> linear_grid(double lo, double hi, double step) {
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = lo + static_cast<double>(i) * step;
  return out;
}

void echo_common(Table& t, const RunConfig& c) {
  t.add_param("alpha_magnitude", c.alpha_magnitude);
  t.add_param("alpha_phase", c.alpha_phase);
}

double safe_abs_coherence(const PureState& state, double n_m, double delta_n) {
  try {
    return std::abs(coherence_after(state, n_m, delta_n));
  } catch (const ZeroProbability&) {
    return std::nan("");
  }
}

struct ResolutionRow {
  CorrelationReport correlation;
  ApproximationReport approx;
};

Table resolution_table(const RunConfig& c, bool with_errors) {
  const CoherentParams params(c.alpha_magnitude, c.alpha_phase);
  const PureState state = coherent_state(params);
  const Complex alpha = params.alpha();
  const double mag2 = std::norm(alpha);
  const auto resolutions = linear_grid(c.dn_min, c.dn_max, c.dn_step);

  std::vector<std::vector<double>> rows(resolutions.size());
  parallel_for(resolutions.size(), [&](std::size_t i) {
    const double dn = resolutions[i];
    const auto config = MeasurementConfig::covering(state.n_max(), dn);
    const auto report = quantization_coherence_correlation(state, config);
    const double c_abs = std::abs(report.correlation) / params.magnitude();
    const double c_signed = (report.correlation * std::conj(alpha)).real() / mag2;
    const double decoherence = std::abs(report.avg_coherence) / params.magnitude();
    if (with_errors) {
      const auto err = error_report(params, dn);
      rows[i] = {dn, report.q_bar, decoherence, c_abs, c_signed, err.max_truncation_error,
                 err.max_exact_error};
    } else {
      rows[i] = {dn, c_abs, c_signed, report.q_bar, decoherence};
    }
  });

  Table t;
  echo_common(t, c);
  t.add_param("dn_min", c.dn_min);
  t.add_param("dn_max", c.dn_max);
  t.add_param("dn_step", c.dn_step);
  t.rows = std::move(rows);
  return t;
}

}  // namespace

void RunConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidParam(std::string(name) + " must be positive");
  };
  if (!std::isfinite(alpha_magnitude) || alpha_magnitude < 0.0)
    throw InvalidParam("alpha magnitude must be finite and non-negative");
  if (!std::isfinite(alpha_phase)) throw InvalidParam("alpha phase must be finite");
  if (command == "figure") {
    if (figure_id < 1 || figure_id > 5) throw InvalidParam("figure id must be 1..5");
    if (!(alpha_magnitude > 0.0)) throw InvalidParam("figures need alpha != 0");
    if (figure_id == 5) {
      positive(dn_min, "dn_min");
      positive(dn_step, "dn_step");
      if (!(dn_max >= dn_min)) throw InvalidParam("dn_max must be >= dn_min");
    } else {
      positive(grid_step, "grid_step");
      if (!(grid_max > grid_min)) throw InvalidParam("grid_max must exceed grid_min");
      if (grid_min < -0.5) throw InvalidParam("figure grids start at n_m >= -1/2");
    }
  } else if (command == "sweep") {
    if (!(alpha_magnitude > 0.0)) throw InvalidParam("sweeps need alpha != 0");
    positive(dn_min, "dn_min");
    positive(dn_step, "dn_step");
    if (!(dn_max >= dn_min)) throw InvalidParam("dn_max must be >= dn_min");
  } else if (command == "sample") {
    positive(delta_n, "delta_n");
    if (count < 1) throw InvalidParam("count must be >= 1");
  } else if (command != "verify") {
    throw InvalidParam("unknown command '" + command + "'");
  }
}

RunConfig figure5_defaults() {
  RunConfig c;
  c.command = "figure";
  c.figure_id = 5;
  c.dn_min = 0.1;
  c.dn_max = 1.0;
  c.dn_step = 0.002;
  return c;
}

double figure_resolution(int figure_id) {
  switch (figure_id) {
    case 1: return 0.7;
    case 2: return 0.4;
    case 3: return 0.3;
    case 4: return 0.2;
    default: throw InvalidParam("figures 1-4 have a fixed resolution");
  }
}

Table figure_table(const RunConfig& c) {
  c.validate();
  if (c.figure_id == 5) {
    Table t = resolution_table(c, false);
    t.command = "figure 5";
    t.columns = {"delta_n", "c_abs_norm", "c_signed_norm", "q_bar", "decoherence"};
    return t;
  }

  const double dn = figure_resolution(c.figure_id);
  const CoherentParams params(c.alpha_magnitude, c.alpha_phase);
  const PureState state = coherent_state(params);
  const double mean = params.mean_photon_number();
  const bool panel_c = c.figure_id == 2 || c.figure_id == 3;
  const double ref = std::floor(mean);
  const double p_ref = classical_probability(mean, ref);
  const double a_ref = std::abs(classical_coherence(params, dn, ref));

  const auto grid = linear_grid(c.grid_min, c.grid_max, c.grid_step);
  Table t;
  t.command = "figure " + std::to_string(c.figure_id);
  echo_common(t, c);
  t.add_param("delta_n", dn);
  t.add_param("grid_min", c.grid_min);
  t.add_param("grid_max", c.grid_max);
  t.add_param("grid_step", c.grid_step);
  t.columns = {"n_m", "P_exact", "P_approx", "a_f_exact", "a_f_dashed"};
  if (panel_c) {
    t.add_param("mod_reference_n_m", ref);
    t.columns.insert(t.columns.end(), {"P_mod", "a_mod"});
  }

  t.rows.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const double n_m = grid[i];
    const double p_exact = outcome_density(state, n_m, dn);
    const double a_exact = safe_abs_coherence(state, n_m, dn);
    const auto low = lowest_order(params, dn, n_m);
    const double p_class = classical_probability(mean, n_m);
    const double a_class = std::abs(classical_coherence(params, dn, n_m));

    double p_dashed = low.probability;
    double a_dashed = std::abs(low.coherence);
    if (c.figure_id == 1) {
      p_dashed = p_class;
      a_dashed = a_class;
    } else if (c.figure_id == 4) {
      a_dashed = a_class;
    }
    std::vector<double> row{n_m, p_exact, p_dashed, a_exact, a_dashed};
    if (panel_c) {
      row.push_back(p_exact / p_ref);
      row.push_back(a_exact / a_ref);
    }
    t.rows[i] = std::move(row);
  });
  return t;
}

Table sweep_table(const RunConfig& c) {
  c.validate();
  Table t = resolution_table(c, true);
  t.command = "sweep";
  t.columns = {"delta_n",     "q_bar",          "decoherence",         "c_abs_norm",
               "c_signed_norm", "lo_truncation_error", "lo_exact_error"};
  return t;
}

Table sample_table(const RunConfig& c) {
  c.validate();
  const CoherentParams params(c.alpha_magnitude, c.alpha_phase);
  const PureState state = coherent_state(params);
  Rng rng(c.seed);

  Table t;
  echo_common(t, c);
  t.add_param("delta_n", c.delta_n);
  t.add_param("count", static_cast<double>(c.count));
  t.add_param("seed", std::to_string(c.seed));
  if (c.trajectory) {
    t.command = "sample trajectory";
    t.columns = {"step", "n_m", "mean_n", "var_n", "abs_a"};
    const auto traj = repeated_measurement(state, c.delta_n, c.count, rng);
    for (std::size_t i = 0; i < traj.steps.size(); ++i) {
      const auto& s = traj.steps[i];
      t.rows.push_back({static_cast<double>(i + 1), s.n_m, s.mean_n, s.variance_n,
                        s.abs_coherence});
    }
    return t;
  }

  t.command = "sample";
  t.columns = {"shot", "n_m", "density", "a_f_re", "a_f_im", "quantization"};
  const OutcomeSampler sampler(state, c.delta_n);
  for (int i = 0; i < c.count; ++i) {
    const auto record = measure(state, sampler(rng), c.delta_n);
    t.rows.push_back({static_cast<double>(i), record.n_m, record.density, record.coherence.real(),
                      record.coherence.imag(), quantization(record.n_m)});
  }
  return t;
}

}  // namespace qnd::cli
