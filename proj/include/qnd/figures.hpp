#pragma once

// Data behind the five benchmark figures, resolution sweeps and Monte Carlo
// sample dumps, as Tables ready for write_file.
//
// Figures 1-4 (coherent input, dn = 0.7, 0.4, 0.3, 0.2):
//   n_m, P_exact, P_approx, a_f_exact, a_f_dashed
// a_f columns are magnitudes |<a>_f|; the phase is -phi for every n_m. The
// dashed counterparts are the classical limit (figure 1; a_f in figure 4) or the
// lowest-order fringe formulas (figures 2-3; P in figure 4). Figures 2-3 append
// P_mod and a_mod: the exact curves divided by the classical values at
// n_m = floor(|alpha|^2).
// Figure 5: delta_n, c_abs_norm (|C|/|alpha|), c_signed_norm
//   (Re[C conj(alpha)]/|alpha|^2), q_bar, decoherence.
// Sweep: delta_n, q_bar, decoherence, c_abs_norm, c_signed_norm,
//   lo_truncation_error, lo_exact_error.

#include <cstdint>
#include <string>

#include "qnd/table.hpp"

namespace qnd::cli {

struct RunConfig {
  std::string command = "figure";
  int figure_id = 1;
  double alpha_magnitude = 3.0;
  double alpha_phase = 0.0;
  double delta_n = 0.3;
  double dn_min = 0.2;
  double dn_max = 1.0;
  double dn_step = 0.01;
  double grid_min = 0.0;
  double grid_max = 20.0;
  double grid_step = 0.02;
  int count = 1000;
  bool trajectory = false;
  std::uint64_t seed = 1;
  std::string output = "-";
  Format format = Format::Csv;

  // Throws InvalidParam for any unusable physical or grid parameter.
  void validate() const;
};

// Default dn range of figure 5: [0.1, 1.0] step 0.002.
RunConfig figure5_defaults();

double figure_resolution(int figure_id);  // 1..4

Table figure_table(const RunConfig& config);
Table sweep_table(const RunConfig& config);
Table sample_table(const RunConfig& config);

}  // namespace qnd::cli
