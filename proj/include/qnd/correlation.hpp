#pragma once

// Quantization Q(n_m) = cos(2 pi n_m) of a measurement outcome and its
// correlation with the post-measurement coherence <a>_f.

#include <utility>

#include "qnd/fock.hpp"
#include "qnd/measurement.hpp"

namespace qnd {

double quantization(double n_m);

// Closed forms.
double average_quantization_closed_form(double delta_n);  // exp(-2 pi^2 dn^2)
// C = -2 exp(-2 pi^2 dn^2) exp(-1/(8 dn^2)) <a>_i
Complex correlation_closed_form(Complex initial_coherence, double delta_n);
// 1/(2 sqrt(pi)), the resolution where |C| peaks.
double correlation_peak_resolution();

// Integral of Q(n_m) P(n_m). Throws GridTooNarrow.
double average_quantization(const PureState& state, const MeasurementConfig& config);

// Integral of Q(n_m) <psi|P a P|psi>; equals the average of Q <a>_f.
Complex quantization_coherence_product(const PureState& state, const MeasurementConfig& config);

struct AnalyticDeltas {
  double q_bar = 0.0;           // quadrature minus exp(-2 pi^2 dn^2)
  Complex avg_coherence;        // quadrature minus exp(-1/(8 dn^2)) <a>_i
  Complex product;              // quadrature minus (-q_bar_cf * avg_cf)
  Complex correlation;          // quadrature minus closed form C

  double max_abs() const;
};

struct CorrelationReport {
  double delta_n = 0.0;
  double q_bar = 0.0;
  Complex avg_coherence;
  Complex q_coherence_product;
  Complex correlation;          // q_coherence_product - q_bar * avg_coherence
  Complex correlation_closed_form;
  AnalyticDeltas analytic_deltas;
  bool consistent = false;      // analytic_deltas.max_abs() < config.quad_tol
};

// Quadratures for a coherent input, cross-checked against the closed forms.
CorrelationReport quantization_coherence_correlation(const CoherentParams& params,
                                                     const MeasurementConfig& config);
// Same, for an arbitrary state (closed forms use <a>_i of the state).
CorrelationReport quantization_coherence_correlation(const PureState& state,
                                                     const MeasurementConfig& config);

// Golden-section maximum of f on [lo, hi] (f unimodal there).
template <class F>
double golden_section_argmax(F&& f, double lo, double hi, double tol) {
  const double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d; d = c; fd = fc;
      c = b - inv_phi * (b - a); fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + inv_phi * (b - a); fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// <Pi a Pi> - <Pi^2><a>, evaluated by applying the operators in turn.
Complex parity_ordered_correlation(const PureState& state);

struct OrderingPair {
  Complex symmetric;   // (1/2)<a Pi^2 + Pi^2 a>
  Complex sandwiched;  // <Pi a Pi>
};
OrderingPair ordering_ambiguity_demo(const PureState& state);

}  // namespace qnd
