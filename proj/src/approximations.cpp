#include "qnd/approximations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qnd/error.hpp"
#include "qnd/measurement.hpp"

namespace qnd {

namespace {

constexpr double kPi = std::numbers::pi;

void check_resolution(double delta_n) {
  if (!(delta_n > 0.0) || std::isnan(delta_n))
    throw InvalidParam("delta_n must be positive, got " + std::to_string(delta_n));
}

void check_envelope_outcome(double n_m) {
  if (!std::isfinite(n_m) || n_m < -0.5)
    throw InvalidParam("classical amplitude needs n_m >= -1/2, got " + std::to_string(n_m));
}

double relative_error(Complex approx, Complex reference) {
  return std::abs(approx - reference) / std::abs(reference);
}

}  // namespace

FourierTruncation FourierTruncation::for_resolution(double delta_n, double cutoff) {
  check_resolution(delta_n);
  if (!(cutoff > 0.0 && cutoff < 1.0)) throw InvalidParam("cutoff must lie in (0,1)");
  if (std::isinf(delta_n)) return FourierTruncation(delta_n, 0);
  // exp(-2 pi^2 dn^2 k^2) > cutoff  <=>  k < sqrt(-ln cutoff) / (pi dn sqrt 2)
  const double k_limit = std::sqrt(-std::log(cutoff) / 2.0) / (kPi * delta_n);
  int k_max = static_cast<int>(std::floor(k_limit));
  while (k_max > 0 && !(std::exp(-2.0 * kPi * kPi * delta_n * delta_n * k_max * k_max) > cutoff))
    --k_max;
  return FourierTruncation(delta_n, k_max);
}

FourierTruncation FourierTruncation::fixed(double delta_n, int k_max) {
  check_resolution(delta_n);
  if (k_max < 0) throw InvalidParam("k_max must be non-negative");
  return FourierTruncation(delta_n, k_max);
}

double FourierTruncation::coefficient(int k) const {
  const double s = kPi * delta_n_ * k;
  return std::exp(-2.0 * s * s);
}

double FourierTruncation::dropped_tail_bound() const {
  double tail = 0.0;
  for (int k = k_max_ + 1;; ++k) {
    const double c = coefficient(k);
    tail += c;
    if (c < 1e-30 * std::max(tail, 1e-300) || c == 0.0) break;
  }
  return 2.0 * tail;
}

double quantization_sum(double n_m, double offset, const FourierTruncation& trunc) {
  if (!std::isfinite(n_m) || !std::isfinite(offset)) throw InvalidParam("n_m must be finite");
  const double phase = 2.0 * kPi * (n_m + offset);
  double sum = 0.0;
  for (int k = trunc.k_max(); k >= 1; --k) sum += trunc.coefficient(k) * std::cos(phase * k);
  return 1.0 + 2.0 * sum;
}

double quantization_sum(double n_m, double delta_n, double offset) {
  return quantization_sum(n_m, offset, FourierTruncation::for_resolution(delta_n));
}

double gaussian_comb(double n_m, double delta_n, double offset, bool half_line) {
  check_resolution(delta_n);
  if (!std::isfinite(delta_n)) throw InvalidParam("comb needs a finite delta_n");
  const double center = n_m + offset;
  double lo = std::ceil(center - kCombWindowSigmas * delta_n);
  const double hi = std::floor(center + kCombWindowSigmas * delta_n);
  if (half_line) lo = std::max(lo, 0.0);
  const double two_var = 2.0 * delta_n * delta_n;
  double sum = 0.0;
  for (double n = lo; n <= hi; n += 1.0) {
    const double d = n - center;
    sum += std::exp(-d * d / two_var);
  }
  return sum / std::sqrt(kPi * two_var);
}

double classical_probability(double mean_intensity, double n_m) {
  if (!(mean_intensity > 0.0) || !std::isfinite(mean_intensity))
    throw InvalidParam("mean intensity must be positive");
  if (!std::isfinite(n_m)) throw InvalidParam("n_m must be finite");
  const double d = n_m - mean_intensity;
  return std::exp(-d * d / (2.0 * mean_intensity)) / std::sqrt(2.0 * kPi * mean_intensity);
}

Complex classical_coherence(const CoherentParams& params, double delta_n, double n_m) {
  check_envelope_outcome(n_m);
  return std::polar(std::sqrt(n_m + 0.5) * decoherence_factor(delta_n), -params.phase());
}

FactorizedResult factorized(const CoherentParams& params, double delta_n, double n_m) {
  const auto trunc = FourierTruncation::for_resolution(delta_n);
  const double q_int = quantization_sum(n_m, 0.0, trunc);
  const double q_half = quantization_sum(n_m, 0.5, trunc);
  FactorizedResult out;
  out.probability = classical_probability(params.mean_photon_number(), n_m) * q_int;
  out.coherence = classical_coherence(params, delta_n, n_m) * (q_half / q_int);
  return out;
}

LowestOrderResult lowest_order(const CoherentParams& params, double delta_n, double n_m) {
  check_resolution(delta_n);
  check_envelope_outcome(n_m);
  const auto first = FourierTruncation::fixed(delta_n, 1);
  const double x = 2.0 * first.coefficient(1) * std::cos(2.0 * kPi * n_m);
  LowestOrderResult out;
  out.probability = classical_probability(params.mean_photon_number(), n_m) * (1.0 + x);
  out.coherence = classical_coherence(params, delta_n, n_m) * ((1.0 - x) / (1.0 + x));
  out.regime_warning = delta_n < kLowestOrderMinResolution;
  return out;
}

ApproximationReport error_report(const CoherentParams& params, double delta_n) {
  check_resolution(delta_n);
  if (!(params.magnitude() > 0.0)) throw InvalidParam("error report needs alpha != 0");
  const PureState state = coherent_state(params);
  const double base = std::floor(params.mean_photon_number());

  ApproximationReport report;
  report.delta_n = delta_n;
  report.regime_warning = delta_n < kLowestOrderMinResolution;
  for (double n_m : {base, base + 0.5}) {
    ApproximationPoint pt;
    pt.n_m = n_m;
    const auto exact = measure(state, n_m, delta_n);
    const auto fact = factorized(params, delta_n, n_m);
    const auto low = lowest_order(params, delta_n, n_m);
    pt.p_exact = exact.density;
    pt.p_classical = classical_probability(params.mean_photon_number(), n_m);
    pt.p_factorized = fact.probability;
    pt.p_lowest_order = low.probability;
    pt.a_exact = exact.coherence;
    pt.a_classical = classical_coherence(params, delta_n, n_m);
    pt.a_factorized = fact.coherence;
    pt.a_lowest_order = low.coherence;
    pt.truncation_error = relative_error(low.coherence, fact.coherence);
    pt.exact_error = relative_error(low.coherence, exact.coherence);
    report.max_truncation_error = std::max(report.max_truncation_error, pt.truncation_error);
    report.max_exact_error = std::max(report.max_exact_error, pt.exact_error);
    if (n_m < 5.0 * delta_n) report.boundary_flag = true;
    report.points.push_back(pt);
  }
  report.within_one_percent = report.max_truncation_error <= 0.01;
  report.within_ten_percent = report.max_truncation_error <= 0.10;
  return report;
}

}  // namespace qnd
