#pragma once

// Closed-form approximations for a coherent input with |alpha|^2 >> 1.
//
// Replacing the Poisson photon distribution by a Gaussian of mean and variance
// |alpha|^2 factorizes the exact results into a classical envelope times a
// periodic quantization factor. The quantization factor is a Gaussian comb,
// i.e. a Jacobi theta function, with Fourier coefficients exp(-2 pi^2 dn^2 k^2).

#include <vector>

#include "qnd/fock.hpp"

namespace qnd {

inline constexpr double kFourierCoefficientCutoff = 1e-14;
inline constexpr double kCombWindowSigmas = 10.0;
inline constexpr double kLowestOrderMinResolution = 0.2;

class FourierTruncation {
 public:
  // Keeps harmonics while exp(-2 pi^2 dn^2 k^2) > cutoff.
  static FourierTruncation for_resolution(double delta_n,
                                          double cutoff = kFourierCoefficientCutoff);
  static FourierTruncation fixed(double delta_n, int k_max);

  double delta_n() const { return delta_n_; }
  int k_max() const { return k_max_; }
  double coefficient(int k) const;
  // 2 * sum_{k > k_max} coefficient(k).
  double dropped_tail_bound() const;

 private:
  FourierTruncation(double delta_n, int k_max) : delta_n_(delta_n), k_max_(k_max) {}
  double delta_n_;
  int k_max_;
};

// Fourier series of the normalized comb
//   (2 pi dn^2)^(-1/2) sum_{n in Z} exp(-(n - offset - n_m)^2 / (2 dn^2))
//     = 1 + 2 sum_k exp(-2 pi^2 dn^2 k^2) cos(2 pi k (n_m + offset)).
// offset = 0 and offset = 1/2 are the probability and coherence factors; at
// k = 1 the half offset flips the sign of the modulation.
double quantization_sum(double n_m, double offset, const FourierTruncation& trunc);
double quantization_sum(double n_m, double delta_n, double offset);

// Direct evaluation of the same comb, summing n over
// [n_m + offset - 10 dn, n_m + offset + 10 dn]. With half_line only n >= 0
// contributes, as for photon numbers.
double gaussian_comb(double n_m, double delta_n, double offset, bool half_line = false);

// Gaussian intensity distribution of mean and variance |alpha|^2.
double classical_probability(double mean_intensity, double n_m);

// exp(-i phi) sqrt(n_m + 1/2) exp(-1/(8 dn^2)).
Complex classical_coherence(const CoherentParams& params, double delta_n, double n_m);

// Envelope times the complete quantization factors (before truncation).
struct FactorizedResult {
  double probability = 0.0;
  Complex coherence;
};
FactorizedResult factorized(const CoherentParams& params, double delta_n, double n_m);

struct LowestOrderResult {
  double probability = 0.0;
  Complex coherence;
  // Set for dn below kLowestOrderMinResolution, where the k = 1 truncation
  // no longer describes <a>_f.
  bool regime_warning = false;
};

// Classical results times the k = 1 fringe factors (1 +- 2 e^{-2 pi^2 dn^2} cos 2 pi n_m).
LowestOrderResult lowest_order(const CoherentParams& params, double delta_n, double n_m);

struct ApproximationPoint {
  double n_m = 0.0;
  double p_exact = 0.0;
  double p_classical = 0.0;
  double p_factorized = 0.0;
  double p_lowest_order = 0.0;
  Complex a_exact;
  Complex a_classical;
  Complex a_factorized;
  Complex a_lowest_order;
  // |lowest - factorized| / |factorized|: error of the k = 1 truncation.
  double truncation_error = 0.0;
  // |lowest - exact| / |exact|: also carries the Poisson envelope asymmetry.
  double exact_error = 0.0;
};

struct ApproximationReport {
  double delta_n = 0.0;
  std::vector<ApproximationPoint> points;
  double max_truncation_error = 0.0;  // over integer and half-integer probes
  double max_exact_error = 0.0;
  bool regime_warning = false;
  bool boundary_flag = false;  // some probe sits below 5 dn
  // Threshold checks on max_truncation_error.
  bool within_one_percent = false;
  bool within_ten_percent = false;
};

// Probes n_m = floor(|alpha|^2) and floor(|alpha|^2) + 1/2.
ApproximationReport error_report(const CoherentParams& params, double delta_n);

}  // namespace qnd
