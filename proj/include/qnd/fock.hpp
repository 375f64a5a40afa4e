#pragma once

// Truncated single-mode Fock space: pure states and the expectation values of
// the number, annihilation and parity operators.

#include <complex>
#include <span>
#include <vector>

namespace qnd {

using Complex = std::complex<double>;

inline constexpr double kDefaultTailTol = 1e-12;
inline constexpr double kNormTol = 1e-12;

// Coherent amplitude alpha = magnitude * exp(-i * phase).
class CoherentParams {
 public:
  CoherentParams() = default;
  // Throws InvalidParam for a negative or non-finite magnitude or phase.
  // The phase is folded into (-pi, pi].
  explicit CoherentParams(double magnitude, double phase = 0.0);

  static CoherentParams from_alpha(Complex alpha);

  double magnitude() const { return magnitude_; }
  double phase() const { return phase_; }
  double mean_photon_number() const { return magnitude_ * magnitude_; }
  Complex alpha() const;

 private:
  double magnitude_ = 0.0;
  double phase_ = 0.0;
};

// Pure state c_n |n>, n = 0..n_max. Always holds at least one amplitude.
class PureState {
 public:
  // Normalizes the input. Throws InvalidParam for an empty, non-finite or
  // zero-norm amplitude list.
  static PureState from_amplitudes(std::vector<Complex> amplitudes);
  static PureState number(int n, int n_max);

  int n_max() const { return static_cast<int>(amps_.size()) - 1; }
  std::size_t dimension() const { return amps_.size(); }
  std::span<const Complex> amplitudes() const { return amps_; }
  Complex operator[](std::size_t n) const { return amps_[n]; }
  double probability(std::size_t n) const { return std::norm(amps_[n]); }
  std::vector<double> probabilities() const;
  double norm_squared() const;

  // Set only by constructors that certify the cutoff (coherent_state).
  bool truncation_adequate() const { return adequate_; }

 private:
  friend PureState coherent_state(const CoherentParams&, int, double);
  explicit PureState(std::vector<Complex> amps) : amps_(std::move(amps)) {}

  std::vector<Complex> amps_;
  bool adequate_ = false;
};

// Probability mass of Poisson(mean) strictly above n_max.
double poisson_tail(double mean, int n_max);

// Smallest n_max whose dropped Poisson tail is below tail_tol.
int choose_truncation(const CoherentParams& params, double tail_tol = kDefaultTailTol);

// c_n = exp(-|alpha|^2/2) alpha^n / sqrt(n!), renormalized on 0..n_max.
// Throws TruncationTooSmall when the dropped tail exceeds tail_tol.
PureState coherent_state(const CoherentParams& params, int n_max,
                         double tail_tol = kDefaultTailTol);
PureState coherent_state(const CoherentParams& params);

Complex expectation_a(const PureState& state);
double expectation_n(const PureState& state);
double expectation_n2(const PureState& state);
double variance_n(const PureState& state);
double expectation_parity(const PureState& state);
// <Pi^2>, evaluated term by term rather than assumed to be one.
double expectation_parity_squared(const PureState& state);

Complex inner_product(std::span<const Complex> bra, std::span<const Complex> ket);
double fidelity(const PureState& a, const PureState& b);

// Operator actions on a truncated amplitude vector (same dimension out).
std::vector<Complex> apply_annihilation(std::span<const Complex> ket);
std::vector<Complex> apply_parity(std::span<const Complex> ket);
// exp(-i theta n) |psi>.
PureState rotate_phase(const PureState& state, double theta);

}  // namespace qnd
