#include "qnd/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "qnd/error.hpp"

namespace qnd {

namespace {

double log_poisson(double mean, int n) {
  if (mean == 0.0) return n == 0 ? 0.0 : -INFINITY;
  return -mean + n * std::log(mean) - std::lgamma(n + 1.0);
}

}  // namespace

CoherentParams::CoherentParams(double magnitude, double phase) {
  if (!std::isfinite(magnitude) || magnitude < 0.0)
    throw InvalidParam("coherent magnitude must be finite and non-negative, got " +
                       std::to_string(magnitude));
  if (!std::isfinite(phase)) throw InvalidParam("coherent phase must be finite");
  double folded = std::remainder(phase, 2.0 * std::numbers::pi);
  if (folded <= -std::numbers::pi) folded += 2.0 * std::numbers::pi;
  magnitude_ = magnitude;
  phase_ = folded;
}

CoherentParams CoherentParams::from_alpha(Complex alpha) {
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()))
    throw InvalidParam("alpha must be finite");
  double mag = std::abs(alpha);
  return CoherentParams(mag, mag == 0.0 ? 0.0 : -std::arg(alpha));
}

Complex CoherentParams::alpha() const { return std::polar(magnitude_, -phase_); }

PureState PureState::from_amplitudes(std::vector<Complex> amplitudes) {
  if (amplitudes.empty()) throw InvalidParam("state needs at least one amplitude");
  double norm2 = 0.0;
  for (const auto& c : amplitudes) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw InvalidParam("state amplitudes must be finite");
    norm2 += std::norm(c);
  }
  if (!(norm2 > 0.0)) throw InvalidParam("state has zero norm");
  const double scale = 1.0 / std::sqrt(norm2);
  for (auto& c : amplitudes) c *= scale;
  return PureState(std::move(amplitudes));
}

PureState PureState::number(int n, int n_max) {
  if (n < 0 || n_max < n) throw InvalidParam("number state needs 0 <= n <= n_max");
  std::vector<Complex> amps(static_cast<std::size_t>(n_max) + 1);
  amps[static_cast<std::size_t>(n)] = 1.0;
  return PureState(std::move(amps));
}

std::vector<double> PureState::probabilities() const {
  std::vector<double> p(amps_.size());
  std::transform(amps_.begin(), amps_.end(), p.begin(),
                 [](const Complex& c) { return std::norm(c); });
  return p;
}

double PureState::norm_squared() const {
  double s = 0.0;
  for (const auto& c : amps_) s += std::norm(c);
  return s;
}

double poisson_tail(double mean, int n_max) {
  if (!std::isfinite(mean) || mean < 0.0) throw InvalidParam("Poisson mean must be >= 0");
  if (n_max < 0) return 1.0;
  // Sum upward from n_max+1 until the terms are negligible past the mode.
  double tail = 0.0;
  for (int k = n_max + 1;; ++k) {
    const double term = std::exp(log_poisson(mean, k));
    tail += term;
    if (k > mean && term < 1e-20 * std::max(tail, 1e-300)) break;
    if (term == 0.0 && k > mean) break;
  }
  return tail;
}

int choose_truncation(const CoherentParams& params, double tail_tol) {
  if (!(tail_tol > 0.0 && tail_tol < 1.0)) throw InvalidParam("tail_tol must lie in (0,1)");
  const double mean = params.mean_photon_number();
  if (mean == 0.0) return 0;

  // Terms up to far above the mean, then suffix sums from the top down.
  const int top = static_cast<int>(std::ceil(mean + 40.0 * std::sqrt(mean) + 60.0));
  std::vector<double> suffix(static_cast<std::size_t>(top) + 2, 0.0);
  for (int k = top; k >= 0; --k)
    suffix[static_cast<std::size_t>(k)] =
        suffix[static_cast<std::size_t>(k) + 1] + std::exp(log_poisson(mean, k));
  for (int n = 0; n <= top; ++n)
    if (suffix[static_cast<std::size_t>(n) + 1] < tail_tol) return n;
  return top;
}

PureState coherent_state(const CoherentParams& params, int n_max, double tail_tol) {
  if (n_max < 0) throw InvalidParam("n_max must be non-negative");
  const double mean = params.mean_photon_number();
  const double tail = poisson_tail(mean, n_max);
  if (tail >= tail_tol)
    throw TruncationTooSmall("n_max=" + std::to_string(n_max) + " drops Poisson tail " +
                             std::to_string(tail));

  std::vector<Complex> amps(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    const double mag = std::exp(0.5 * log_poisson(mean, n));
    amps[static_cast<std::size_t>(n)] = std::polar(mag, -params.phase() * n);
  }
  PureState state = PureState::from_amplitudes(std::move(amps));
  state.adequate_ = true;
  return state;
}

PureState coherent_state(const CoherentParams& params) {
  return coherent_state(params, choose_truncation(params) + 5);
}

Complex expectation_a(const PureState& state) {
  const auto c = state.amplitudes();
  Complex sum = 0.0;
  for (std::size_t n = 0; n + 1 < c.size(); ++n)
    sum += std::conj(c[n]) * c[n + 1] * std::sqrt(static_cast<double>(n + 1));
  return sum;
}

double expectation_n(const PureState& state) {
  double s = 0.0;
  for (std::size_t n = 0; n < state.dimension(); ++n) s += n * state.probability(n);
  return s;
}

double expectation_n2(const PureState& state) {
  double s = 0.0;
  for (std::size_t n = 0; n < state.dimension(); ++n)
    s += static_cast<double>(n * n) * state.probability(n);
  return s;
}

double variance_n(const PureState& state) {
  // Two-pass form; E[n^2] - E[n]^2 cancels badly for narrow states.
  const double mean = expectation_n(state);
  double s = 0.0;
  for (std::size_t n = 0; n < state.dimension(); ++n) {
    const double d = static_cast<double>(n) - mean;
    s += d * d * state.probability(n);
  }
  return s;
}

double expectation_parity(const PureState& state) {
  double s = 0.0;
  for (std::size_t n = 0; n < state.dimension(); ++n)
    s += (n % 2 == 0 ? 1.0 : -1.0) * state.probability(n);
  return s;
}

double expectation_parity_squared(const PureState& state) {
  double s = 0.0;
  for (std::size_t n = 0; n < state.dimension(); ++n) {
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    s += sign * sign * state.probability(n);
  }
  return s;
}

Complex inner_product(std::span<const Complex> bra, std::span<const Complex> ket) {
  const std::size_t dim = std::min(bra.size(), ket.size());
  Complex s = 0.0;
  for (std::size_t n = 0; n < dim; ++n) s += std::conj(bra[n]) * ket[n];
  return s;
}

double fidelity(const PureState& a, const PureState& b) {
  return std::norm(inner_product(a.amplitudes(), b.amplitudes()));
}

std::vector<Complex> apply_annihilation(std::span<const Complex> ket) {
  std::vector<Complex> out(ket.size());
  for (std::size_t n = 0; n + 1 < ket.size(); ++n)
    out[n] = std::sqrt(static_cast<double>(n + 1)) * ket[n + 1];
  return out;
}

std::vector<Complex> apply_parity(std::span<const Complex> ket) {
  std::vector<Complex> out(ket.begin(), ket.end());
  for (std::size_t n = 1; n < out.size(); n += 2) out[n] = -out[n];
  return out;
}

PureState rotate_phase(const PureState& state, double theta) {
  std::vector<Complex> amps(state.amplitudes().begin(), state.amplitudes().end());
  for (std::size_t n = 0; n < amps.size(); ++n)
    amps[n] *= std::polar(1.0, -theta * static_cast<double>(n));
  return PureState::from_amplitudes(std::move(amps));
}

}  // namespace qnd
