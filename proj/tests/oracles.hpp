#pragma once

// Reference implementations used by the unit tests. Written directly from the
// Fock-basis sums, sharing no code with the library.

#include <complex>
#include <cstdint>
#include <vector>

#include "qnd/fock.hpp"

namespace oracle {

using Complex = std::complex<double>;

// Poisson weights e^{-m} m^n / n!, n = 0..n_max, by term recursion.
std::vector<double> poisson(double mean, int n_max);

// Coherent amplitudes e^{-|a|^2/2} a^n / sqrt(n!) for alpha = |a| e^{-i phi}.
std::vector<Complex> coherent(double magnitude, double phi, int n_max);

double normal_pdf(double x, double mean, double sigma);
double normal_cdf(double x, double mean, double sigma);

// sum_n |c_n|^2 N(n_m; n, dn^2)
double density(const std::vector<Complex>& c, double n_m, double dn);

// sum_n c_n^* c_{n+1} sqrt(n+1) e^{-((n-n_m)^2 + (n+1-n_m)^2)/(4 dn^2)} / sqrt(2 pi dn^2)
Complex coherence_density(const std::vector<Complex>& c, double n_m, double dn);

// Simpson's rule on [lo, hi] with an even number of panels.
template <class F>
auto simpson(F&& f, double lo, double hi, int panels) -> decltype(f(0.0)) {
  const double h = (hi - lo) / panels;
  auto sum = f(lo) + f(hi);
  for (int i = 1; i < panels; ++i) sum += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * (h / 3.0);
}

// Normalized random amplitudes on n in [n_lo, n_hi], zero elsewhere up to n_hi.
std::vector<Complex> random_amplitudes(std::uint64_t seed, int n_lo, int n_hi);

qnd::PureState to_state(const std::vector<Complex>& c);

}  // namespace oracle
