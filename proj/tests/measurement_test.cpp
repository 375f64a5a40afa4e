#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qnd/approximations.hpp"
#include "qnd/error.hpp"
#include "qnd/fock.hpp"
#include "qnd/measurement.hpp"

using namespace qnd;

namespace {

const PureState& alpha3() {
  static const PureState s = coherent_state(CoherentParams(3.0));
  return s;
}

}  // namespace

TEST_CASE("measurement operator on vacuum and number states") {
  const auto vac = PureState::number(0, 0);
  const double dn = 0.4;
  const auto out = apply_measurement_operator(vac, 0.0, dn);
  CHECK(out.amplitudes[0].real() == doctest::Approx(std::pow(2.0 * std::numbers::pi * dn * dn, -0.25)));
  CHECK(outcome_density(PureState::number(0, 0), 0.0, 1.0) ==
        doctest::Approx(0.3989422804014327).epsilon(1e-14));

  for (int n : {0, 3, 7})
    for (double n_m : {-1.0, 2.5, 7.2})
      for (double d : {0.1, 0.5, 2.0}) {
        const auto s = PureState::number(n, 10);
        CHECK(outcome_density(s, n_m, d) ==
              doctest::Approx(oracle::normal_pdf(n_m, n, d)).epsilon(1e-13));
      }
}

TEST_CASE("eigenstate fixed point") {
  for (int n : {0, 1, 5, 12})
    for (double n_m : {n - 0.4, n + 0.0, n + 1.3})
      for (double d : {0.05, 0.3, 3.0}) {
        const auto s = PureState::number(n, 15);
        const auto rec = measure(s, n_m, d);
        CHECK(fidelity(rec.post_state, s) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::abs(rec.coherence) == 0.0);
      }
}

TEST_CASE("density matches the brute-force Fock sum") {
  const auto c = oracle::coherent(3.0, 0.0, alpha3().n_max());
  for (double dn : {0.2, 0.3, 0.7, 2.0}) {
    double worst = 0.0;
    for (double n_m = -2.0; n_m <= 22.0; n_m += 0.01)
      worst = std::max(worst, std::abs(outcome_density(alpha3(), n_m, dn) - oracle::density(c, n_m, dn)));
    CAPTURE(dn);
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("density agrees with the unnormalized post-state norm") {
  for (double n_m : {0.0, 4.3, 9.0, 9.5, 15.1}) {
    const auto u = apply_measurement_operator(alpha3(), n_m, 0.3);
    double norm = 0.0;
    for (const auto& x : u.amplitudes) norm += std::norm(x);
    CHECK(u.density == doctest::Approx(norm).epsilon(1e-13));
    CHECK(outcome_density(alpha3(), n_m, 0.3) == doctest::Approx(norm).epsilon(1e-13));
    const auto m = outcome_moments(alpha3(), n_m, 0.3);
    CHECK(m.density == doctest::Approx(norm).epsilon(1e-13));
    CHECK(std::abs(m.coherence_density - coherence_density(alpha3(), n_m, 0.3)) < 1e-14);
  }
}

TEST_CASE("full outcome record against the Fock-sum oracle") {
  const auto c = oracle::coherent(3.0, 0.4, 40);
  const auto state = coherent_state(CoherentParams(3.0, 0.4), 40);
  for (double dn : {0.2, 0.3, 0.7})
    for (double n_m : {8.0, 9.0, 9.5, 11.25}) {
      const auto rec = measure(state, n_m, dn);
      const double p = oracle::density(c, n_m, dn);
      const Complex a = oracle::coherence_density(c, n_m, dn) / p;
      CHECK(rec.density == doctest::Approx(p).epsilon(1e-12));
      CHECK(std::abs(rec.coherence - a) < 1e-10);
      CHECK(rec.post_state.norm_squared() == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("coherent input at alpha = 3, frozen values") {
  // Values from 50-digit evaluation of the Fock sums.
  const double r3 = outcome_density(alpha3(), 9.0, 0.3) / outcome_density(alpha3(), 9.5, 0.3);
  CHECK(r3 == doctest::Approx(2.1262072278626323).epsilon(1e-10));
  CHECK(std::abs(coherence_after(alpha3(), 9.5, 0.2)) ==
        doctest::Approx(1.5789585483605290).epsilon(1e-10));
  CHECK(std::abs(coherence_after(alpha3(), 9.0, 0.2)) ==
        doctest::Approx(0.011582642804974291).epsilon(1e-8));
  CHECK(std::abs(coherence_after(alpha3(), 9.0, 0.7)) ==
        doctest::Approx(2.3513592862953682).epsilon(1e-10));

  // Near sqrt(n + 1/2) e^{-1/(8 dn^2)} at dn = 0.7.
  CHECK(std::abs(coherence_after(alpha3(), 9.0, 0.7)) ==
        doctest::Approx(std::sqrt(9.5) * std::exp(-1.0 / (8 * 0.49))).epsilon(0.02));
  // Deep quantum regime: a half-integer outcome leaves the (9, 10) superposition.
  CHECK(std::abs(coherence_after(alpha3(), 9.5, 0.2)) ==
        doctest::Approx(std::sqrt(10.0) / 2).epsilon(0.02));
}

TEST_CASE("zero probability outcomes are reported") {
  CHECK_THROWS_AS(measure(PureState::number(0, 0), 200.0, 0.1), ZeroProbability);
  CHECK_THROWS_AS(outcome_density(alpha3(), 1.0, 0.0), InvalidParam);
  CHECK_THROWS_AS(outcome_density(alpha3(), std::nan(""), 0.3), InvalidParam);
}

TEST_CASE("average coherence") {
  const auto cfg = MeasurementConfig::covering(alpha3().n_max(), 0.3);
  CHECK(std::abs(average_coherence(alpha3(), cfg) - 3.0 * std::exp(-1.0 / 0.72)) < 1e-8);
  const auto cfg2 = MeasurementConfig::covering(alpha3().n_max(), 0.2);
  CHECK(std::abs(average_coherence(alpha3(), cfg2)) / 3.0 == doctest::Approx(0.0439369336).epsilon(1e-8));
  CHECK(std::abs(average_coherence(PureState::number(0, 3),
                                   MeasurementConfig::covering(3, 0.5))) == 0.0);

  MeasurementConfig narrow = cfg;
  narrow.grid_min = 8.0;
  narrow.grid_max = 10.0;
  CHECK_THROWS_AS(average_coherence(alpha3(), narrow), GridTooNarrow);
}

TEST_CASE("grid configuration") {
  MeasurementConfig c;
  c.delta_n = 0.3;
  c.grid_min = 0.0;
  c.grid_max = 1.0;
  c.grid_step = 0.3;
  CHECK(c.point(0) == 0.0);
  CHECK(c.point(c.point_count() - 1) == doctest::Approx(1.0));
  c.grid_step = -1.0;
  CHECK_THROWS_AS(c.validate(), InvalidParam);
  CHECK_THROWS_AS(MeasurementConfig::covering(10, 0.0), InvalidParam);
}

TEST_CASE("decoherence and equivalent phase noise") {
  CHECK(equivalent_phase_noise(0.5) == doctest::Approx(1.0));
  CHECK(equivalent_phase_noise(INFINITY) == 0.0);
  CHECK(equivalent_phase_noise(1.0 / (2.0 * std::sqrt(std::numbers::pi))) ==
        doctest::Approx(std::numbers::pi));
  CHECK(decoherence_factor(INFINITY) == 1.0);
  CHECK(decoherence_factor(0.3) == doctest::Approx(std::exp(-1.0 / 0.72)));
  CHECK_THROWS_AS(equivalent_phase_noise(0.0), InvalidParam);
  CHECK_THROWS_AS(equivalent_phase_noise(-1.0), InvalidParam);
}

TEST_CASE("excess phase noise inference") {
  const auto ideal = infer_excess_noise(decoherence_factor(0.3), 0.3);
  CHECK(std::abs(ideal.excess) < 1e-9);
  CHECK_FALSE(ideal.below_quantum_limit);

  const auto none = infer_excess_noise(1.0, INFINITY);
  CHECK(none.excess == 0.0);

  const auto noisy = infer_excess_noise(0.1, 0.3);
  CHECK(noisy.excess == doctest::Approx(1.8273924082103136).epsilon(1e-12));

  const auto better = infer_excess_noise(0.9, 0.3);
  CHECK(better.below_quantum_limit);
  CHECK(better.excess < 0.0);

  CHECK_THROWS_AS(infer_excess_noise(0.0, 0.3), InvalidParam);
  CHECK_THROWS_AS(infer_excess_noise(1.5, 0.3), InvalidParam);
}

TEST_CASE("property: completeness and purity on random states") {
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    const int hi = 4 + int(seed % 30);
    const auto s = oracle::to_state(oracle::random_amplitudes(seed, int(seed % 3), hi));
    for (double dn : {0.1, 0.37, 1.0, 5.0}) {
      const auto cfg = MeasurementConfig::covering(s.n_max(), dn);
      CHECK(std::abs(total_probability(s, cfg) - 1.0) < 1e-8);
    }
    for (double n_m : {0.0, 0.5 * hi, double(hi)}) {
      const auto rec = measure(s, n_m, 0.4);
      CHECK(std::abs(rec.post_state.norm_squared() - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("property: average coherence identity on random states") {
  for (std::uint64_t seed = 200; seed < 220; ++seed) {
    const auto s = oracle::to_state(oracle::random_amplitudes(seed, 0, 6 + int(seed % 20)));
    for (double dn : {0.15, 0.3, 0.8, 2.5}) {
      const auto cfg = MeasurementConfig::covering(s.n_max(), dn);
      const Complex expected = std::exp(-1.0 / (8 * dn * dn)) * expectation_a(s);
      CHECK(std::abs(average_coherence(s, cfg) - expected) < 1e-8);
    }
  }
}

TEST_CASE("ensemble dephasing kernel") {
  // Independent quadrature of the kernel overlap.
  for (double dn : {0.2, 0.5, 1.3})
    for (auto [n, np] : {std::pair{0, 0}, {2, 3}, {1, 5}, {7, 4}}) {
      const double ref = oracle::simpson(
          [&](double m) {
            const double u = n - m, v = np - m;
            return std::exp(-(u * u + v * v) / (4 * dn * dn)) / std::sqrt(2 * std::numbers::pi * dn * dn);
          },
          -30.0, 40.0, 20000);
      CHECK(dephasing_kernel(n, np, dn) == doctest::Approx(ref).epsilon(1e-10));
    }

  const auto c = oracle::random_amplitudes(7, 0, 9);
  const auto s = oracle::to_state(c);
  const double dn = 0.45;
  const auto rho = averaged_density_matrix(s, MeasurementConfig::covering(s.n_max(), dn));
  const std::size_t dim = c.size();
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      const Complex expected = c[i] * std::conj(c[j]) * dephasing_kernel(int(i), int(j), dn);
      CHECK(std::abs(rho[i * dim + j] - expected) < 1e-9);
    }
}

TEST_CASE("property: the Gaussian comb is 1-periodic away from the edge") {
  for (double dn : {0.1, 0.3, 0.6})
    for (double m = 10.0 * dn; m < 30.0; m += 0.37) {
      const double a = gaussian_comb(m, dn, 0.0, true);
      const double b = gaussian_comb(m + 1.0, dn, 0.0, true);
      CHECK(std::abs(a - b) < 1e-13);
    }
}
