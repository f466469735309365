#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles/oracles.hpp"
#include "zpe/plasmon_film.hpp"

namespace zpe {
namespace {

const AngularFrequency wp = ev_to_angular_frequency(electron_volts(10.0));

TEST(Dispersion, Limits) {
  const FilmConfig film{meters(1e-9), wp};
  const auto at0 = plasmon_dispersion(0.0, film);
  EXPECT_EQ(at0.omega_even.value, 0.0);
  EXPECT_NEAR(at0.omega_odd.value, wp.value, 1e-15 * wp.value);
  const auto far = plasmon_dispersion(1e3 / 1e-9, film);
  EXPECT_NEAR(far.omega_even / wp, 1.0 / std::numbers::sqrt2, 1e-15);
  EXPECT_NEAR(far.omega_odd / wp, 1.0 / std::numbers::sqrt2, 1e-15);
  EXPECT_THROW(plasmon_dispersion(-1.0, film), DomainError);
}

TEST(Dispersion, OrderingAndSumOfSquares) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> logk(4.0, 12.0), logd(-11.0, -7.0), ev(0.5, 30.0);
  for (int i = 0; i < 10000; ++i) {
    const FilmConfig film{meters(std::pow(10.0, logd(rng))), ev_to_angular_frequency(electron_volts(ev(rng)))};
    const auto b = plasmon_dispersion(std::pow(10.0, logk(rng)), film);
    const double p = film.omega_p.value;
    const double e2 = b.omega_even.value * b.omega_even.value, o2 = b.omega_odd.value * b.omega_odd.value;
    EXPECT_NEAR((e2 + o2) / (p * p), 1.0, 1e-13);
    EXPECT_LE(b.omega_even.value, p / std::numbers::sqrt2 * (1 + 1e-15));
    EXPECT_GE(b.omega_odd.value, p / std::numbers::sqrt2 * (1 - 1e-15));
    EXPECT_LE(b.omega_odd.value, p * (1 + 1e-15));
    EXPECT_GE(b.omega_even.value, 0.0);
  }
}

TEST(Coefficient, MatchesFixedGridOracleAndPublishedValue) {
  const double k = dimensionless_film_coefficient(1e-10);
  const double oracle = static_cast<double>(oracle::film_raw_integral()) / (2.0 * std::numbers::sqrt2 * std::numbers::pi);
  EXPECT_NEAR(k, oracle, 1e-8 * oracle);
  EXPECT_NEAR(k, 0.00781041855801300, 1e-15);
  EXPECT_NEAR(k, 0.0078, 0.00005);
  EXPECT_NEAR(k * 2.0 * std::numbers::sqrt2 * std::numbers::pi, 0.069, 0.0005);
}

TEST(Coefficient, TighterToleranceStaysWithinPriorEstimate) {
  const auto coarse = film_coefficient(1e-6);
  const auto fine = film_coefficient(5e-7);
  EXPECT_LE(std::abs(fine.value - coarse.value), coarse.error_estimate + 1e-16);
  EXPECT_THROW(film_coefficient(0.0), ArgumentError);
}

TEST(Integrand, NegativeWithQuarterExponentialTail) {
  for (double x = 1e-6; x < 40.0; x *= 1.1) EXPECT_LT(film_branch_deficit(x), 0.0) << x;
  for (double x = 5.0; x < 40.0; x += 0.5) {
    const double tail = -std::exp(-2.0 * x) / 4.0;
    EXPECT_NEAR(film_branch_deficit(x) / tail, 1.0, 0.02) << x;
  }
  // Rearranged form agrees with the direct one where the latter is accurate.
  for (double x : {0.01, 0.3, 1.0, 3.0}) {
    const double direct = std::sqrt(-std::expm1(-x)) + std::sqrt(1.0 + std::exp(-x)) - 2.0;
    EXPECT_NEAR(film_branch_deficit(x), direct, 1e-15);
  }
}

TEST(Energy, ScalingAndSign) {
  const FilmConfig a{meters(1e-9), wp}, b{meters(2e-9), wp};
  const auto ea = film_energy_per_area(a), eb = film_energy_per_area(b);
  EXPECT_LT(ea.energy_per_area, 0.0);
  EXPECT_NEAR(eb.energy_per_area, ea.energy_per_area / 4.0, 1e-12 * std::abs(ea.energy_per_area));
  // K_E = K_P / 2 ≈ 0.0039.
  const double k_e = -ea.energy_per_area * 1e-18 / (constants::hbar * wp.value);
  EXPECT_NEAR(k_e, 0.00390520927900650, 1e-14);
}

TEST(Energy, GuardBeyondQuasistationary) {
  EXPECT_TRUE(film_energy_per_area(FilmConfig{meters(1e-10), wp}).guards.empty());
  const auto thick = film_energy_per_area(FilmConfig{meters(1e-8), wp});
  ASSERT_EQ(thick.guards.size(), 1u);
  EXPECT_EQ(thick.guards.front(), guard::not_quasistationary);
  EXPECT_THROW((FilmConfig{meters(0.0), wp}), DomainError);
}

TEST(Pressure, AtOneAngstrom) {
  const auto p = film_pressure(FilmConfig{meters(1e-10), wp});
  EXPECT_NEAR(p.pressure_pa, 1.25136701154084e10, 1e-3);
  EXPECT_NEAR(pascal_to_newton_per_cm2(p.pressure_pa), 1.25e6, 0.01e6);
  EXPECT_GT(p.pressure_pa, 0.0);
  EXPECT_NEAR(film_pressure(FilmConfig{meters(2e-10), wp}).pressure_pa, p.pressure_pa / 8.0, 1e-12 * p.pressure_pa);
}

TEST(Pressure, CoefficientIsThicknessIndependent) {
  for (double d = 1e-10; d <= 1e-7; d *= 3.0) {
    const auto p = film_pressure(FilmConfig{meters(d), wp});
    EXPECT_NEAR(p.pressure_pa * d * d * d / (constants::hbar * wp.value), 0.00781041855801300, 1e-14);
  }
}

TEST(Pressure, NumericDerivativeMatchesAnalytic) {
  for (double d = 1e-10; d <= 1e-8; d *= 1.7) {
    const FilmConfig film{meters(d), wp};
    const double analytic = film_pressure(film).pressure_pa;
    const double numeric = film_pressure_numeric(film, meters(1e-4 * d)).pressure_pa;
    EXPECT_GT(numeric, 0.0);
    EXPECT_NEAR(numeric / analytic, 1.0, 1e-6) << d;
  }
}

TEST(Pressure, NumericStepContract) {
  const FilmConfig film{meters(1e-9), wp};
  EXPECT_THROW(film_pressure_numeric(film, meters(1e-9)), ArgumentError);
  EXPECT_THROW(film_pressure_numeric(film, meters(0.0)), ArgumentError);
}

}  // namespace
}  // namespace zpe
