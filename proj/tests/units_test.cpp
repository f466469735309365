#include <gtest/gtest.h>

#include <random>

#include "zpe/units.hpp"

namespace zpe {
namespace {

TEST(Units, ConstantsArePositiveAndConsistent) {
  const auto k = physical_constants();
  EXPECT_GT(k.hbar, 0.0);
  EXPECT_GT(k.c, 0.0);
  EXPECT_GT(k.eV, 0.0);
  EXPECT_GT(k.bohr_pressure, 0.0);
  EXPECT_DOUBLE_EQ(k.bohr_pressure, 10.0 * k.eV / 1e-30);
  EXPECT_DOUBLE_EQ(k.hbar, 1.054571817e-34);
  EXPECT_DOUBLE_EQ(k.c, 2.99792458e8);
  EXPECT_DOUBLE_EQ(k.eV, 1.602176634e-19);
}

TEST(Units, EvToAngularFrequency) {
  EXPECT_EQ(ev_to_angular_frequency(electron_volts(0.0)).value, 0.0);
  EXPECT_NEAR(ev_to_angular_frequency(electron_volts(10.0)).value, 1.519e16, 0.001e16);
  EXPECT_NEAR(ev_to_angular_frequency(electron_volts(1.0)).value, 1.519e15, 0.001e15);
  EXPECT_THROW(ev_to_angular_frequency(electron_volts(-1.0)), DomainError);
}

TEST(Units, EvToAngularFrequencyIsLinear) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  for (int i = 0; i < 1000; ++i) {
    const double a = u(rng), e = u(rng);
    const double lhs = ev_to_angular_frequency(electron_volts(a * e)).value;
    const double rhs = a * ev_to_angular_frequency(electron_volts(e)).value;
    EXPECT_NEAR(lhs, rhs, 1e-14 * std::abs(rhs));
  }
}

TEST(Units, PascalToNewtonPerCm2) {
  EXPECT_EQ(pascal_to_newton_per_cm2(1e4), 1.0);
  EXPECT_EQ(pascal_to_newton_per_cm2(0.0), 0.0);
  const double pb = pascal_to_newton_per_cm2(constants::bohr_pressure);
  EXPECT_NEAR(pb, 1.602e8, 0.001e8);
  // Rounded in the original estimate to 1.5e8.
  EXPECT_NEAR(pb / 1.5e8, 1.0, 0.1);
}

TEST(Units, PressureConversionRoundTrip) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  for (int i = 0; i < 1000; ++i) {
    const double p = std::pow(10.0, u(rng));
    EXPECT_NEAR(newton_per_cm2_to_pascal(pascal_to_newton_per_cm2(p)), p, 4e-16 * p);
    EXPECT_NEAR(pascal_to_newton_per_cm2(newton_per_cm2_to_pascal(p)), p, 4e-16 * p);
  }
}

TEST(Units, PlasmaLengthAtTenEv) {
  const auto len = plasma_length(ev_to_angular_frequency(electron_volts(10.0)));
  EXPECT_NEAR(len.value, 1.97e-8, 0.01e-8);  // ~200 Å
}

}  // namespace
}  // namespace zpe
