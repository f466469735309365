#pragma once

// Physical constants (CODATA 2018, SI) and the handful of quantity kinds the
// library passes around. Public entry points take SI; eV inputs are converted
// here at the boundary.

#include <compare>
#include <numbers>
#include <string>

#include "zpe/errors.hpp"

namespace zpe {

struct PhysicalConstants {
  double hbar;           // J s
  double c;              // m/s
  double eV;             // J
  double bohr_pressure;  // Pa, 10 eV per cubic angstrom
};

namespace constants {
inline constexpr double hbar = 1.054571817e-34;
inline constexpr double c = 2.99792458e8;
inline constexpr double eV = 1.602176634e-19;
inline constexpr double angstrom = 1.0e-10;
inline constexpr double bohr_pressure = 10.0 * eV / (angstrom * angstrom * angstrom);
inline constexpr double pi = std::numbers::pi;
}  // namespace constants

inline constexpr PhysicalConstants physical_constants() {
  return {constants::hbar, constants::c, constants::eV, constants::bohr_pressure};
}

/// Thin unit-tagged wrapper. Only same-kind arithmetic and scaling are allowed;
/// mixing kinds requires going through `.value`.
template <class Tag>
struct Quantity {
  double value = 0.0;

  constexpr Quantity() = default;
  constexpr explicit Quantity(double v) : value(v) {}

  friend constexpr Quantity operator+(Quantity a, Quantity b) { return Quantity{a.value + b.value}; }
  friend constexpr Quantity operator-(Quantity a, Quantity b) { return Quantity{a.value - b.value}; }
  friend constexpr Quantity operator*(double s, Quantity q) { return Quantity{s * q.value}; }
  friend constexpr Quantity operator*(Quantity q, double s) { return Quantity{s * q.value}; }
  friend constexpr Quantity operator/(Quantity q, double s) { return Quantity{q.value / s}; }
  friend constexpr double operator/(Quantity a, Quantity b) { return a.value / b.value; }
  friend constexpr auto operator<=>(Quantity, Quantity) = default;
};

struct AngularFrequencyTag {};
struct PhotonEnergyTag {};
struct LengthTag {};
struct PressureTag {};
struct EnergyPerAreaTag {};

using AngularFrequency = Quantity<AngularFrequencyTag>;  // rad/s
using PhotonEnergy = Quantity<PhotonEnergyTag>;          // eV
using Length = Quantity<LengthTag>;                      // m
using Pressure = Quantity<PressureTag>;                  // Pa
using EnergyPerArea = Quantity<EnergyPerAreaTag>;        // J/m^2

inline constexpr AngularFrequency rad_per_s(double v) { return AngularFrequency{v}; }
inline constexpr PhotonEnergy electron_volts(double v) { return PhotonEnergy{v}; }
inline constexpr Length meters(double v) { return Length{v}; }
inline constexpr Pressure pascals(double v) { return Pressure{v}; }

inline AngularFrequency ev_to_angular_frequency(PhotonEnergy e) {
  if (!(e.value >= 0.0)) throw DomainError("photon energy must be non-negative, got " + std::to_string(e.value) + " eV");
  return AngularFrequency{e.value * constants::eV / constants::hbar};
}

inline constexpr PhotonEnergy angular_frequency_to_ev(AngularFrequency w) {
  return PhotonEnergy{w.value * constants::hbar / constants::eV};
}

inline constexpr double pascal_to_newton_per_cm2(double pa) { return pa / 1.0e4; }
inline constexpr double newton_per_cm2_to_pascal(double n_per_cm2) { return n_per_cm2 * 1.0e4; }

/// c/ω, the length separating retarded from quasistationary behaviour.
inline constexpr Length plasma_length(AngularFrequency omega_p) { return Length{constants::c / omega_p.value}; }

}  // namespace zpe
