#pragma once

// Surface plasmons on a thin Drude film in the quasistationary limit: the two
// branch dispersions, their d-dependent zero-point energy and the resulting
// squeeze pressure.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "zpe/errors.hpp"
#include "zpe/numerics.hpp"
#include "zpe/result.hpp"
#include "zpe/units.hpp"

namespace zpe {

struct FilmConfig {
  Length thickness;
  AngularFrequency omega_p;

  FilmConfig(Length d, AngularFrequency wp) : thickness(d), omega_p(wp) {
    if (!(d.value > 0.0)) throw DomainError("film thickness must be positive");
    if (!(wp.value > 0.0)) throw DomainError("film plasma frequency must be positive");
  }

  /// Thick enough that plasmon-light coupling can no longer be ignored.
  bool beyond_quasistationary() const { return thickness.value >= 0.2 * plasma_length(omega_p).value; }
};

struct PlasmonBranches {
  AngularFrequency omega_even;  // (ω_p/√2) √(1 − e^{−kd})
  AngularFrequency omega_odd;   // (ω_p/√2) √(1 + e^{−kd})
};

inline PlasmonBranches plasmon_dispersion(double k, const FilmConfig& film) {
  if (!(k >= 0.0)) throw DomainError("wavenumber must be non-negative");
  const double x = k * film.thickness.value;
  const double base = film.omega_p.value / std::numbers::sqrt2;
  return {AngularFrequency{base * std::sqrt(-std::expm1(-x))}, AngularFrequency{base * std::sqrt(1.0 + std::exp(-x))}};
}

/// √(1 − e^{−x}) + √(1 + e^{−x}) − 2, rearranged so that the e^{−2x}/4
/// tail does not come from cancelling two numbers close to 2.
inline double film_branch_deficit(double x) {
  const double u = std::exp(-x);
  const double lower = std::sqrt(-std::expm1(-x));
  const double upper = std::sqrt(1.0 + u);
  return -2.0 * u * u / ((1.0 + upper) * (1.0 + lower) * (lower + upper));
}

/// Raw integral ∫₀^∞ x (2 − √(1−e^{−x}) − √(1+e^{−x})) dx ≈ 0.069.
inline numerics::QuadratureResult film_raw_integral(double rel_tol) {
  auto integrand = [](double x) { return -x * film_branch_deficit(x); };
  return numerics::integrate_semi_infinite(integrand, 1.0, rel_tol);
}

/// K_P in P = K_P ħω_p/d³, i.e. the raw integral over 2√2π. Error estimate
/// is scaled the same way.
inline numerics::QuadratureResult film_coefficient(double rel_tol) {
  if (!(rel_tol > 0.0)) throw ArgumentError("rel_tol must be positive");
  auto raw = film_raw_integral(rel_tol);
  const double scale = 1.0 / (2.0 * std::numbers::sqrt2 * std::numbers::pi);
  return {raw.value * scale, raw.error_estimate * scale, raw.evaluations};
}

inline double dimensionless_film_coefficient(double rel_tol) { return film_coefficient(rel_tol).value; }

struct FilmEnergyResult {
  double energy_per_area = 0.0;  // J/m², negative
  double error_estimate = 0.0;
  std::vector<std::string> guards{};
};

struct FilmPressureResult {
  double pressure_pa = 0.0;  // squeeze pressure, positive
  double error_estimate_pa = 0.0;
  std::vector<std::string> guards{};
  Provenance provenance{};
};

/// E/L² = (ħ/4π) ∫₀^∞ k [ω_even(k) + ω_odd(k) − √2 ω_p] dk, each branch
/// measured from its k → ∞ limit ω_p/√2. Integrated in k directly.
inline FilmEnergyResult film_energy_per_area(const FilmConfig& film) {
  const double d = film.thickness.value;
  const double base = film.omega_p.value / std::numbers::sqrt2;
  auto integrand = [&](double k) { return k * base * film_branch_deficit(k * d); };
  const auto q = numerics::integrate_semi_infinite(integrand, 1.0 / d, 1e-13);
  const double scale = constants::hbar / (4.0 * std::numbers::pi);
  FilmEnergyResult r{scale * q.value, scale * q.error_estimate, {}};
  if (film.beyond_quasistationary()) r.guards.emplace_back(guard::not_quasistationary);
  return r;
}

/// K_P ħω_p/d³. Reported as the positive pressure the two vacua exert on the
/// film, i.e. ∂E/∂d.
inline FilmPressureResult film_pressure(const FilmConfig& film) {
  const auto k = film_coefficient(1e-13);
  const double d = film.thickness.value;
  const double scale = constants::hbar * film.omega_p.value / (d * d * d);
  FilmPressureResult r{k.value * scale, k.error_estimate * scale, {}, {}};
  if (film.beyond_quasistationary()) r.guards.emplace_back(guard::not_quasistationary);
  r.provenance = {{"method", "closed form K_P hbar omega_p / d^3"}, {"polariton_coupling", "neglected"}};
  return r;
}

/// Same pressure from a central difference of film_energy_per_area.
inline FilmPressureResult film_pressure_numeric(const FilmConfig& film, Length h) {
  const double d = film.thickness.value;
  if (!(h.value > 0.0)) throw ArgumentError("finite-difference step must be positive");
  if (h.value > d / 10.0) throw ArgumentError("finite-difference step must not exceed d/10");
  const double wp = film.omega_p.value;
  auto energy = [&](double x) { return film_energy_per_area(FilmConfig{Length{x}, AngularFrequency{wp}}).energy_per_area; };
  const auto centre = film_energy_per_area(film);
  FilmPressureResult r;
  r.pressure_pa = numerics::central_difference(energy, d, h.value);
  r.error_estimate_pa = centre.error_estimate / h.value;
  r.guards = centre.guards;
  r.provenance = {{"method", "central difference of plasmon zero-point energy"}, {"polariton_coupling", "neglected"}};
  return r;
}

}  // namespace zpe
