#pragma once

// Parallel-plate Casimir pressure: regularized mode sums, the ideal closed
// form, the net pressure with different media inside and outside the gap, and
// the distance at which that net pressure changes sign.

#include <cmath>
#include <string>
#include <vector>

#include "zpe/bulk_pressure.hpp"
#include "zpe/dielectric.hpp"
#include "zpe/errors.hpp"
#include "zpe/numerics.hpp"
#include "zpe/result.hpp"
#include "zpe/units.hpp"

namespace zpe {

enum class Regime { retarded, quasistationary, crossover };

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::retarded: return "retarded";
    case Regime::quasistationary: return "quasistationary";
    case Regime::crossover: return "crossover";
  }
  return "unknown";
}

/// Quasistationary below 0.2 c/ω_p, retarded above 5 c/ω_p.
inline Regime regime_of(Length d, AngularFrequency omega_p) {
  if (!(d.value > 0.0) || !(omega_p.value > 0.0)) throw DomainError("regime_of: distance and plasma frequency must be positive");
  const double scale = plasma_length(omega_p).value;
  if (d.value < 0.2 * scale) return Regime::quasistationary;
  if (d.value > 5.0 * scale) return Regime::retarded;
  return Regime::crossover;
}

struct PlateConfiguration {
  Length gap;
  DielectricModel inner;
  DielectricModel outer;
  AngularFrequency wall_omega_p;
  CutoffSpec cutoff;

  void validate() const {
    if (!(gap.value > 0.0)) throw DomainError("plate gap must be positive");
    if (!(wall_omega_p.value > 0.0)) throw DomainError("wall plasma frequency must be positive");
  }
};

struct ForceResult {
  double pressure_pa = 0.0;  // > 0 pushes the plates apart
  double error_estimate_pa = 0.0;
  Regime regime = Regime::retarded;
  std::vector<std::string> guards{};
  Provenance provenance{};
};

struct EnergyResult {
  double energy_per_area = 0.0;  // J/m²
  double error_estimate = 0.0;
  std::vector<std::string> guards{};
};

/// −ħcπ²/(240 d⁴).
inline double ideal_casimir_pressure(Length d) {
  if (!(d.value > 0.0)) throw DomainError("plate distance must be positive");
  const double d2 = d.value * d.value;
  return -constants::hbar * constants::c * constants::pi * constants::pi / (240.0 * d2 * d2);
}

namespace detail {
inline double plate_energy_scale(Length d) {
  return constants::hbar * constants::c * constants::pi * constants::pi / (4.0 * d.value * d.value * d.value);
}
}  // namespace detail

/// Euler-Maclaurin route. After the transverse integral the mode energy per
/// area is (ħcπ²/4d³) Σ' g(n) with g(n) = ∫_n^∞ 2s² f(s) ds; a cutoff flat
/// near zero gives g'(0) = 0, g'''(0) = −4.
inline double casimir_energy_euler_maclaurin(Length d) {
  if (!(d.value > 0.0)) throw DomainError("plate distance must be positive");
  return detail::plate_energy_scale(d) * numerics::sum_minus_integral({0.0, -4.0});
}

/// Direct route: the same sum minus integral evaluated numerically with the
/// cutoff weight applied to the full mode frequency c π s / d.
inline EnergyResult casimir_energy_regularized(Length d, const CutoffSpec& cutoff) {
  if (!(d.value > 0.0)) throw DomainError("plate distance must be positive");
  const double to_frequency = constants::c * constants::pi / d.value;  // s -> ω
  auto rate = [&](double s) {
    const double w = cutoff_weight(cutoff, AngularFrequency{s * to_frequency});
    return 2.0 * s * s * w;
  };
  const double upper = cutoff_support(cutoff).value / to_frequency;
  const auto diff = numerics::sum_minus_integral_direct(rate, upper, 1e-14);

  EnergyResult r;
  const double scale = detail::plate_energy_scale(d);
  r.energy_per_area = scale * diff.value;
  r.error_estimate = scale * diff.error_estimate;
  if (d.value * cutoff_center(cutoff).value / constants::c < 10.0) r.guards.emplace_back(guard::below_asymptotic_cutoff);
  if (std::holds_alternative<SharpCutoff>(cutoff)) r.guards.emplace_back(guard::sharp_cutoff_oscillates);
  return r;
}

/// −∂E'/∂d of the regularized energy at fixed cutoff, by central difference
/// with step rel_step·d.
inline ForceResult casimir_pressure_regularized(Length d, const CutoffSpec& cutoff, double rel_step = 1e-3) {
  if (!(rel_step > 0.0 && rel_step < 0.1)) throw ArgumentError("relative step must lie in (0, 0.1)");
  const auto centre = casimir_energy_regularized(d, cutoff);
  auto energy = [&](double x) { return casimir_energy_regularized(Length{x}, cutoff).energy_per_area; };
  ForceResult r;
  r.pressure_pa = -numerics::central_difference(energy, d.value, rel_step * d.value);
  r.error_estimate_pa = centre.error_estimate / (rel_step * d.value);
  r.regime = regime_of(d, cutoff_center(cutoff));
  r.guards = centre.guards;
  r.provenance = {{"method", "finite difference of cutoff-regularized mode sum minus integral"}, {"cutoff", describe(cutoff)}};
  return r;
}

namespace detail {

inline void annotate_regime(ForceResult& r) {
  if (r.regime == Regime::quasistationary) r.guards.emplace_back(guard::quasistationary);
  if (r.regime == Regime::crossover) r.guards.emplace_back(guard::retardation_crossover);
}

/// P₀(inner) − P₀(outer) under the configured cutoff, integrated as one
/// difference.
inline PressureResult bulk_imbalance(const PlateConfiguration& config) {
  require_transparent(config.inner, config.cutoff);
  require_transparent(config.outer, config.cutoff);
  auto bps = epsilon_breakpoints(config.inner);
  const auto more = epsilon_breakpoints(config.outer);
  bps.insert(bps.end(), more.begin(), more.end());
  const auto moment = weighted_cubic_moment(config.cutoff, bps, [&](AngularFrequency w) {
    const double ei = epsilon_at(config.inner, w);
    const double eo = epsilon_at(config.outer, w);
    return ei * std::sqrt(ei) - eo * std::sqrt(eo);
  });
  const double scale = bulk_prefactor / (constants::c * constants::c * constants::c);
  return {scale * moment.value, scale * moment.error_estimate, {}, {}};
}

inline ForceResult assemble_net(const PlateConfiguration& config, const PressureResult& imbalance) {
  ForceResult r;
  r.pressure_pa = ideal_casimir_pressure(config.gap) + imbalance.pressure_pa;
  r.error_estimate_pa = imbalance.error_estimate_pa;
  r.regime = regime_of(config.gap, config.wall_omega_p);
  annotate_regime(r);
  r.provenance = {{"casimir_term", "ideal vacuum Casimir pressure -hbar c pi^2/(240 d^4) stands in for P_c(inner)"},
                  {"bulk_term", "P0(inner) - P0(outer), continuum integral"},
                  {"inner", describe(config.inner)},
                  {"outer", describe(config.outer)},
                  {"cutoff", describe(config.cutoff)}};
  return r;
}

}  // namespace detail

/// P_c + P₀(inner) − P₀(outer). With a dielectric inside and vacuum outside
/// this is the Casimir attraction plus the dielectric's excess pressure.
inline ForceResult net_pressure_asymmetric(const PlateConfiguration& config) {
  config.validate();
  return detail::assemble_net(config, detail::bulk_imbalance(config));
}

/// Gap at which net_pressure_asymmetric changes sign, searched in log(d).
inline Length find_sign_crossover(const PlateConfiguration& config, numerics::Bracket bracket) {
  config.validate();
  if (!(bracket.lo > 0.0)) throw ArgumentError("crossover bracket must be positive distances");
  const double imbalance = detail::bulk_imbalance(config).pressure_pa;
  auto net = [&](double log_d) { return ideal_casimir_pressure(Length{std::exp(log_d)}) + imbalance; };
  const double root = numerics::find_root_bracketed(net, {std::log(bracket.lo), std::log(bracket.hi)}, 1e-13);
  return Length{std::exp(root)};
}

}  // namespace zpe
