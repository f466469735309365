#pragma once

// Zero-point radiation pressure of bulk modes on a reflecting wall.

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "zpe/dielectric.hpp"
#include "zpe/errors.hpp"
#include "zpe/result.hpp"
#include "zpe/numerics.hpp"
#include "zpe/units.hpp"

namespace zpe {

struct BoxGeometry {
  Length lx, ly, lz;
  BoxGeometry(Length x, Length y, Length z) : lx(x), ly(y), lz(z) {
    if (!(x.value > 0.0 && y.value > 0.0 && z.value > 0.0)) throw DomainError("box dimensions must be positive");
  }
  double volume() const { return lx.value * ly.value * lz.value; }
};

namespace detail {

inline constexpr double bulk_prefactor = constants::hbar / (6.0 * constants::pi * constants::pi);

/// Frequency of a mode with wavenumber k: solves ω = c k / √ε(ω).
inline double mode_frequency(const DielectricModel& model, double k) {
  const double ck = constants::c * k;
  if (std::holds_alternative<Vacuum>(model)) return ck;
  if (const auto* m = std::get_if<ConstantEpsilon>(&model)) return ck / std::sqrt(m->eps);
  double omega = ck;
  for (int i = 0; i < 200; ++i) {
    const double eps = epsilon_at(model, AngularFrequency{omega});
    if (!(eps > 0.0)) throw DomainError("mode frequency undefined where ε <= 0");
    const double next = ck / std::sqrt(eps);
    if (std::abs(next - omega) <= 1e-12 * std::abs(next)) return next;
    omega = next;
  }
  throw NumericalError("dispersion relation ω = c k/√ε(ω) did not converge", omega, 0.0);
}

inline Provenance bulk_provenance(const DielectricModel& model, const CutoffSpec& cutoff, std::string method) {
  return {{"method", std::move(method)}, {"model", describe(model)}, {"cutoff", describe(cutoff)}};
}

}  // namespace detail

/// P = (ħ/V) Σ w(ω) c(k) k_z²/k over the standing waves k = (n_x π/L_x, ...).
/// Modes with all n_i ≥ 1 carry both polarizations and weight 1 (½ zero-point
/// factor times 2); modes with exactly one n_i = 0 exist in one polarization
/// only and enter with weight ½; two zeros give no mode.
inline PressureResult pressure_discrete_box(const BoxGeometry& box, const DielectricModel& model, const CutoffSpec& cutoff) {
  require_transparent(model, cutoff);
  const auto support = cutoff_support(cutoff);
  const double k_max = support.value * std::sqrt(max_epsilon_below(model, support)) / constants::c;
  const double dkx = constants::pi / box.lx.value;
  const double dky = constants::pi / box.ly.value;
  const double dkz = constants::pi / box.lz.value;
  const auto nx_max = static_cast<long>(std::floor(k_max / dkx));
  const auto ny_max = static_cast<long>(std::floor(k_max / dky));

  numerics::CompensatedSum sum;
  double magnitude = 0.0;
  std::size_t modes = 0;
  for (long nx = 0; nx <= nx_max; ++nx) {
    const double kx = nx * dkx;
    for (long ny = 0; ny <= ny_max; ++ny) {
      const double ky = ny * dky;
      const double kperp2 = kx * kx + ky * ky;
      if (kperp2 > k_max * k_max) break;
      const auto nz_max = static_cast<long>(std::floor(std::sqrt(k_max * k_max - kperp2) / dkz));
      // n_z = 0 contributes k_z² = 0, so start at 1.
      const double degeneracy = (nx == 0 && ny == 0) ? 0.0 : (nx == 0 || ny == 0) ? 0.5 : 1.0;
      if (degeneracy == 0.0) continue;
      for (long nz = 1; nz <= nz_max; ++nz) {
        const double kz = nz * dkz;
        const double k = std::sqrt(kperp2 + kz * kz);
        const double omega = detail::mode_frequency(model, k);
        const double w = cutoff_weight(cutoff, AngularFrequency{omega});
        if (w == 0.0) continue;
        const double phase_velocity = omega / k;
        const double term = degeneracy * w * phase_velocity * kz * kz / k;
        sum.add(term);
        magnitude += std::abs(term);
        ++modes;
      }
    }
  }

  const double scale = constants::hbar / box.volume();
  PressureResult r;
  r.pressure_pa = scale * sum.value();
  r.error_estimate_pa = scale * magnitude * std::numeric_limits<double>::epsilon() * std::sqrt(static_cast<double>(modes) + 1.0);
  if (modes == 0) r.guards.emplace_back(guard::no_modes);
  r.provenance = detail::bulk_provenance(model, cutoff, "discrete standing-wave sum");
  r.provenance.emplace_back("modes", std::to_string(modes));
  r.provenance.emplace_back("error_estimate", "summation round-off only; lattice discretization not included");
  return r;
}

/// P = ħ/(6π²c³) ∫ w(ω) ω³ ε(ω)^{3/2} dω.
inline PressureResult pressure_continuum(const DielectricModel& model, const CutoffSpec& cutoff) {
  require_transparent(model, cutoff);
  const auto moment = weighted_cubic_moment(cutoff, epsilon_breakpoints(model), [&](AngularFrequency w) {
    const double e = epsilon_at(model, w);
    return e * std::sqrt(e);
  });
  const double scale = detail::bulk_prefactor / (constants::c * constants::c * constants::c);
  return {scale * moment.value, scale * moment.error_estimate, {}, detail::bulk_provenance(model, cutoff, "continuum frequency integral")};
}

/// P = ħ ω_p⁴ / (24π² c̄³), the sharp-cutoff closed form.
inline PressureResult pressure_closed_form(AngularFrequency omega_p, const EffectiveSpeed& effective) {
  if (!effective.valid) throw DomainError("invalid effective speed: " + effective.error);
  if (!(omega_p.value >= 0.0)) throw DomainError("plasma frequency must be non-negative");
  const double w2 = omega_p.value * omega_p.value;
  const double p = constants::hbar * w2 * w2 * effective.inv_c_bar_cubed / (24.0 * constants::pi * constants::pi);
  return {p, 0.0, {}, {{"method", "sharp-cutoff closed form"}}};
}

/// Excess of the medium's pressure over vacuum under the same cutoff,
/// ΔP = ħ/(6π²c³) ∫ w ω³ (ε^{3/2} − 1) dω; for a sharp cutoff this is
/// ħω_c⁴/(24π²) (1/c̄³ − 1/c³).
inline PressureResult pressure_excess(const DielectricModel& model, const CutoffSpec& cutoff) {
  require_transparent(model, cutoff);
  const auto moment = weighted_cubic_moment(cutoff, epsilon_breakpoints(model), [&](AngularFrequency w) {
    const double e = epsilon_at(model, w);
    return e * std::sqrt(e) - 1.0;
  });
  const double scale = detail::bulk_prefactor / (constants::c * constants::c * constants::c);
  return {scale * moment.value, scale * moment.error_estimate, {}, detail::bulk_provenance(model, cutoff, "excess over vacuum")};
}

/// −∂E₀/∂V for the vacuum zero-point energy below ω_p. Kept as a comparison
/// only: it assumes a closed system, while modes cross the cutoff as V changes.
inline PressureResult pressure_naive_thermodynamic(AngularFrequency omega_p) {
  if (!(omega_p.value >= 0.0)) throw DomainError("plasma frequency must be non-negative");
  const double w2 = omega_p.value * omega_p.value;
  const double p = -constants::hbar * w2 * w2 / (8.0 * constants::pi * constants::pi * constants::c * constants::c * constants::c);
  return {p, 0.0, {guard::closed_system_only}, {{"method", "-dE0/dV, closed-system relation"}}};
}

}  // namespace zpe
