#pragma once

// Result records and guard identifiers shared by the pressure modules.

#include <string>
#include <utility>
#include <vector>

namespace zpe {

namespace guard {
inline constexpr const char* no_modes = "no_modes_below_cutoff";
inline constexpr const char* closed_system_only = "invalid_for_open_spectrum_closed_system_only";
inline constexpr const char* below_asymptotic_cutoff = "cutoff_below_asymptotic_regime";
inline constexpr const char* sharp_cutoff_oscillates = "sharp_cutoff_result_oscillates";
inline constexpr const char* quasistationary = "quasistationary_regime_lifshitz_out_of_scope";
inline constexpr const char* retardation_crossover = "retardation_crossover_regime";
inline constexpr const char* not_quasistationary = "not_quasistationary_polariton_coupling_neglected";
}  // namespace guard

/// Ordered key/value annotations describing how a number was obtained.
using Provenance = std::vector<std::pair<std::string, std::string>>;

struct PressureResult {
  double pressure_pa = 0.0;  // signed
  double error_estimate_pa = 0.0;
  std::vector<std::string> guards{};
  Provenance provenance{};
};

}  // namespace zpe
