#pragma once

// Dielectric response ε(ω), spectral cutoff weights and the cutoff-weighted
// average 1/c̄³ = ∫ w ω³ ε^{3/2} / (c³ ∫ w ω³).

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "zpe/errors.hpp"
#include "zpe/numerics.hpp"
#include "zpe/units.hpp"

namespace zpe {

// ---------------------------------------------------------------------------
// Models

struct Vacuum {};

struct ConstantEpsilon {
  double eps;
  explicit ConstantEpsilon(double e) : eps(e) {
    if (!(e > 0.0) || !std::isfinite(e)) throw DomainError("constant permittivity must be positive");
  }
};

/// ε = eps_low below fraction·omega_ref, 1 above. omega_ref is the plasma
/// frequency of the walls the fraction refers to.
struct StepEpsilon {
  double eps_low;
  double fraction;
  AngularFrequency omega_ref;
  StepEpsilon(double e, double f, AngularFrequency ref) : eps_low(e), fraction(f), omega_ref(ref) {
    if (!(e > 0.0) || !std::isfinite(e)) throw DomainError("step permittivity must be positive");
    if (!(f > 0.0 && f < 1.0)) throw DomainError("step fraction must lie in (0, 1)");
    if (!(ref.value > 0.0)) throw DomainError("step reference frequency must be positive");
  }
  AngularFrequency threshold() const { return fraction * omega_ref; }
};

/// ε = 1 − ω_p²/ω².
struct DrudePlasma {
  AngularFrequency omega_p;
  explicit DrudePlasma(AngularFrequency wp) : omega_p(wp) {
    if (!(wp.value > 0.0)) throw DomainError("plasma frequency must be positive");
  }
};

/// Piecewise-linear ε over strictly increasing frequencies, clamped outside.
struct TabulatedEpsilon {
  std::vector<std::pair<double, double>> points;  // (ω [rad/s], ε)
  explicit TabulatedEpsilon(std::vector<std::pair<double, double>> pts) : points(std::move(pts)) {
    if (points.size() < 2) throw DomainError("tabulated permittivity needs at least two points");
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (!std::isfinite(points[i].first) || !std::isfinite(points[i].second))
        throw DomainError("tabulated permittivity contains a non-finite value");
      if (i > 0 && !(points[i].first > points[i - 1].first))
        throw DomainError("tabulated frequencies must be strictly increasing");
    }
  }
};

using DielectricModel = std::variant<Vacuum, ConstantEpsilon, StepEpsilon, DrudePlasma, TabulatedEpsilon>;

namespace detail {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace detail

inline double epsilon_at(const DielectricModel& model, AngularFrequency omega) {
  return std::visit(
      detail::overloaded{
          [](const Vacuum&) { return 1.0; },
          [](const ConstantEpsilon& m) { return m.eps; },
          [&](const StepEpsilon& m) { return omega < m.threshold() ? m.eps_low : 1.0; },
          [&](const DrudePlasma& m) {
            if (!(omega.value > 0.0)) throw DomainError("Drude permittivity is singular at ω = 0");
            const double r = m.omega_p / omega;
            return 1.0 - r * r;
          },
          [&](const TabulatedEpsilon& m) {
            const auto& p = m.points;
            const double w = omega.value;
            if (w <= p.front().first) return p.front().second;
            if (w >= p.back().first) return p.back().second;
            const auto hi = std::upper_bound(p.begin(), p.end(), w,
                                             [](double x, const auto& pt) { return x < pt.first; });
            const auto lo = hi - 1;
            const double t = (w - lo->first) / (hi->first - lo->first);
            return lo->second + t * (hi->second - lo->second);
          },
      },
      model);
}

/// Frequencies where ε has a jump or kink.
inline std::vector<double> epsilon_breakpoints(const DielectricModel& model) {
  return std::visit(detail::overloaded{
                        [](const StepEpsilon& m) { return std::vector<double>{m.threshold().value}; },
                        [](const DrudePlasma& m) { return std::vector<double>{m.omega_p.value}; },
                        [](const TabulatedEpsilon& m) {
                          std::vector<double> out;
                          for (const auto& [w, e] : m.points) out.push_back(w);
                          return out;
                        },
                        [](const auto&) { return std::vector<double>{}; },
                    },
                    model);
}

/// Smallest ε on [0, upper] (−∞ for a Drude medium).
inline double min_epsilon_below(const DielectricModel& model, AngularFrequency upper) {
  return std::visit(detail::overloaded{
                        [](const Vacuum&) { return 1.0; },
                        [](const ConstantEpsilon& m) { return m.eps; },
                        [&](const StepEpsilon& m) { return upper <= m.threshold() ? m.eps_low : std::min(m.eps_low, 1.0); },
                        [](const DrudePlasma&) { return -std::numeric_limits<double>::infinity(); },
                        [&](const TabulatedEpsilon& m) {
                          double lo = epsilon_at(model, upper);
                          for (const auto& [w, e] : m.points) {
                            if (w > upper.value) break;
                            lo = std::min(lo, e);
                          }
                          return lo;
                        },
                    },
                    model);
}

/// Largest ε on [0, upper]; used to bound wavenumbers in the mode sum.
inline double max_epsilon_below(const DielectricModel& model, AngularFrequency upper) {
  return std::visit(detail::overloaded{
                        [](const Vacuum&) { return 1.0; },
                        [](const ConstantEpsilon& m) { return m.eps; },
                        [](const StepEpsilon& m) { return std::max(m.eps_low, 1.0); },
                        [](const DrudePlasma&) { return 1.0; },
                        [&](const TabulatedEpsilon& m) {
                          double hi = epsilon_at(model, upper);
                          for (const auto& [w, e] : m.points) {
                            if (w > upper.value) break;
                            hi = std::max(hi, e);
                          }
                          return hi;
                        },
                    },
                    model);
}

namespace detail {
/// Shortest decimal text that reads back as the same double.
inline std::string shortest(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}
}  // namespace detail

inline std::string describe(const DielectricModel& model) {
  auto num = [](double x) { return detail::shortest(x); };
  return std::visit(detail::overloaded{
                        [](const Vacuum&) { return std::string("vacuum"); },
                        [&](const ConstantEpsilon& m) { return "const:" + num(m.eps); },
                        [&](const StepEpsilon& m) {
                          return "step:" + num(m.eps_low) + "," + num(m.fraction) + " of " + num(m.omega_ref.value) + " rad/s";
                        },
                        [&](const DrudePlasma& m) { return "drude:" + num(m.omega_p.value) + " rad/s"; },
                        [&](const TabulatedEpsilon& m) { return "table:" + std::to_string(m.points.size()) + " points"; },
                    },
                    model);
}

// ---------------------------------------------------------------------------
// Cutoffs

struct SharpCutoff {
  AngularFrequency omega_c;
  explicit SharpCutoff(AngularFrequency wc) : omega_c(wc) {
    if (!(wc.value > 0.0)) throw DomainError("cutoff frequency must be positive");
  }
};

/// Identity up to omega_c, then w = exp(−t² e^{−1/t}) with t = (ω − ω_c)/width.
/// The roll-off joins the flat region with every derivative continuous and has
/// a Gaussian tail.
struct SmoothExponentialCutoff {
  AngularFrequency omega_c;
  AngularFrequency width;
  SmoothExponentialCutoff(AngularFrequency wc, AngularFrequency w) : omega_c(wc), width(w) {
    if (!(wc.value > 0.0)) throw DomainError("cutoff frequency must be positive");
    if (!(w.value > 0.0)) throw DomainError("cutoff width must be positive");
  }
};

using CutoffSpec = std::variant<SharpCutoff, SmoothExponentialCutoff>;

inline double cutoff_weight(const CutoffSpec& spec, AngularFrequency omega) {
  return std::visit(detail::overloaded{
                        [&](const SharpCutoff& s) { return omega <= s.omega_c ? 1.0 : 0.0; },
                        [&](const SmoothExponentialCutoff& s) {
                          const double t = (omega - s.omega_c) / s.width;
                          if (t <= 0.0) return 1.0;
                          return std::exp(-t * t * std::exp(-1.0 / t));
                        },
                    },
                    spec);
}

inline AngularFrequency cutoff_center(const CutoffSpec& spec) {
  return std::visit([](const auto& s) { return s.omega_c; }, spec);
}

/// Frequency beyond which the weight is below ~1e-39.
inline AngularFrequency cutoff_support(const CutoffSpec& spec) {
  return std::visit(detail::overloaded{
                        [](const SharpCutoff& s) { return s.omega_c; },
                        [](const SmoothExponentialCutoff& s) { return s.omega_c + 10.0 * s.width; },
                    },
                    spec);
}

inline std::string describe(const CutoffSpec& spec) {
  auto num = [](double x) { return detail::shortest(x); };
  return std::visit(detail::overloaded{
                        [&](const SharpCutoff& s) { return "sharp at " + num(s.omega_c.value) + " rad/s"; },
                        [&](const SmoothExponentialCutoff& s) {
                          return "smooth at " + num(s.omega_c.value) + " rad/s, width " + num(s.width.value) + " rad/s";
                        },
                    },
                    spec);
}

// ---------------------------------------------------------------------------
// Weighted spectral moments

inline constexpr double spectral_rel_tol = 1e-13;

/// ∫ w(ω) ω³ h(ω) dω over the cutoff support, integrated in x = ω/ω_c and
/// split at the model's breakpoints.
template <class H>
numerics::QuadratureResult weighted_cubic_moment(const CutoffSpec& cutoff, const std::vector<double>& breakpoints, const H& h) {
  const double wc = cutoff_center(cutoff).value;
  const double upper = cutoff_support(cutoff).value / wc;
  numerics::QuadratureOptions opts;
  for (double b : breakpoints) opts.breakpoints.push_back(b / wc);
  opts.breakpoints.push_back(1.0);
  auto integrand = [&](double x) {
    const auto omega = AngularFrequency{x * wc};
    const double w = cutoff_weight(cutoff, omega);
    return w == 0.0 ? 0.0 : w * x * x * x * h(omega);
  };
  auto r = numerics::integrate_finite(integrand, 0.0, upper, spectral_rel_tol, opts);
  const double scale = wc * wc * wc * wc;
  return {r.value * scale, r.error_estimate * scale, r.evaluations};
}

/// Throws DomainError when ε < 0 somewhere the cutoff weight is non-zero.
inline void require_transparent(const DielectricModel& model, const CutoffSpec& cutoff) {
  const double lowest = min_epsilon_below(model, cutoff_support(cutoff));
  if (lowest < 0.0)
    throw DomainError("permittivity " + describe(model) + " is negative under the cutoff; ε^{3/2} is not real");
}

struct EffectiveSpeed {
  double inv_c_bar_cubed = 0.0;  // s³/m³
  bool valid = false;
  std::string error{};

  /// ε̄ defined through c̄ = c/√ε̄.
  double epsilon_bar() const { return std::pow(inv_c_bar_cubed * constants::c * constants::c * constants::c, 2.0 / 3.0); }
};

inline EffectiveSpeed effective_inverse_c_cubed(const DielectricModel& model, const CutoffSpec& cutoff) {
  try {
    require_transparent(model, cutoff);
  } catch (const DomainError& e) {
    return {0.0, false, e.what()};
  }
  const auto bps = epsilon_breakpoints(model);
  const auto base = weighted_cubic_moment(cutoff, {}, [](AngularFrequency) { return 1.0; });
  // Excess over vacuum integrated directly keeps the small ratio − 1 accurate.
  const auto excess = weighted_cubic_moment(cutoff, bps, [&](AngularFrequency w) {
    const double e = epsilon_at(model, w);
    return e * std::sqrt(e) - 1.0;
  });
  const double c3 = constants::c * constants::c * constants::c;
  return {(1.0 + excess.value / base.value) / c3, true, {}};
}

// ---------------------------------------------------------------------------
// Tabulated ingestion

namespace detail {
inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline bool parse_double(const std::string& s, double& out) {
  const auto t = trim(s);
  if (t.empty()) return false;
  char* end = nullptr;
  out = std::strtod(t.c_str(), &end);
  return end == t.c_str() + t.size() && std::isfinite(out);
}
}  // namespace detail

/// Two numeric columns `omega_rad_per_s,epsilon`; optional header line, `#`
/// comments and blank lines skipped.
inline DielectricModel load_tabulated_model(std::istream& in) {
  std::vector<std::pair<double, double>> points;
  std::string line;
  std::size_t line_no = 0;
  bool seen_content = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = detail::trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto comma = t.find(',');
    double w = 0.0, e = 0.0;
    const bool ok = comma != std::string::npos && t.find(',', comma + 1) == std::string::npos &&
                    detail::parse_double(t.substr(0, comma), w) && detail::parse_double(t.substr(comma + 1), e);
    if (!ok) {
      if (!seen_content) {
        seen_content = true;  // header
        continue;
      }
      throw ParseError("malformed row '" + t + "'", line_no);
    }
    seen_content = true;
    if (!points.empty() && !(w > points.back().first))
      throw ParseError("frequencies must be strictly increasing", line_no);
    points.emplace_back(w, e);
  }
  if (points.size() < 2) throw ParseError("need at least two data rows, found " + std::to_string(points.size()), 0);
  return TabulatedEpsilon{std::move(points)};
}

inline DielectricModel load_tabulated_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  return load_tabulated_model(in);
}

}  // namespace zpe
