// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles/oracles.hpp"
#include "zpe/zpe.hpp"
#include "zpe_app.hpp"

using namespace zpe;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

const AngularFrequency wp10 = ev_to_angular_frequency(electron_volts(10.0));

Outcome film_coefficient_value() {
  const auto t0 = std::chrono::steady_clock::now();
  const double k = dimensionless_film_coefficient(1e-10);
  const double elapsed = seconds_since(t0);
  const double oracle = static_cast<double>(oracle::film_raw_integral()) / (2.0 * std::sqrt(2.0) * constants::pi);
  const double rounded = std::round(k * 1e4) / 1e4;
  const double rel = rel_diff(k, oracle);
  return {rounded == 0.0078 && rel < 1e-8 && elapsed < 1.0,
          fmt("K_P=%.12f oracle=%.12f rel=%.1e t=%.3fs", k, oracle, rel, elapsed)};
}

Outcome casimir_pressure_value() {
  const Length d = meters(100e-9);
  const double p = ideal_casimir_pressure(d);
  const double expected = constants::hbar * constants::c * constants::pi * constants::pi / (240.0 * std::pow(d.value, 4));
  const double rel = rel_diff(-p, expected);
  const double n_per_cm2 = pascal_to_newton_per_cm2(-p);
  const double ratio = n_per_cm2 / 1e-3;
  return {rel < 4 * std::numeric_limits<double>::epsilon() && std::abs(-p - 13.0) < 0.05 && ratio > 0.5 && ratio < 2.0,
          fmt("P=%.10g Pa (%.3g N/cm^2) rel=%.1e", p, n_per_cm2, rel)};
}

Outcome regularization_equivalence() {
  const Length d = meters(1e-6);
  const AngularFrequency wc{100.0 * constants::c / d.value};
  const CutoffSpec cutoff = SmoothExponentialCutoff{wc, wc};
  const double e = casimir_energy_regularized(d, cutoff).energy_per_area;
  const double limit = -constants::pi * constants::pi * constants::hbar * constants::c / (720.0 * std::pow(d.value, 3));
  const double p = casimir_pressure_regularized(d, cutoff).pressure_pa;
  const double p_ideal = ideal_casimir_pressure(d);
  const double re = rel_diff(e, limit), rp = rel_diff(p, p_ideal);
  return {re < 0.01 && rp < 1e-3, fmt("energy rel=%.2e pressure rel=%.2e", re, rp)};
}

Outcome bulk_identity() {
  std::mt19937_64 rng(20261016);
  std::uniform_real_distribution<double> ev(0.1, 50.0);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto wp = ev_to_angular_frequency(electron_volts(ev(rng)));
    const double cont = pressure_continuum(Vacuum{}, SharpCutoff{wp}).pressure_pa;
    const double closed = pressure_closed_form(wp, effective_inverse_c_cubed(Vacuum{}, SharpCutoff{wp})).pressure_pa;
    worst = std::max(worst, rel_diff(cont, closed));
  }
  const double p0 = pressure_continuum(Vacuum{}, SharpCutoff{wp10}).pressure_pa;
  const double ratio = 0.2 / pascal_to_newton_per_cm2(p0);
  return {worst < 1e-14 && std::abs(p0 - 880.0) < 5.0 && ratio < 3.0 && ratio > 1.0 / 3.0,
          fmt("worst rel=%.1e P0=%.6g Pa (%.3g N/cm^2, factor %.2f from 0.2)", worst, p0, pascal_to_newton_per_cm2(p0), ratio)};
}

Outcome dielectric_excess() {
  const StepEpsilon step(2.0, 0.05, wp10);
  const CutoffSpec cutoff = SharpCutoff{wp10};
  const double excess = pressure_excess(step, cutoff).pressure_pa;
  const double p0 = pressure_continuum(Vacuum{}, cutoff).pressure_pa;
  const double expected = p0 * (std::pow(2.0, 1.5) - 1.0) * std::pow(0.05, 4);
  const double rel = rel_diff(excess, expected);
  const double n_per_cm2 = pascal_to_newton_per_cm2(excess);
  return {rel < 0.02 && std::abs(excess - 1.0e-2) < 0.1e-2 && n_per_cm2 > 1e-7 && n_per_cm2 < 1e-5,
          fmt("dP=%.6g Pa (%.3g N/cm^2) rel=%.1e", excess, n_per_cm2, rel)};
}

Outcome crossover() {
  const auto t0 = std::chrono::steady_clock::now();
  const PlateConfiguration config{meters(1e-6), StepEpsilon(2.0, 0.05, wp10), Vacuum{}, wp10, SharpCutoff{wp10}};
  const double d = find_sign_crossover(config, numerics::Bracket(1e-7, 2e-6)).value;
  const double elapsed = seconds_since(t0);
  return {d >= 0.54e-6 && d <= 0.66e-6 && elapsed < 1.0, fmt("d*=%.6g m t=%.3fs", d, elapsed)};
}

Outcome plasmon_identity() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double d = std::pow(10.0, -10.0 + 3.0 * u(rng));
    const double k = std::pow(10.0, -2.0 + 4.0 * u(rng)) / d;
    const auto wp = ev_to_angular_frequency(electron_volts(std::pow(10.0, -1.0 + 2.0 * u(rng))));
    const auto b = plasmon_dispersion(k, FilmConfig{meters(d), wp});
    const double lhs = b.omega_even.value * b.omega_even.value + b.omega_odd.value * b.omega_odd.value;
    worst = std::max(worst, rel_diff(lhs, wp.value * wp.value));
  }
  return {worst < 1e-13, fmt("worst rel=%.1e over 10000 samples", worst)};
}

Outcome box_convergence() {
  const CutoffSpec cutoff = SharpCutoff{wp10};
  const double cont = pressure_continuum(Vacuum{}, cutoff).pressure_pa;
  std::vector<double> gaps;
  for (double n : {100.0, 200.0, 400.0, 800.0}) {
    const Length side = meters(n * constants::c / wp10.value);
    gaps.push_back(std::abs(rel_diff(pressure_discrete_box(BoxGeometry(side, side, side), Vacuum{}, cutoff).pressure_pa, cont)));
  }
  bool monotone = true;
  for (std::size_t i = 1; i < gaps.size(); ++i) monotone = monotone && gaps[i] < gaps[i - 1];
  return {gaps[1] < 0.01 && monotone,
          fmt("gap L=100:%.1e 200:%.1e 400:%.1e 800:%.1e", gaps[0], gaps[1], gaps[2], gaps[3])};
}

Outcome film_pressure_agreement() {
  double worst = 0.0;
  for (int i = 0; i < 30; ++i) {
    const double d = 1e-10 * std::pow(100.0, i / 29.0);
    const FilmConfig film(meters(d), wp10);
    const double analytic = film_pressure(film).pressure_pa;
    const double numeric = film_pressure_numeric(film, meters(1e-4 * d)).pressure_pa;
    worst = std::max(worst, rel_diff(numeric, analytic));
  }
  const double p1 = pascal_to_newton_per_cm2(film_pressure(FilmConfig(meters(1e-10), wp10)).pressure_pa);
  const double ratio = p1 / 2e6;
  return {worst < 1e-6 && ratio > 0.5 && ratio < 2.0, fmt("worst rel=%.1e P(1A)=%.4g N/cm^2", worst, p1)};
}

Outcome determinism() {
  const std::vector<std::vector<std::string>> invocations = {
      {"casimir", "--distance-m", "1e-7", "--regularized", "--cutoff", "smooth"},
      {"bulk", "--model", "step:2,0.05"},
      {"crossover", "--bracket", "1e-7,2e-6", "--inner", "step:2,0.05"},
      {"film", "--thickness-m", "1e-10"},
      {"sweep", "--var", "distance-m", "--lo", "1e-7", "--hi", "2e-6", "--steps", "20", "--scale", "log", "net", "--inner", "step:2,0.05"},
  };
  for (const auto& args : invocations) {
    const auto first = app::run(args);
    if (first.status != app::exit_ok) return {false, "non-zero exit for " + args[0]};
    for (int i = 0; i < 3; ++i)
      if (app::run(args).out != first.out) return {false, "output differs for " + args[0]};
  }
  return {true, fmt("%zu invocations x4 byte-identical", invocations.size())};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"film coefficient", film_coefficient_value},
      {"casimir pressure at 100 nm", casimir_pressure_value},
      {"regularization equivalence", regularization_equivalence},
      {"bulk continuum vs closed form", bulk_identity},
      {"dielectric excess", dielectric_excess},
      {"sign crossover distance", crossover},
      {"plasmon branch identity", plasmon_identity},
      {"discrete box convergence", box_convergence},
      {"film pressure analytic vs numeric", film_pressure_agreement},
      {"cli determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %2zu %-36s %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
