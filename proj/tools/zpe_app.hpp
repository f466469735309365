#pragma once

// Command-line front end. `run` takes the argument vector (without the program
// name) and returns exit status plus captured stdout/stderr so that tests can
// drive it in-process.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "zpe/zpe.hpp"

namespace zpe::app {

using Json = nlohmann::ordered_json;

enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_domain = 2 };

struct Output {
  int status = exit_ok;
  std::string out;
  std::string err;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Params {
  std::string command;
  std::string output = "json";
  double omega_p_ev = 10.0;
  std::optional<double> smooth_width_ev;
  std::string cutoff = "sharp";
  std::string model = "vacuum";
  std::string inner = "vacuum";
  std::string outer = "vacuum";
  std::optional<double> distance_m;
  std::optional<double> thickness_m;
  std::optional<std::string> box;
  std::optional<std::string> bracket;
  std::optional<std::string> kd_range;
  bool dispersion = false;
  bool regularized = false;
};

struct SweepSpec {
  std::string variable;
  double lo = 0.0;
  double hi = 0.0;
  int steps = 0;
  std::string scale = "linear";

  std::vector<double> grid() const {
    std::vector<double> out;
    for (int i = 0; i < steps; ++i) {
      const double t = static_cast<double>(i) / (steps - 1);
      out.push_back(scale == "log" ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))) : lo + t * (hi - lo));
    }
    // Endpoints exactly as given.
    out.front() = lo;
    out.back() = hi;
    return out;
  }
};

namespace detail {

inline std::vector<double> parse_list(const std::string& text, std::size_t expected, const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0.0;
    if (!zpe::detail::parse_double(item, v)) throw UsageError(flag + ": cannot parse '" + item + "'");
    out.push_back(v);
  }
  if (out.size() != expected) throw UsageError(flag + ": expected " + std::to_string(expected) + " comma-separated values");
  return out;
}

inline AngularFrequency omega_p(const Params& p) {
  if (!(p.omega_p_ev > 0.0)) throw DomainError("--omega-p-ev must be positive");
  return ev_to_angular_frequency(electron_volts(p.omega_p_ev));
}

/// vacuum | const:<eps> | step:<eps>,<fraction> | drude:<energy>ev | table:<path>
inline DielectricModel parse_model(const std::string& spec, AngularFrequency wall_omega_p) {
  if (spec == "vacuum") return Vacuum{};
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw UsageError("unknown model '" + spec + "'");
  const auto kind = spec.substr(0, colon);
  const auto arg = spec.substr(colon + 1);
  if (kind == "const") return ConstantEpsilon{parse_list(arg, 1, "const")[0]};
  if (kind == "step") {
    const auto v = parse_list(arg, 2, "step");
    return StepEpsilon{v[0], v[1], wall_omega_p};
  }
  if (kind == "drude") {
    if (arg.size() < 3 || arg.substr(arg.size() - 2) != "ev") throw UsageError("drude: plasma energy needs an 'ev' suffix");
    return DrudePlasma{ev_to_angular_frequency(electron_volts(parse_list(arg.substr(0, arg.size() - 2), 1, "drude")[0]))};
  }
  if (kind == "table") return load_tabulated_model(arg);
  throw UsageError("unknown model kind '" + kind + "'");
}

inline CutoffSpec parse_cutoff(const Params& p) {
  const auto wp = omega_p(p);
  if (p.cutoff == "sharp") return SharpCutoff{wp};
  if (p.cutoff == "smooth") {
    const auto width = p.smooth_width_ev ? ev_to_angular_frequency(electron_volts(*p.smooth_width_ev)) : wp;
    return SmoothExponentialCutoff{wp, width};
  }
  throw UsageError("--cutoff must be sharp or smooth");
}

inline Json provenance_json(const Provenance& prov) {
  Json j = Json::object();
  for (const auto& [k, v] : prov) j[k] = v;
  return j;
}

inline Json result_json(double value, const char* unit, double error, const std::vector<std::string>& guards, const Provenance& prov) {
  Json r;
  r["value"] = value;
  r["unit"] = unit;
  r["error_estimate"] = error;
  r["guards"] = guards;
  r["provenance"] = provenance_json(prov);
  return r;
}

inline Json inputs_json(const Params& p) {
  Json j;
  j["command"] = p.command;
  auto cutoff_inputs = [&] {
    j["cutoff"] = p.cutoff;
    if (p.cutoff == "smooth") j["smooth_width_ev"] = p.smooth_width_ev.value_or(p.omega_p_ev);
  };
  if (p.command == "bulk") {
    j["omega_p_ev"] = p.omega_p_ev;
    j["model"] = p.model;
    cutoff_inputs();
    if (p.box) j["box_m"] = *p.box;
  } else if (p.command == "casimir") {
    if (p.distance_m) j["distance_m"] = *p.distance_m;
    j["omega_p_ev"] = p.omega_p_ev;
    j["regularized"] = p.regularized;
    if (p.regularized) cutoff_inputs();
  } else if (p.command == "net" || p.command == "crossover") {
    if (p.command == "net" && p.distance_m) j["distance_m"] = *p.distance_m;
    if (p.command == "crossover" && p.bracket) j["bracket_m"] = *p.bracket;
    j["inner"] = p.inner;
    j["outer"] = p.outer;
    j["omega_p_ev"] = p.omega_p_ev;
    cutoff_inputs();
  } else if (p.command == "film") {
    if (p.thickness_m) j["thickness_m"] = *p.thickness_m;
    j["omega_p_ev"] = p.omega_p_ev;
    if (p.dispersion) j["kd_range"] = p.kd_range.value_or("");
  }
  return j;
}

inline Json constants_json() {
  const auto k = physical_constants();
  Json j;
  j["hbar_J_s"] = k.hbar;
  j["c_m_per_s"] = k.c;
  j["eV_J"] = k.eV;
  j["bohr_pressure_Pa"] = k.bohr_pressure;
  j["bohr_pressure_N_per_cm2"] = pascal_to_newton_per_cm2(k.bohr_pressure);
  return Json{{"constants", j}};
}

// -- per-command computations; each returns the "result" object ------------

inline Json compute_bulk(const Params& p) {
  const auto wp = omega_p(p);
  const auto model = parse_model(p.model, wp);
  const auto cutoff = parse_cutoff(p);
  PressureResult r;
  if (p.box) {
    const auto b = parse_list(*p.box, 3, "--box");
    r = pressure_discrete_box(BoxGeometry{meters(b[0]), meters(b[1]), meters(b[2])}, model, cutoff);
  } else {
    r = pressure_continuum(model, cutoff);
  }
  auto j = result_json(r.pressure_pa, "Pa", r.error_estimate_pa, r.guards, r.provenance);
  j["value_n_per_cm2"] = pascal_to_newton_per_cm2(r.pressure_pa);
  const auto excess = pressure_excess(model, cutoff);
  j["excess_over_vacuum_pa"] = excess.pressure_pa;
  const auto naive = pressure_naive_thermodynamic(cutoff_center(cutoff));
  j["naive_thermodynamic_pa"] = naive.pressure_pa;
  j["provenance"]["naive_thermodynamic"] = "closed-system -dE0/dV; invalid for an open spectrum, comparison only";
  return j;
}

inline Json compute_casimir(const Params& p) {
  if (!p.distance_m) throw UsageError("casimir: --distance-m is required");
  const auto d = meters(*p.distance_m);
  const auto wp = omega_p(p);
  const double ideal = ideal_casimir_pressure(d);
  const auto regime = regime_of(d, wp);
  std::vector<std::string> guards;
  if (regime == Regime::quasistationary) guards.emplace_back(guard::quasistationary);
  if (regime == Regime::crossover) guards.emplace_back(guard::retardation_crossover);
  auto j = result_json(ideal, "Pa", 0.0, guards, {{"method", "ideal plates -hbar c pi^2/(240 d^4)"}});
  j["value_n_per_cm2"] = pascal_to_newton_per_cm2(ideal);
  j["regime"] = to_string(regime);
  if (p.regularized) {
    const auto cutoff = parse_cutoff(p);
    const auto reg = casimir_pressure_regularized(d, cutoff);
    const auto energy = casimir_energy_regularized(d, cutoff);
    Json rj;
    rj["pressure_pa"] = reg.pressure_pa;
    rj["error_estimate_pa"] = reg.error_estimate_pa;
    rj["energy_per_area_J_m2"] = energy.energy_per_area;
    rj["euler_maclaurin_energy_J_m2"] = casimir_energy_euler_maclaurin(d);
    rj["guards"] = reg.guards;
    rj["provenance"] = provenance_json(reg.provenance);
    j["regularized"] = rj;
  }
  return j;
}

inline PlateConfiguration plate_config(const Params& p, Length d) {
  const auto wp = omega_p(p);
  return {d, parse_model(p.inner, wp), parse_model(p.outer, wp), wp, parse_cutoff(p)};
}

inline Json compute_net(const Params& p) {
  if (!p.distance_m) throw UsageError("net: --distance-m is required");
  const auto r = net_pressure_asymmetric(plate_config(p, meters(*p.distance_m)));
  auto j = result_json(r.pressure_pa, "Pa", r.error_estimate_pa, r.guards, r.provenance);
  j["value_n_per_cm2"] = pascal_to_newton_per_cm2(r.pressure_pa);
  j["regime"] = to_string(r.regime);
  return j;
}

inline Json compute_crossover(const Params& p) {
  if (!p.bracket) throw UsageError("crossover: --bracket lo,hi is required");
  const auto b = parse_list(*p.bracket, 2, "--bracket");
  if (!(b[0] < b[1])) throw UsageError("--bracket requires lo < hi");
  const auto config = plate_config(p, meters(b[0]));
  const auto d = find_sign_crossover(config, {b[0], b[1]});
  auto at_root = config;
  at_root.gap = d;
  const auto net = net_pressure_asymmetric(at_root);
  auto j = result_json(d.value, "m", 0.0, net.guards, net.provenance);
  j["net_pressure_at_root_pa"] = net.pressure_pa;
  j["regime"] = to_string(net.regime);
  return j;
}

inline Json compute_film(const Params& p) {
  if (!p.thickness_m) throw UsageError("film: --thickness-m is required");
  const FilmConfig film{meters(*p.thickness_m), omega_p(p)};
  const auto r = film_pressure(film);
  auto j = result_json(r.pressure_pa, "Pa", r.error_estimate_pa, r.guards, r.provenance);
  j["value_n_per_cm2"] = pascal_to_newton_per_cm2(r.pressure_pa);
  j["coefficient"] = dimensionless_film_coefficient(1e-13);
  j["energy_per_area_J_m2"] = film_energy_per_area(film).energy_per_area;
  j["bohr_pressure_pa"] = constants::bohr_pressure;
  return j;
}

inline Json compute(const Params& p) {
  if (p.command == "bulk") return compute_bulk(p);
  if (p.command == "casimir") return compute_casimir(p);
  if (p.command == "net") return compute_net(p);
  if (p.command == "crossover") return compute_crossover(p);
  if (p.command == "film") return compute_film(p);
  throw UsageError("unknown command '" + p.command + "'");
}

inline std::string number(const Json& v) { return v.dump(); }

inline std::string csv_cell(const Json& v) {
  if (v.is_string()) {
    auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") != std::string::npos) {
      std::string q = "\"";
      for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      return q + "\"";
    }
    return s;
  }
  if (v.is_array()) {
    std::string s;
    for (const auto& e : v) s += (s.empty() ? "" : ";") + (e.is_string() ? e.get<std::string>() : e.dump());
    return csv_cell(Json(s));
  }
  if (v.is_null()) return "";
  return v.dump();
}

/// Rows of flat objects to CSV; columns are the union of keys in first-seen order.
inline std::string to_csv(const std::vector<Json>& rows) {
  std::vector<std::string> columns;
  for (const auto& r : rows)
    for (const auto& [k, v] : r.items())
      if (!v.is_object() && std::find(columns.begin(), columns.end(), k) == columns.end()) columns.push_back(k);
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
  out += "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) out += ",";
      if (r.contains(columns[i])) out += csv_cell(r[columns[i]]);
    }
    out += "\n";
  }
  return out;
}

inline Json error_json(const char* kind, const std::string& message) {
  Json e;
  e["kind"] = kind;
  e["message"] = message;
  return e;
}

/// Runs `fn`, mapping library exceptions onto an error record. Usage errors
/// propagate.
template <class Fn>
std::optional<Json> guarded(Fn&& fn, Json& error) {
  try {
    return fn();
  } catch (const UsageError&) {
    throw;
  } catch (const ParseError& e) {
    error = error_json("parse", e.what());
  } catch (const BracketError& e) {
    error = error_json("bracket", e.what());
  } catch (const NumericalError& e) {
    error = error_json("numerical", e.what());
    error["best_estimate"] = e.best_estimate();
  } catch (const DomainError& e) {
    error = error_json("domain", e.what());
  } catch (const ArgumentError& e) {
    error = error_json("argument", e.what());
  }
  return std::nullopt;
}

inline const std::vector<std::string>& sweepable(const std::string& command) {
  static const std::map<std::string, std::vector<std::string>> table = {
      {"bulk", {"omega-p-ev", "smooth-width-ev"}},
      {"casimir", {"distance-m", "omega-p-ev"}},
      {"net", {"distance-m", "omega-p-ev"}},
      {"film", {"thickness-m", "omega-p-ev"}},
  };
  static const std::vector<std::string> none;
  const auto it = table.find(command);
  return it == table.end() ? none : it->second;
}

inline void set_variable(Params& p, const std::string& var, double x) {
  if (var == "omega-p-ev") p.omega_p_ev = x;
  else if (var == "smooth-width-ev") p.smooth_width_ev = x;
  else if (var == "distance-m") p.distance_m = x;
  else if (var == "thickness-m") p.thickness_m = x;
  else throw UsageError("cannot sweep '" + var + "'");
}

inline Output emit(const Params& p, const std::vector<Json>& csv_rows, const Json& json_doc, int status) {
  Output o;
  o.status = status;
  o.out = p.output == "csv" ? to_csv(csv_rows) : json_doc.dump(2) + "\n";
  return o;
}

inline Output run_single(const Params& p) {
  const auto inputs = inputs_json(p);
  Json error;
  const auto result = guarded([&] { return compute(p); }, error);
  Json doc;
  doc["inputs"] = inputs;
  if (result) {
    doc["result"] = *result;
    Json row;
    for (const auto& [k, v] : result->items())
      if (!v.is_object()) row[k] = v;
    return emit(p, {row}, doc, exit_ok);
  }
  doc["error"] = error;
  Json row;
  row["error"] = error["kind"];
  row["message"] = error["message"];
  return emit(p, {row}, doc, exit_domain);
}

/// One row per grid point in grid order; failing points become error rows and
/// the sweep continues.
inline Output run_sweep(const Params& base, const SweepSpec& sweep) {
  const auto& allowed = sweepable(base.command);
  if (std::find(allowed.begin(), allowed.end(), sweep.variable) == allowed.end())
    throw UsageError("sweep: '" + sweep.variable + "' is not a sweepable parameter of '" + base.command + "'");
  if (sweep.steps < 2) throw UsageError("sweep: --steps must be at least 2");
  if (!(sweep.lo < sweep.hi)) throw UsageError("sweep: requires --lo < --hi");
  if (sweep.scale != "linear" && sweep.scale != "log") throw UsageError("sweep: --scale must be linear or log");
  if (sweep.scale == "log" && !(sweep.lo > 0.0)) throw UsageError("sweep: log scale needs a positive --lo");

  Json inputs = inputs_json(base);
  inputs["sweep"] = {{"variable", sweep.variable}, {"lo", sweep.lo}, {"hi", sweep.hi}, {"steps", sweep.steps}, {"scale", sweep.scale}};
  std::vector<Json> rows;
  for (double x : sweep.grid()) {
    Params p = base;
    set_variable(p, sweep.variable, x);
    Json error;
    const auto result = guarded([&] { return compute(p); }, error);
    Json row;
    row[sweep.variable] = x;
    if (result) {
      for (const auto& [k, v] : result->items())
        if (!v.is_object()) row[k] = v;
    } else {
      row["error"] = error["kind"];
      row["message"] = error["message"];
    }
    rows.push_back(std::move(row));
  }
  Json doc;
  doc["inputs"] = inputs;
  doc["rows"] = rows;
  return emit(base, rows, doc, exit_ok);
}

inline Output run_dispersion(const Params& p) {
  const auto range = parse_list(p.kd_range.value_or("0,10,101"), 3, "--kd-range");
  const int steps = static_cast<int>(range[2]);
  if (steps < 2 || range[2] != steps) throw UsageError("--kd-range: steps must be an integer >= 2");
  if (!(range[0] >= 0.0 && range[0] < range[1])) throw UsageError("--kd-range: requires 0 <= lo < hi");
  Json inputs = inputs_json(p);
  const double d = p.thickness_m.value_or(1.0);
  Json error;
  const auto rows = guarded(
      [&] {
        const FilmConfig film{meters(d), omega_p(p)};
        Json list = Json::array();
        for (int i = 0; i < steps; ++i) {
          const double kd = i == steps - 1 ? range[1] : range[0] + (range[1] - range[0]) * i / (steps - 1);
          const auto b = plasmon_dispersion(kd / d, film);
          Json row;
          row["kd"] = kd;
          row["omega_even_over_omega_p"] = b.omega_even / film.omega_p;
          row["omega_odd_over_omega_p"] = b.omega_odd / film.omega_p;
          list.push_back(row);
        }
        return list;
      },
      error);
  Json doc;
  doc["inputs"] = inputs;
  if (!rows) {
    doc["error"] = error;
    return emit(p, {Json{{"error", error["kind"]}, {"message", error["message"]}}}, doc, exit_domain);
  }
  doc["rows"] = *rows;
  return emit(p, std::vector<Json>(rows->begin(), rows->end()), doc, exit_ok);
}

/// Splices flags from a JSON config file into the argument list. Keys are flag
/// names without the leading dashes; command-line flags win.
inline std::vector<std::string> expand_config(std::vector<std::string> args) {
  const auto it = std::find(args.begin(), args.end(), "--config");
  if (it == args.end()) return args;
  if (it + 1 == args.end()) throw UsageError("--config needs a path");
  const std::string path = *(it + 1);
  args.erase(it, it + 2);
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config '" + path + "'");
  Json cfg;
  try {
    cfg = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config '" + path + "': " + e.what());
  }
  if (!cfg.is_object()) throw UsageError("config must be a JSON object");
  for (const auto& [key, value] : cfg.items()) {
    const std::string flag = "--" + key;
    if (std::find(args.begin(), args.end(), flag) != args.end()) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
      continue;
    }
    args.push_back(flag);
    if (value.is_string()) {
      args.push_back(value.get<std::string>());
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& e : value) joined += (joined.empty() ? "" : ",") + (e.is_string() ? e.get<std::string>() : e.dump());
      args.push_back(joined);
    } else {
      args.push_back(value.dump());
    }
  }
  return args;
}

inline void add_common(CLI::App* cmd, Params& p) {
  cmd->add_option("--output", p.output, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--omega-p-ev", p.omega_p_ev, "wall plasma energy ħω_p in eV (default 10)");
}

inline void add_cutoff(CLI::App* cmd, Params& p) {
  cmd->add_option("--cutoff", p.cutoff, "sharp or smooth")->check(CLI::IsMember({"sharp", "smooth"}));
  cmd->add_option("--smooth-width-ev", p.smooth_width_ev, "roll-off width of the smooth cutoff in eV (default ħω_p)");
}

inline void add_command_options(CLI::App* cmd, const std::string& name, Params& p) {
  add_common(cmd, p);
  if (name == "bulk") {
    add_cutoff(cmd, p);
    cmd->add_option("--model", p.model, "vacuum | const:E | step:E,F | drude:Xev | table:path");
    cmd->add_option("--box", p.box, "Lx,Ly,Lz in metres for the discrete mode sum");
  } else if (name == "casimir") {
    cmd->add_option("--distance-m", p.distance_m, "plate separation in metres");
    cmd->add_flag("--regularized", p.regularized, "also evaluate the cutoff-regularized mode sum");
    add_cutoff(cmd, p);
  } else if (name == "net" || name == "crossover") {
    if (name == "net") cmd->add_option("--distance-m", p.distance_m, "plate separation in metres");
    if (name == "crossover") cmd->add_option("--bracket", p.bracket, "lo,hi search interval in metres");
    cmd->add_option("--inner", p.inner, "medium between the plates");
    cmd->add_option("--outer", p.outer, "medium outside the plates");
    add_cutoff(cmd, p);
  } else if (name == "film") {
    cmd->add_option("--thickness-m", p.thickness_m, "film thickness in metres");
    cmd->add_flag("--dispersion", p.dispersion, "emit plasmon dispersion rows instead of the pressure");
    cmd->add_option("--kd-range", p.kd_range, "lo,hi,steps for --dispersion");
  }
}

}  // namespace detail

inline Output run(const std::vector<std::string>& raw_args) {
  Output usage;
  usage.status = exit_usage;
  try {
    const auto args = detail::expand_config(raw_args);

    CLI::App app{"Zero-point radiation pressure calculator", "zpe"};
    app.require_subcommand(1);
    Params params;
    SweepSpec sweep;
    Params sweep_params;

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"bulk", "zero-point pressure of bulk modes on a wall"},
        {"casimir", "Casimir pressure between ideal plates"},
        {"net", "net pressure on plates with different media inside and outside"},
        {"crossover", "plate gap at which the net pressure changes sign"},
        {"film", "plasmon squeeze pressure on a thin metal film"},
    };
    app.add_subcommand("constants", "print physical constants as JSON");
    for (const auto& [name, help] : commands) detail::add_command_options(app.add_subcommand(name, help), name, params);

    auto* sw = app.add_subcommand("sweep", "evaluate a command over a grid of one parameter");
    sw->require_subcommand(1);
    sw->add_option("--var", sweep.variable, "parameter to sweep, e.g. distance-m")->required();
    sw->add_option("--lo", sweep.lo)->required();
    sw->add_option("--hi", sweep.hi)->required();
    sw->add_option("--steps", sweep.steps)->required();
    sw->add_option("--scale", sweep.scale, "linear or log");
    for (const auto& [name, help] : commands) {
      if (name == "crossover") continue;
      auto* sub = sw->add_subcommand(name, help);
      sub->fallthrough();
      detail::add_command_options(sub, name, sweep_params);
    }

    std::vector<const char*> argv{"zpe"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
      return {exit_ok, app.help(), ""};
    } catch (const CLI::ParseError& e) {
      usage.err = std::string(e.what()) + "\n" + "run with --help for usage\n";
      return usage;
    }

    const auto* chosen = app.get_subcommands().front();
    const std::string command = chosen->get_name();
    if (command == "constants") return {exit_ok, detail::constants_json().dump(2) + "\n", ""};
    if (command == "sweep") {
      sweep_params.command = chosen->get_subcommands().front()->get_name();
      return detail::run_sweep(sweep_params, sweep);
    }
    params.command = command;
    if (command == "film" && params.dispersion) return detail::run_dispersion(params);
    return detail::run_single(params);
  } catch (const UsageError& e) {
    usage.err = std::string("usage error: ") + e.what() + "\n";
    return usage;
  }
}

}  // namespace zpe::app
