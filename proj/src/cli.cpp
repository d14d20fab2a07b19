#include "tunnelkit/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tunnelkit/closed_rates.hpp"
#include "tunnelkit/constants.hpp"
#include "tunnelkit/cubic_potential.hpp"
#include "tunnelkit/josephson.hpp"
#include "tunnelkit/open_saddle.hpp"
#include "tunnelkit/spectral_evolver.hpp"
#include "tunnelkit/wkb_spectrum.hpp"

namespace tunnelkit {

namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Reports carry 12 significant digits; rounding through the text form keeps
// the JSON duplicates byte-identical run to run.
double sig12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

const char* regime_name(SaddleRegime r) {
  switch (r) {
    case SaddleRegime::exact: return "exact";
    case SaddleRegime::small_d: return "small_d";
    default: return "large_d";
  }
}

void require_keys(const ojson& o, const char* where,
                  std::initializer_list<const char*> allowed) {
  if (!o.is_object())
    throw ConfigError(std::string(where) + " must be a JSON object");
  for (auto it = o.begin(); it != o.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) ok = true;
    if (!ok)
      throw ConfigError("unknown key \"" + it.key() + "\" in " + where);
  }
}

double need_number(const ojson& o, const char* where, const char* key) {
  if (!o.contains(key))
    throw ConfigError(std::string(where) + " is missing \"" + key + "\"");
  if (!o[key].is_number())
    throw ConfigError(std::string(where) + "." + key + " must be a number");
  return o[key].get<double>();
}

std::optional<double> opt_number(const ojson& o, const char* where,
                                 const char* key) {
  if (!o.contains(key)) return std::nullopt;
  if (!o[key].is_number())
    throw ConfigError(std::string(where) + "." + key + " must be a number");
  return o[key].get<double>();
}

struct ModelBlock {
  double mass = 0, omega0 = 0;
  std::optional<double> coupling, barrier;
  double u_inf = 0;
  std::optional<double> gamma, sigma2;
};

struct JunctionBlock {
  JunctionParams params;
  std::optional<double> t_exp;
};

struct RunConfig {
  Units units = Units::si();
  bool natural = false;
  LevelScheme scheme = LevelScheme::anharmonic;
  std::optional<ModelBlock> model;
  std::optional<JunctionBlock> junction;
  double grid_half_width = 20.0;
  int grid_points = 801;
  double t_max = 6.0;
  int samples = 61;
  double fit_min = 2.0, fit_max = 6.0;
  double d_min = 1e-4, d_max = 1e4;
  int d_points = 81;
  double evolution_d = 1.0;
  bool evolution_from_model = false;
};

RunConfig parse_config(const ojson& root) {
  RunConfig cfg;
  require_keys(root, "config",
               {"units", "level_scheme", "model", "junction", "grid", "time",
                "suppression", "evolution"});
  if (root.contains("units")) {
    std::string u = root["units"].get<std::string>();
    if (u == "SI") {
      cfg.units = Units::si();
    } else if (u == "natural") {
      cfg.units = Units::natural();
      cfg.natural = true;
    } else {
      throw ConfigError("units must be \"SI\" or \"natural\"");
    }
  }
  if (root.contains("level_scheme")) {
    std::string s = root["level_scheme"].get<std::string>();
    if (s == "anharmonic")
      cfg.scheme = LevelScheme::anharmonic;
    else if (s == "harmonic")
      cfg.scheme = LevelScheme::harmonic;
    else
      throw ConfigError("level_scheme must be \"anharmonic\" or \"harmonic\"");
  }
  if (root.contains("model")) {
    const ojson& m = root["model"];
    require_keys(m, "model",
                 {"mass", "omega0", "coupling", "barrier", "u_inf", "gamma",
                  "sigma2"});
    ModelBlock mb;
    mb.mass = need_number(m, "model", "mass");
    mb.omega0 = need_number(m, "model", "omega0");
    mb.coupling = opt_number(m, "model", "coupling");
    mb.barrier = opt_number(m, "model", "barrier");
    if (mb.coupling.has_value() == mb.barrier.has_value())
      throw ConfigError("model needs exactly one of \"coupling\"/\"barrier\"");
    mb.u_inf = opt_number(m, "model", "u_inf").value_or(0.0);
    mb.gamma = opt_number(m, "model", "gamma");
    mb.sigma2 = opt_number(m, "model", "sigma2");
    cfg.model = mb;
  }
  if (root.contains("junction")) {
    const ojson& j = root["junction"];
    require_keys(j, "junction",
                 {"bias_current", "critical_current", "capacitance",
                  "resistance", "escape_temperature_exp"});
    JunctionBlock jb;
    jb.params.bias_current = need_number(j, "junction", "bias_current");
    jb.params.critical_current = need_number(j, "junction", "critical_current");
    jb.params.capacitance = need_number(j, "junction", "capacitance");
    jb.params.resistance = need_number(j, "junction", "resistance");
    jb.t_exp = opt_number(j, "junction", "escape_temperature_exp");
    cfg.junction = jb;
  }
  if (root.contains("grid")) {
    const ojson& g = root["grid"];
    require_keys(g, "grid", {"half_width", "points"});
    cfg.grid_half_width = opt_number(g, "grid", "half_width").value_or(20.0);
    cfg.grid_points =
        static_cast<int>(opt_number(g, "grid", "points").value_or(801));
  }
  if (root.contains("time")) {
    const ojson& t = root["time"];
    require_keys(t, "time", {"t_max", "samples", "fit_min", "fit_max"});
    cfg.t_max = opt_number(t, "time", "t_max").value_or(6.0);
    cfg.samples = static_cast<int>(opt_number(t, "time", "samples").value_or(61));
    cfg.fit_min = opt_number(t, "time", "fit_min").value_or(2.0);
    cfg.fit_max = opt_number(t, "time", "fit_max").value_or(6.0);
    if (!(cfg.fit_min < cfg.fit_max && cfg.fit_max <= cfg.t_max + 1e-12))
      throw ConfigError("time: need fit_min < fit_max <= t_max");
  }
  if (root.contains("suppression")) {
    const ojson& s = root["suppression"];
    require_keys(s, "suppression", {"d_min", "d_max", "points"});
    cfg.d_min = opt_number(s, "suppression", "d_min").value_or(1e-4);
    cfg.d_max = opt_number(s, "suppression", "d_max").value_or(1e4);
    cfg.d_points =
        static_cast<int>(opt_number(s, "suppression", "points").value_or(81));
  }
  if (root.contains("evolution")) {
    const ojson& e = root["evolution"];
    require_keys(e, "evolution", {"D", "from_model"});
    if (e.contains("from_model")) {
      if (!e["from_model"].is_boolean())
        throw ConfigError("evolution.from_model must be a boolean");
      cfg.evolution_from_model = e["from_model"].get<bool>();
    }
    if (auto d = opt_number(e, "evolution", "D")) cfg.evolution_d = *d;
    if (cfg.evolution_from_model && e.contains("D"))
      throw ConfigError("evolution: give either D or from_model, not both");
  }
  return cfg;
}

// Reference junction preset: measured circuit parameters plus the published
// model parameters they round to. The model block reproduces the published
// closed-well numbers exactly; the junction block feeds the derivation and
// inversion paths.
RunConfig paper_preset() {
  RunConfig cfg;
  cfg.units = Units::si();
  ModelBlock mb;
  const double e = kElementaryCharge;
  const double cap = 4.28e-12;
  mb.mass = kHbar * kHbar * cap / (4.0 * e * e);
  mb.omega0 = 44.918e9;
  mb.barrier = 0.58974 * kBoltzmann;
  mb.u_inf = 0.0;
  mb.gamma = 25.123e9;
  cfg.model = mb;
  JunctionBlock jb;
  jb.params = {24.710e-6, 24.873e-6, cap, 9.3};
  jb.t_exp = 0.045;
  cfg.junction = jb;
  return cfg;
}

CubicPotential model_potential(const ModelBlock& mb) {
  PlateauSpec plateau;
  plateau.u_inf = mb.u_inf;
  if (mb.barrier)
    return CubicPotential::from_barrier(mb.mass, mb.omega0, *mb.barrier,
                                        plateau);
  return CubicPotential(mb.mass, mb.omega0, *mb.coupling, plateau);
}

CubicPotential potential_from(const RunConfig& cfg) {
  if (cfg.model) return model_potential(*cfg.model);
  if (cfg.junction)
    return junction_potential(derive_junction(cfg.junction->params, cfg.units));
  throw ConfigError("this mode needs a \"model\" or \"junction\" block");
}

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + p.string());
  out << content;
  if (!out) throw std::runtime_error("failed writing " + p.string());
}

void emit_json(const ojson& rep, const fs::path& path) {
  std::string text = rep.dump(2);
  text.push_back('\n');
  write_file(path, text);
  std::fputs(text.c_str(), stdout);
}

int run_closed(const RunConfig& cfg, const fs::path& out_dir) {
  CubicPotential pot = potential_from(cfg);
  InstantonRate inst = instanton_rate(pot, cfg.units);
  ResonanceData res = resonance(pot, cfg.units, cfg.scheme);
  ojson rep;
  rep["units"] = cfg.natural ? "natural" : "SI";
  rep["eps_s"] = sig12(pot.eps_s());
  rep["omega0"] = sig12(pot.omega0());
  rep["eps0"] = sig12(0.5 * cfg.units.hbar * pot.omega0());
  rep["Lambda0"] = sig12(inst.Lambda0);
  rep["a_q"] = sig12(inst.a_q);
  rep["Gamma_instanton"] = sig12(inst.Gamma);
  rep["k_gs"] = sig12(res.k_gs);
  rep["zeta_gs"] = sig12(res.zeta_gs);
  rep["f_gs"] = sig12(res.f_gs);
  rep["E0"] = sig12(res.E0);
  rep["k_ref"] = sig12(res.k_ref);
  rep["F_ref"] = sig12(res.F_ref);
  rep["Lambda"] = sig12(res.Lambda);
  rep["tau"] = sig12(res.tau);
  rep["eps"] = sig12(res.eps);
  rep["Gamma_wkb"] = sig12(wkb_rate(res, cfg.units));
  rep["T_esc_instanton"] = sig12(escape_temperature_instanton(pot, cfg.units));
  rep["T_esc_wkb"] = sig12(escape_temperature_wkb(pot, cfg.units));
  emit_json(rep, out_dir / "closed.json");
  return 0;
}

int run_suppression(const RunConfig& cfg, const fs::path& out_dir) {
  std::vector<SuppressionResult> rows =
      suppression_table(cfg.d_min, cfg.d_max, cfg.d_points);
  std::string csv =
      "# columns: D [1], R [1], eta [1], xi [1], residual [1]\n";
  csv += "D,R,eta,xi,residual\n";
  for (const SuppressionResult& r : rows) {
    csv += fmt12(r.D) + "," + fmt12(r.R) + "," + fmt12(r.eta) + "," +
           fmt12(r.xi) + "," + fmt12(r.residual) + "\n";
  }
  fs::path path = out_dir / "suppression.csv";
  write_file(path, csv);
  std::printf("wrote %s (%zu rows)\n", path.string().c_str(), rows.size());
  return 0;
}

int run_evolve(const RunConfig& cfg, const fs::path& out_dir) {
  double d = cfg.evolution_d;
  if (cfg.evolution_from_model) {
    if (!cfg.model || !cfg.model->gamma)
      throw ConfigError("evolution.from_model needs model.gamma");
    CubicPotential pot = model_potential(*cfg.model);
    ResonanceData res = resonance(pot, cfg.units, cfg.scheme);
    double sigma2 = cfg.model->sigma2.value_or(res.E0);
    d = decoherence_strength(*cfg.model->gamma, sigma2,
                             res.E0 + pot.u_inf(), res.eps, cfg.units.hbar);
  }
  if (cfg.samples < 2) throw ConfigError("time.samples must be >= 2");

  // reduced units: energies in eps, times in hbar/eps
  SpectralField f0 =
      init_false_vacuum(0.0, 1.0, cfg.grid_half_width, cfg.grid_points);
  SpectralField f = f0;
  PhaseShiftModel model;
  model.E0 = 0.0;
  model.eps = 1.0;
  model.hbar = 1.0;
  model.D = d;

  std::string csv = "# columns: t [hbar/eps], rho2 [1], N [1], meanE [eps]\n";
  csv += "t,rho2,N,meanE\n";
  double dt = cfg.t_max / (cfg.samples - 1);
  std::vector<double> ts(cfg.samples), rho2(cfg.samples);
  for (int i = 0; i < cfg.samples; ++i) {
    if (i > 0) evolve_phase_shift(f, model, dt);
    ts[i] = dt * i;
    rho2[i] = persistence(f, f0);
    Diagnostics diag = diagnostics(f, 1.0, 0.0);
    csv += fmt12(ts[i]) + "," + fmt12(rho2[i]) + "," + fmt12(diag.norm) + "," +
           fmt12(diag.mean_energy / diag.norm) + "\n";
  }
  write_file(out_dir / "evolve.csv", csv);

  // The late-time quadrature behaves as (a / t^alpha) exp(-rate t): the
  // two Gaussian peaks that dominate the double sum contribute an algebraic
  // prefactor on top of the exponential. Fit ln rho2 = c - rate*t - alpha*ln t
  // so the prefactor does not bleed into the rate (alpha comes out ~0 for a
  // purely exponential signal).
  double s[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
  double b[3] = {0, 0, 0};
  int nfit = 0;
  for (int i = 0; i < cfg.samples; ++i) {
    if (ts[i] < cfg.fit_min - 1e-12 || ts[i] > cfg.fit_max + 1e-12) continue;
    if (!(rho2[i] > 0.0) || !(ts[i] > 0.0)) continue;
    double x[3] = {1.0, ts[i], std::log(ts[i])};
    double y = std::log(rho2[i]);
    for (int p = 0; p < 3; ++p) {
      for (int q = 0; q < 3; ++q) s[p][q] += x[p] * x[q];
      b[p] += x[p] * y;
    }
    ++nfit;
  }
  if (nfit < 3)
    throw std::runtime_error("evolve: fewer than 3 usable fit samples");
  auto det3 = [](const double m[3][3]) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  double den = det3(s);
  double mt[3][3], ml[3][3];
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q) {
      mt[p][q] = (q == 1) ? b[p] : s[p][q];
      ml[p][q] = (q == 2) ? b[p] : s[p][q];
    }
  double rate = -det3(mt) / den;
  double power = -det3(ml) / den;

  SuppressionResult saddle = solve_saddle(d);
  ojson rep;
  rep["D"] = sig12(d);
  rep["eta"] = sig12(saddle.eta);
  rep["xi"] = sig12(saddle.xi);
  rep["R"] = sig12(saddle.R);
  rep["fit_window"] = {sig12(cfg.fit_min), sig12(cfg.fit_max)};
  rep["fitted_rate"] = sig12(rate);
  rep["fitted_power"] = sig12(power);
  rep["predicted_rate"] = sig12(2.0 * saddle.R);
  rep["rate_ratio"] = sig12(rate / (2.0 * saddle.R));
  emit_json(rep, out_dir / "evolve.json");
  return 0;
}

ojson junction_report(const DerivedJunction& d) {
  ojson j;
  j["E_J"] = sig12(d.E_J);
  j["mass"] = sig12(d.mass);
  j["gamma"] = sig12(d.gamma);
  j["s"] = sig12(d.s);
  j["kappa"] = sig12(d.kappa);
  j["eps_s"] = sig12(d.eps_s);
  j["omega_p0"] = sig12(d.omega_p0);
  j["Omega0"] = sig12(d.Omega0);
  j["eps0"] = sig12(d.eps0);
  return j;
}

int run_predict(const RunConfig& cfg, const fs::path& out_dir) {
  if (!cfg.junction)
    throw ConfigError("junction predict needs a \"junction\" block");
  EscapePrediction pred = predict_escape_temperature(
      cfg.junction->params, cfg.units, 0.0, cfg.scheme);
  ojson rep;
  rep["junction"] = junction_report(pred.junction);
  rep["Lambda"] = sig12(pred.Lambda);
  rep["D"] = sig12(pred.D);
  rep["R"] = sig12(pred.R);
  rep["regime"] = regime_name(pred.regime);
  rep["T_esc"] = sig12(pred.T_esc);
  emit_json(rep, out_dir / "predict.json");
  return 0;
}

int run_invert(const RunConfig& cfg, const fs::path& out_dir) {
  if (!cfg.junction)
    throw ConfigError("junction invert needs a \"junction\" block");
  if (!cfg.junction->t_exp)
    throw ConfigError(
        "junction invert needs junction.escape_temperature_exp");
  InversionResult inv = invert_critical_current(
      cfg.junction->params, *cfg.junction->t_exp, cfg.units);
  ojson rep;
  rep["rho_bar"] = sig12(inv.rho_bar);
  rep["Gamma_exp"] = sig12(inv.Gamma_exp);
  rep["s"] = sig12(inv.s);
  rep["k_ref"] = sig12(inv.k_ref);
  rep["critical_current"] = sig12(inv.critical_current);
  rep["Lambda"] = sig12(inv.Lambda);
  rep["residual_match"] = sig12(inv.residual_match);
  rep["residual_rate"] = sig12(inv.residual_rate);
  rep["iterations"] = inv.iterations;
  emit_json(rep, out_dir / "invert.json");
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"escape rates and decoherence for a metastable cubic well"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  bool paper = false;
  app.add_option("--config", config_path, "JSON config file")
      ->check(CLI::ExistingFile);
  app.add_flag("--paper", paper,
               "use the built-in reference junction preset");
  app.add_option("--out", out_dir, "output directory (created if missing)");

  CLI::App* closed =
      app.add_subcommand("closed", "closed-well rates and spectral data");
  CLI::App* sup = app.add_subcommand(
      "suppression", "log sweep of the decay suppression factor R(D)");
  double opt_dmin = 0, opt_dmax = 0, opt_d = 0;
  int opt_points = 0;
  sup->add_option("--dmin", opt_dmin, "lowest damping strength");
  sup->add_option("--dmax", opt_dmax, "highest damping strength");
  sup->add_option("--points", opt_points, "number of sweep points");
  CLI::App* evolve = app.add_subcommand(
      "evolve", "persistence decay of the quasi-bound state");
  evolve->add_option("--d", opt_d, "damping strength D");
  CLI::App* junction = app.add_subcommand("junction", "junction mapping");
  junction->require_subcommand(1);
  CLI::App* predict = junction->add_subcommand(
      "predict", "escape temperature of the damped junction");
  CLI::App* invert = junction->add_subcommand(
      "invert", "fit the critical current to an observed escape temperature");

  try {
    app.parse(argc, const_cast<char**>(argv));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    RunConfig cfg;
    if (paper && !config_path.empty())
      throw ConfigError("--paper and --config are mutually exclusive");
    if (paper) {
      cfg = paper_preset();
    } else if (!config_path.empty()) {
      std::ifstream in(config_path);
      ojson root;
      try {
        root = ojson::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("cannot parse config: ") + e.what());
      }
      cfg = parse_config(root);
    }
    if (opt_dmin > 0) cfg.d_min = opt_dmin;
    if (opt_dmax > 0) cfg.d_max = opt_dmax;
    if (opt_points > 0) cfg.d_points = opt_points;
    if (opt_d > 0) {
      cfg.evolution_d = opt_d;
      cfg.evolution_from_model = false;
    }

    fs::path out(out_dir);
    fs::create_directories(out);
    if (*closed) return run_closed(cfg, out);
    if (*sup) return run_suppression(cfg, out);
    if (*evolve) return run_evolve(cfg, out);
    if (*junction) {
      if (*predict) return run_predict(cfg, out);
      if (*invert) return run_invert(cfg, out);
    }
    throw ConfigError("no subcommand selected");
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  }
}

}  // namespace tunnelkit
