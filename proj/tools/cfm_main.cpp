#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cfm/config.hpp"
#include "cfm/parallel.hpp"
#include "cfm/presets.hpp"

namespace {

using namespace cfm;

constexpr int kExitUsage = 1;
constexpr int kExitUnknownPreset = 2;
constexpr int kExitConfig = 3;
constexpr int kExitSolver = 4;

std::string fmt(const char* f, double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// 9 significant digits, the precision every table and CSV is emitted with.
std::string num9(double v) { return fmt("%.8e", v); }

struct OutputSink {
  std::ostream* os;
  std::ofstream file;

  explicit OutputSink(const std::optional<std::string>& path) {
    if (path && *path != "-") {
      file.open(*path);
      if (!file) throw std::runtime_error("cannot open output file '" + *path + "'");
      os = &file;
    } else {
      os = &std::cout;
    }
  }
};

// Flags shared by solve and scan.
struct CommonArgs {
  std::string preset;
  std::string config_path;
  std::string potential_family;
  std::vector<std::string> params;  // key=value pairs for --potential
  std::string unit = "hartree";
  bool radial = false;
  SolveOverrides overrides;
  std::optional<double> emin, emax, refine_tol, x0, step, max_extent, mass;
  std::optional<int> grid_points, l;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--preset", args.preset, "preset name (see list-presets)");
  cmd->add_option("--config", args.config_path, "config file path");
  cmd->add_option("--potential", args.potential_family,
                  "custom potential family (morse, dgw, finite-well, ...)");
  cmd->add_option("--param", args.params,
                  "potential parameter key=value (native units, repeatable)");
  cmd->add_option("--unit", args.unit, "native energy unit for a custom problem");
  cmd->add_flag("--radial", args.radial, "treat a custom problem as radial");
  cmd->add_option("--emin", args.emin, "window lower edge (native unit)");
  cmd->add_option("--emax", args.emax, "window upper edge (native unit)");
  cmd->add_option("--grid-points", args.grid_points, "scan grid size");
  cmd->add_option("--points", args.grid_points, "alias for --grid-points");
  cmd->add_option("--refine-tol", args.refine_tol, "root bracket tolerance");
  cmd->add_option("--x0", args.x0, "anchor point override");
  cmd->add_option("--step", args.step, "marching step");
  cmd->add_option("--max-extent", args.max_extent, "marching extent cap");
  cmd->add_option("--mass", args.mass, "2mu with hbar = 1 (mandatory for johnson-dwp)");
  cmd->add_option("--l", args.l, "angular momentum (radial problems)");
}

ResolvedRun resolve_common(const CommonArgs& args) {
  ResolvedRun run;
  if (!args.config_path.empty()) {
    std::ifstream in(args.config_path);
    if (!in)
      throw ConfigError(0, "config", "cannot open config file '" + args.config_path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    RunConfig cfg = parse_config(text.str());
    if (!args.preset.empty()) cfg.preset = args.preset;
    run = resolve_run(cfg);
  } else if (!args.potential_family.empty()) {
    // Custom problem straight from flags; parameters are in native units.
    RunConfig cfg;
    cfg.potential_family = args.potential_family;
    cfg.native_unit = parse_energy_unit(args.unit);
    for (const std::string& kv : args.params) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0)
        throw ConfigError(0, "param", "--param wants key=value, got '" + kv + "'");
      cfg.potential_params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    }
    cfg.radial = args.radial;
    cfg.l = args.l;
    cfg.x0 = args.x0;
    cfg.mass_two_mu = args.mass;
    cfg.emin = args.emin;
    cfg.emax = args.emax;
    run = resolve_run(cfg);
  } else if (!args.preset.empty()) {
    run.preset = make_spectrum_preset(args.preset);
  } else {
    throw ConfigError(0, "preset", "give --preset, --potential or --config");
  }
  if (args.emin) run.overrides.emin = args.emin;
  if (args.emax) run.overrides.emax = args.emax;
  if (args.grid_points) run.overrides.grid_points = args.grid_points;
  if (args.refine_tol) run.overrides.refine_tol = args.refine_tol;
  if (args.x0) run.overrides.x0 = args.x0;
  if (args.step) run.overrides.step = args.step;
  if (args.max_extent) run.overrides.max_extent = args.max_extent;
  if (args.mass) run.overrides.mass_two_mu = args.mass;
  if (args.l) run.overrides.l = args.l;
  run.overrides.threads = 0;  // CFM_THREADS or hardware
  return run;
}

int run_solve(const CommonArgs& args, bool with_oracle,
              const std::optional<std::string>& csv_path,
              const std::optional<std::string>& out_path) {
  const ResolvedRun run = resolve_common(args);
  const SpectrumResult res = solve_spectrum(run.preset, run.overrides, with_oracle);

  OutputSink sink(out_path);
  std::ostream& os = *sink.os;
  os << "# preset: " << run.preset.name << " (" << run.preset.description << ")\n";
  os << "# energies in " << unit_name(res.unit) << "\n";
  os << "# index  energy";
  if (with_oracle) os << "  exact";
  os << "  residual\n";

  double max_rel = 0.0;
  for (std::size_t i = 0; i < res.levels.size(); ++i) {
    const Eigenvalue& ev = res.levels[i];
    char idx[16];
    std::snprintf(idx, sizeof idx, "%6d", ev.index);
    os << idx << "  " << fmt("% .8e", ev.energy);
    if (with_oracle && i < res.oracle_levels.size()) {
      os << "  " << fmt("% .8e", res.oracle_levels[i]);
      // The summary is computed from the printed digits so it can be
      // reproduced from the emitted table or CSV alone.
      const double e_print = std::stod(num9(ev.energy));
      const double o_print = std::stod(num9(res.oracle_levels[i]));
      if (o_print != 0.0)
        max_rel = std::max(max_rel, std::abs(e_print - o_print) / std::abs(o_print));
    }
    os << "  " << fmt("%.2e", ev.residual) << "\n";
  }
  if (with_oracle)
    os << "# max relative error vs oracle: " << fmt("%.3e", max_rel) << "\n";

  if (csv_path) {
    std::ofstream csv(*csv_path);
    if (!csv) throw std::runtime_error("cannot open CSV file '" + *csv_path + "'");
    csv << "index,energy";
    if (with_oracle) csv << ",exact";
    csv << ",residual\n";
    for (std::size_t i = 0; i < res.levels.size(); ++i) {
      csv << res.levels[i].index << "," << num9(res.levels[i].energy);
      if (with_oracle && i < res.oracle_levels.size())
        csv << "," << num9(res.oracle_levels[i]);
      csv << "," << fmt("%.2e", res.levels[i].residual) << "\n";
    }
  }
  return 0;
}

int run_scan(const CommonArgs& args, const std::string& parity_name,
             const std::optional<std::string>& out_path,
             std::optional<double> trace_at,
             const std::optional<std::string>& trace_out) {
  ResolvedRun run = resolve_common(args);
  const SpectrumPreset& p = run.preset;

  SpectrumPreset effective = p;
  if (run.overrides.emin) effective.window.lo = *run.overrides.emin;
  if (run.overrides.emax) effective.window.hi = *run.overrides.emax;
  if (run.overrides.grid_points) effective.grid_points = *run.overrides.grid_points;
  if (run.overrides.x0) effective.problem.x0 = *run.overrides.x0;
  if (run.overrides.step) effective.march.step = *run.overrides.step;
  if (run.overrides.max_extent) effective.march.max_extent = *run.overrides.max_extent;
  if (run.overrides.mass_two_mu) {
    effective.problem.mass =
        MassConvention{run.overrides.mass_hbar.value_or(1.0), *run.overrides.mass_two_mu};
    effective.mass_required = false;
  }
  if (effective.mass_required) throw MissingFieldError("mass");

  ProblemSpec prob = effective.problem;
  if (prob.symmetry_center) {
    const Parity parity = parity_name == "odd" ? Parity::odd : Parity::even;
    prob = half_problem(prob, parity);
  }

  if (trace_at) {
    // Per-step canonical values at one energy, for diagnostics.
    OutputSink sink(trace_out);
    std::ostream& os = *sink.os;
    os << "# preset: " << effective.name << "  E = " << num9(*trace_at) << "\n";
    os << "# x  alpha  alpha_p  beta  beta_p (left march, then right march)\n";
    const double c = prob.mass.coefficient();
    const PotentialSpec spec = prob.potential;
    const double lterm =
        prob.radial ? static_cast<double>(prob.l) * (prob.l + 1) : 0.0;
    PotentialFn veff = [spec, c, lterm](double x) {
      double v = c * evaluate(spec, x);
      if (lterm != 0.0) v += lterm / (x * x);
      return v;
    };
    std::vector<CanonicalState> trace;
    for (bool left : {true, false}) {
      MarchConfig mc = effective.march;
      mc.direction = left ? Direction::toward_left : Direction::toward_right;
      const BoundaryCondition& bc = left ? prob.left : prob.right;
      march_with_trace(c * *trace_at, veff, prob.x0, bc.location, bc.ratio_kind(),
                       mc, trace);
      for (const auto& s : trace)
        os << num9(s.x) << " " << num9(s.alpha) << " " << num9(s.alpha_p) << " "
           << num9(s.beta) << " " << num9(s.beta_p) << "\n";
      os << "\n";
    }
    return 0;
  }

  const auto grid = preset_grid(effective, {});
  const auto samples = scan(prob, grid, effective.march, 0);

  OutputSink sink(out_path);
  std::ostream& os = *sink.os;
  os << "# preset: " << effective.name << "\n";
  os << "# eigenvalue function samples: E  F(E); pole rows blank\n";
  os << "# window [" << num9(effective.window.lo) << ", "
     << num9(effective.window.hi) << "], " << samples.size() << " points\n";
  for (const auto& s : samples) {
    if (s.is_pole)
      os << "\n";
    else
      os << num9(s.energy) << " " << num9(s.f) << "\n";
  }
  return 0;
}

int run_bands(const std::string& preset_name, std::optional<double> a,
              std::optional<double> g, std::optional<double> x0, int n_bands,
              int k_points, const std::optional<std::string>& out_path,
              const std::optional<std::string>& oracle_path) {
  BandPreset preset;
  if (!preset_name.empty()) {
    preset = make_band_preset(preset_name);
  } else {
    if (!a || !g || !x0)
      throw ConfigError(0, "a", "bands needs --preset or all of --a --g --x0");
    preset.name = "custom-comb";
    preset.description = "delta comb from flags";
    preset.problem.spacing = *a;
    preset.problem.strength = *g;
    preset.problem.x0 = *x0;
    preset.n_bands = n_bands > 0 ? n_bands : 1;
  }
  if (n_bands > 0) preset.n_bands = n_bands;
  if (k_points > 0) preset.k_points = k_points;

  const auto k_grid = default_k_grid(preset.problem.spacing, preset.k_points);
  const BandStructure bs =
      compute_bands(preset.problem, preset.n_bands, k_grid, preset.march,
                    preset.policy, 0);

  OutputSink sink(out_path);
  std::ostream& os = *sink.os;
  os << "# " << preset.name << ": a = " << num9(preset.problem.spacing)
     << ", g = " << num9(preset.problem.strength)
     << ", x0 = " << num9(preset.problem.x0) << "\n";
  os << "# k";
  for (int n = 1; n <= preset.n_bands; ++n) os << "  E" << n;
  os << "\n";
  for (const auto& pt : bs.points) {
    os << num9(pt.k);
    for (double e : pt.energies) os << " " << num9(e);
    os << "\n";
  }

  if (oracle_path) {
    std::ofstream of(*oracle_path);
    if (!of) throw std::runtime_error("cannot open oracle file '" + *oracle_path + "'");
    of << "# analytic dispersion for overlay, same columns\n";
    for (const auto& pt : bs.points) {
      const auto exact = oracles::delta_comb_exact(
          preset.problem.spacing, preset.problem.strength, pt.k, preset.n_bands,
          preset.problem.mass);
      of << num9(pt.k);
      for (double e : exact) of << " " << num9(e);
      of << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Canonical-function-method Schrodinger eigenvalue solver"};
  app.require_subcommand(1);

  CommonArgs solve_args;
  bool with_oracle = false;
  std::optional<std::string> csv_path, solve_out;
  CLI::App* solve_cmd = app.add_subcommand("solve", "eigenvalue table for a problem");
  add_common(solve_cmd, solve_args);
  solve_cmd->add_flag("--oracle", with_oracle, "print the reference column");
  solve_cmd->add_option("--csv", csv_path, "also write CSV to this path");
  solve_cmd->add_option("--out", solve_out, "output path (default stdout)");

  CommonArgs scan_args;
  std::string parity = "even";
  std::optional<std::string> scan_out, trace_out;
  std::optional<double> trace_at;
  CLI::App* scan_cmd = app.add_subcommand("scan", "two-column (E, F) plot data");
  add_common(scan_cmd, scan_args);
  scan_cmd->add_option("--parity", parity, "even|odd family for symmetric problems")
      ->check(CLI::IsMember({"even", "odd"}));
  scan_cmd->add_option("--out", scan_out, "output path (default stdout)");
  scan_cmd->add_option("--trace-at", trace_at,
                       "dump per-step canonical values at this energy instead");
  scan_cmd->add_option("--trace-out", trace_out, "trace output path");

  std::string band_preset;
  std::optional<double> band_a, band_g, band_x0;
  int band_n = 0, band_k = 0;
  std::optional<std::string> band_out, band_oracle_out;
  CLI::App* bands_cmd = app.add_subcommand("bands", "delta-comb band structure");
  bands_cmd->add_option("--preset", band_preset, "kp-1band | kp-3band | kp-5band");
  bands_cmd->add_option("--a", band_a, "lattice parameter");
  bands_cmd->add_option("--g", band_g, "delta strength");
  bands_cmd->add_option("--x0", band_x0, "anchor inside (0, a)");
  bands_cmd->add_option("--nbands", band_n, "number of bands");
  bands_cmd->add_option("--kpoints", band_k, "k grid size (default 101)");
  bands_cmd->add_option("--out", band_out, "output path (default stdout)");
  bands_cmd->add_option("--oracle-out", band_oracle_out,
                        "companion analytic overlay file");

  double cu_value = 0.0;
  std::string cu_from, cu_to;
  CLI::App* cu_cmd = app.add_subcommand("convert-units", "energy unit conversion");
  cu_cmd->add_option("value", cu_value)->required();
  cu_cmd->add_option("from", cu_from)->required();
  cu_cmd->add_option("to", cu_to)->required();

  CLI::App* list_cmd = app.add_subcommand("list-presets", "available presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (solve_cmd->parsed()) return run_solve(solve_args, with_oracle, csv_path, solve_out);
    if (scan_cmd->parsed())
      return run_scan(scan_args, parity, scan_out, trace_at, trace_out);
    if (bands_cmd->parsed())
      return run_bands(band_preset, band_a, band_g, band_x0, band_n, band_k,
                       band_out, band_oracle_out);
    if (cu_cmd->parsed()) {
      const double out =
          convert_energy(cu_value, parse_energy_unit(cu_from), parse_energy_unit(cu_to));
      std::printf("%.6g\n", out);
      return 0;
    }
    if (list_cmd->parsed()) {
      for (const auto& name : spectrum_preset_names()) {
        const auto p = make_spectrum_preset(name);
        std::printf("%-18s %s\n", name.c_str(), p.description.c_str());
      }
      for (const auto& name : band_preset_names()) {
        const auto p = make_band_preset(name);
        std::printf("%-18s %s\n", name.c_str(), p.description.c_str());
      }
      return 0;
    }
  } catch (const UnknownPresetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnknownPreset;
  } catch (const MissingFieldError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitUsage;
}
