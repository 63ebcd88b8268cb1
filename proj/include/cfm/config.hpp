#pragma once

#include <map>
#include <optional>
#include <string>

#include "cfm/presets.hpp"
#include "cfm/units.hpp"

namespace cfm {

enum class OutputFormat { text, csv, plotdata };

/// Parsed run description: either a preset name or a custom problem block,
/// plus window, march and output settings. All energies and lengths were
/// already converted to the problem's native units during parsing.
struct RunConfig {
  std::optional<std::string> preset;

  // custom problem block
  std::optional<std::string> potential_family;
  std::map<std::string, double> potential_params;
  std::optional<std::string> table_file;  // tabulated potential samples
  EnergyUnit native_unit = EnergyUnit::hartree;
  std::optional<bool> radial;
  std::optional<int> l;
  std::optional<double> x0;
  std::optional<double> mass_two_mu;
  std::optional<double> mass_hbar;

  // solve window / grids
  std::optional<double> emin;
  std::optional<double> emax;
  std::optional<int> grid_points;
  std::optional<double> refine_tol;

  // march
  std::optional<double> step;
  std::optional<double> saturation_tol;
  std::optional<double> max_extent;
  std::optional<double> r_min;

  // output
  OutputFormat format = OutputFormat::text;
  std::optional<std::string> out_path;
  bool oracle = false;
};

struct ConfigError : std::runtime_error {
  ConfigError(int line_, const std::string& field_, const std::string& what_)
      : std::runtime_error("config line " + std::to_string(line_) + ": " + what_),
        line(line_),
        field(field_) {}
  int line;
  std::string field;
};

/// Line-oriented parser: '#' comments, [problem]/[march]/[output] sections,
/// key = value pairs. Unknown sections or keys are rejected with the line
/// number; energy values need a unit suffix ("emax = -0.05 au"), lengths a
/// bohr/angstrom suffix.
RunConfig parse_config(const std::string& text);

/// Canonical text form; parse_config(serialize_config(c)) reproduces c.
std::string serialize_config(const RunConfig& config);

struct ResolvedRun {
  SpectrumPreset preset;  // preset or a synthesized custom problem
  SolveOverrides overrides;
};

/// Binds a RunConfig to a concrete problem: looks up the preset or builds the
/// custom potential, and folds window/march settings into overrides. Throws
/// ConfigError for missing mandatory fields (notably `mass`).
ResolvedRun resolve_run(const RunConfig& config);

}  // namespace cfm
