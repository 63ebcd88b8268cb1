#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cfm/bands.hpp"
#include "cfm/eigensolver.hpp"
#include "cfm/oracles.hpp"

namespace cfm {

enum class GridKind { linear, log_abs };

enum class OracleKind {
  none,
  infinite_well,
  finite_well,
  harmonic,
  hydrogen,
  morse,
  numerov,
};

/// A ready-to-run spectrum problem with its window, grid, marching controls
/// and the reference oracle for side-by-side tables.
struct SpectrumPreset {
  std::string name;
  std::string description;  // which benchmark this reproduces
  EnergyUnit native_unit = EnergyUnit::hartree;
  ProblemSpec problem;
  MarchConfig march;
  Window window;
  GridKind grid_kind = GridKind::linear;
  int grid_points = 2000;
  RootPolicy roots;
  int index_base = 0;
  bool mass_required = false;  // no physical reduced mass is built in
  OracleKind oracle = OracleKind::none;
  double oracle_x_lo = 0.0;  // shooting domain for the Numerov oracle
  double oracle_x_hi = 0.0;
};

struct BandPreset {
  std::string name;
  std::string description;
  EnergyUnit native_unit = EnergyUnit::hartree;
  BlochProblem problem;
  MarchConfig march;
  BandPolicy policy;
  int n_bands = 1;
  int k_points = 101;
};

struct UnknownPresetError : std::runtime_error {
  explicit UnknownPresetError(const std::string& name)
      : std::runtime_error("unknown preset '" + name + "'"), preset(name) {}
  std::string preset;
};

/// Thrown when a run needs a value the preset deliberately does not carry
/// (the asymmetric double-well preset has no built-in reduced mass).
struct MissingFieldError : std::runtime_error {
  explicit MissingFieldError(const std::string& field_)
      : std::runtime_error("missing mandatory field '" + field_ + "'"),
        field(field_) {}
  std::string field;
};

std::vector<std::string> spectrum_preset_names();
std::vector<std::string> band_preset_names();
SpectrumPreset make_spectrum_preset(const std::string& name);
BandPreset make_band_preset(const std::string& name);

/// User-adjustable knobs on top of a preset.
struct SolveOverrides {
  std::optional<double> emin;
  std::optional<double> emax;
  std::optional<int> grid_points;
  std::optional<double> refine_tol;
  std::optional<double> x0;
  std::optional<double> step;
  std::optional<double> max_extent;
  std::optional<double> saturation_tol;
  std::optional<double> mass_two_mu;  // 2mu with hbar = 1 unless hbar also set
  std::optional<double> mass_hbar;
  std::optional<int> l;
  int threads = 0;  // 0 = resolve from CFM_THREADS / hardware
};

struct SpectrumResult {
  std::string preset_name;
  EnergyUnit unit = EnergyUnit::hartree;
  std::vector<Eigenvalue> levels;      // indices follow the preset convention
  std::vector<double> oracle_levels;   // aligned with levels; empty if not requested
};

/// Applies overrides, runs the parity split when the preset is symmetric and
/// a plain scan + root location otherwise, and attaches the oracle column on
/// request.
SpectrumResult solve_spectrum(const SpectrumPreset& preset,
                              const SolveOverrides& overrides = {},
                              bool with_oracle = false);

/// The preset's problem with the parity right-boundary substituted at the
/// symmetry center (for scans of one parity family).
ProblemSpec half_problem(const ProblemSpec& prob, Parity parity);

/// The scan grid a preset would use (after window/point overrides).
std::vector<double> preset_grid(const SpectrumPreset& preset,
                                const SolveOverrides& overrides = {});

/// Oracle spectrum for a resolved problem, lowest `count` levels.
std::vector<double> oracle_levels(const SpectrumPreset& preset,
                                  const ProblemSpec& resolved, Window window,
                                  int count);

}  // namespace cfm
