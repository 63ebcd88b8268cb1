#include "cfm/presets.hpp"

#include <algorithm>
#include <cmath>

namespace cfm {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Half-widths chosen so the top tabulated level sits at 1 a.u.: 25 pi/sqrt2
// for the hard well (E_25 = 1) and 24 pi/sqrt2 for the V0 = 1 soft well
// (largest index 25, 24 bound levels).
const double kWellWidth25 = 25.0 * kPi / std::sqrt(2.0);
const double kOmega0 = 2.0 / 51.0;  // oscillator with E_25 = 1

SpectrumPreset infinite_well_25() {
  SpectrumPreset p;
  p.name = "infinite-well-25";
  p.description = "hard-wall square well sized so level 25 sits at 1 a.u.";
  p.native_unit = EnergyUnit::hartree;
  const double a = kWellWidth25;
  p.problem.potential = InfiniteWell{a};
  p.problem.mass = MassConvention{1.0, 2.0};
  p.problem.symmetry_center = 0.5 * a;
  p.problem.left = BoundaryCondition{BoundaryKind::null_value, Boundary::at(0.0)};
  p.problem.right =
      BoundaryCondition{BoundaryKind::null_value, Boundary::at(0.5 * a)};
  // 0.37 of the half width keeps the anchor away from every node of the
  // first 25 eigenfunctions; simple fractions (0.3, 0.5, 0.7) sit on nodes
  // of some level and mask it.
  p.problem.x0 = 0.37 * (0.5 * a);
  p.march.step = 5e-3;
  p.window = Window{0.0, 1.05};
  p.grid_points = 2000;
  p.roots.refine_tol = 1e-10;
  p.index_base = 1;
  p.oracle = OracleKind::infinite_well;
  return p;
}

SpectrumPreset finite_well_24() {
  SpectrumPreset p;
  p.name = "finite-well-24";
  p.description = "finite square well, V0 = 1 a.u., width from a 25-index count";
  p.native_unit = EnergyUnit::hartree;
  const MassConvention mass{1.0, 2.0};
  const double a = well_width_from_count(25, 1.0, mass);
  p.problem.potential = FiniteWell{a, 1.0};
  p.problem.mass = mass;
  p.problem.symmetry_center = 0.5 * a;
  p.problem.left = BoundaryCondition{BoundaryKind::null_value, Boundary::infinity()};
  p.problem.right =
      BoundaryCondition{BoundaryKind::null_value, Boundary::at(0.5 * a)};
  p.problem.x0 = 0.37 * (0.5 * a);
  p.march.step = 5e-3;
  p.march.max_extent = 800.0;
  p.march.breakpoints = {0.0, a};  // potential steps at the well edges
  // The top half percent of (0, V0) is left out: marching there cannot
  // saturate because the decay constant vanishes at the continuum edge.
  p.window = Window{0.0, 0.995};
  p.grid_points = 2000;
  p.roots.refine_tol = 1e-10;
  p.index_base = 1;
  p.oracle = OracleKind::finite_well;
  return p;
}

SpectrumPreset harmonic_26() {
  SpectrumPreset p;
  p.name = "harmonic-26";
  p.description = "harmonic oscillator with level 25 at 1 a.u. (omega = 2/51)";
  p.native_unit = EnergyUnit::hartree;
  p.problem.potential = Harmonic{kOmega0 * kOmega0};
  p.problem.mass = MassConvention{1.0, 2.0};
  p.problem.symmetry_center = 0.0;
  p.problem.left = BoundaryCondition{BoundaryKind::null_value, Boundary::infinity()};
  p.problem.right = BoundaryCondition{BoundaryKind::null_value, Boundary::at(0.0)};
  p.problem.x0 = -1.0;
  p.march.step = 1e-2;
  p.march.max_extent = 200.0;
  p.window = Window{0.0, 1.02};
  p.grid_points = 2000;
  p.roots.refine_tol = 1e-10;
  p.index_base = 0;
  p.oracle = OracleKind::harmonic;
  return p;
}

SpectrumPreset dgw() {
  SpectrumPreset p;
  p.name = "dgw";
  p.description = "symmetric double Gaussian well, D = 12, Omega = 0.1, ra = 5";
  p.native_unit = EnergyUnit::hartree;
  p.problem.potential = DoubleGaussian{12.0, 0.1, 5.0};
  p.problem.mass = MassConvention{1.0, 2.0};
  p.problem.symmetry_center = 0.0;
  p.problem.left = BoundaryCondition{BoundaryKind::null_value, Boundary::infinity()};
  p.problem.right = BoundaryCondition{BoundaryKind::null_value, Boundary::at(0.0)};
  // Near the left minimum but off it: odd local excitations have a node at
  // the well center, which would collide with the anchor.
  p.problem.x0 = -4.8;
  p.march.step = 4e-3;
  p.march.max_extent = 260.0;
  p.window = Window{-12.2, -0.0025};
  p.grid_points = 2000;
  p.roots.refine_tol = 1e-10;
  p.index_base = 0;
  p.oracle = OracleKind::numerov;
  p.oracle_x_lo = -80.0;
  p.oracle_x_hi = 80.0;
  return p;
}

SpectrumPreset johnson_dwp() {
  SpectrumPreset p;
  p.name = "johnson-dwp";
  p.description =
      "asymmetric Morse + Gaussian double well (cm^-1, Angstrom units); "
      "requires an explicit mass";
  p.native_unit = EnergyUnit::inverse_centimeter;
  p.problem.potential = MorseGaussian{1e4, 1.54, 200.0, 31250.0, 1.5, 1.6};
  p.problem.left = BoundaryCondition{BoundaryKind::null_value, Boundary::infinity()};
  p.problem.right = BoundaryCondition{BoundaryKind::null_value, Boundary::infinity()};
  p.problem.x0 = 1.42;  // near the lower (inner) minimum
  p.march.step = 5e-4;
  p.march.max_extent = 60.0;
  p.window = Window{300.0, 27800.0};
  p.grid_points = 4200;
  p.roots.refine_tol = 1e-8;
  p.index_base = 0;
  p.mass_required = true;
  p.oracle = OracleKind::numerov;
  p.oracle_x_lo = 0.45;
  p.oracle_x_hi = 9.0;
  return p;
}

SpectrumPreset hydrogen() {
  SpectrumPreset p;
  p.name = "hydrogen";
  p.description = "radial Coulomb problem, l = 0, energies in Rydberg";
  p.native_unit = EnergyUnit::rydberg;
  p.problem.potential = Coulomb{1.0};
  p.problem.mass = MassConvention{1.0, 1.0};
  p.problem.radial = true;
  p.problem.l = 0;
  p.march.step = 1e-2;
  p.march.max_extent = 3000.0;
  p.march.r_min = 1e-7;
  p.problem.left =
      BoundaryCondition{BoundaryKind::null_value, Boundary::at(p.march.r_min)};
  p.problem.right = BoundaryCondition{BoundaryKind::null_value, Boundary::infinity()};
  p.problem.x0 = 1.0;
  p.window = Window{-1.21, -1.0 / 600.0};
  p.grid_kind = GridKind::log_abs;
  p.grid_points = 1400;
  p.roots.refine_tol = 1e-12;
  p.index_base = 1;
  p.oracle = OracleKind::hydrogen;
  return p;
}

SpectrumPreset morse() {
  SpectrumPreset p;
  p.name = "morse";
  p.description = "Morse well, D = 188.4355, a = 0.711248, re = 1.9975 (2mu = 1)";
  p.native_unit = EnergyUnit::atomic_unit;
  p.problem.potential = Morse{188.4355, 0.711248, 1.9975};
  p.problem.mass = MassConvention{1.0, 1.0};
  p.problem.radial = true;
  p.problem.l = 0;
  p.march.step = 1e-3;
  p.march.max_extent = 200.0;
  p.march.r_min = 1e-6;
  p.problem.left =
      BoundaryCondition{BoundaryKind::null_value, Boundary::at(p.march.r_min)};
  p.problem.right = BoundaryCondition{BoundaryKind::null_value, Boundary::infinity()};
  p.problem.x0 = 1.9975;
  p.window = Window{-188.4, -0.05};
  p.grid_kind = GridKind::log_abs;
  p.grid_points = 1400;
  p.roots.refine_tol = 1e-10;
  p.index_base = 1;
  p.oracle = OracleKind::morse;
  return p;
}

BandPreset kp_preset(int n_bands) {
  BandPreset p;
  const double widths[] = {2.22, 6.66, 11.12};
  const int idx = n_bands == 1 ? 0 : (n_bands == 3 ? 1 : 2);
  p.name = "kp-" + std::to_string(n_bands) + "band";
  p.description = "delta-comb lattice, g = 1, sized for " +
                  std::to_string(n_bands) + " band(s) below 1 a.u.";
  p.native_unit = EnergyUnit::hartree;
  p.problem.spacing = widths[idx];
  p.problem.strength = 1.0;
  p.problem.x0 = 1.0;
  p.problem.mass = MassConvention{1.0, 2.0};
  p.march.step = 5e-3;
  p.n_bands = n_bands;
  p.k_points = 101;
  return p;
}

}  // namespace

std::vector<std::string> spectrum_preset_names() {
  return {"infinite-well-25", "finite-well-24", "harmonic-26", "dgw",
          "johnson-dwp",      "hydrogen",       "morse"};
}

std::vector<std::string> band_preset_names() {
  return {"kp-1band", "kp-3band", "kp-5band"};
}

SpectrumPreset make_spectrum_preset(const std::string& name) {
  if (name == "infinite-well-25") return infinite_well_25();
  if (name == "finite-well-24") return finite_well_24();
  if (name == "harmonic-26") return harmonic_26();
  if (name == "dgw") return dgw();
  if (name == "johnson-dwp") return johnson_dwp();
  if (name == "hydrogen") return hydrogen();
  if (name == "morse") return morse();
  throw UnknownPresetError(name);
}

BandPreset make_band_preset(const std::string& name) {
  if (name == "kp-1band") return kp_preset(1);
  if (name == "kp-3band") return kp_preset(3);
  if (name == "kp-5band") return kp_preset(5);
  throw UnknownPresetError(name);
}

ProblemSpec half_problem(const ProblemSpec& prob, Parity parity) {
  if (!prob.symmetry_center)
    throw std::invalid_argument("half_problem: problem has no symmetry center");
  ProblemSpec half = prob;
  half.right = BoundaryCondition{parity == Parity::odd
                                     ? BoundaryKind::null_value
                                     : BoundaryKind::null_derivative,
                                 Boundary::at(*prob.symmetry_center)};
  half.symmetry_center.reset();
  return half;
}

std::vector<double> preset_grid(const SpectrumPreset& preset,
                                const SolveOverrides& overrides) {
  const double lo = overrides.emin.value_or(preset.window.lo);
  const double hi = overrides.emax.value_or(preset.window.hi);
  const int points = overrides.grid_points.value_or(preset.grid_points);
  return preset.grid_kind == GridKind::log_abs ? log_abs_grid(lo, hi, points)
                                               : linear_grid(lo, hi, points);
}

namespace {

SpectrumPreset apply_overrides(const SpectrumPreset& preset,
                               const SolveOverrides& o) {
  SpectrumPreset p = preset;
  if (o.emin) p.window.lo = *o.emin;
  if (o.emax) p.window.hi = *o.emax;
  if (o.grid_points) p.grid_points = *o.grid_points;
  if (o.refine_tol) p.roots.refine_tol = *o.refine_tol;
  if (o.x0) p.problem.x0 = *o.x0;
  if (o.step) p.march.step = *o.step;
  if (o.max_extent) p.march.max_extent = *o.max_extent;
  if (o.saturation_tol) p.march.saturation_tol = *o.saturation_tol;
  if (o.l) p.problem.l = *o.l;
  if (o.mass_two_mu) {
    p.problem.mass.two_mu = *o.mass_two_mu;
    p.problem.mass.hbar = o.mass_hbar.value_or(1.0);
    p.mass_required = false;
  } else if (o.mass_hbar) {
    p.problem.mass.hbar = *o.mass_hbar;
  }
  return p;
}

}  // namespace

std::vector<double> oracle_levels(const SpectrumPreset& preset,
                                  const ProblemSpec& resolved, Window window,
                                  int count) {
  if (count <= 0) return {};
  const std::size_t n = static_cast<std::size_t>(count);
  switch (preset.oracle) {
    case OracleKind::none:
      return {};
    case OracleKind::infinite_well: {
      const auto& w = std::get<InfiniteWell>(resolved.potential);
      return oracles::infinite_well_exact(w.width, count, resolved.mass);
    }
    case OracleKind::finite_well: {
      const auto& w = std::get<FiniteWell>(resolved.potential);
      auto levels = oracles::finite_well_exact(w.width, w.depth, resolved.mass);
      if (levels.size() > n) levels.resize(n);
      return levels;
    }
    case OracleKind::harmonic: {
      const auto& h = std::get<Harmonic>(resolved.potential);
      const double omega0 =
          resolved.mass.hbar * std::sqrt(2.0 * h.k_elastic / resolved.mass.two_mu);
      return oracles::harmonic_exact(omega0, count - 1);
    }
    case OracleKind::hydrogen:
      return oracles::hydrogen_exact(count);
    case OracleKind::morse: {
      const auto& m = std::get<Morse>(resolved.potential);
      auto out = oracles::morse_exact(m.depth, m.steepness, m.equilibrium,
                                      resolved.mass);
      if (out.levels.size() > n) out.levels.resize(n);
      return out.levels;
    }
    case OracleKind::numerov: {
      const PotentialSpec spec = resolved.potential;
      return oracles::numerov_reference(
          [spec](double x) { return evaluate(spec, x); }, preset.oracle_x_lo,
          preset.oracle_x_hi, resolved.mass, count, window);
    }
  }
  return {};
}

SpectrumResult solve_spectrum(const SpectrumPreset& preset,
                              const SolveOverrides& overrides, bool with_oracle) {
  const SpectrumPreset p = apply_overrides(preset, overrides);
  if (p.mass_required) throw MissingFieldError("mass");
  validate(p.problem.potential);
  validate(p.problem.mass);

  SpectrumResult result;
  result.preset_name = p.name;
  result.unit = p.native_unit;

  if (p.problem.symmetry_center) {
    result.levels = solve_parity(p.problem, p.march, p.window, p.grid_points,
                                 p.roots, overrides.threads);
  } else {
    const auto grid = preset_grid(p, {});
    const auto samples = scan(p.problem, grid, p.march, overrides.threads);
    result.levels = locate_roots(samples, p.problem, p.march, p.roots);
  }
  for (auto& ev : result.levels) ev.index += p.index_base;

  if (with_oracle) {
    result.oracle_levels = oracle_levels(
        p, p.problem, p.window, static_cast<int>(result.levels.size()));
  }
  return result;
}

}  // namespace cfm
