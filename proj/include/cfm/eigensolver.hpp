#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "cfm/potentials.hpp"
#include "cfm/propagator.hpp"
#include "cfm/units.hpp"

namespace cfm {

enum class BoundaryKind { null_value, null_derivative };

/// One side's boundary data: which quantity is nulled and where. A
/// saturated-infinity side gets its ratio from the marching saturation, a
/// finite side from the exact landing point.
struct BoundaryCondition {
  BoundaryKind condition = BoundaryKind::null_value;
  Boundary location = Boundary::infinity();

  RatioKind ratio_kind() const {
    return condition == BoundaryKind::null_value ? RatioKind::value
                                                 : RatioKind::derivative;
  }
};

enum class Parity { none, even, odd };

/// Full description of one eigenvalue problem: the potential, the anchor x0
/// strictly between the boundaries, one condition per side, the angular
/// momentum for radial problems, and the mass convention.
struct ProblemSpec {
  PotentialSpec potential;
  double x0 = 0.0;
  BoundaryCondition left;
  BoundaryCondition right;
  bool radial = false;
  int l = 0;
  MassConvention mass;
  // Set for potentials symmetric about this point; enables the parity split.
  std::optional<double> symmetry_center;
};

struct RatioResult {
  double l_minus = 0.0;
  double l_plus = 0.0;
  bool pole = false;
  double wronskian_drift = 0.0;
  double x_stop_left = 0.0;
  double x_stop_right = 0.0;
};

/// One (E, F(E)) scan sample. is_pole marks beta-vanishing endpoints and
/// |F| beyond the pole threshold; such samples never seed root brackets.
struct EigenSample {
  double energy = 0.0;
  double f = 0.0;
  bool is_pole = false;
};

/// One converged root of F(E).
struct Eigenvalue {
  int index = 0;          // level number, assigned by the caller's convention
  double energy = 0.0;
  double residual = 0.0;  // |F| at the accepted root
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  Parity parity = Parity::none;
};

/// Root acceptance and pole rejection controls.
struct RootPolicy {
  double refine_tol = 1e-10;      // final bracket width
  double accept_residual = 1e-6;  // |F| at an accepted root
  double pole_threshold = 1e6;    // |F| above this is a pole
  int max_bisections = 80;
};

struct Window {
  double lo = 0.0;
  double hi = 0.0;
};

/// A left-infinite march failed to saturate within max_extent.
struct SaturationError : std::runtime_error {
  SaturationError(double x, double extent)
      : std::runtime_error("march did not saturate; raise max_extent"),
        x_stop(x),
        max_extent(extent) {}
  double x_stop;
  double max_extent;
};

/// A sign-change bracket refused to behave as either root or pole.
struct ClassificationError : std::runtime_error {
  ClassificationError(double lo, double hi)
      : std::runtime_error("bracket is neither a shrinking root nor a growing pole"),
        bracket_lo(lo),
        bracket_hi(hi) {}
  double bracket_lo;
  double bracket_hi;
};

/// Boundary ratios l-(E) and l+(E) from the left and right marches.
/// Throws SaturationError when an infinite side fails to saturate.
RatioResult ratios(double energy, const ProblemSpec& prob, const MarchConfig& cfg);

/// F(E) = l+(E) - l-(E) with the pole flag set per RootPolicy defaults.
EigenSample eigenvalue_function(double energy, const ProblemSpec& prob,
                                const MarchConfig& cfg,
                                double pole_threshold = 1e6);

/// Evaluates F over a strictly increasing grid (>= 2 points). Grid points are
/// independent; with threads != 1 they are evaluated concurrently and the
/// output is identical to the sequential result.
std::vector<EigenSample> scan(const ProblemSpec& prob,
                              std::span<const double> grid,
                              const MarchConfig& cfg, int threads = 1);

/// Classifies every sign change between adjacent non-pole samples: brackets
/// whose |F| shrinks under bisection become eigenvalues, tan-like jumps whose
/// |F| grows are discarded. Returned roots are sorted with bracket width
/// <= policy.refine_tol and indices counting from 0.
std::vector<Eigenvalue> locate_roots(const std::vector<EigenSample>& samples,
                                     const ProblemSpec& prob,
                                     const MarchConfig& cfg,
                                     const RootPolicy& policy);

/// Parity split for symmetric problems: solves the half problem with
/// NullValue (odd) then NullDerivative (even) at the symmetry center and
/// merges the two lists by energy, indices counting from 0.
std::vector<Eigenvalue> solve_parity(const ProblemSpec& prob,
                                     const MarchConfig& cfg, Window window,
                                     int grid_points, const RootPolicy& policy,
                                     int threads = 1);

/// Largest bound-level index of the finite well, 1 + (a/pi) sqrt(2m V0)/hbar
/// rounded down (exact integers kept, so the inverse below round-trips).
int count_levels_finite_well(double width, double depth, const MassConvention& mass);

/// Well width giving n_max levels: a = pi hbar (n_max - 1) / sqrt(2m V0).
double well_width_from_count(int n_max, double depth, const MassConvention& mass);

/// Uniformly spaced grid over (lo, hi), endpoints excluded.
std::vector<double> linear_grid(double lo, double hi, int points);

/// Grid with uniform spacing in ln|E| over a strictly negative window,
/// dense toward the upper (small |E|) end. Returned in increasing E order.
std::vector<double> log_abs_grid(double lo, double hi, int points);

}  // namespace cfm
