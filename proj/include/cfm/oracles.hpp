#pragma once

#include <functional>
#include <vector>

#include "cfm/eigensolver.hpp"
#include "cfm/units.hpp"

namespace cfm {
// Closed-form and brute-force reference spectra used by the acceptance
// tests. Everything in here is either a printed formula or single-variable
// bisection; none of it touches the canonical-function marching path.
namespace oracles {

/// E_n = (hbar^2/2m)(n pi / a)^2, n = 1..n_max.
std::vector<double> infinite_well_exact(double width, int n_max,
                                        const MassConvention& mass);

/// All bound levels of the finite well from the transcendental relation
/// asin(hbar k / sqrt(2 m V0)) = (n pi - k a)/2, one monotone branch per n.
std::vector<double> finite_well_exact(double width, double depth,
                                      const MassConvention& mass);

/// E_n = hbar omega0 (n + 1/2), n = 0..n_max (hbar = 1).
std::vector<double> harmonic_exact(double omega0, int n_max);

/// E_n = -1/n^2 Ry, n = 1..n_max.
std::vector<double> hydrogen_exact(int n_max);

struct MorseLevels {
  std::vector<double> levels;
  int count = 0;
};

/// Analytic Morse levels E_n = -(a^2 hbar^2 / 2mu)(sqrt(2 mu D)/(a hbar) - n - 1/2)^2
/// for all n with E_n < 0, plus the level count.
MorseLevels morse_exact(double depth, double steepness, double equilibrium,
                        const MassConvention& mass);

/// Band energies of the delta comb at Bloch wavevector k from
/// (m g / kappa hbar^2) sin(kappa a) + cos(kappa a) = cos(k a),
/// bisected on one branch of kappa per band.
std::vector<double> delta_comb_exact(double spacing, double strength, double k,
                                     int n_bands, const MassConvention& mass);

/// Sub-barrier band energies of the piecewise-constant periodic potential from
/// ((Q^2-kappa^2)/(2 Q kappa)) sinh(Q b) sin(kappa a) + cosh(Q b) cos(kappa a)
///   = cos(k (a+b)), scanned and bisected in E.
std::vector<double> finite_barrier_kp_exact(double well_width, double barrier_width,
                                            double barrier_height, double k,
                                            const MassConvention& mass);

/// Comb strength equivalent to a thin tall barrier: g = V0 * b
/// (from g = Q^2 b hbar^2 / 2m with E << V0). Conversion helper only;
/// the band solver always works with the comb directly.
double delta_strength_from_barrier(double barrier_height, double barrier_width);

struct NumerovOptions {
  int grid_points = 200000;
  double rel_tol = 1e-11;
};

/// Numerov shooting reference on a hard-wall domain [x_lo, x_hi]: eigenvalues
/// are located by bisecting on the interior node count, which jumps by one at
/// every level. Returns the lowest n_levels in the window; throws if the
/// window holds fewer.
std::vector<double> numerov_reference(const std::function<double(double)>& potential,
                                      double x_lo, double x_hi,
                                      const MassConvention& mass, int n_levels,
                                      Window window, NumerovOptions opts = {});

/// Interior node count of the Numerov solution shot from x_lo at energy E.
int numerov_node_count(const std::function<double(double)>& potential,
                       double x_lo, double x_hi, const MassConvention& mass,
                       double energy, int grid_points = 200000);

}  // namespace oracles
}  // namespace cfm
