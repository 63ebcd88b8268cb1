#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "cfm/propagator.hpp"
#include "cfm/units.hpp"

namespace cfm {

/// Delta-comb Bloch problem: V(x) = sum_n g delta(x - n a), solved on the
/// unit cell (0, a) with the derivative-jump condition at the lattice site
/// and Bloch periodicity closing the cell.
struct BlochProblem {
  double spacing = 1.0;   // a
  double strength = 1.0;  // g
  double x0 = 0.5;        // anchor, strictly inside (0, a)
  MassConvention mass{1.0, 2.0};
};

struct BandPoint {
  double k = 0.0;                 // Bloch wavevector in [0, pi/a]
  std::vector<double> energies;   // E_n(k), strictly increasing in n
};

struct BandStructure {
  BlochProblem problem;
  std::vector<BandPoint> points;
};

struct BlochRatios {
  std::complex<double> l_minus;
  std::complex<double> l_plus;
  bool pole = false;
};

/// Root handling for the complex residual: bisection on Re F with an
/// imaginary-part acceptance check, plus |F|^2 dip minimization as fallback.
struct BandPolicy {
  double refine_tol = 1e-11;
  double accept_residual = 1e-8;  // |F| at an accepted band energy
  double pole_threshold = 1e6;
  int max_bisections = 80;
  int scan_points_per_band = 260;
};

struct BandCountError : std::runtime_error {
  BandCountError(int found_, int wanted_, double k_)
      : std::runtime_error("band scan found " + std::to_string(found_) +
                           " of " + std::to_string(wanted_) +
                           " requested bands"),
        found(found_),
        wanted(wanted_),
        k(k_) {}
  int found;
  int wanted;
  double k;
};

/// Complex boundary ratios: l- from the derivative jump across the delta
/// site with Bloch phases, l+ from Bloch periodicity linking x = a back to
/// x = 0. The marched canonical values are real; all complexity enters
/// through the exp(+-ika) factors.
BlochRatios bloch_ratios(double energy, double k, const BlochProblem& prob,
                         const MarchConfig& cfg);

/// F(E) = l+(E) - l-(E); band energies are its real-E zeros.
std::complex<double> dispersion_residual(double energy, double k,
                                         const BlochProblem& prob,
                                         const MarchConfig& cfg);

/// The same dispersion as a single real function, S(E) + G T(E) - 2 cos(ka)
/// (the Bloch determinant with the Wronskian identities applied). Shares its
/// zeros with the residual but stays regular at zone-edge band states, where
/// the ratio denominators vanish; the band search bisects this form.
double dispersion_determinant(double energy, double k, const BlochProblem& prob,
                              const MarchConfig& cfg);

/// The n_bands lowest band energies at fixed k. Throws BandCountError when
/// the scan window does not hold the requested number of bands (too few is
/// reported, never padded).
std::vector<double> band_energies(double k, int n_bands, const BlochProblem& prob,
                                  const MarchConfig& cfg,
                                  const BandPolicy& policy = {});

/// Band energies over a k grid within [0, pi/a]; per-k solves are
/// independent and run concurrently.
BandStructure compute_bands(const BlochProblem& prob, int n_bands,
                            const std::vector<double>& k_grid,
                            const MarchConfig& cfg,
                            const BandPolicy& policy = {}, int threads = 1);

/// Uniform k grid over [0, pi/a] with `points` samples.
std::vector<double> default_k_grid(double spacing, int points = 101);

}  // namespace cfm
