#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace cfm {

// One struct per potential family. Parameters follow the conventional
// letters used for each model; all energies/lengths are in the family's
// native unit system.

/// V = 0 on (0, a) with hard walls at 0 and a. The walls are domain
/// boundaries, never sampled values.
struct InfiniteWell {
  double width;  // a
};

/// V = 0 on (0, a), V = depth outside.
struct FiniteWell {
  double width;  // a
  double depth;  // V0
};

/// V = k x^2 / 2.
struct Harmonic {
  double k_elastic;
};

/// Symmetric double well: V = -D [exp(-Omega (x-ra)^2) + exp(-Omega (x+ra)^2)].
struct DoubleGaussian {
  double depth;      // D
  double falloff;    // Omega
  double separation; // ra (each minimum sits near +-ra)
};

/// Asymmetric double well: V = D [1 - exp(-B (x-ra))]^2 + A exp(-C (x-rb)^2).
struct MorseGaussian {
  double gauss_height;     // A
  double morse_steepness;  // B
  double gauss_falloff;    // C
  double morse_depth;      // D
  double morse_center;     // ra
  double gauss_center;     // rb
};

/// Radial Coulomb attraction V = -2 Z / r, stated in the Rydberg radial
/// convention (hbar = 1, 2mu = 1, energies in Ry, lengths in bohr).
struct Coulomb {
  double charge;  // Z
};

/// V = D [1 - exp(-a (r - re))]^2 - D.
struct Morse {
  double depth;        // D
  double steepness;    // a
  double equilibrium;  // re
};

/// Periodic array of delta barriers, sum_n g delta(x - n a). Represented
/// symbolically: evaluation between sites returns 0, the barrier itself only
/// enters through the derivative jump condition in the band solver.
struct DeltaComb {
  double spacing;   // a
  double strength;  // g
};

/// Piecewise-linear interpolation of tabulated (x, V) samples, loadable from
/// config files. Evaluation outside the tabulated range is a domain error.
struct Tabulated {
  std::vector<double> x;
  std::vector<double> v;
};

using PotentialSpec =
    std::variant<InfiniteWell, FiniteWell, Harmonic, DoubleGaussian,
                 MorseGaussian, Coulomb, Morse, DeltaComb, Tabulated>;

/// Pointwise evaluation V(x) in the family's native units. Throws
/// std::domain_error at singular points (well walls, delta sites) and outside
/// a tabulated range.
double evaluate(const PotentialSpec& spec, double x);

/// V(r) + l(l+1)/r^2 in the hbar = 1, 2mu = 1 radial convention. r must be
/// strictly positive.
double effective_radial(const PotentialSpec& spec, int l, double r);

/// Center of symmetry, for the families that have one (wells about a/2,
/// harmonic and double Gaussian about 0).
std::optional<double> symmetry_center(const PotentialSpec& spec);

/// Checks the family's parameter invariants (positive widths and ranges,
/// nonnegative falloffs). Throws std::invalid_argument on violation.
void validate(const PotentialSpec& spec);

/// Family tag as used in configs and on the CLI ("morse", "dgw", ...).
std::string family_name(const PotentialSpec& spec);

}  // namespace cfm
