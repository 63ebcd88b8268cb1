#pragma once

#include <string>
#include <string_view>

namespace cfm {

/// Energy units supported for I/O conversion. Solver arithmetic always stays
/// in a problem's native unit system; conversion happens at the boundaries.
enum class EnergyUnit {
  joule,
  electron_volt,
  hertz,
  inverse_centimeter,
  hartree,
  rydberg,
  atomic_unit,  // synonym for hartree
};

/// Houses hbar and 2*mu as dimensionless factors so each problem can state
/// its own convention (1-D problems use hbar=1, 2m_e=2; radial ones hbar=1,
/// 2mu=1). The marched equation is y'' = (2mu/hbar^2) (V - E) y.
struct MassConvention {
  double hbar = 1.0;
  double two_mu = 2.0;

  /// The factor 2mu/hbar^2 multiplying (V - E).
  double coefficient() const { return two_mu / (hbar * hbar); }
};

/// Converts an energy between any two supported units.
/// Conversions go through a common pivot so that round trips and chained
/// conversions compose exactly.
double convert_energy(double value, EnergyUnit from, EnergyUnit to);

struct PhysicalConstants {
  double bohr_radius_angstrom;
  double hartree_eV;
  double rydberg_eV;
};

/// Reference constants at the precision used throughout: 0.529 A, 27.2 eV,
/// 13.6 eV.
PhysicalConstants physical_constants();

/// Parses unit names as used in config files and on the CLI
/// ("eV", "cm-1", "hartree", "au", "ry", ...). Throws std::invalid_argument
/// for anything unrecognized; never falls back to an identity conversion.
EnergyUnit parse_energy_unit(std::string_view name);

/// Canonical short name for a unit ("eV", "cm-1", ...).
std::string_view unit_name(EnergyUnit unit);

void validate(const MassConvention& mass);

}  // namespace cfm
