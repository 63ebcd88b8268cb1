#include "cfm/units.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace cfm {

namespace {

// Value of one unit expressed in eV. The 6-digit reference factors below
// define the unit system (cm^-1 through the eV -> cm^-1 factor 8.06547e3 so
// that conversion reproduces it digit for digit). Routing every conversion
// through the eV pivot keeps round trips and chains exact by construction;
// the individual factors are only accurate to their printed digits.
constexpr double kJouleInEv = 6.24151e18;
constexpr double kHertzInEv = 4.13570e-15;
constexpr double kEvToInvCm = 8.06547e3;
constexpr double kHartreeInEv = 27.2;
constexpr double kRydbergInEv = 13.6;

double pivot_factor(EnergyUnit unit) {
  switch (unit) {
    case EnergyUnit::joule: return kJouleInEv;
    case EnergyUnit::electron_volt: return 1.0;
    case EnergyUnit::hertz: return kHertzInEv;
    case EnergyUnit::inverse_centimeter: return 1.0 / kEvToInvCm;
    case EnergyUnit::hartree: return kHartreeInEv;
    case EnergyUnit::rydberg: return kRydbergInEv;
    case EnergyUnit::atomic_unit: return kHartreeInEv;
  }
  throw std::invalid_argument("convert_energy: unsupported energy unit");
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

double convert_energy(double value, EnergyUnit from, EnergyUnit to) {
  if (from == to) return value;
  return value * (pivot_factor(from) / pivot_factor(to));
}

PhysicalConstants physical_constants() {
  return PhysicalConstants{0.529, kHartreeInEv, kRydbergInEv};
}

EnergyUnit parse_energy_unit(std::string_view name) {
  const std::string n = lower(name);
  if (n == "j" || n == "joule") return EnergyUnit::joule;
  if (n == "ev" || n == "electronvolt") return EnergyUnit::electron_volt;
  if (n == "hz" || n == "hertz") return EnergyUnit::hertz;
  if (n == "cm-1" || n == "cm^-1" || n == "1/cm" || n == "invcm")
    return EnergyUnit::inverse_centimeter;
  if (n == "hartree" || n == "ha") return EnergyUnit::hartree;
  if (n == "ry" || n == "rydberg") return EnergyUnit::rydberg;
  if (n == "au" || n == "a.u." || n == "atomic") return EnergyUnit::atomic_unit;
  throw std::invalid_argument("unknown energy unit '" + std::string(name) + "'");
}

std::string_view unit_name(EnergyUnit unit) {
  switch (unit) {
    case EnergyUnit::joule: return "J";
    case EnergyUnit::electron_volt: return "eV";
    case EnergyUnit::hertz: return "Hz";
    case EnergyUnit::inverse_centimeter: return "cm-1";
    case EnergyUnit::hartree: return "hartree";
    case EnergyUnit::rydberg: return "Ry";
    case EnergyUnit::atomic_unit: return "au";
  }
  return "?";
}

void validate(const MassConvention& mass) {
  if (!(mass.hbar > 0.0) || !(mass.two_mu > 0.0))
    throw std::invalid_argument("mass convention: hbar and 2mu must be positive");
}

}  // namespace cfm
