#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "cfm/units.hpp"

using namespace cfm;

namespace {

const EnergyUnit kAll[] = {
    EnergyUnit::joule,   EnergyUnit::electron_volt, EnergyUnit::hertz,
    EnergyUnit::inverse_centimeter, EnergyUnit::hartree, EnergyUnit::rydberg,
    EnergyUnit::atomic_unit,
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("table conversions") {
  CHECK(rel(convert_energy(1.0, EnergyUnit::electron_volt,
                           EnergyUnit::inverse_centimeter),
            8.06547e3) < 1e-12);
  CHECK(convert_energy(1.0, EnergyUnit::electron_volt,
                       EnergyUnit::electron_volt) == 1.0);
  CHECK(rel(convert_energy(1.0, EnergyUnit::hartree, EnergyUnit::electron_volt),
            27.2) < 1e-12);
  CHECK(rel(convert_energy(1.0, EnergyUnit::rydberg, EnergyUnit::electron_volt),
            13.6) < 1e-12);
  // atomic unit is a synonym for hartree
  CHECK(convert_energy(3.5, EnergyUnit::atomic_unit, EnergyUnit::hartree) == 3.5);
  CHECK(rel(convert_energy(1.0, EnergyUnit::joule, EnergyUnit::electron_volt),
            6.24151e18) < 1e-12);
  CHECK(rel(convert_energy(1.0, EnergyUnit::hertz, EnergyUnit::electron_volt),
            4.13570e-15) < 1e-12);
}

TEST_CASE("round trip composes to identity") {
  const double values[] = {1.0, -0.37, 1302.5, 2.3e-7};
  for (EnergyUnit u : kAll)
    for (EnergyUnit v : kAll)
      for (double x : values) {
        const double back = convert_energy(convert_energy(x, u, v), v, u);
        CHECK(std::abs(back - x) <= 1e-12 * std::abs(x));
      }
}

TEST_CASE("transitivity over all triples") {
  for (EnergyUnit u : kAll)
    for (EnergyUnit v : kAll)
      for (EnergyUnit w : kAll) {
        const double direct = convert_energy(1.7, u, w);
        const double via = convert_energy(convert_energy(1.7, u, v), v, w);
        CHECK(rel(via, direct) < 1e-10);
      }
}

TEST_CASE("physical constants") {
  const PhysicalConstants c = physical_constants();
  CHECK(c.bohr_radius_angstrom == 0.529);
  CHECK(c.hartree_eV == 27.2);
  CHECK(c.rydberg_eV == 13.6);
  CHECK(c.hartree_eV == 2.0 * c.rydberg_eV);
}

TEST_CASE("unit parsing") {
  CHECK(parse_energy_unit("eV") == EnergyUnit::electron_volt);
  CHECK(parse_energy_unit("CM-1") == EnergyUnit::inverse_centimeter);
  CHECK(parse_energy_unit("Ry") == EnergyUnit::rydberg);
  CHECK(parse_energy_unit("au") == EnergyUnit::atomic_unit);
  CHECK(parse_energy_unit("hartree") == EnergyUnit::hartree);
  CHECK_THROWS_AS(parse_energy_unit("furlong"), std::invalid_argument);
  for (EnergyUnit u : kAll) CHECK(parse_energy_unit(unit_name(u)) == u);
}

TEST_CASE("mass convention validation") {
  CHECK_NOTHROW(validate(MassConvention{1.0, 2.0}));
  CHECK_THROWS_AS(validate(MassConvention{0.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(MassConvention{1.0, -1.0}), std::invalid_argument);
  CHECK(MassConvention{1.0, 2.0}.coefficient() == 2.0);
  CHECK(MassConvention{2.0, 1.0}.coefficient() == 0.25);
}
