#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "cfm/bands.hpp"
#include "cfm/oracles.hpp"
#include "cfm/presets.hpp"

using namespace cfm;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("free comb reduces to the folded parabola") {
  BlochProblem free_comb;
  free_comb.spacing = 2.22;
  free_comb.strength = 0.0;
  free_comb.x0 = 1.0;
  MarchConfig cfg;
  cfg.step = 5e-3;
  const double k = 0.7;
  const double e_free = 0.5 * k * k;  // kappa = k for band 1
  const std::complex<double> f = dispersion_residual(e_free, k, free_comb, cfg);
  CHECK(std::abs(f) < 1e-7);
  const auto bands = band_energies(k, 1, free_comb, cfg);
  CHECK(bands[0] == doctest::Approx(e_free).epsilon(1e-9));
}

TEST_CASE("lowest band against the analytic dispersion") {
  const auto preset = make_band_preset("kp-1band");
  for (double k : {0.0, 0.35, 0.9, kPi / 2.22}) {
    const auto cfm_e = band_energies(k, 1, preset.problem, preset.march, preset.policy);
    const auto exact = oracles::delta_comb_exact(2.22, 1.0, k, 1, preset.problem.mass);
    CHECK(std::abs(cfm_e[0] - exact[0]) < 1e-6);
  }
}

TEST_CASE("lattice sizing formula reproduces the preset widths") {
  // a = n pi hbar / sqrt(2 m_e) for n bands below 1 a.u.
  const double base = kPi / std::sqrt(2.0);
  CHECK(base == doctest::Approx(2.22).epsilon(2e-3));
  CHECK(3.0 * base == doctest::Approx(6.66).epsilon(2e-3));
  CHECK(3.0 * base == doctest::Approx(6.6643).epsilon(1e-4));
  CHECK(5.0 * base == doctest::Approx(11.12).epsilon(2e-3));
}

TEST_CASE("ratios at opposite wavevectors are conjugate") {
  const auto preset = make_band_preset("kp-1band");
  for (double k : {0.2, 0.8}) {
    for (double e : {0.3, 0.9}) {
      const BlochRatios plus = bloch_ratios(e, k, preset.problem, preset.march);
      const BlochRatios minus = bloch_ratios(e, -k, preset.problem, preset.march);
      CHECK(minus.l_minus == std::conj(plus.l_minus));
      CHECK(minus.l_plus == std::conj(plus.l_plus));
      const auto f_p = dispersion_residual(e, k, preset.problem, preset.march);
      const auto f_m = dispersion_residual(e, -k, preset.problem, preset.march);
      CHECK(f_m == std::conj(f_p));
    }
  }
}

TEST_CASE("residual is real at the zone edges") {
  const auto preset = make_band_preset("kp-3band");
  const double edge = kPi / preset.problem.spacing;
  for (double k : {0.0, edge}) {
    for (double e : {0.2, 0.5, 0.85}) {
      const auto f = dispersion_residual(e, k, preset.problem, preset.march);
      CHECK(std::abs(f.imag()) <= 1e-12 * std::max(1.0, std::abs(f)));
    }
  }
}

TEST_CASE("residual vanishes at a converged interior root") {
  const auto preset = make_band_preset("kp-1band");
  const double k = 0.9;
  const auto e = band_energies(k, 1, preset.problem, preset.march, preset.policy);
  const auto f = dispersion_residual(e[0], k, preset.problem, preset.march);
  CHECK(std::abs(f) < 1e-8);
}

TEST_CASE("residual stays finite inside a gap") {
  const auto preset = make_band_preset("kp-1band");
  const double k = 0.4;
  const auto exact = oracles::delta_comb_exact(2.22, 1.0, k, 2, preset.problem.mass);
  const double gap_e = 0.5 * (exact[0] + exact[1]);
  // scanning across the gap never dips near zero
  double min_mod = 1e300;
  for (int i = -5; i <= 5; ++i) {
    const double e = gap_e * (1.0 + 0.02 * i);
    min_mod = std::min(min_mod,
                       std::abs(dispersion_residual(e, k, preset.problem, preset.march)));
  }
  CHECK(min_mod > 1e-2);
}

TEST_CASE("determinant and residual share their zeros") {
  const auto preset = make_band_preset("kp-3band");
  const double k = 0.31;
  const auto roots = band_energies(k, 3, preset.problem, preset.march, preset.policy);
  for (double e : roots) {
    CHECK(std::abs(dispersion_determinant(e, k, preset.problem, preset.march)) < 1e-8);
    CHECK(std::abs(dispersion_residual(e, k, preset.problem, preset.march)) < 1e-6);
  }
}

TEST_CASE("gaps open at the zone boundaries") {
  const auto preset = make_band_preset("kp-3band");
  const double edge = kPi / preset.problem.spacing;
  const auto at_edge = band_energies(edge, 3, preset.problem, preset.march, preset.policy);
  const auto at_zero = band_energies(0.0, 3, preset.problem, preset.march, preset.policy);
  // bands 1-2 meet at k = pi/a in the free limit, bands 2-3 at k = 0
  CHECK(at_edge[1] - at_edge[0] > 1e-3);
  CHECK(at_zero[2] - at_zero[1] > 1e-3);
}

TEST_CASE("band structure over a k grid") {
  const auto preset = make_band_preset("kp-3band");
  const auto grid = default_k_grid(preset.problem.spacing, 21);
  REQUIRE(grid.size() == 21);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == doctest::Approx(kPi / preset.problem.spacing));

  const BandStructure bs =
      compute_bands(preset.problem, 3, grid, preset.march, preset.policy, 4);
  REQUIRE(bs.points.size() == 21);
  for (const auto& pt : bs.points) {
    REQUIRE(pt.energies.size() == 3);
    CHECK(pt.energies[0] < pt.energies[1]);
    CHECK(pt.energies[1] < pt.energies[2]);
  }
  SUBCASE("continuity along k") {
    for (int n = 0; n < 3; ++n) {
      for (std::size_t i = 2; i < bs.points.size(); ++i) {
        const double slope = std::abs(bs.points[i - 1].energies[n] -
                                      bs.points[i - 2].energies[n]);
        const double jump =
            std::abs(bs.points[i].energies[n] - bs.points[i - 1].energies[n]);
        CHECK(jump <= 4.0 * slope + 1e-3);
      }
    }
  }
  SUBCASE("parallel assembly is deterministic") {
    const BandStructure seq =
        compute_bands(preset.problem, 3, grid, preset.march, preset.policy, 1);
    for (std::size_t i = 0; i < grid.size(); ++i)
      for (int n = 0; n < 3; ++n)
        CHECK(seq.points[i].energies[n] == bs.points[i].energies[n]);
  }
}

TEST_CASE("missing bands are reported, not padded") {
  // An attractive comb pulls the lowest band below the scan window.
  BlochProblem attractive;
  attractive.spacing = 2.22;
  attractive.strength = -3.0;
  attractive.x0 = 1.0;
  MarchConfig cfg;
  cfg.step = 5e-3;
  try {
    band_energies(0.5, 2, attractive, cfg);
    FAIL("expected BandCountError");
  } catch (const BandCountError& e) {
    CHECK(e.found < 2);
    CHECK(e.wanted == 2);
  }
}

TEST_CASE("k grid validation") {
  const auto preset = make_band_preset("kp-1band");
  CHECK_THROWS_AS(compute_bands(preset.problem, 1, {-0.5}, preset.march),
                  std::invalid_argument);
  CHECK_THROWS_AS(compute_bands(preset.problem, 1, {10.0}, preset.march),
                  std::invalid_argument);
}
