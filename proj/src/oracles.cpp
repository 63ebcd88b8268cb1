#include "cfm/oracles.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cfm {
namespace oracles {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Plain bisection for a continuous f with f(lo) f(hi) < 0.
template <class F>
double bisect(F&& f, double lo, double hi, double f_lo, double abs_tol) {
  for (int i = 0; i < 200 && hi - lo > abs_tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_lo < 0.0) != (f_mid < 0.0)) {
      hi = mid;
    } else {
      lo = mid;
      f_lo = f_mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> infinite_well_exact(double width, int n_max,
                                        const MassConvention& mass) {
  if (!(width > 0.0) || n_max < 1)
    throw std::invalid_argument("infinite_well_exact: bad arguments");
  std::vector<double> levels;
  levels.reserve(static_cast<std::size_t>(n_max));
  const double pref = mass.hbar * mass.hbar / mass.two_mu;
  for (int n = 1; n <= n_max; ++n) {
    const double kn = n * kPi / width;
    levels.push_back(pref * kn * kn);
  }
  return levels;
}

std::vector<double> finite_well_exact(double width, double depth,
                                      const MassConvention& mass) {
  if (!(width > 0.0) || !(depth > 0.0))
    throw std::invalid_argument("finite_well_exact: bad arguments");
  const double k_max = std::sqrt(mass.two_mu * depth) / mass.hbar;

  std::vector<double> levels;
  for (int n = 1;; ++n) {
    auto f = [&](double k) {
      return std::asin(k / k_max) - 0.5 * (n * kPi - k * width);
    };
    // Monotone in k; a strictly interior root exists iff f(k_max) is
    // positive. The threshold case f(k_max) = 0 is the continuum edge and is
    // not a bound state.
    const double f_hi = f(k_max);
    if (!(f_hi > 1e-12)) break;
    const double lo = k_max * 1e-15;
    const double k = bisect(f, lo, k_max, f(lo), k_max * 1e-15);
    levels.push_back(mass.hbar * mass.hbar * k * k / mass.two_mu);
  }
  return levels;
}

std::vector<double> harmonic_exact(double omega0, int n_max) {
  if (!(omega0 > 0.0) || n_max < 0)
    throw std::invalid_argument("harmonic_exact: bad arguments");
  std::vector<double> levels;
  levels.reserve(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) levels.push_back(omega0 * (n + 0.5));
  return levels;
}

std::vector<double> hydrogen_exact(int n_max) {
  if (n_max < 1) throw std::invalid_argument("hydrogen_exact: n_max must be >= 1");
  std::vector<double> levels;
  levels.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) levels.push_back(-1.0 / (static_cast<double>(n) * n));
  return levels;
}

MorseLevels morse_exact(double depth, double steepness, double /*equilibrium*/,
                        const MassConvention& mass) {
  if (!(depth > 0.0) || !(steepness > 0.0))
    throw std::invalid_argument("morse_exact: bad arguments");
  const double lambda =
      std::sqrt(mass.two_mu * depth) / (steepness * mass.hbar);
  MorseLevels out;
  out.count = static_cast<int>(std::floor(lambda - 0.5)) + 1;
  const double pref = steepness * steepness * mass.hbar * mass.hbar / mass.two_mu;
  for (int n = 0; n < out.count; ++n) {
    const double d = lambda - n - 0.5;
    out.levels.push_back(-pref * d * d);
  }
  return out;
}

std::vector<double> delta_comb_exact(double spacing, double strength, double k,
                                     int n_bands, const MassConvention& mass) {
  if (!(spacing > 0.0) || n_bands < 1)
    throw std::invalid_argument("delta_comb_exact: bad arguments");
  if (k < -1e-12 || k > kPi / spacing * (1.0 + 1e-12))
    throw std::invalid_argument("delta_comb_exact: k outside [0, pi/a]");

  const double c = mass.two_mu / (mass.hbar * mass.hbar);  // 2 m / hbar^2
  const double cos_ka = std::cos(k * spacing);
  auto f = [&](double kappa) {
    return 0.5 * strength * c / kappa * std::sin(kappa * spacing) +
           std::cos(kappa * spacing) - cos_ka;
  };

  std::vector<double> energies;
  energies.reserve(static_cast<std::size_t>(n_bands));
  for (int n = 1; n <= n_bands; ++n) {
    const double lo = ((n - 1) * kPi + 1e-9) / spacing;
    const double hi = n * kPi / spacing;
    const double f_hi = f(hi);
    double root;
    if (std::abs(f_hi) < 1e-12) {
      // Band edge pinned at kappa a = n pi (the sin term vanishes there).
      root = hi;
    } else {
      const double f_lo = f(lo);
      if ((f_lo < 0.0) == (f_hi < 0.0))
        throw std::runtime_error("delta_comb_exact: no crossing in band " +
                                 std::to_string(n));
      root = bisect(f, lo, hi, f_lo, 1e-13 / spacing);
    }
    energies.push_back(root * root / c);
  }
  return energies;
}

std::vector<double> finite_barrier_kp_exact(double well_width, double barrier_width,
                                            double barrier_height, double k,
                                            const MassConvention& mass) {
  if (!(well_width > 0.0) || !(barrier_width > 0.0) || !(barrier_height > 0.0))
    throw std::invalid_argument("finite_barrier_kp_exact: bad arguments");
  const double c = mass.two_mu / (mass.hbar * mass.hbar);
  const double period = well_width + barrier_width;
  const double cos_kp = std::cos(k * period);

  auto f = [&](double e) {
    const double kappa = std::sqrt(c * e);
    const double q = std::sqrt(c * (barrier_height - e));
    return (q * q - kappa * kappa) / (2.0 * q * kappa) * std::sinh(q * barrier_width) *
               std::sin(kappa * well_width) +
           std::cosh(q * barrier_width) * std::cos(kappa * well_width) - cos_kp;
  };

  const int n_scan = 20000;
  const double e_lo = barrier_height * 1e-9;
  const double e_hi = barrier_height * (1.0 - 1e-9);
  std::vector<double> roots;
  double prev_e = e_lo;
  double prev_f = f(prev_e);
  for (int i = 1; i <= n_scan; ++i) {
    const double e = e_lo + (e_hi - e_lo) * i / n_scan;
    const double fe = f(e);
    if (prev_f == 0.0) {
      roots.push_back(prev_e);
    } else if ((prev_f < 0.0) != (fe < 0.0)) {
      roots.push_back(bisect(f, prev_e, e, prev_f, barrier_height * 1e-14));
    }
    prev_e = e;
    prev_f = fe;
  }
  return roots;
}

double delta_strength_from_barrier(double barrier_height, double barrier_width) {
  return barrier_height * barrier_width;
}

namespace {

// One Numerov shot for y'' = f y with f = c (V - E); returns the interior
// sign-change count. Exponential growth in forbidden regions is tamed by
// rescaling, which leaves signs untouched. The recurrence runs in extended
// precision: locating the node-count jump to 1e-9 relative over ~1e5 steps
// sits below the double-precision roundoff floor.
int shoot_nodes(const std::function<double(double)>& potential, double x_lo,
                double x_hi, double c, double energy, int n) {
  const double h = (x_hi - x_lo) / n;
  const long double h2_12 = static_cast<long double>(h) * h / 12.0L;

  auto fval = [&](int i) {
    return static_cast<long double>(c * (potential(x_lo + i * h) - energy));
  };

  long double y_prev = 0.0L;
  long double y_cur = 1e-12L;
  long double f_prev = fval(0);
  long double f_cur = fval(1);
  int nodes = 0;
  for (int i = 1; i < n; ++i) {
    const long double f_next = fval(i + 1);
    const long double y_next = (2.0L * y_cur * (1.0L + 5.0L * h2_12 * f_cur) -
                                y_prev * (1.0L - h2_12 * f_prev)) /
                               (1.0L - h2_12 * f_next);
    if ((y_next < 0.0L) != (y_cur < 0.0L) && y_cur != 0.0L) ++nodes;
    y_prev = y_cur;
    y_cur = y_next;
    f_prev = f_cur;
    f_cur = f_next;
    const long double mag = std::abs(y_cur);
    if (mag > 1e100L) {
      y_prev /= mag;
      y_cur /= mag;
    }
  }
  return nodes;
}

}  // namespace

int numerov_node_count(const std::function<double(double)>& potential,
                       double x_lo, double x_hi, const MassConvention& mass,
                       double energy, int grid_points) {
  return shoot_nodes(potential, x_lo, x_hi, mass.coefficient(), energy,
                     grid_points);
}

std::vector<double> numerov_reference(const std::function<double(double)>& potential,
                                      double x_lo, double x_hi,
                                      const MassConvention& mass, int n_levels,
                                      Window window, NumerovOptions opts) {
  if (n_levels < 1 || !(x_hi > x_lo))
    throw std::invalid_argument("numerov_reference: bad arguments");
  const double c = mass.coefficient();

  const int top_nodes =
      shoot_nodes(potential, x_lo, x_hi, c, window.hi, opts.grid_points);
  if (top_nodes < n_levels)
    throw std::runtime_error(
        "numerov_reference: window exhausted, holds only " +
        std::to_string(top_nodes) + " levels");

  std::vector<double> levels;
  levels.reserve(static_cast<std::size_t>(n_levels));
  double lo_base = window.lo;
  for (int level = 0; level < n_levels; ++level) {
    // The node count jumps from `level` to `level + 1` exactly at E_level.
    double lo = lo_base;
    double hi = window.hi;
    while (hi - lo > opts.rel_tol * std::max({std::abs(lo), std::abs(hi), 1e-30})) {
      const double mid = 0.5 * (lo + hi);
      if (!(mid > lo && mid < hi)) break;
      if (shoot_nodes(potential, x_lo, x_hi, c, mid, opts.grid_points) >= level + 1)
        hi = mid;
      else
        lo = mid;
    }
    levels.push_back(0.5 * (lo + hi));
    lo_base = hi;  // next level lies above this one
  }
  return levels;
}

}  // namespace oracles
}  // namespace cfm
