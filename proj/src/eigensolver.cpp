#include "cfm/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cfm/parallel.hpp"

namespace cfm {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Visits the potential variant once per march so the inner RK4 loop calls an
// inlined family formula instead of going through std::function. The marched
// equation is y'' = (veff_s(x) - E_s) y with veff_s = c V (+ centrifugal) and
// E_s = c E, c = 2mu/hbar^2.
template <class Fn>
auto with_scaled_veff(const ProblemSpec& prob, Fn&& fn) {
  const double c = prob.mass.coefficient();
  const double lterm =
      prob.radial ? static_cast<double>(prob.l) * (prob.l + 1) : 0.0;

  auto dispatch = [&](auto base) {
    if (lterm != 0.0) {
      return fn([base, c, lterm](double r) { return c * base(r) + lterm / (r * r); });
    }
    return fn([base, c](double x) { return c * base(x); });
  };

  return std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, InfiniteWell>) {
          // Walls are handled as finite boundaries; inside the box V = 0.
          return dispatch([](double) { return 0.0; });
        } else if constexpr (std::is_same_v<T, FiniteWell>) {
          return dispatch([p](double x) {
            return (x > 0.0 && x < p.width) ? 0.0 : p.depth;
          });
        } else if constexpr (std::is_same_v<T, Harmonic>) {
          return dispatch([p](double x) { return 0.5 * p.k_elastic * x * x; });
        } else if constexpr (std::is_same_v<T, DoubleGaussian>) {
          return dispatch([p](double x) {
            const double u = x - p.separation;
            const double v = x + p.separation;
            return -p.depth *
                   (std::exp(-p.falloff * u * u) + std::exp(-p.falloff * v * v));
          });
        } else if constexpr (std::is_same_v<T, MorseGaussian>) {
          return dispatch([p](double x) {
            const double e =
                1.0 - std::exp(-p.morse_steepness * (x - p.morse_center));
            const double u = x - p.gauss_center;
            return p.morse_depth * e * e +
                   p.gauss_height * std::exp(-p.gauss_falloff * u * u);
          });
        } else if constexpr (std::is_same_v<T, Coulomb>) {
          return dispatch([p](double r) { return -2.0 * p.charge / r; });
        } else if constexpr (std::is_same_v<T, Morse>) {
          return dispatch([p](double r) {
            const double e = 1.0 - std::exp(-p.steepness * (r - p.equilibrium));
            return p.depth * e * e - p.depth;
          });
        } else if constexpr (std::is_same_v<T, Tabulated>) {
          const PotentialSpec spec = p;
          return dispatch([spec](double x) { return evaluate(spec, x); });
        } else {
          // DeltaComb is symbolic; its jump condition lives in the band
          // solver, never in a pointwise march.
          throw std::invalid_argument(
              "delta comb potentials are solved by the band solver");
          return dispatch([](double) { return 0.0; });
        }
      },
      prob.potential);
}

}  // namespace

RatioResult ratios(double energy, const ProblemSpec& prob, const MarchConfig& cfg) {
  const double c = prob.mass.coefficient();
  const double scaled_e = c * energy;

  return with_scaled_veff(prob, [&](auto veff) {
    MarchConfig left_cfg = cfg;
    left_cfg.direction = Direction::toward_left;
    const MarchResult left = detail::march(scaled_e, veff, prob.x0,
                                           prob.left.location,
                                           prob.left.ratio_kind(), left_cfg);
    if (!prob.left.location.finite && !left.saturated)
      throw SaturationError(left.x_stop, cfg.max_extent);

    MarchConfig right_cfg = cfg;
    right_cfg.direction = Direction::toward_right;
    const MarchResult right = detail::march(scaled_e, veff, prob.x0,
                                            prob.right.location,
                                            prob.right.ratio_kind(), right_cfg);
    if (!prob.right.location.finite && !right.saturated)
      throw SaturationError(right.x_stop, cfg.max_extent);

    RatioResult out;
    out.l_minus = left.ratio;
    out.l_plus = right.ratio;
    out.pole = left.pole || right.pole;
    out.wronskian_drift = std::max(left.wronskian_drift, right.wronskian_drift);
    out.x_stop_left = left.x_stop;
    out.x_stop_right = right.x_stop;
    return out;
  });
}

EigenSample eigenvalue_function(double energy, const ProblemSpec& prob,
                                const MarchConfig& cfg, double pole_threshold) {
  const RatioResult r = ratios(energy, prob, cfg);
  EigenSample s;
  s.energy = energy;
  s.f = r.l_plus - r.l_minus;
  s.is_pole = r.pole || !std::isfinite(s.f) || std::abs(s.f) > pole_threshold;
  return s;
}

std::vector<EigenSample> scan(const ProblemSpec& prob,
                              std::span<const double> grid,
                              const MarchConfig& cfg, int threads) {
  if (grid.size() < 2)
    throw std::invalid_argument("scan: grid needs at least two points");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument("scan: grid must be strictly increasing");

  std::vector<EigenSample> samples(grid.size());
  parallel_for(
      grid.size(),
      [&](std::size_t i) { samples[i] = eigenvalue_function(grid[i], prob, cfg); },
      threads);
  return samples;
}

namespace {

// Bisection with behavior classification: a root drives |F| below the
// acceptance residual as the bracket shrinks, a tan-like pole makes |F| grow
// beyond the pole threshold. Returns nullopt for a discarded pole.
std::optional<Eigenvalue> classify_bracket(double lo, double f_lo, double hi,
                                           double f_hi, const ProblemSpec& prob,
                                           const MarchConfig& cfg,
                                           const RootPolicy& policy) {
  for (int iter = 0; iter < policy.max_bisections; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) {
      // Bracket exhausted at floating point resolution.
      const double f_best = std::min(std::abs(f_lo), std::abs(f_hi));
      if (f_best <= policy.accept_residual) {
        Eigenvalue ev;
        ev.energy = mid;
        ev.residual = f_best;
        ev.bracket_lo = lo;
        ev.bracket_hi = hi;
        return ev;
      }
      throw ClassificationError(lo, hi);
    }

    const EigenSample s = eigenvalue_function(mid, prob, cfg, policy.pole_threshold);
    if (s.is_pole) return std::nullopt;

    const double width = hi - lo;
    if (width <= policy.refine_tol && std::abs(s.f) <= policy.accept_residual) {
      Eigenvalue ev;
      ev.energy = mid;
      ev.residual = std::abs(s.f);
      ev.bracket_lo = lo;
      ev.bracket_hi = hi;
      return ev;
    }

    if (s.f == 0.0) {
      Eigenvalue ev;
      ev.energy = mid;
      ev.residual = 0.0;
      ev.bracket_lo = lo;
      ev.bracket_hi = hi;
      return ev;
    }
    if ((f_lo < 0.0) != (s.f < 0.0)) {
      hi = mid;
      f_hi = s.f;
    } else {
      lo = mid;
      f_lo = s.f;
    }
  }
  throw ClassificationError(lo, hi);
}

}  // namespace

std::vector<Eigenvalue> locate_roots(const std::vector<EigenSample>& samples,
                                     const ProblemSpec& prob,
                                     const MarchConfig& cfg,
                                     const RootPolicy& policy) {
  std::vector<Eigenvalue> roots;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    const EigenSample& a = samples[i];
    const EigenSample& b = samples[i + 1];
    if (a.is_pole || b.is_pole) continue;
    if (a.f == 0.0 || b.f == 0.0) {
      // Exact grid hit; claim it once, from the left neighbor.
      if (a.f == 0.0) {
        Eigenvalue ev;
        ev.energy = a.energy;
        ev.residual = 0.0;
        ev.bracket_lo = a.energy;
        ev.bracket_hi = a.energy;
        if (roots.empty() || roots.back().energy != ev.energy) roots.push_back(ev);
      }
      continue;
    }
    if ((a.f < 0.0) == (b.f < 0.0)) continue;

    if (auto ev = classify_bracket(a.energy, a.f, b.energy, b.f, prob, cfg, policy))
      roots.push_back(*ev);
  }

  std::sort(roots.begin(), roots.end(),
            [](const Eigenvalue& x, const Eigenvalue& y) { return x.energy < y.energy; });
  // Duplicates can only come from degenerate grid hits; drop them.
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [&](const Eigenvalue& x, const Eigenvalue& y) {
                            return std::abs(x.energy - y.energy) <= policy.refine_tol;
                          }),
              roots.end());
  for (std::size_t i = 0; i < roots.size(); ++i) roots[i].index = static_cast<int>(i);
  return roots;
}

std::vector<Eigenvalue> solve_parity(const ProblemSpec& prob,
                                     const MarchConfig& cfg, Window window,
                                     int grid_points, const RootPolicy& policy,
                                     int threads) {
  if (!prob.symmetry_center)
    throw std::invalid_argument("solve_parity: problem has no symmetry center");
  const double center = *prob.symmetry_center;
  if (!(prob.x0 < center))
    throw std::invalid_argument("solve_parity: anchor must lie left of the center");

  const std::vector<double> grid = linear_grid(window.lo, window.hi, grid_points);

  auto solve_half = [&](BoundaryKind kind, Parity parity) {
    ProblemSpec half = prob;
    half.right = BoundaryCondition{kind, Boundary::at(center)};
    half.symmetry_center.reset();
    const auto samples = scan(half, grid, cfg, threads);
    auto roots = locate_roots(samples, half, cfg, policy);
    for (auto& r : roots) r.parity = parity;
    return roots;
  };

  // NullValue at the center selects the antisymmetric (odd) family,
  // NullDerivative the symmetric (even) one.
  const auto odd = solve_half(BoundaryKind::null_value, Parity::odd);
  const auto even = solve_half(BoundaryKind::null_derivative, Parity::even);

  std::vector<Eigenvalue> merged;
  merged.reserve(odd.size() + even.size());
  merged.insert(merged.end(), odd.begin(), odd.end());
  merged.insert(merged.end(), even.begin(), even.end());
  std::sort(merged.begin(), merged.end(),
            [](const Eigenvalue& x, const Eigenvalue& y) { return x.energy < y.energy; });
  for (std::size_t i = 0; i < merged.size(); ++i)
    merged[i].index = static_cast<int>(i);
  return merged;
}

int count_levels_finite_well(double width, double depth, const MassConvention& mass) {
  if (!(width > 0.0) || !(depth > 0.0))
    throw std::invalid_argument("count_levels_finite_well: arguments must be positive");
  const double k_max = std::sqrt(mass.two_mu * depth) / mass.hbar;
  const double n = 1.0 + width * k_max / kPi;
  // Tolerant floor so widths constructed from an integer count round-trip.
  return static_cast<int>(std::floor(n + 1e-9));
}

double well_width_from_count(int n_max, double depth, const MassConvention& mass) {
  if (n_max < 1 || !(depth > 0.0))
    throw std::invalid_argument("well_width_from_count: arguments must be positive");
  return kPi * mass.hbar * (n_max - 1) / std::sqrt(mass.two_mu * depth);
}

std::vector<double> linear_grid(double lo, double hi, int points) {
  if (!(hi > lo) || points < 2)
    throw std::invalid_argument("linear_grid: need hi > lo and >= 2 points");
  std::vector<double> g(static_cast<std::size_t>(points));
  const double d = (hi - lo) / points;
  for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = lo + d * (i + 1);
  g.back() = hi;
  return g;
}

std::vector<double> log_abs_grid(double lo, double hi, int points) {
  if (!(lo < hi) || !(hi < 0.0) || points < 2)
    throw std::invalid_argument("log_abs_grid: need lo < hi < 0 and >= 2 points");
  const double u_lo = std::log(-lo);
  const double u_hi = std::log(-hi);
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double u = u_lo + (u_hi - u_lo) * (i + 1) / points;
    g[static_cast<std::size_t>(i)] = -std::exp(u);
  }
  g.back() = hi;
  return g;
}

}  // namespace cfm
