#include "cfm/bands.hpp"

#include <algorithm>
#include <cmath>

#include "cfm/parallel.hpp"

namespace cfm {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct CellValues {
  // Canonical values at the two cell edges for one energy.
  double a0, ap0, b0, bp0;  // at x = 0
  double aa, apa, ba, bpa;  // at x = a
};

// The cell interior of the comb is free, so the marches see veff = 0 and the
// scaled energy c E. Growth is bounded on the cell; no rescaling can occur,
// so values from the two marches live on a common scale.
CellValues march_cell(double energy, const BlochProblem& prob,
                      const MarchConfig& cfg) {
  if (!(prob.x0 > 0.0 && prob.x0 < prob.spacing))
    throw std::invalid_argument("bloch march: x0 must lie inside (0, a)");
  const double scaled_e = prob.mass.coefficient() * energy;
  auto free_cell = [](double) { return 0.0; };

  CellValues v{};
  CanonicalState last{};

  MarchConfig left = cfg;
  left.direction = Direction::toward_left;
  detail::march(scaled_e, free_cell, prob.x0, Boundary::at(0.0),
                RatioKind::value, left,
                [&last](const CanonicalState& s) { last = s; });
  v.a0 = last.alpha;
  v.ap0 = last.alpha_p;
  v.b0 = last.beta;
  v.bp0 = last.beta_p;

  MarchConfig right = cfg;
  right.direction = Direction::toward_right;
  detail::march(scaled_e, free_cell, prob.x0, Boundary::at(prob.spacing),
                RatioKind::value, right,
                [&last](const CanonicalState& s) { last = s; });
  v.aa = last.alpha;
  v.apa = last.alpha_p;
  v.ba = last.beta;
  v.bpa = last.beta_p;
  return v;
}

bool finite(const std::complex<double>& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace

BlochRatios bloch_ratios(double energy, double k, const BlochProblem& prob,
                         const MarchConfig& cfg) {
  const CellValues v = march_cell(energy, prob, cfg);
  const double jump = prob.strength * prob.mass.coefficient();  // g 2m/hbar^2
  const std::complex<double> phase = std::polar(1.0, k * prob.spacing);
  const std::complex<double> phase_conj = std::conj(phase);

  // Derivative jump across the site at 0, with y'(0-) tied to y'(a-) by the
  // Bloch phase.
  const std::complex<double> num_m = -v.ap0 + v.apa * phase_conj + jump * v.a0;
  const std::complex<double> den_m = v.bp0 - v.bpa * phase_conj - jump * v.b0;
  // Periodicity of the value: y(a) = exp(ika) y(0).
  const std::complex<double> num_p = v.aa - phase * v.a0;
  const std::complex<double> den_p = phase * v.b0 - v.ba;

  BlochRatios out;
  out.l_minus = num_m / den_m;
  out.l_plus = num_p / den_p;
  out.pole = !finite(out.l_minus) || !finite(out.l_plus);
  return out;
}

std::complex<double> dispersion_residual(double energy, double k,
                                         const BlochProblem& prob,
                                         const MarchConfig& cfg) {
  const BlochRatios r = bloch_ratios(energy, k, prob, cfg);
  return r.l_plus - r.l_minus;
}

// Determinant form of the dispersion: expanding N+ D- - N- D+ with the
// Wronskians alpha beta' - alpha' beta = 1 at both edges collapses the Bloch
// phases into a single -2 cos(ka) term,
//   D(E, k) = S(E) + G T(E) - 2 cos(ka),
//   S = a(a)b'(0) + a(0)b'(a) - a'(0)b(a) - a'(a)b(0),
//   T = a(0)b(a) - a(a)b(0).
// D shares its zeros with F = l+ - l- (D = F D+ D-) but stays regular where
// the ratio denominators vanish, which happens exactly at zone-edge band
// states whose wavefunction is noded on the lattice sites. Root finding
// therefore runs on D; F remains the reported residual.
double dispersion_determinant(double energy, double k, const BlochProblem& prob,
                              const MarchConfig& cfg) {
  const CellValues v = march_cell(energy, prob, cfg);
  const double jump = prob.strength * prob.mass.coefficient();
  const double s = v.aa * v.bp0 + v.a0 * v.bpa - v.ap0 * v.ba - v.apa * v.b0;
  const double t = v.a0 * v.ba - v.aa * v.b0;
  return s + jump * t - 2.0 * std::cos(k * prob.spacing);
}

std::vector<double> band_energies(double k, int n_bands, const BlochProblem& prob,
                                  const MarchConfig& cfg, const BandPolicy& policy) {
  if (n_bands < 1) throw std::invalid_argument("band_energies: n_bands must be >= 1");
  const double c = prob.mass.coefficient();
  const double kappa_top = n_bands * kPi / prob.spacing;
  const double e_top = kappa_top * kappa_top / c * (1.0 + 1e-6);
  const int points = std::max(300, policy.scan_points_per_band * n_bands);

  auto det = [&](double e) { return dispersion_determinant(e, k, prob, cfg); };

  // Uniform in kappa so every band gets comparable resolution.
  std::vector<double> roots;
  double prev_e = 0.0, prev_d = 0.0;
  bool have_prev = false;
  for (int i = 1; i <= points; ++i) {
    const double kappa = kappa_top * (1.0 + 1e-6) * i / points;
    const double e = std::min(kappa * kappa / c, e_top);
    const double d = det(e);
    if (have_prev && (prev_d == 0.0 || (prev_d < 0.0) != (d < 0.0))) {
      double lo = prev_e, hi = e, d_lo = prev_d;
      for (int iter = 0; iter < policy.max_bisections; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi) ||
            hi - lo <= policy.refine_tol * std::max(1.0, std::abs(mid)))
          break;
        const double dm = det(mid);
        if (dm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((d_lo < 0.0) != (dm < 0.0)) {
          hi = mid;
        } else {
          lo = mid;
          d_lo = dm;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev_e = e;
    prev_d = d;
    have_prev = true;
  }

  roots.erase(std::unique(roots.begin(), roots.end(),
                          [&](double x, double y) {
                            return std::abs(x - y) <= 1e-9 * (1.0 + std::abs(y));
                          }),
              roots.end());

  if (static_cast<int>(roots.size()) < n_bands)
    throw BandCountError(static_cast<int>(roots.size()), n_bands, k);
  roots.resize(static_cast<std::size_t>(n_bands));
  return roots;
}

BandStructure compute_bands(const BlochProblem& prob, int n_bands,
                            const std::vector<double>& k_grid,
                            const MarchConfig& cfg, const BandPolicy& policy,
                            int threads) {
  const double k_edge = kPi / prob.spacing;
  for (double k : k_grid)
    if (k < -1e-12 || k > k_edge * (1.0 + 1e-12))
      throw std::invalid_argument("compute_bands: k outside [0, pi/a]");

  BandStructure bs;
  bs.problem = prob;
  bs.points.resize(k_grid.size());
  parallel_for(
      k_grid.size(),
      [&](std::size_t i) {
        bs.points[i].k = k_grid[i];
        bs.points[i].energies = band_energies(k_grid[i], n_bands, prob, cfg, policy);
      },
      threads);
  return bs;
}

std::vector<double> default_k_grid(double spacing, int points) {
  if (points < 2) throw std::invalid_argument("default_k_grid: need >= 2 points");
  std::vector<double> g(static_cast<std::size_t>(points));
  const double k_edge = kPi / spacing;
  for (int i = 0; i < points; ++i)
    g[static_cast<std::size_t>(i)] = k_edge * i / (points - 1);
  return g;
}

}  // namespace cfm
