#include "cfm/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cfm {

namespace {

struct Evaluator {
  double x;

  double operator()(const InfiniteWell& w) const {
    if (x <= 0.0 || x >= w.width)
      throw std::domain_error("infinite well: evaluation at or beyond a wall");
    return 0.0;
  }

  double operator()(const FiniteWell& w) const {
    return (x > 0.0 && x < w.width) ? 0.0 : w.depth;
  }

  double operator()(const Harmonic& h) const { return 0.5 * h.k_elastic * x * x; }

  double operator()(const DoubleGaussian& g) const {
    const double u = x - g.separation;
    const double v = x + g.separation;
    return -g.depth * (std::exp(-g.falloff * u * u) + std::exp(-g.falloff * v * v));
  }

  double operator()(const MorseGaussian& m) const {
    const double e = 1.0 - std::exp(-m.morse_steepness * (x - m.morse_center));
    const double u = x - m.gauss_center;
    return m.morse_depth * e * e + m.gauss_height * std::exp(-m.gauss_falloff * u * u);
  }

  double operator()(const Coulomb& c) const {
    if (x <= 0.0) throw std::domain_error("coulomb: r must be positive");
    return -2.0 * c.charge / x;
  }

  double operator()(const Morse& m) const {
    const double e = 1.0 - std::exp(-m.steepness * (x - m.equilibrium));
    return m.depth * e * e - m.depth;
  }

  double operator()(const DeltaComb& d) const {
    const double n = std::round(x / d.spacing);
    if (std::abs(x - n * d.spacing) < 1e-12 * d.spacing)
      throw std::domain_error("delta comb: evaluation at a lattice site");
    return 0.0;
  }

  double operator()(const Tabulated& t) const {
    if (t.x.empty() || x < t.x.front() || x > t.x.back())
      throw std::domain_error("tabulated potential: abscissa outside table range");
    auto it = std::upper_bound(t.x.begin(), t.x.end(), x);
    if (it == t.x.begin()) return t.v.front();
    if (it == t.x.end()) return t.v.back();
    const std::size_t i = static_cast<std::size_t>(it - t.x.begin());
    const double t0 = t.x[i - 1], t1 = t.x[i];
    const double w = (x - t0) / (t1 - t0);
    return (1.0 - w) * t.v[i - 1] + w * t.v[i];
  }
};

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

double evaluate(const PotentialSpec& spec, double x) {
  return std::visit(Evaluator{x}, spec);
}

double effective_radial(const PotentialSpec& spec, int l, double r) {
  if (r <= 0.0) throw std::domain_error("effective_radial: r must be positive");
  if (l < 0) throw std::domain_error("effective_radial: l must be nonnegative");
  const double centrifugal = static_cast<double>(l) * (l + 1) / (r * r);
  return evaluate(spec, r) + centrifugal;
}

std::optional<double> symmetry_center(const PotentialSpec& spec) {
  if (const auto* w = std::get_if<InfiniteWell>(&spec)) return 0.5 * w->width;
  if (const auto* w = std::get_if<FiniteWell>(&spec)) return 0.5 * w->width;
  if (std::holds_alternative<Harmonic>(spec)) return 0.0;
  if (std::holds_alternative<DoubleGaussian>(spec)) return 0.0;
  return std::nullopt;
}

void validate(const PotentialSpec& spec) {
  std::visit(
      [](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, InfiniteWell>) {
          require(p.width > 0.0, "infinite well: width must be positive");
        } else if constexpr (std::is_same_v<T, FiniteWell>) {
          require(p.width > 0.0, "finite well: width must be positive");
          require(p.depth > 0.0, "finite well: V0 must be positive");
        } else if constexpr (std::is_same_v<T, Harmonic>) {
          require(p.k_elastic > 0.0, "harmonic: k must be positive");
        } else if constexpr (std::is_same_v<T, DoubleGaussian>) {
          require(p.depth > 0.0, "double gaussian: D must be positive");
          require(p.falloff >= 0.0, "double gaussian: Omega must be nonnegative");
          require(p.separation > 0.0, "double gaussian: ra must be positive");
        } else if constexpr (std::is_same_v<T, MorseGaussian>) {
          require(p.morse_depth > 0.0, "morse+gaussian: D must be positive");
          require(p.morse_steepness >= 0.0, "morse+gaussian: B must be nonnegative");
          require(p.gauss_falloff >= 0.0, "morse+gaussian: C must be nonnegative");
        } else if constexpr (std::is_same_v<T, Coulomb>) {
          require(p.charge > 0.0, "coulomb: Z must be positive");
        } else if constexpr (std::is_same_v<T, Morse>) {
          require(p.depth > 0.0, "morse: D must be positive");
          require(p.steepness > 0.0, "morse: a must be positive");
          require(p.equilibrium > 0.0, "morse: re must be positive");
        } else if constexpr (std::is_same_v<T, DeltaComb>) {
          require(p.spacing > 0.0, "delta comb: lattice parameter must be positive");
        } else if constexpr (std::is_same_v<T, Tabulated>) {
          require(p.x.size() >= 2 && p.x.size() == p.v.size(),
                  "tabulated potential: need at least two (x, V) samples");
          require(std::is_sorted(p.x.begin(), p.x.end()),
                  "tabulated potential: abscissae must be increasing");
        }
      },
      spec);
}

std::string family_name(const PotentialSpec& spec) {
  struct Namer {
    std::string operator()(const InfiniteWell&) const { return "infinite-well"; }
    std::string operator()(const FiniteWell&) const { return "finite-well"; }
    std::string operator()(const Harmonic&) const { return "harmonic"; }
    std::string operator()(const DoubleGaussian&) const { return "dgw"; }
    std::string operator()(const MorseGaussian&) const { return "morse-gaussian"; }
    std::string operator()(const Coulomb&) const { return "coulomb"; }
    std::string operator()(const Morse&) const { return "morse"; }
    std::string operator()(const DeltaComb&) const { return "delta-comb"; }
    std::string operator()(const Tabulated&) const { return "tabulated"; }
  };
  return std::visit(Namer{}, spec);
}

}  // namespace cfm
