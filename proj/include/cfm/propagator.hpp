#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace cfm {

/// Position plus the four canonical values at that position. The two columns
/// (alpha, alpha_p) and (beta, beta_p) are the basis solutions fixed by
/// alpha(x0)=1, alpha'(x0)=0, beta(x0)=0, beta'(x0)=1; they satisfy
/// alpha*beta' - alpha'*beta = 1 up to integration error.
struct CanonicalState {
  double x;
  double alpha;
  double alpha_p;
  double beta;
  double beta_p;

  double wronskian() const { return alpha * beta_p - alpha_p * beta; }
};

enum class RatioKind { value, derivative };  // -alpha/beta vs -alpha'/beta'

enum class Direction { toward_left, toward_right };

/// Marching controls. The propagator integrates the scaled equation
/// y'' = (veff(x) - E) y; callers fold their mass convention into veff and E.
struct MarchConfig {
  double step = 5e-3;            // base step h
  double saturation_tol = 1e-10; // relative ratio-change threshold
  double max_extent = 200.0;     // cap on |x - x0|
  double r_min = 1e-6;           // radial inner cutoff (used by problem builders)
  Direction direction = Direction::toward_right;
  double initial_scale = 1.0;    // diagnostic hook: scales both basis pairs
  // Potential discontinuities. Steps shrink geometrically into and out of
  // these points so no stage ever straddles a jump with a full step.
  std::vector<double> breakpoints;
};

/// Either a finite stopping point or "march until the ratio saturates".
struct Boundary {
  bool finite;
  double x_b;  // meaningful when finite

  static Boundary at(double x) { return Boundary{true, x}; }
  static Boundary infinity() { return Boundary{false, 0.0}; }
};

struct MarchResult {
  double ratio = 0.0;
  double x_stop = 0.0;
  bool saturated = false;      // meaningful for infinite boundaries
  bool pole = false;           // ratio denominator vanished at the endpoint
  // Max |W/W0 - 1| over the steps where W is representable: once forbidden
  // region growth exceeds ~1e4 the product alpha beta' - alpha' beta cancels
  // below double precision and the invariant cannot be measured.
  double wronskian_drift = 0.0;
  std::int64_t steps = 0;
};

/// A veff sample came back non-finite; carries the offending abscissa.
struct StepError : std::runtime_error {
  explicit StepError(double x)
      : std::runtime_error("propagator: non-finite potential sample"),
        abscissa(x) {}
  double abscissa;
};

/// Canonical initial data at the anchor.
inline CanonicalState init_at(double x0) { return {x0, 1.0, 0.0, 0.0, 1.0}; }

namespace detail {

// |V_eff| h^2 limit that triggers geometric step shrinking near
// singularities. Equivalently a cap on the per-step phase (kappa h)^2, sized
// so the RK4 Wronskian drift (kappa h)^6/72 per step stays integrable below
// 1e-8 even across the 1/r region of radial problems.
constexpr double kStepCurvatureLimit = 2e-3;
constexpr double kRescaleLimit = 1e100;
constexpr int kMaxShrinks = 60;
constexpr double kBreakpointStep = 1e-9;  // smallest step next to a jump

struct Pair {
  double y, yp;
};

// One classical RK4 step for y'' = w(x) y given the three coefficient
// samples w1 = w(x), w2 = w(x+h/2), w3 = w(x+h). The mid-step sample is
// shared by the two interior stages because the system is linear.
inline Pair rk4_linear(Pair s, double w1, double w2, double w3, double h) {
  const double k1y = s.yp;
  const double k1p = w1 * s.y;
  const double k2y = s.yp + 0.5 * h * k1p;
  const double k2p = w2 * (s.y + 0.5 * h * k1y);
  const double k3y = s.yp + 0.5 * h * k2p;
  const double k3p = w2 * (s.y + 0.5 * h * k2y);
  const double k4y = s.yp + h * k3p;
  const double k4p = w3 * (s.y + h * k3y);
  return {s.y + h / 6.0 * (k1y + 2.0 * (k2y + k3y) + k4y),
          s.yp + h / 6.0 * (k1p + 2.0 * (k2p + k3p) + k4p)};
}

inline double ratio_of(const CanonicalState& s, RatioKind kind) {
  return kind == RatioKind::value ? -s.alpha / s.beta : -s.alpha_p / s.beta_p;
}

struct NoTrace {
  void operator()(const CanonicalState&) const {}
};

// Core march shared by the std::function front end and the solver's
// variant-dispatched fast path. Veff must be callable for every abscissa
// between x0 and the stopping point.
template <class Veff, class OnStep = NoTrace>
MarchResult march(double energy, Veff&& veff, double x0, Boundary boundary,
                  RatioKind kind, const MarchConfig& cfg, OnStep&& on_step = {}) {
  const double dir = cfg.direction == Direction::toward_left ? -1.0 : 1.0;
  if (boundary.finite && (boundary.x_b - x0) * dir <= 0.0)
    throw std::invalid_argument("march: boundary is not ahead of the anchor");
  if (!(cfg.step > 0.0) || !(cfg.saturation_tol > 0.0) ||
      !(cfg.saturation_tol < 1.0) || !(cfg.max_extent > 0.0))
    throw std::invalid_argument("march: invalid MarchConfig");

  CanonicalState s{x0, cfg.initial_scale, 0.0, 0.0, cfg.initial_scale};
  double wref = cfg.initial_scale * cfg.initial_scale;

  MarchResult res;
  double w_here = veff(s.x) - energy;
  if (!std::isfinite(w_here)) throw StepError(s.x);

  double prev_ratio = std::numeric_limits<double>::quiet_NaN();
  bool have_prev = false;
  double last_cmp_x = x0;  // saturation samples are cfg.step apart, even when
                           // individual steps were subdivided

  for (;;) {
    double h = cfg.step;
    if (!cfg.breakpoints.empty()) {
      double ahead = std::numeric_limits<double>::infinity();
      double behind = std::numeric_limits<double>::infinity();
      for (double bp : cfg.breakpoints) {
        const double d = (bp - s.x) * dir;
        if (d > 0.0)
          ahead = std::min(ahead, d);
        else
          behind = std::min(behind, -d);
      }
      if (behind < h) h = std::max(behind, kBreakpointStep);
      if (ahead < 2.0 * h) h = std::max(std::min(h, 0.5 * ahead), kBreakpointStep);
    }
    bool final_step = false;
    if (boundary.finite) {
      const double remaining = (boundary.x_b - s.x) * dir;
      if (remaining <= h) {
        h = remaining;
        final_step = true;
      }
    }

    // Shrink the step while the potential at the step's end is too large for
    // the step size; restored implicitly since the next step starts from the
    // base step again.
    double v_dest = veff(s.x + dir * h);
    for (int i = 0; i < kMaxShrinks && std::abs(v_dest) * h * h > kStepCurvatureLimit;
         ++i) {
      h *= 0.5;
      final_step = false;
      v_dest = veff(s.x + dir * h);
    }
    if (!std::isfinite(v_dest)) throw StepError(s.x + dir * h);
    const double v_mid = veff(s.x + dir * 0.5 * h);
    if (!std::isfinite(v_mid)) throw StepError(s.x + dir * 0.5 * h);

    const double hs = dir * h;
    const double w_mid = v_mid - energy;
    const double w_dest = v_dest - energy;
    const Pair a = rk4_linear({s.alpha, s.alpha_p}, w_here, w_mid, w_dest, hs);
    const Pair b = rk4_linear({s.beta, s.beta_p}, w_here, w_mid, w_dest, hs);
    s.alpha = a.y;
    s.alpha_p = a.yp;
    s.beta = b.y;
    s.beta_p = b.yp;
    s.x = final_step ? boundary.x_b : s.x + hs;
    w_here = w_dest;
    ++res.steps;

    // Ratios are scale invariant, so rescaling does not disturb the
    // saturation comparison below.
    const double mag = std::max(std::max(std::abs(s.alpha), std::abs(s.alpha_p)),
                                std::max(std::abs(s.beta), std::abs(s.beta_p)));
    if (mag > kRescaleLimit) {
      const double f = 1.0 / mag;
      s.alpha *= f;
      s.alpha_p *= f;
      s.beta *= f;
      s.beta_p *= f;
      wref *= f * f;
    }
    on_step(s);

    // Skip the drift sample once the cancellation noise eps * |alpha beta'|
    // approaches the 1e-8 scale being certified.
    const double cancel_scale =
        std::abs(s.alpha * s.beta_p) + std::abs(s.alpha_p * s.beta);
    if (cancel_scale * 2.3e-16 < 1e-10 * wref)
      res.wronskian_drift =
          std::max(res.wronskian_drift, std::abs(s.wronskian() / wref - 1.0));

    if (boundary.finite) {
      if (final_step) {
        res.ratio = ratio_of(s, kind);
        res.x_stop = s.x;
        res.pole = !std::isfinite(res.ratio);
        return res;
      }
      continue;
    }

    if (std::abs(s.x - last_cmp_x) >= cfg.step * (1.0 - 1e-9)) {
      last_cmp_x = s.x;
      const double r = ratio_of(s, kind);
      if (std::isfinite(r)) {
        if (have_prev &&
            std::abs(r - prev_ratio) <=
                cfg.saturation_tol * std::max(1.0, std::abs(r))) {
          res.ratio = r;
          res.x_stop = s.x;
          res.saturated = true;
          return res;
        }
        prev_ratio = r;
        have_prev = true;
      } else {
        have_prev = false;
      }
    }

    if (std::abs(s.x - x0) >= cfg.max_extent) {
      res.ratio = have_prev ? prev_ratio : ratio_of(s, kind);
      res.x_stop = s.x;
      res.saturated = false;
      res.pole = !std::isfinite(res.ratio);
      return res;
    }
  }
}

}  // namespace detail

using PotentialFn = std::function<double(double)>;

/// Advances both basis pairs by one RK4 step of signed size h.
CanonicalState step_once(const CanonicalState& state, double energy,
                         const PotentialFn& veff, double h);

/// Marches from x0 to a finite boundary (exact landing) or until the selected
/// ratio saturates. See MarchResult for the outcome flags.
MarchResult march_to_boundary(double energy, const PotentialFn& veff, double x0,
                              Boundary boundary, RatioKind kind,
                              const MarchConfig& cfg);

/// Same march, recording every accepted state (plot-data diagnostics).
MarchResult march_with_trace(double energy, const PotentialFn& veff, double x0,
                             Boundary boundary, RatioKind kind,
                             const MarchConfig& cfg,
                             std::vector<CanonicalState>& trace);

}  // namespace cfm
