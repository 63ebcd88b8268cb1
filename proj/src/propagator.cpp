#include "cfm/propagator.hpp"

namespace cfm {

CanonicalState step_once(const CanonicalState& state, double energy,
                         const PotentialFn& veff, double h) {
  const double x1 = state.x;
  const double x2 = state.x + 0.5 * h;
  const double x3 = state.x + h;
  const double v1 = veff(x1);
  if (!std::isfinite(v1)) throw StepError(x1);
  const double v2 = veff(x2);
  if (!std::isfinite(v2)) throw StepError(x2);
  const double v3 = veff(x3);
  if (!std::isfinite(v3)) throw StepError(x3);

  const double w1 = v1 - energy;
  const double w2 = v2 - energy;
  const double w3 = v3 - energy;
  const detail::Pair a =
      detail::rk4_linear({state.alpha, state.alpha_p}, w1, w2, w3, h);
  const detail::Pair b =
      detail::rk4_linear({state.beta, state.beta_p}, w1, w2, w3, h);
  return {x3, a.y, a.yp, b.y, b.yp};
}

MarchResult march_to_boundary(double energy, const PotentialFn& veff, double x0,
                              Boundary boundary, RatioKind kind,
                              const MarchConfig& cfg) {
  return detail::march(energy, veff, x0, boundary, kind, cfg);
}

MarchResult march_with_trace(double energy, const PotentialFn& veff, double x0,
                             Boundary boundary, RatioKind kind,
                             const MarchConfig& cfg,
                             std::vector<CanonicalState>& trace) {
  trace.clear();
  trace.push_back(init_at(x0));
  trace.front().alpha = cfg.initial_scale;
  trace.front().beta_p = cfg.initial_scale;
  return detail::march(energy, veff, x0, boundary, kind, cfg,
                       [&trace](const CanonicalState& s) { trace.push_back(s); });
}

}  // namespace cfm
