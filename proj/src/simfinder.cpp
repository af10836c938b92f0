#include "simdiag/simfinder.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

namespace simdiag {

const char* to_string(FiberStatus s) {
  switch (s) {
    case FiberStatus::converged: return "converged";
    case FiberStatus::boundary: return "boundary";
    case FiberStatus::singular_dominated: return "singular-dominated";
  }
  return "unknown";
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Objective along the fiber; nullopt marks an unusable sample (singular
// ratio, equilibrium point, or out-of-domain).
std::optional<double> fiber_objective(const FiberProblem& p, const VectorFieldModel& model,
                                      CurvaturePath path, double y) {
  Vec x(2);
  x[p.rpv_index] = p.rpv_value;
  x[1 - p.rpv_index] = y;
  try {
    if (p.objective == Objective::geodesic_ratio) return geodesic_ratio(model, x, path);
    return classical_ratio(model, x);
  } catch (const DomainError&) {
    return std::nullopt;
  } catch (const EquilibriumError&) {
    return std::nullopt;
  } catch (const NumericalError&) {
    return std::nullopt;
  }
}

struct BestSample {
  double y = 0.0;
  double q = kNegInf;
  bool found = false;

  // strict improvement, ties broken toward the smaller coordinate
  void offer(double y_new, double q_new) {
    if (!found || q_new > q || (q_new == q && y_new < y)) {
      y = y_new;
      q = q_new;
      found = true;
    }
  }
};

} // namespace

FiberResult maximize_scalar(const std::function<std::optional<double>(double)>& objective,
                            double lo, double hi, int coarse_points, double tol) {
  if (!(lo < hi))
    throw std::invalid_argument("maximize_scalar: bounds must satisfy low < high");
  if (coarse_points < 8)
    throw std::invalid_argument("maximize_scalar: coarse_points must be at least 8");
  if (!(tol > 0.0)) throw std::invalid_argument("maximize_scalar: tol must be positive");

  const int m = coarse_points;
  const double width = hi - lo;

  // phase 1: uniform coarse scan, skipping unusable samples
  std::vector<double> ys(m);
  int skipped = 0;
  int best_idx = -1;
  BestSample best;
  for (int i = 0; i < m; ++i) {
    ys[i] = lo + width * i / (m - 1);
    const auto q = objective(ys[i]);
    if (!q) {
      ++skipped;
      continue;
    }
    if (best_idx < 0 || *q > best.q) best_idx = i;
    best.offer(ys[i], *q);
  }
  if (best_idx < 0)
    throw FiberError("maximize_scalar: every coarse sample was singular or out of domain");

  const bool dominated = skipped > m / 2;

  if (best_idx == 0 || best_idx == m - 1)
    return FiberResult{best.y, best.q, FiberStatus::boundary, 0};

  // phase 2: golden-section refinement in the bracket around the best sample
  const double invphi = 1.0 / std::numbers::phi;
  double a = ys[best_idx - 1];
  double b = ys[best_idx + 1];
  auto eval = [&](double y) {
    const auto q = objective(y);
    if (q) best.offer(y, *q);
    return q ? *q : kNegInf;
  };
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double qc = eval(c);
  double qd = eval(d);
  int iterations = 0;
  while (b - a > tol) {
    ++iterations;
    if (qc >= qd) { // ties shrink toward the smaller coordinate
      b = d;
      d = c;
      qd = qc;
      c = b - invphi * (b - a);
      qc = eval(c);
    } else {
      a = c;
      c = d;
      qc = qd;
      d = a + invphi * (b - a);
      qd = eval(d);
    }
  }

  return FiberResult{best.y, best.q,
                     dominated ? FiberStatus::singular_dominated : FiberStatus::converged,
                     iterations};
}

FiberResult maximize_fiber(const FiberProblem& problem, const VectorFieldModel& model,
                           int coarse_points, double tol, CurvaturePath path) {
  if (model.dimension != 2)
    throw DimensionError("maximize_fiber: ratio objectives require dimension 2");
  if (problem.rpv_index > 1)
    throw std::invalid_argument("maximize_fiber: rpv_index must be 0 or 1");
  try {
    return maximize_scalar(
        [&](double y) { return fiber_objective(problem, model, path, y); },
        problem.fiber_low, problem.fiber_high, coarse_points, tol);
  } catch (const FiberError&) {
    throw FiberError("maximize_fiber: every coarse sample was singular or out of domain");
  }
}

SimCurve trace_sim(const VectorFieldModel& model, std::size_t rpv_index,
                   const Vec& rpv_values,
                   const std::function<std::pair<double, double>(double)>& bounds_for,
                   Objective objective, const TraceOptions& opts) {
  if (rpv_values.empty())
    throw std::invalid_argument("trace_sim: rpv_values must be nonempty");
  for (std::size_t i = 1; i < rpv_values.size(); ++i) {
    const bool inc = rpv_values[1] > rpv_values[0];
    if ((inc && rpv_values[i] <= rpv_values[i - 1]) ||
        (!inc && rpv_values[i] >= rpv_values[i - 1]))
      throw std::invalid_argument("trace_sim: rpv_values must be strictly monotone");
  }

  SimCurve curve;
  curve.entries.reserve(rpv_values.size());
  std::optional<double> prev_maximizer;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (double r : rpv_values) {
    auto [lo, hi] = bounds_for(r);
    if (opts.warm_start && prev_maximizer) {
      const double half = 0.25 * (hi - lo);
      const double lo_w = std::max(lo, *prev_maximizer - half);
      const double hi_w = std::min(hi, *prev_maximizer + half);
      if (lo_w < hi_w) {
        lo = lo_w;
        hi = hi_w;
      }
    }
    FiberProblem problem{rpv_index, r, lo, hi, objective};
    try {
      const FiberResult res =
          maximize_fiber(problem, model, opts.coarse_points, opts.tol, opts.path);
      curve.entries.push_back(SimEntry{r, res.maximizer, res.value, res.status});
      if (res.status == FiberStatus::converged) prev_maximizer = res.maximizer;
    } catch (const FiberError&) {
      curve.entries.push_back(SimEntry{r, nan, nan, FiberStatus::singular_dominated});
    }
  }
  return curve;
}

SimCurve trace_sim(const VectorFieldModel& model, std::size_t rpv_index,
                   const Vec& rpv_values, std::pair<double, double> fiber_bounds,
                   Objective objective, const TraceOptions& opts) {
  return trace_sim(
      model, rpv_index, rpv_values, [fiber_bounds](double) { return fiber_bounds; },
      objective, opts);
}

ReferenceError compare_reference(const SimCurve& curve,
                                 const std::function<double(double)>& reference) {
  if (curve.entries.empty())
    throw std::invalid_argument("compare_reference: empty curve");
  ReferenceError err;
  double sum = 0.0;
  for (const SimEntry& e : curve.entries) {
    if (e.status != FiberStatus::converged) continue;
    const double d = std::abs(e.maximizer - reference(e.rpv_value));
    err.per_point.push_back(d);
    err.max_abs = std::max(err.max_abs, d);
    sum += d;
  }
  if (err.per_point.empty())
    throw FiberError("compare_reference: curve has no converged entries");
  err.mean_abs = sum / err.per_point.size();
  return err;
}

} // namespace simdiag
