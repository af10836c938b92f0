#ifndef SIMDIAG_SIMFINDER_HPP
#define SIMDIAG_SIMFINDER_HPP

#include <functional>
#include <utility>
#include <vector>

#include "simdiag/stretching.hpp"

namespace simdiag {

enum class Objective { geodesic_ratio, classical_ratio };

enum class FiberStatus { converged, boundary, singular_dominated };

const char* to_string(FiberStatus s);

/// One-dimensional search problem along a fiber of the reaction progress
/// variable: coordinate rpv_index is held at rpv_value, the free coordinate
/// sweeps [fiber_low, fiber_high].
struct FiberProblem {
  std::size_t rpv_index = 0;
  double rpv_value = 0.0;
  double fiber_low = 0.0;
  double fiber_high = 1.0;
  Objective objective = Objective::geodesic_ratio;
};

struct FiberResult {
  double maximizer = 0.0;
  double value = 0.0;
  FiberStatus status = FiberStatus::converged;
  int iterations = 0; // golden-section iterations spent in refinement
};

struct SimEntry {
  double rpv_value = 0.0;
  double maximizer = 0.0;       // NaN when the fiber produced no usable sample
  double objective_value = 0.0; // NaN likewise
  FiberStatus status = FiberStatus::converged;
};

struct SimCurve {
  std::vector<SimEntry> entries; // strictly monotone in rpv_value
};

struct ReferenceError {
  double max_abs = 0.0;
  double mean_abs = 0.0;
  Vec per_point;
};

struct TraceOptions {
  int coarse_points = 33;
  double tol = 1e-8;
  // Center each fiber's window at the previous converged maximizer with
  // half-width 25% of the fiber width, clamped to the fiber bounds.
  bool warm_start = false;
  CurvaturePath path = CurvaturePath::finite_difference;
};

/// Two-phase bounded maximization: uniform coarse scan (nullopt samples
/// skipped), then golden-section refinement in the bracket around the best
/// coarse sample until the bracket width is at most tol. Status is boundary
/// when the best coarse sample is an endpoint, singular_dominated when more
/// than half the coarse samples were unusable. Ties break toward the smaller
/// coordinate; the returned value never falls below the best coarse sample.
/// Throws FiberError when every sample is unusable.
FiberResult maximize_scalar(const std::function<std::optional<double>(double)>& objective,
                            double lo, double hi, int coarse_points, double tol);

/// maximize_scalar applied to the stretching-ratio objective along the fiber.
FiberResult maximize_fiber(const FiberProblem& problem, const VectorFieldModel& model,
                           int coarse_points, double tol,
                           CurvaturePath path = CurvaturePath::finite_difference);

/// Runs maximize_fiber for each rpv value; bounds_for maps an rpv value to
/// that fiber's bounds. Per-fiber failures mark the entry (NaN maximizer,
/// singular_dominated) and the trace continues.
SimCurve trace_sim(const VectorFieldModel& model, std::size_t rpv_index,
                   const Vec& rpv_values,
                   const std::function<std::pair<double, double>(double)>& bounds_for,
                   Objective objective, const TraceOptions& opts = {});

/// Fixed bounds for every fiber.
SimCurve trace_sim(const VectorFieldModel& model, std::size_t rpv_index,
                   const Vec& rpv_values, std::pair<double, double> fiber_bounds,
                   Objective objective, const TraceOptions& opts = {});

/// Absolute maximizer error against a reference graph over converged entries.
/// Throws FiberError when the curve has no converged entry.
ReferenceError compare_reference(const SimCurve& curve,
                                 const std::function<double(double)>& reference);

} // namespace simdiag

#endif
