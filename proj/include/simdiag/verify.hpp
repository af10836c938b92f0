#ifndef SIMDIAG_VERIFY_HPP
#define SIMDIAG_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "simdiag/geometry.hpp"
#include "simdiag/vectorfield.hpp"

namespace simdiag {

struct CheckResult {
  std::string name;
  double measured = 0.0;  // worst value observed
  double tolerance = 0.0;
  bool pass = false;
};

struct CheckOptions {
  int metric_points = 100;
  int lifts_per_point = 10;
  int compatibility_points = 50;
  int curvature_points = 20;
  int residual_points = 20;
  int identity_pairs = 100;
  std::uint64_t seed = 9176;
  Vec box_low, box_high; // sampling box; empty = model default
  CurvaturePath path = CurvaturePath::finite_difference;
  // Negative-control hook: flips the sign of one metric partial inside the
  // compatibility check so the check must fail.
  bool corrupt_metric_sign = false;
};

/// Runs the full invariant suite (metric identities, det g = 1, Christoffel
/// symmetry, metric compatibility, Riemann symmetries, first Bianchi,
/// R_dev(T) = 0, geodesic residuals, rate/sectional-curvature identity) at
/// deterministic random points of the sampling box.
std::vector<CheckResult> run_checks(const VectorFieldModel& model,
                                    const CheckOptions& opts = {});

bool all_passed(const std::vector<CheckResult>& results);

} // namespace simdiag

#endif
