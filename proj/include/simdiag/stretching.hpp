#ifndef SIMDIAG_STRETCHING_HPP
#define SIMDIAG_STRETCHING_HPP

#include <optional>

#include "simdiag/geometry.hpp"
#include "simdiag/vectorfield.hpp"

namespace simdiag {

// Below this field magnitude a point counts as an equilibrium (no frame).
inline constexpr double kEquilibriumThreshold = 1e-10;
// Below this magnitude a denominator rate makes the ratio singular.
inline constexpr double kSingularThreshold = 1e-10;

/// Euclidean unit tangent/normal frame along the trajectory (n = 2 only).
struct FrameVectors {
  Vec v_t; // f / |f|
  Vec v_o; // 90 degree rotation (-f2, f1) / |f|
};

/// Classical and geodesic stretching rates and ratios at one point.
/// A disengaged ratio marks the singular case |tangent rate| < threshold.
struct StretchingReport {
  double classical_tangent = 0.0;
  double classical_normal = 0.0;
  std::optional<double> classical_ratio;
  double geodesic_tangent = 0.0;
  double geodesic_normal = 0.0;
  std::optional<double> geodesic_ratio;
};

/// Stretching rate <J_f v, v> / <v, v> in the Euclidean inner product.
double classical_rate(const DerivativeBundle& bundle, const Vec& v);

/// Unit tangent/normal frame from the field value. Throws EquilibriumError
/// below the threshold and DimensionError for n != 2.
FrameVectors frame_at(const Vec& f_val, double threshold = kEquilibriumThreshold);

/// Normal-to-tangent classical rate ratio; nullopt when singular.
std::optional<double> classical_ratio(const VectorFieldModel& model, const Vec& x);

/// Lift v in R^n to (v, 0) in R^{n+1}.
Vec lift(const Vec& v);

/// Geodesic stretching rate g(R_dev(v~), v~) / g(v~, v~) with v~ = lift(v).
double geodesic_rate(const VectorFieldModel& model, const Vec& x, const Vec& v,
                     CurvaturePath path = CurvaturePath::finite_difference);

/// Same, from precomputed curvature at the point with field value f_val.
double geodesic_rate_from(const CurvatureData& curv, const Vec& f_val, const Vec& v);

/// Normal-to-tangent geodesic rate ratio; nullopt when singular.
std::optional<double> geodesic_ratio(const VectorFieldModel& model, const Vec& x,
                                     CurvaturePath path = CurvaturePath::finite_difference);

/// All six stretching quantities from one shared derivative evaluation.
StretchingReport full_report(const VectorFieldModel& model, const Vec& x,
                             CurvaturePath path = CurvaturePath::finite_difference);

} // namespace simdiag

#endif
