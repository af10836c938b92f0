#include "simdiag/stretching.hpp"

#include <cmath>

namespace simdiag {

double classical_rate(const DerivativeBundle& bundle, const Vec& v) {
  const double vv = dot(v, v);
  if (vv == 0.0) throw std::invalid_argument("classical_rate: zero vector");
  return dot(matvec(bundle.jacobian, v), v) / vv;
}

FrameVectors frame_at(const Vec& f_val, double threshold) {
  if (f_val.size() != 2)
    throw DimensionError("frame_at: tangent/normal frame requires dimension 2");
  const double mag = norm(f_val);
  if (mag < threshold)
    throw EquilibriumError("frame_at: field magnitude below equilibrium threshold");
  return FrameVectors{Vec{f_val[0] / mag, f_val[1] / mag},
                      Vec{-f_val[1] / mag, f_val[0] / mag}};
}

std::optional<double> classical_ratio(const VectorFieldModel& model, const Vec& x) {
  const DerivativeBundle b = derivatives(model, x);
  const FrameVectors frame = frame_at(b.value);
  const double w_t = classical_rate(b, frame.v_t);
  const double w_o = classical_rate(b, frame.v_o);
  if (std::abs(w_t) < kSingularThreshold) return std::nullopt;
  return w_o / w_t;
}

Vec lift(const Vec& v) {
  Vec out(v);
  out.push_back(0.0);
  return out;
}

double geodesic_rate_from(const CurvatureData& curv, const Vec& f_val, const Vec& v) {
  if (dot(v, v) == 0.0) throw std::invalid_argument("geodesic_rate: zero vector");
  const Vec vt = lift(v);
  const Vec T = tangent_T(f_val);
  const Vec dev = geodesic_deviation(curv, T, vt);
  return metric_inner(curv.metric.g, dev, vt) / metric_inner(curv.metric.g, vt, vt);
}

double geodesic_rate(const VectorFieldModel& model, const Vec& x, const Vec& v,
                     CurvaturePath path) {
  const DerivativeBundle b = derivatives(model, x);
  const CurvatureData curv = riemann_at(model, x, b, path);
  return geodesic_rate_from(curv, b.value, v);
}

std::optional<double> geodesic_ratio(const VectorFieldModel& model, const Vec& x,
                                     CurvaturePath path) {
  return full_report(model, x, path).geodesic_ratio;
}

StretchingReport full_report(const VectorFieldModel& model, const Vec& x,
                             CurvaturePath path) {
  const DerivativeBundle b = derivatives(model, x);
  const FrameVectors frame = frame_at(b.value);

  StretchingReport rep;
  rep.classical_tangent = classical_rate(b, frame.v_t);
  rep.classical_normal = classical_rate(b, frame.v_o);
  if (std::abs(rep.classical_tangent) >= kSingularThreshold)
    rep.classical_ratio = rep.classical_normal / rep.classical_tangent;

  const CurvatureData curv = riemann_at(model, x, b, path);
  rep.geodesic_tangent = geodesic_rate_from(curv, b.value, frame.v_t);
  rep.geodesic_normal = geodesic_rate_from(curv, b.value, frame.v_o);
  if (std::abs(rep.geodesic_tangent) >= kSingularThreshold)
    rep.geodesic_ratio = rep.geodesic_normal / rep.geodesic_tangent;
  return rep;
}

} // namespace simdiag
