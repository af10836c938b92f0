#ifndef SIMDIAG_GEOMETRY_HPP
#define SIMDIAG_GEOMETRY_HPP

#include "simdiag/linalg.hpp"
#include "simdiag/vectorfield.hpp"

namespace simdiag {

/// Point of the extended phase space (state coordinates 0..n-1, explicit time
/// coordinate at index n). The metric depends only on f(x), so every geometric
/// quantity is independent of tau; the field is carried for interface
/// completeness.
struct ExtendedPoint {
  Vec state;
  double tau = 0.0;
};

/// Extended-phase-space metric at a point.
///
/// g  = [[I_n, -f], [-f^T, 1 + f^T f]]            (size (n+1) x (n+1))
/// g_inv = [[I_n + f f^T, f], [f^T, 1]]           (closed-form block inverse)
/// dg(i,j,k) = d g_ij / d coord_k; dg is empty until metric_partials fills it,
/// and the tau column dg(.,.,n) is identically zero.
struct MetricData {
  Mat g;
  Mat g_inv;
  Tensor3 dg;
};

/// Connection and curvature tensors at a point.
struct CurvatureData {
  MetricData metric;
  Tensor3 christoffel;          // christoffel(k,i,j)      = Gamma^k_ij
  Tensor4 christoffel_partials; // (k,i,j,m)               = d Gamma^k_ij / d coord_m
  Tensor4 riemann;              // riemann(l,i,j,k)        = R^l_ijk, component l of R(e_i,e_j)e_k
  Tensor4 riemann_lowered;      // riemann_lowered(l,i,j,k) = g_lm R^m_ijk
};

/// How the Christoffel partial derivatives are obtained.
enum class CurvaturePath {
  finite_difference, // central differences of christoffel_at over the state coordinates
  analytic           // chain-rule propagation of the Hessian through g_inv and dg
};

/// Metric and closed-form inverse from the field value (dg left empty).
MetricData metric_at(const Vec& f_val);

/// Metric, inverse, and coordinate partials dg from a derivative bundle.
MetricData metric_partials(const DerivativeBundle& bundle);

/// Levi-Civita connection coefficients,
/// Gamma^k_ij = 1/2 sum_l g_inv(k,l) (d_i g_jl + d_j g_il - d_l g_ij),
/// symmetric in (i,j) by construction.
Tensor3 christoffel_at(const DerivativeBundle& bundle);

/// Full curvature data at x. The Riemann tensor is
/// R^l_ijk = d_i Gamma^l_jk - d_j Gamma^l_ik
///           + sum_m (Gamma^l_im Gamma^m_jk - Gamma^l_jm Gamma^m_ik).
CurvatureData riemann_at(const VectorFieldModel& model, const Vec& x,
                         CurvaturePath path = CurvaturePath::finite_difference);

/// Same, reusing an already-computed bundle for the center point.
CurvatureData riemann_at(const VectorFieldModel& model, const Vec& x,
                         const DerivativeBundle& bundle, CurvaturePath path);

/// tau-independent overload.
CurvatureData riemann_at(const VectorFieldModel& model, const ExtendedPoint& p,
                         CurvaturePath path = CurvaturePath::finite_difference);

/// Trajectory tangent in the extended space, T = (f(x), 1).
Vec tangent_T(const Vec& f_val);

/// g-inner product a^T g b.
double metric_inner(const Mat& g, const Vec& a, const Vec& b);

/// Geodesic deviation endomorphism R_dev(s) = R(T,s)T:
/// component l = sum_{i,j,k} R^l_ijk T_i s_j T_k.
Vec geodesic_deviation(const CurvatureData& curv, const Vec& T, const Vec& s);

/// Sectional curvature of the plane spanned by v and w,
/// K(v,w) = g(R(w,v)w, v) / (g(v,v) g(w,w) - g(v,w)^2).
/// Throws DegeneratePlaneError when the denominator is below 1e-12.
double sectional_curvature(const CurvatureData& curv, const MetricData& metric,
                           const Vec& v, const Vec& w);

/// Geodesic-equation residual of the trajectory through x:
/// residual^k = a^k + sum_{i,j} Gamma^k_ij T_i T_j with T = (f(x), 1) and
/// a = (J_f f(x), 0). Vanishes when trajectories are geodesics.
Vec geodesic_residual(const VectorFieldModel& model, const Vec& x);

} // namespace simdiag

#endif
