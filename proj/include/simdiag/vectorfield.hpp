#ifndef SIMDIAG_VECTORFIELD_HPP
#define SIMDIAG_VECTORFIELD_HPP

#include <functional>
#include <string>
#include <vector>

#include "simdiag/errors.hpp"
#include "simdiag/linalg.hpp"

namespace simdiag {

enum class DerivMode { analytic, finite_difference };

/// Field value and its first two derivatives at a point.
struct DerivativeBundle {
  Vec value;       // f(x), length n
  Mat jacobian;    // jacobian(i,j) = d f_i / d x_j
  Tensor3 hessian; // hessian(i,j,k) = d^2 f_i / d x_j d x_k, symmetric in (j,k)
};

struct Trajectory {
  Vec times;               // strictly increasing
  std::vector<Vec> points; // same length as times
};

/// An n-dimensional smooth vector field dx/dt = f(x).
///
/// The evaluator must be C^2 on the guarded domain; curvature computations
/// differentiate the field twice. Models are immutable value types after
/// construction and safe to share across concurrent evaluations.
struct VectorFieldModel {
  std::size_t dimension = 0;
  std::function<Vec(const Vec&)> evaluator;
  std::function<Mat(const Vec&)> analytic_jacobian;    // used when jacobian_mode == analytic
  std::function<Tensor3(const Vec&)> analytic_hessian; // used when hessian_mode == analytic
  DerivMode jacobian_mode = DerivMode::finite_difference;
  DerivMode hessian_mode = DerivMode::finite_difference;
  double fd_step = default_fd_step();
  std::function<bool(const Vec&)> domain_guard; // empty guard = all of R^n
  std::string name = "custom";

  // cbrt(machine epsilon) for unit coordinate scale, floored at 1e-6
  static double default_fd_step();
};

/// Davis-Skodje system: dx/dt = -x, dy/dt = -g*y + ((g-1)x + g*x^2)/(1+x)^2,
/// with analytic Jacobian/Hessian and domain guard x > 0. Requires gamma > 1.
VectorFieldModel make_davis_skodje(double gamma);

/// f(x) = A x with exact Jacobian A and zero Hessian.
VectorFieldModel make_linear(const Mat& A);

/// f(x) = c everywhere; Jacobian and Hessian identically zero.
VectorFieldModel make_constant(const Vec& c);

/// Graph of the Davis-Skodje slow manifold, y = x/(1+x).
inline double davis_skodje_sim(double x) { return x / (1.0 + x); }

/// Throws DomainError unless x has the model's dimension, is finite, and
/// passes the domain guard.
void check_state(const VectorFieldModel& model, const Vec& x);

/// Guarded field evaluation; throws NumericalError on non-finite output.
Vec eval_field(const VectorFieldModel& model, const Vec& x);

/// Value, Jacobian and Hessian at x. Finite-difference modes use central
/// stencils with step fd_step; the FD Hessian is symmetrized exactly by
/// mirroring the upper triangle.
DerivativeBundle derivatives(const VectorFieldModel& model, const Vec& x);

/// Fixed-step classical RK4 from x0 to t_end. Every visited point is checked
/// against the domain guard; a violation reports the last valid time.
Trajectory integrate(const VectorFieldModel& model, const Vec& x0, double t_end,
                     double dt);

} // namespace simdiag

#endif
