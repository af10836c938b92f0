#include "simdiag/vectorfield.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace simdiag {

double VectorFieldModel::default_fd_step() {
  return std::max(1e-6, std::cbrt(std::numeric_limits<double>::epsilon()));
}

VectorFieldModel make_davis_skodje(double gamma) {
  if (!(gamma > 1.0))
    throw std::invalid_argument("davis-skodje requires gamma > 1");
  VectorFieldModel m;
  m.dimension = 2;
  m.name = "davis-skodje";
  m.evaluator = [gamma](const Vec& x) {
    const double s = 1.0 + x[0];
    return Vec{-x[0],
               -gamma * x[1] + ((gamma - 1.0) * x[0] + gamma * x[0] * x[0]) / (s * s)};
  };
  m.analytic_jacobian = [gamma](const Vec& x) {
    Mat J(2, 2);
    const double s = 1.0 + x[0];
    J(0, 0) = -1.0;
    J(1, 0) = ((gamma - 1.0) + (gamma + 1.0) * x[0]) / (s * s * s);
    J(1, 1) = -gamma;
    return J;
  };
  m.analytic_hessian = [gamma](const Vec& x) {
    Tensor3 H(2, 2, 2);
    const double s = 1.0 + x[0];
    H(1, 0, 0) = ((4.0 - 2.0 * gamma) - 2.0 * (gamma + 1.0) * x[0]) / (s * s * s * s);
    return H;
  };
  m.jacobian_mode = DerivMode::analytic;
  m.hessian_mode = DerivMode::analytic;
  m.domain_guard = [](const Vec& x) { return x[0] > 0.0; };
  return m;
}

VectorFieldModel make_linear(const Mat& A) {
  if (A.rows() != A.cols() || A.rows() == 0)
    throw std::invalid_argument("linear model requires a square matrix");
  const std::size_t n = A.rows();
  VectorFieldModel m;
  m.dimension = n;
  m.name = "linear";
  m.evaluator = [A](const Vec& x) { return matvec(A, x); };
  m.analytic_jacobian = [A](const Vec&) { return A; };
  m.analytic_hessian = [n](const Vec&) { return Tensor3(n, n, n); };
  m.jacobian_mode = DerivMode::analytic;
  m.hessian_mode = DerivMode::analytic;
  return m;
}

VectorFieldModel make_constant(const Vec& c) {
  if (c.empty()) throw std::invalid_argument("constant model requires a nonempty vector");
  const std::size_t n = c.size();
  VectorFieldModel m;
  m.dimension = n;
  m.name = "constant";
  m.evaluator = [c](const Vec&) { return c; };
  m.analytic_jacobian = [n](const Vec&) { return Mat(n, n); };
  m.analytic_hessian = [n](const Vec&) { return Tensor3(n, n, n); };
  m.jacobian_mode = DerivMode::analytic;
  m.hessian_mode = DerivMode::analytic;
  return m;
}

void check_state(const VectorFieldModel& model, const Vec& x) {
  if (x.size() != model.dimension)
    throw DimensionError("state has length " + std::to_string(x.size()) +
                         ", model dimension is " + std::to_string(model.dimension));
  if (!all_finite(x)) throw DomainError("state has non-finite components");
  if (model.domain_guard && !model.domain_guard(x)) {
    std::ostringstream msg;
    msg << "state (";
    for (std::size_t i = 0; i < x.size(); ++i) msg << (i ? ", " : "") << x[i];
    msg << ") violates the domain guard of model '" << model.name << "'";
    throw DomainError(msg.str());
  }
}

Vec eval_field(const VectorFieldModel& model, const Vec& x) {
  check_state(model, x);
  Vec f = model.evaluator(x);
  if (f.size() != model.dimension)
    throw DimensionError("evaluator output length does not match the model dimension");
  if (!all_finite(f)) throw NumericalError("field value is non-finite");
  return f;
}

DerivativeBundle derivatives(const VectorFieldModel& model, const Vec& x) {
  const std::size_t n = model.dimension;
  const double h = model.fd_step;
  if (!(h > 0.0)) throw std::invalid_argument("fd_step must be positive");

  DerivativeBundle b;
  b.value = eval_field(model, x);

  if (model.jacobian_mode == DerivMode::analytic && model.analytic_jacobian) {
    b.jacobian = model.analytic_jacobian(x);
  } else {
    // 2-point central difference per coordinate
    b.jacobian = Mat(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      Vec xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      const Vec fp = eval_field(model, xp);
      const Vec fm = eval_field(model, xm);
      for (std::size_t i = 0; i < n; ++i) b.jacobian(i, j) = (fp[i] - fm[i]) / (2.0 * h);
    }
  }

  if (model.hessian_mode == DerivMode::analytic && model.analytic_hessian) {
    b.hessian = model.analytic_hessian(x);
  } else {
    // central second differences; upper triangle mirrored so the (j,k)
    // symmetry is exact
    b.hessian = Tensor3(n, n, n);
    std::vector<Vec> fp(n), fm(n);
    for (std::size_t j = 0; j < n; ++j) {
      Vec xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      fp[j] = eval_field(model, xp);
      fm[j] = eval_field(model, xm);
    }
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i)
        b.hessian(i, j, j) = (fp[j][i] - 2.0 * b.value[i] + fm[j][i]) / (h * h);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        Vec xpp = x, xpm = x, xmp = x, xmm = x;
        xpp[j] += h; xpp[k] += h;
        xpm[j] += h; xpm[k] -= h;
        xmp[j] -= h; xmp[k] += h;
        xmm[j] -= h; xmm[k] -= h;
        const Vec gpp = eval_field(model, xpp);
        const Vec gpm = eval_field(model, xpm);
        const Vec gmp = eval_field(model, xmp);
        const Vec gmm = eval_field(model, xmm);
        for (std::size_t i = 0; i < n; ++i) {
          const double v = (gpp[i] - gpm[i] - gmp[i] + gmm[i]) / (4.0 * h * h);
          b.hessian(i, j, k) = v;
          b.hessian(i, k, j) = v;
        }
      }
    }
  }
  return b;
}

Trajectory integrate(const VectorFieldModel& model, const Vec& x0, double t_end,
                     double dt) {
  if (!(t_end > 0.0) || !(dt > 0.0))
    throw std::invalid_argument("integrate requires t_end > 0 and dt > 0");
  if (dt > t_end * (1.0 + 1e-12))
    throw std::invalid_argument("integrate requires dt <= t_end");
  check_state(model, x0);

  const long steps = std::max(1L, std::lround(t_end / dt));
  Trajectory tr;
  tr.times.reserve(steps + 1);
  tr.points.reserve(steps + 1);
  tr.times.push_back(0.0);
  tr.points.push_back(x0);

  Vec x = x0;
  const std::size_t n = model.dimension;
  for (long s = 1; s <= steps; ++s) {
    const double t_prev = (s - 1) * dt;
    try {
      const Vec k1 = eval_field(model, x);
      Vec xs(n);
      for (std::size_t i = 0; i < n; ++i) xs[i] = x[i] + 0.5 * dt * k1[i];
      const Vec k2 = eval_field(model, xs);
      for (std::size_t i = 0; i < n; ++i) xs[i] = x[i] + 0.5 * dt * k2[i];
      const Vec k3 = eval_field(model, xs);
      for (std::size_t i = 0; i < n; ++i) xs[i] = x[i] + dt * k3[i];
      const Vec k4 = eval_field(model, xs);
      for (std::size_t i = 0; i < n; ++i)
        x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      if (!all_finite(x)) throw NumericalError("state became non-finite");
      check_state(model, x);
    } catch (const DomainError& e) {
      std::ostringstream msg;
      msg << "trajectory left the domain; last valid time t=" << t_prev << " ("
          << e.what() << ")";
      throw DomainError(msg.str());
    } catch (const NumericalError& e) {
      std::ostringstream msg;
      msg << "trajectory became non-finite; last valid time t=" << t_prev << " ("
          << e.what() << ")";
      throw NumericalError(msg.str());
    }
    tr.times.push_back(s * dt);
    tr.points.push_back(x);
  }
  return tr;
}

} // namespace simdiag
