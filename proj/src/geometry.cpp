#include "simdiag/geometry.hpp"

#include <cmath>

namespace simdiag {

MetricData metric_at(const Vec& f_val) {
  if (!all_finite(f_val)) throw NumericalError("metric_at: non-finite field value");
  const std::size_t n = f_val.size();
  const std::size_t N = n + 1;
  MetricData md;
  md.g = Mat(N, N);
  md.g_inv = Mat(N, N);
  for (std::size_t i = 0; i < n; ++i) {
    md.g(i, i) = 1.0;
    md.g(i, n) = -f_val[i];
    md.g(n, i) = -f_val[i];
  }
  md.g(n, n) = 1.0 + dot(f_val, f_val);
  // block inverse; the Schur complement of the identity block is 1
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      md.g_inv(i, j) = (i == j ? 1.0 : 0.0) + f_val[i] * f_val[j];
    md.g_inv(i, n) = f_val[i];
    md.g_inv(n, i) = f_val[i];
  }
  md.g_inv(n, n) = 1.0;
  return md;
}

MetricData metric_partials(const DerivativeBundle& bundle) {
  const std::size_t n = bundle.value.size();
  const std::size_t N = n + 1;
  MetricData md = metric_at(bundle.value);
  md.dg = Tensor3(N, N, N);
  // d g_ij / d x_k: identity block contributes nothing, tau column stays zero
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      md.dg(i, n, k) = -bundle.jacobian(i, k);
      md.dg(n, i, k) = -bundle.jacobian(i, k);
    }
    double corner = 0.0;
    for (std::size_t i = 0; i < n; ++i) corner += bundle.value[i] * bundle.jacobian(i, k);
    md.dg(n, n, k) = 2.0 * corner;
  }
  return md;
}

namespace {

// Gamma^k_ij = 1/2 sum_l g_inv(k,l) (d_i g_jl + d_j g_il - d_l g_ij),
// computed for i <= j and mirrored so the (i,j) symmetry is exact.
Tensor3 christoffel_from(const MetricData& md) {
  const std::size_t N = md.g.rows();
  Tensor3 gamma(N, N, N);
  for (std::size_t k = 0; k < N; ++k) {
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t j = i; j < N; ++j) {
        double s = 0.0;
        for (std::size_t l = 0; l < N; ++l)
          s += md.g_inv(k, l) * (md.dg(j, l, i) + md.dg(i, l, j) - md.dg(i, j, l));
        gamma(k, i, j) = 0.5 * s;
        gamma(k, j, i) = gamma(k, i, j);
      }
    }
  }
  return gamma;
}

// d Gamma^k_ij / d x_m by chain rule through g_inv and dg, using the field
// Hessian. Tau partials are identically zero.
Tensor4 christoffel_partials_analytic(const DerivativeBundle& b, const MetricData& md) {
  const std::size_t n = b.value.size();
  const std::size_t N = n + 1;
  const Mat& J = b.jacobian;
  const Tensor3& H = b.hessian;

  // d g_inv / d x_m
  Tensor3 dginv(N, N, N);
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t l = 0; l < n; ++l)
        dginv(k, l, m) = J(k, m) * b.value[l] + b.value[k] * J(l, m);
      dginv(k, n, m) = J(k, m);
      dginv(n, k, m) = J(k, m);
    }
  }

  // d dg(i,j,k) / d x_m = d^2 g_ij / d x_k d x_m
  Tensor4 ddg(N, N, N, N);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t m = 0; m < n; ++m) {
      for (std::size_t i = 0; i < n; ++i) {
        ddg(i, n, k, m) = -H(i, k, m);
        ddg(n, i, k, m) = -H(i, k, m);
      }
      double corner = 0.0;
      for (std::size_t a = 0; a < n; ++a)
        corner += J(a, m) * J(a, k) + b.value[a] * H(a, k, m);
      ddg(n, n, k, m) = 2.0 * corner;
    }
  }

  Tensor4 cp(N, N, N, N);
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t k = 0; k < N; ++k) {
      for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = i; j < N; ++j) {
          double s = 0.0;
          for (std::size_t l = 0; l < N; ++l) {
            s += dginv(k, l, m) * (md.dg(j, l, i) + md.dg(i, l, j) - md.dg(i, j, l));
            s += md.g_inv(k, l) *
                 (ddg(j, l, i, m) + ddg(i, l, j, m) - ddg(i, j, l, m));
          }
          cp(k, i, j, m) = 0.5 * s;
          cp(k, j, i, m) = cp(k, i, j, m);
        }
      }
    }
  }
  return cp;
}

// Central finite differences of christoffel_at over the state coordinates.
Tensor4 christoffel_partials_fd(const VectorFieldModel& model, const Vec& x) {
  const std::size_t n = model.dimension;
  const std::size_t N = n + 1;
  const double h = model.fd_step;
  Tensor4 cp(N, N, N, N);
  for (std::size_t m = 0; m < n; ++m) {
    Vec xp = x, xm = x;
    xp[m] += h;
    xm[m] -= h;
    const Tensor3 gp = christoffel_at(derivatives(model, xp));
    const Tensor3 gm = christoffel_at(derivatives(model, xm));
    for (std::size_t k = 0; k < N; ++k)
      for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
          cp(k, i, j, m) = (gp(k, i, j) - gm(k, i, j)) / (2.0 * h);
  }
  return cp;
}

} // namespace

Tensor3 christoffel_at(const DerivativeBundle& bundle) {
  return christoffel_from(metric_partials(bundle));
}

CurvatureData riemann_at(const VectorFieldModel& model, const Vec& x,
                         CurvaturePath path) {
  return riemann_at(model, x, derivatives(model, x), path);
}

CurvatureData riemann_at(const VectorFieldModel& model, const ExtendedPoint& p,
                         CurvaturePath path) {
  return riemann_at(model, p.state, path);
}

CurvatureData riemann_at(const VectorFieldModel& model, const Vec& x,
                         const DerivativeBundle& bundle, CurvaturePath path) {
  const std::size_t N = model.dimension + 1;
  CurvatureData cd;
  cd.metric = metric_partials(bundle);
  cd.christoffel = christoffel_from(cd.metric);
  cd.christoffel_partials = path == CurvaturePath::analytic
                                ? christoffel_partials_analytic(bundle, cd.metric)
                                : christoffel_partials_fd(model, x);

  // R^l_ijk = d_i Gamma^l_jk - d_j Gamma^l_ik
  //           + sum_m (Gamma^l_im Gamma^m_jk - Gamma^l_jm Gamma^m_ik)
  const Tensor3& G = cd.christoffel;
  const Tensor4& dG = cd.christoffel_partials;
  cd.riemann = Tensor4(N, N, N, N);
  for (std::size_t l = 0; l < N; ++l) {
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t j = 0; j < N; ++j) {
        for (std::size_t k = 0; k < N; ++k) {
          double r = dG(l, j, k, i) - dG(l, i, k, j);
          for (std::size_t m = 0; m < N; ++m)
            r += G(l, i, m) * G(m, j, k) - G(l, j, m) * G(m, i, k);
          if (!std::isfinite(r))
            throw NumericalError("riemann_at: non-finite tensor component");
          cd.riemann(l, i, j, k) = r;
        }
      }
    }
  }

  cd.riemann_lowered = Tensor4(N, N, N, N);
  for (std::size_t l = 0; l < N; ++l)
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j)
        for (std::size_t k = 0; k < N; ++k) {
          double r = 0.0;
          for (std::size_t m = 0; m < N; ++m)
            r += cd.metric.g(l, m) * cd.riemann(m, i, j, k);
          cd.riemann_lowered(l, i, j, k) = r;
        }
  return cd;
}

Vec tangent_T(const Vec& f_val) {
  Vec T(f_val);
  T.push_back(1.0);
  return T;
}

double metric_inner(const Mat& g, const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) s += a[i] * g(i, j) * b[j];
  return s;
}

Vec geodesic_deviation(const CurvatureData& curv, const Vec& T, const Vec& s) {
  const std::size_t N = curv.riemann.dim0();
  Vec out(N, 0.0);
  for (std::size_t l = 0; l < N; ++l) {
    double v = 0.0;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j)
        for (std::size_t k = 0; k < N; ++k)
          v += curv.riemann(l, i, j, k) * T[i] * s[j] * T[k];
    out[l] = v;
  }
  return out;
}

double sectional_curvature(const CurvatureData& curv, const MetricData& metric,
                           const Vec& v, const Vec& w) {
  const std::size_t N = metric.g.rows();
  // numerator g(R(w,v)w, v)
  Vec rwvw(N, 0.0);
  for (std::size_t l = 0; l < N; ++l) {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j)
        for (std::size_t k = 0; k < N; ++k)
          s += curv.riemann(l, i, j, k) * w[i] * v[j] * w[k];
    rwvw[l] = s;
  }
  const double num = metric_inner(metric.g, rwvw, v);
  const double den = metric_inner(metric.g, v, v) * metric_inner(metric.g, w, w) -
                     metric_inner(metric.g, v, w) * metric_inner(metric.g, v, w);
  if (std::abs(den) <= 1e-12)
    throw DegeneratePlaneError("sectional_curvature: vectors span a degenerate plane");
  return num / den;
}

Vec geodesic_residual(const VectorFieldModel& model, const Vec& x) {
  const std::size_t n = model.dimension;
  const std::size_t N = n + 1;
  const DerivativeBundle b = derivatives(model, x);
  const Tensor3 gamma = christoffel_at(b);
  const Vec T = tangent_T(b.value);
  // implicit-time derivative of T along the flow: a = (J_f f, 0)
  Vec a(N, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i] += b.jacobian(i, j) * b.value[j];
  Vec res(N, 0.0);
  for (std::size_t k = 0; k < N; ++k) {
    double s = a[k];
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) s += gamma(k, i, j) * T[i] * T[j];
    res[k] = s;
  }
  return res;
}

} // namespace simdiag
