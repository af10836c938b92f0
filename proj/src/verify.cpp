#include "simdiag/verify.hpp"

#include <cmath>
#include <random>

#include "simdiag/stretching.hpp"

namespace simdiag {

namespace {

// determinant by Gaussian elimination with partial pivoting
double det(Mat m) {
  const std::size_t n = m.rows();
  double d = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(m(r, c)) > std::abs(m(piv, c))) piv = r;
    if (m(piv, c) == 0.0) return 0.0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      d = -d;
    }
    d *= m(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double factor = m(r, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(r, j) -= factor * m(c, j);
    }
  }
  return d;
}

struct Sampler {
  std::mt19937_64 rng;
  const VectorFieldModel& model;
  Vec lo, hi;

  Sampler(const VectorFieldModel& m, const CheckOptions& opts) : rng(opts.seed), model(m) {
    if (!opts.box_low.empty() && opts.box_low.size() == m.dimension &&
        opts.box_high.size() == m.dimension) {
      lo = opts.box_low;
      hi = opts.box_high;
    } else if (m.name == "davis-skodje") {
      lo = {0.25, 0.0};
      hi = {2.0, 1.0};
    } else {
      lo.assign(m.dimension, -1.0);
      hi.assign(m.dimension, 1.0);
    }
  }

  Vec point() {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int tries = 0; tries < 1000; ++tries) {
      Vec x(model.dimension);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = lo[i] + (hi[i] - lo[i]) * u(rng);
      if (!model.domain_guard || model.domain_guard(x)) return x;
    }
    throw DomainError("run_checks: sampling box does not intersect the model domain");
  }

  Vec direction(std::size_t n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (;;) {
      Vec v(n);
      for (double& c : v) c = u(rng);
      if (norm(v) > 1e-3) return v;
    }
  }
};

} // namespace

std::vector<CheckResult> run_checks(const VectorFieldModel& model,
                                    const CheckOptions& opts) {
  std::vector<CheckResult> results;
  auto add = [&](const std::string& name, double measured, double tol) {
    results.push_back(CheckResult{name, measured, tol, measured <= tol});
  };

  const std::size_t n = model.dimension;
  const std::size_t N = n + 1;
  const bool analytic_jac = model.jacobian_mode == DerivMode::analytic;
  Sampler sampler(model, opts);

  // metric identities
  {
    double max_gtt = 0.0, max_gvt = 0.0, max_det = 0.0, max_inv = 0.0;
    for (int p = 0; p < opts.metric_points; ++p) {
      const Vec x = sampler.point();
      const Vec f = eval_field(model, x);
      const MetricData md = metric_at(f);
      const Vec T = tangent_T(f);
      max_gtt = std::max(max_gtt, std::abs(metric_inner(md.g, T, T) - 1.0));
      for (int q = 0; q < opts.lifts_per_point; ++q) {
        const Vec vt = lift(sampler.direction(n));
        max_gvt = std::max(max_gvt, std::abs(metric_inner(md.g, vt, T)));
      }
      max_det = std::max(max_det, std::abs(det(md.g) - 1.0));
      for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
          double e = (i == j) ? -1.0 : 0.0;
          for (std::size_t l = 0; l < N; ++l) e += md.g(i, l) * md.g_inv(l, j);
          max_inv = std::max(max_inv, std::abs(e));
        }
    }
    add("metric.g_TT_unit", max_gtt, 1e-10);
    add("metric.lift_orthogonal", max_gvt, 1e-10);
    add("metric.det_unit", max_det, 1e-10);
    add("metric.inverse", max_inv, 1e-10);
  }

  // connection: Christoffel symmetry and metric compatibility
  {
    double max_sym = 0.0, max_compat = 0.0;
    for (int p = 0; p < opts.compatibility_points; ++p) {
      const Vec x = sampler.point();
      const DerivativeBundle b = derivatives(model, x);
      MetricData md = metric_partials(b);
      const Tensor3 G = christoffel_at(b);
      for (std::size_t k = 0; k < N; ++k)
        for (std::size_t i = 0; i < N; ++i)
          for (std::size_t j = 0; j < N; ++j)
            max_sym = std::max(max_sym, std::abs(G(k, i, j) - G(k, j, i)));
      if (opts.corrupt_metric_sign) md.dg(0, n, 0) = -md.dg(0, n, 0);
      // d_k g_ij - Gamma^l_ki g_lj - Gamma^l_kj g_il = 0
      for (std::size_t k = 0; k < N; ++k)
        for (std::size_t i = 0; i < N; ++i)
          for (std::size_t j = 0; j < N; ++j) {
            double e = md.dg(i, j, k);
            for (std::size_t l = 0; l < N; ++l)
              e -= G(l, k, i) * md.g(l, j) + G(l, k, j) * md.g(i, l);
            max_compat = std::max(max_compat, std::abs(e));
          }
    }
    add("christoffel.symmetry", max_sym, 1e-15);
    add("connection.compatibility", max_compat, analytic_jac ? 1e-8 : 1e-5);
  }

  // curvature structure
  {
    const double tol =
        opts.path == CurvaturePath::analytic && analytic_jac ? 1e-8 : 1e-4;
    double max_aij = 0.0, max_akl = 0.0, max_pair = 0.0, max_bianchi = 0.0,
           max_devT = 0.0;
    for (int p = 0; p < opts.curvature_points; ++p) {
      const Vec x = sampler.point();
      const CurvatureData curv = riemann_at(model, x, opts.path);
      auto L = [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
        return curv.riemann_lowered(l, i, j, k);
      };
      for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
          for (std::size_t k = 0; k < N; ++k)
            for (std::size_t l = 0; l < N; ++l) {
              max_aij = std::max(max_aij, std::abs(L(i, j, k, l) + L(j, i, k, l)));
              max_akl = std::max(max_akl, std::abs(L(i, j, k, l) + L(i, j, l, k)));
              max_pair = std::max(max_pair, std::abs(L(i, j, k, l) - L(k, l, i, j)));
              max_bianchi = std::max(
                  max_bianchi, std::abs(curv.riemann(l, i, j, k) + curv.riemann(l, j, k, i) +
                                        curv.riemann(l, k, i, j)));
            }
      const Vec T = tangent_T(eval_field(model, x));
      const Vec dev = geodesic_deviation(curv, T, T);
      for (double c : dev) max_devT = std::max(max_devT, std::abs(c));
    }
    add("riemann.antisym_first_pair", max_aij, tol);
    add("riemann.antisym_second_pair", max_akl, tol);
    add("riemann.pair_exchange", max_pair, tol);
    add("riemann.first_bianchi", max_bianchi, tol);
    add("deviation.R_dev_T_zero", max_devT, 1e-10);
  }

  // geodesic property
  {
    double max_res = 0.0;
    for (int p = 0; p < opts.residual_points; ++p) {
      const Vec res = geodesic_residual(model, sampler.point());
      for (double c : res) max_res = std::max(max_res, std::abs(c));
    }
    add("geodesic.residual", max_res, analytic_jac ? 1e-8 : 1e-6);
  }

  // geodesic stretching equals sectional curvature K(lift(v), T)
  {
    double max_diff = 0.0;
    for (int p = 0; p < opts.identity_pairs; ++p) {
      const Vec x = sampler.point();
      const DerivativeBundle b = derivatives(model, x);
      const CurvatureData curv = riemann_at(model, x, b, opts.path);
      const Vec v = sampler.direction(n);
      const double rate = geodesic_rate_from(curv, b.value, v);
      const double K =
          sectional_curvature(curv, curv.metric, lift(v), tangent_T(b.value));
      max_diff = std::max(max_diff, std::abs(rate - K));
    }
    add("stretching.sectional_identity", max_diff, 1e-9);
  }

  return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results)
    if (!r.pass) return false;
  return true;
}

} // namespace simdiag
