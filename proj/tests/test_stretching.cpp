#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "simdiag/stretching.hpp"

using namespace simdiag;

namespace {

Mat diag2(double a, double b) {
  Mat m(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

Vec random_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ux(0.25, 2.0), uy(0.0, 1.0);
  return Vec{ux(rng), uy(rng)};
}

} // namespace

TEST_CASE("classical rate is the Rayleigh quotient of the Jacobian") {
  const VectorFieldModel m = make_linear(diag2(-2.5, 4.0));
  const DerivativeBundle b = derivatives(m, {1.0, 1.0});
  CHECK(classical_rate(b, {1.0, 0.0}) == doctest::Approx(-2.5).epsilon(1e-14));
  CHECK(classical_rate(b, {0.0, 1.0}) == doctest::Approx(4.0).epsilon(1e-14));

  // independent dense evaluation at a Davis-Skodje point
  const VectorFieldModel ds = make_davis_skodje(3.0);
  const DerivativeBundle bd = derivatives(ds, {1.0, 0.5});
  const FrameVectors frame = frame_at(bd.value);
  const Vec& v = frame.v_t;
  double jv0 = bd.jacobian(0, 0) * v[0] + bd.jacobian(0, 1) * v[1];
  double jv1 = bd.jacobian(1, 0) * v[0] + bd.jacobian(1, 1) * v[1];
  const double expected = (jv0 * v[0] + jv1 * v[1]) / (v[0] * v[0] + v[1] * v[1]);
  CHECK(classical_rate(bd, v) == doctest::Approx(expected).epsilon(1e-14));

  CHECK_THROWS_AS(classical_rate(b, {0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("classical rate is invariant under rescaling") {
  const VectorFieldModel ds = make_davis_skodje(3.0);
  const DerivativeBundle b = derivatives(ds, {0.7, 0.3});
  const Vec v = {0.6, -1.1};
  const Vec v2 = {1.2, -2.2}; // power-of-two scaling is exact
  CHECK(classical_rate(b, v) == classical_rate(b, v2));
  const Vec v3 = {0.6 * 3.7, -1.1 * 3.7};
  CHECK(classical_rate(b, v) == doctest::Approx(classical_rate(b, v3)).epsilon(1e-10));
}

TEST_CASE("frame vectors are the unit tangent and its 90-degree rotation") {
  const FrameVectors f1 = frame_at({1.0, 0.0});
  CHECK(f1.v_t == Vec{1.0, 0.0});
  CHECK(f1.v_o == Vec{0.0, 1.0});

  const FrameVectors f2 = frame_at({0.0, -2.0});
  CHECK(f2.v_t == Vec{0.0, -1.0});
  CHECK(f2.v_o == Vec{1.0, 0.0});

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int p = 0; p < 20; ++p) {
    const Vec f = {u(rng), u(rng)};
    if (norm(f) < 1e-6) continue;
    const FrameVectors fr = frame_at(f);
    CHECK(std::abs(norm(fr.v_t) - 1.0) <= 1e-12);
    CHECK(std::abs(norm(fr.v_o) - 1.0) <= 1e-12);
    CHECK(std::abs(dot(fr.v_t, fr.v_o)) <= 1e-12);
  }
}

TEST_CASE("frame construction rejects equilibria and other dimensions") {
  CHECK_THROWS_AS(frame_at({0.0, 0.0}), EquilibriumError);
  CHECK_THROWS_AS(frame_at({1e-12, 0.0}), EquilibriumError);
  CHECK_THROWS_AS(frame_at({1.0, 0.0, 0.0}), DimensionError);
  CHECK_THROWS_AS(frame_at({1.0}), DimensionError);
}

TEST_CASE("classical ratio on the slow manifold exceeds one") {
  const VectorFieldModel ds = make_davis_skodje(3.0);
  // at (1, 1/2): rates -16/17 and -52/17, ratio exactly 13/4
  const auto r = classical_ratio(ds, {1.0, 0.5});
  REQUIRE(r.has_value());
  CHECK(*r == doctest::Approx(3.25).epsilon(1e-12));
  CHECK(*r > 1.0);
}

TEST_CASE("classical ratio of a straight-line flow is the rate quotient") {
  // flow along e1 at y = 0: tangent rate -1, normal rate -gamma
  const VectorFieldModel m = make_linear(diag2(-1.0, -7.0));
  const auto r = classical_ratio(m, {1.0, 0.0});
  REQUIRE(r.has_value());
  CHECK(*r == doctest::Approx(7.0).epsilon(1e-12));

  // symmetric Jacobian with the tangent an eigenvector: ratio of eigenvalues
  const VectorFieldModel m2 = make_linear(diag2(-2.0, -5.0));
  const auto r2 = classical_ratio(m2, {1.0, 0.0});
  REQUIRE(r2.has_value());
  CHECK(*r2 == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("classical ratio is singular when the tangent rate vanishes") {
  Mat rot(2, 2);
  rot(0, 1) = 1.0;
  rot(1, 0) = -1.0;
  const VectorFieldModel m = make_linear(rot);
  CHECK(!classical_ratio(m, {1.0, 0.0}).has_value());
}

TEST_CASE("lift appends a zero time component") {
  CHECK(lift({1.0, 2.0}) == Vec{1.0, 2.0, 0.0});
  CHECK(lift({0.0, 0.0}) == Vec{0.0, 0.0, 0.0});
  // g(lift(v), T) = 0 spot check
  const MetricData md = metric_at({0.3, -1.4});
  const Vec T = tangent_T({0.3, -1.4});
  CHECK(std::abs(metric_inner(md.g, lift({2.0, 5.0}), T)) <= 1e-12);
}

TEST_CASE("geodesic rate vanishes on a flat metric") {
  const VectorFieldModel m = make_constant({1.0, 0.0});
  for (const Vec& v : {Vec{1.0, 0.0}, Vec{0.3, -0.8}})
    CHECK(std::abs(geodesic_rate(m, {0.2, 0.4}, v)) <= 1e-14);
  CHECK_THROWS_AS(geodesic_rate(m, {0.2, 0.4}, {0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("geodesic rate is invariant under rescaling") {
  const VectorFieldModel ds = make_davis_skodje(3.0);
  const Vec x = {1.0, 0.5};
  const Vec v = {0.4, 0.7};
  const double r1 = geodesic_rate(ds, x, v);
  const double r2 = geodesic_rate(ds, x, {0.8, 1.4});
  CHECK(std::abs(r1 - r2) <= 1e-10 * std::max(1.0, std::abs(r1)));
}

TEST_CASE("geodesic rate equals the sectional curvature K(lift(v), T)") {
  const VectorFieldModel ds = make_davis_skodje(3.0);
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int p = 0; p < 50; ++p) {
    const Vec x = random_state(rng);
    Vec v = {u(rng), u(rng)};
    if (norm(v) < 1e-3) v = {1.0, 0.0};
    const DerivativeBundle b = derivatives(ds, x);
    const CurvatureData curv = riemann_at(ds, x, b, CurvaturePath::finite_difference);
    const double rate = geodesic_rate_from(curv, b.value, v);
    const double K = sectional_curvature(curv, curv.metric, lift(v), tangent_T(b.value));
    CHECK(std::abs(rate - K) <= 1e-9);
  }
  // the frame normal at the reference point, as an explicit case
  const DerivativeBundle b = derivatives(ds, {1.0, 0.5});
  const CurvatureData curv = riemann_at(ds, {1.0, 0.5}, b, CurvaturePath::finite_difference);
  const FrameVectors frame = frame_at(b.value);
  const double rate = geodesic_rate_from(curv, b.value, frame.v_o);
  const double K =
      sectional_curvature(curv, curv.metric, lift(frame.v_o), tangent_T(b.value));
  CHECK(std::abs(rate - K) <= 1e-10);
}

TEST_CASE("geodesic ratio peaks near the slow manifold along a fiber") {
  const VectorFieldModel ds = make_davis_skodje(3.0);
  double best_y = 0.3, best_q = -1e300;
  for (int i = 0; i <= 2000; ++i) {
    const double y = 0.3 + 0.4 * i / 2000.0;
    const auto q = geodesic_ratio(ds, {1.0, y});
    if (q && *q > best_q) {
      best_q = *q;
      best_y = y;
    }
  }
  // dense-scan offset from h(1) = 0.5 measured at 1.7e-3
  CHECK(std::abs(best_y - 0.5) <= 2.5e-3);
}

TEST_CASE("geodesic ratio of a constant field is singular") {
  const VectorFieldModel m = make_constant({1.0, 0.0});
  CHECK(!geodesic_ratio(m, {0.1, 0.2}).has_value());
}

TEST_CASE("stretching reports are deterministic") {
  const VectorFieldModel ds = make_davis_skodje(3.0);
  const StretchingReport a = full_report(ds, {0.8, 0.44});
  const StretchingReport b = full_report(ds, {0.8, 0.44});
  CHECK(a.classical_tangent == b.classical_tangent);
  CHECK(a.classical_normal == b.classical_normal);
  CHECK(a.geodesic_tangent == b.geodesic_tangent);
  CHECK(a.geodesic_normal == b.geodesic_normal);
  REQUIRE(a.classical_ratio.has_value());
  REQUIRE(b.classical_ratio.has_value());
  CHECK(*a.classical_ratio == *b.classical_ratio);
  REQUIRE(a.geodesic_ratio.has_value());
  CHECK(*a.geodesic_ratio == *b.geodesic_ratio);
}

TEST_CASE("full report at the reference point") {
  const VectorFieldModel ds = make_davis_skodje(3.0);
  const StretchingReport rep = full_report(ds, {1.0, 0.5});
  CHECK(std::isfinite(rep.classical_tangent));
  CHECK(std::isfinite(rep.classical_normal));
  CHECK(std::isfinite(rep.geodesic_tangent));
  CHECK(std::isfinite(rep.geodesic_normal));
  REQUIRE(rep.classical_ratio.has_value());
  REQUIRE(rep.geodesic_ratio.has_value());
  CHECK(*rep.classical_ratio == doctest::Approx(3.25).epsilon(1e-12));
  CHECK(*rep.geodesic_ratio > 9.0);
  CHECK(*rep.geodesic_ratio < 10.5);

  // both curvature paths agree on the geodesic quantities
  const StretchingReport rep_a = full_report(ds, {1.0, 0.5}, CurvaturePath::analytic);
  CHECK(std::abs(rep.geodesic_tangent - rep_a.geodesic_tangent) <= 1e-6);
  CHECK(std::abs(*rep.geodesic_ratio - *rep_a.geodesic_ratio) <= 1e-6);
}

TEST_CASE("full report propagates the equilibrium error") {
  const VectorFieldModel m = make_linear(diag2(1.0, 1.0));
  CHECK_THROWS_AS(full_report(m, {0.0, 0.0}), EquilibriumError);
}

TEST_CASE("constant field: zero rates, singular ratios") {
  const VectorFieldModel m = make_constant({1.0, 0.0});
  const StretchingReport rep = full_report(m, {0.3, 0.3});
  CHECK(rep.classical_tangent == 0.0);
  CHECK(rep.classical_normal == 0.0);
  CHECK(std::abs(rep.geodesic_tangent) <= 1e-14);
  CHECK(std::abs(rep.geodesic_normal) <= 1e-14);
  CHECK(!rep.classical_ratio.has_value());
  CHECK(!rep.geodesic_ratio.has_value());
}

TEST_CASE("orthonormal frame rates sum to the Jacobian trace") {
  const VectorFieldModel ds = make_davis_skodje(3.0);
  std::mt19937_64 rng(17);
  for (int p = 0; p < 20; ++p) {
    const Vec x = random_state(rng);
    const DerivativeBundle b = derivatives(ds, x);
    const FrameVectors frame = frame_at(b.value);
    const double sum = classical_rate(b, frame.v_t) + classical_rate(b, frame.v_o);
    const double trace = b.jacobian(0, 0) + b.jacobian(1, 1);
    CHECK(std::abs(sum - trace) <= 1e-10);
  }
}

TEST_CASE("classical ratio exceeds one along the slow manifold") {
  const VectorFieldModel ds = make_davis_skodje(3.0);
  for (int i = 0; i < 20; ++i) {
    const double x = 0.5 + 1.5 * i / 19.0;
    const auto r = classical_ratio(ds, {x, davis_skodje_sim(x)});
    REQUIRE(r.has_value());
    CHECK(*r > 1.0);
  }
}
