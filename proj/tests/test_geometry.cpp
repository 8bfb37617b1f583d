#include <catch2/catch_amalgamated.hpp>

#include "curviq/presets.hpp"

using namespace curviq;

TEST_CASE("pullback metric of the polar chart") {
  auto t = presets::polar();
  auto m = pullback_metric(t);
  auto dom = t.domain();
  Scalar r = Scalar::symbol("r");
  CHECK(equals_numeric(m.g[0][0], Scalar::constant(1), dom));
  CHECK(equals_numeric(m.g[0][1], Scalar(), dom));
  CHECK(equals_numeric(m.g[1][1], r * r, dom));
  CHECK(equals_numeric(m.volume_density, r, dom));
}

TEST_CASE("christoffel symbols agree between the two constructions") {
  auto t = presets::polar();
  auto g1 = christoffel_from_transformation(t);
  auto g2 = christoffel_from_metric(pullback_metric(t));
  auto dom = t.domain();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        CHECK(equals_numeric(g1.at(i, j, k), g2.at(i, j, k), dom));
}

TEST_CASE("christoffel symbols are symmetric in the lower indices") {
  auto t = presets::spherical();
  auto g = christoffel_from_transformation(t);
  auto dom = t.domain();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = j; k < 3; ++k)
        CHECK(equals_numeric(g.at(i, j, k), g.at(i, k, j), dom));
}

TEST_CASE("identity chart has a vanishing connection") {
  auto t = presets::identity(2);
  auto g = christoffel_from_transformation(t);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) CHECK(g.at(i, j, k).is_zero());
}

TEST_CASE("degenerate transformations are rejected") {
  Scalar x = Scalar::symbol("x"), y = Scalar::symbol("y");
  CHECK_THROWS_AS(
      christoffel_from_transformation(
          PointTransformation({"x", "y"}, {x + y, x + y}, SampleDomain{})),
      SingularJacobian);
  CHECK_THROWS_AS(PointTransformation({"x", "y"}, {x}, SampleDomain{}),
                  DimensionMismatch);
}

TEST_CASE("covariant derivative reduces to the gradient on scalars") {
  auto t = presets::polar();
  auto gamma = christoffel_from_transformation(t);
  auto dom = t.domain();
  TensorField f(2, 0, 0, t.vars());
  Scalar r = Scalar::symbol("r"), th = Scalar::symbol("theta");
  f.at({}) = r * r * Scalar::sin(th);
  auto df = f.covariant_derivative(gamma);
  CHECK(equals_numeric(df.at({0}), f.at({}).diff("r"), dom));
  CHECK(equals_numeric(df.at({1}), f.at({}).diff("theta"), dom));
}

TEST_CASE("metric compatibility: covariant derivative of g^{ij} vanishes") {
  auto t = presets::polar();
  auto gamma = christoffel_from_transformation(t);
  auto kg = tensor_from_metric_inverse(pullback_metric(t));
  auto dkg = kg.covariant_derivative(gamma);
  auto dom = t.domain();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        CHECK(equals_numeric(dkg.at({i, j, k}), Scalar(), dom));
}

TEST_CASE("curvature of a coordinate chart vanishes") {
  auto t = presets::parabolic();
  auto m = pullback_metric(t);
  auto c = curvature(christoffel_from_metric(m), m);
  CHECK(equals_numeric(c.scalar, Scalar(), t.domain()));
}

TEST_CASE("unit sphere curvature") {
  auto sph = presets::two_sphere();
  auto c = curvature(christoffel_from_metric(sph), sph);
  CHECK(equals_numeric(c.scalar, Scalar::constant(2), sph.domain));
  CHECK(equals_numeric(c.ricci[0][0], Scalar::constant(1), sph.domain));
  CHECK(equals_numeric(c.ricci[1][1],
                       Scalar::sin(Scalar::symbol("theta")) *
                           Scalar::sin(Scalar::symbol("theta")),
                       sph.domain));
}

TEST_CASE("trace identity relates the connection to the volume density") {
  auto t = presets::parabolic();
  auto g = christoffel_from_transformation(t);
  auto m = pullback_metric(t);
  auto dom = t.domain();
  for (int j = 0; j < 2; ++j)
    CHECK(equals_numeric(g.trace(j),
                         Scalar::ln(m.volume_density).diff(t.vars()[j]),
                         dom));
}
