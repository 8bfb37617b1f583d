#include <catch2/catch_amalgamated.hpp>

#include "curviq/presets.hpp"

using namespace curviq;

TEST_CASE("operator composition is associative") {
  std::vector<std::string> vars{"x"};
  Scalar x = Scalar::symbol("x");
  auto a = ConfigOperator::deriv(1, vars, 0);
  auto b = ConfigOperator::mult(1, vars, Scalar::sin(x));
  auto c = ConfigOperator::deriv(1, vars, 0) +
           ConfigOperator::mult(1, vars, x * x);
  SampleDomain dom;
  CHECK(operator_equals(compose(compose(a, b), c), compose(a, compose(b, c)),
                        dom));
}

TEST_CASE("derivative then multiplication obeys the product rule") {
  std::vector<std::string> vars{"x"};
  Scalar x = Scalar::symbol("x");
  auto d = ConfigOperator::deriv(1, vars, 0);
  auto mx = ConfigOperator::mult(1, vars, x);
  // [d, x] = 1
  auto comm = compose(d, mx) + compose(mx, d).scaled(CRational(-1));
  SampleDomain dom;
  CHECK(operator_equals(comm, ConfigOperator::identity(1, vars), dom));
}

TEST_CASE("covariant momentum operators on the polar chart") {
  auto t = presets::polar();
  auto gamma = christoffel_from_transformation(t);
  auto dom = t.domain();
  Scalar r = Scalar::symbol("r");
  auto vars = t.vars();
  ConfigOperator pr_expect =
      (ConfigOperator::deriv(2, vars, 0) +
       ConfigOperator::mult(2, vars, Scalar::constant(1, 2) / r))
          .scaled(-Scalar::i())
          .hbar_shift(1);
  CHECK(operator_equals(momentum_operator(gamma, 0), pr_expect, dom));
  ConfigOperator pth_expect =
      ConfigOperator::deriv(2, vars, 1).scaled(-Scalar::i()).hbar_shift(1);
  CHECK(operator_equals(momentum_operator(gamma, 1), pth_expect, dom));
}

TEST_CASE("weyl ordering of a linear-in-momentum observable") {
  std::vector<std::string> vars{"x"};
  auto gamma = ChristoffelField::zero(1, vars);
  std::vector<ConfigOperator> phat{momentum_operator(gamma, 0)};
  Scalar x = Scalar::symbol("x");
  auto f = PhaseFunction::from_poly(MomentumPoly::momentum(1, 0).scaled(x), 3);
  // weyl(x p) = (x phat + phat x)/2
  ConfigOperator expect =
      (compose(ConfigOperator::mult(1, vars, x), phat[0]) +
       compose(phat[0], ConfigOperator::mult(1, vars, x)))
          .scaled(CRational(Rational(1, 2)));
  SampleDomain dom;
  CHECK(operator_equals(weyl_order(f, phat), expect, dom));
}

TEST_CASE("pipeline and closed-form quantization agree on a seeded case") {
  auto t = presets::polar();
  auto gamma = christoffel_from_transformation(t);
  auto dom = t.domain();
  auto s = build_S_T(gamma, 3);
  std::vector<ConfigOperator> phat{momentum_operator(gamma, 0),
                                   momentum_operator(gamma, 1)};
  auto k2 = presets::random_sym_tensor(2, 31, t.vars());
  Scalar v = Scalar::symbol("r");
  auto h = presets::quadratic_observable(k2, v, 3);
  CHECK(operator_equals(s_order(h, s, phat),
                        quantize_quadratic_covariant(k2, v, gamma), dom,
                        1e-8));
}

TEST_CASE("natural metric Hamiltonian quantizes to the Laplace-Beltrami operator") {
  auto t = presets::polar();
  auto gamma = christoffel_from_transformation(t);
  auto m = pullback_metric(t);
  auto kg = tensor_from_metric_inverse(m);
  auto nat = quantize_quadratic_covariant(kg, Scalar(), gamma);
  auto lb = laplace_beltrami(m).scaled(CRational(Rational(-1, 2))).hbar_shift(2);
  CHECK(operator_equals(nat, lb, t.domain(), 1e-9));
}

TEST_CASE("curved-space quantization reduces to the flat scheme") {
  auto t = presets::polar();
  auto gflat = pullback_metric(t);
  auto kf = presets::random_sym_tensor(2, 8, t.vars());
  CHECK(operator_equals(
      quantize_quadratic_curved(kf, Scalar(), gflat, Rational(1, 2)),
      quantize_quadratic_covariant(kf, Scalar(),
                                   christoffel_from_metric(gflat)),
      t.domain(), 1e-8));
}

TEST_CASE("formal adjoint is an involution") {
  auto t = presets::polar();
  auto m = pullback_metric(t);
  auto gamma = christoffel_from_transformation(t);
  auto op = momentum_operator(gamma, 0) +
            ConfigOperator::mult(2, t.vars(), Scalar::symbol("r"));
  auto dd = formal_adjoint(formal_adjoint(op, m.volume_density),
                           m.volume_density);
  CHECK(operator_equals(dd, op, t.domain(), 1e-9));
}

TEST_CASE("momentum operators are self-adjoint for the metric density") {
  auto t = presets::polar();
  auto m = pullback_metric(t);
  auto gamma = christoffel_from_transformation(t);
  auto dom = t.domain();
  for (int j = 0; j < 2; ++j) {
    auto p = momentum_operator(gamma, j);
    CHECK(operator_equals(formal_adjoint(p, m.volume_density), p, dom));
  }
}

TEST_CASE("observable map adds the expected quadratic correction") {
  auto t = presets::polar();
  auto gamma = christoffel_from_transformation(t);
  auto dom = t.domain();
  auto k2 = presets::random_sym_tensor(2, 13, t.vars());
  auto ac = presets::quadratic_observable(k2, Scalar(), 3);
  auto aq = minimal_observable_map(ac, gamma);
  auto c = iterated_divergence(k2, gamma, 2);
  CHECK(equals_numeric(
      (aq - ac).at(2),
      MomentumPoly::from_scalar(2, Scalar::constant(1, 8) * c.at({})), dom));
  // and the map terminates: top hbar order of a quadratic gets no cubic part
  CHECK((aq - ac).at(2).degree() <= 0);
}
