#include <catch2/catch_amalgamated.hpp>

#include "curviq/presets.hpp"

using namespace curviq;

namespace {
std::vector<std::string> vars1{"x"};
std::vector<std::string> vars2{"x1", "x2"};
}  // namespace

TEST_CASE("star products are unital") {
  auto star = moyal(1, 3, vars1);
  auto one = PhaseFunction::from_poly(
      MomentumPoly::from_scalar(1, Scalar::constant(1)), 3);
  auto corpus = presets::sample_corpus(vars1, 3);
  SampleDomain dom;
  for (const auto& f : corpus) {
    CHECK(equals_numeric(star.apply(one, f), f, dom));
    CHECK(equals_numeric(star.apply(f, one), f, dom));
  }
}

TEST_CASE("leading order of a star product is pointwise multiplication") {
  auto star = moyal(2, 3, vars2);
  auto corpus = presets::sample_corpus(vars2, 3);
  SampleDomain dom;
  for (size_t i = 0; i < corpus.size(); ++i)
    for (size_t j = i; j < corpus.size(); ++j)
      CHECK(equals_numeric(star.apply(corpus[i], corpus[j]).at(0),
                           corpus[i].at(0) * corpus[j].at(0), dom));
}

TEST_CASE("star products are associative through the truncation order") {
  auto star = moyal(1, 3, vars1);
  auto corpus = presets::sample_corpus(vars1, 3);
  SampleDomain dom;
  for (size_t i = 0; i < corpus.size(); ++i)
    for (size_t j = 0; j < corpus.size(); ++j) {
      const auto& f = corpus[i];
      const auto& g = corpus[j];
      const auto& h = corpus[(i + j) % corpus.size()];
      CHECK(equals_numeric(star.apply(star.apply(f, g), h),
                           star.apply(f, star.apply(g, h)), dom, 1e-8));
    }
}

TEST_CASE("sigma-family products are associative") {
  auto star = sigma_product(Rational(1, 4), Rational(1, 6), Rational(-1, 3),
                            3, 1, vars1);
  auto corpus = presets::sample_corpus(vars1, 3);
  SampleDomain dom;
  const auto& f = corpus[0];
  const auto& g = corpus[2];
  const auto& h = corpus[3];
  CHECK(equals_numeric(star.apply(star.apply(f, g), h),
                       star.apply(f, star.apply(g, h)), dom, 1e-8));
}

TEST_CASE("moyal product of canonical coordinates") {
  auto star = moyal(1, 3, vars1);
  Scalar x = Scalar::symbol("x");
  auto fx = PhaseFunction::from_poly(MomentumPoly::from_scalar(1, x), 3);
  auto fp = PhaseFunction::from_poly(MomentumPoly::momentum(1, 0), 3);
  // x * p - p * x = i hbar
  auto comm = star.apply(fx, fp) - star.apply(fp, fx);
  SampleDomain dom;
  CHECK(equals_numeric(
      comm.at(1),
      MomentumPoly::from_scalar(1, Scalar::i()), dom));
  CHECK(comm.at(0).terms().empty());
}

TEST_CASE("quantum bracket reduces to the Poisson bracket") {
  auto star = moyal(2, 3, vars2);
  Scalar x1 = Scalar::symbol("x1"), x2 = Scalar::symbol("x2");
  PhaseFunction f(2, 3), g(2, 3);
  f.at(0) = (MomentumPoly::momentum(2, 0) * MomentumPoly::momentum(2, 0))
                .scaled(x2) +
            MomentumPoly::from_scalar(2, Scalar::sin(x1));
  g.at(0) = MomentumPoly::momentum(2, 1).scaled(x1 * x1);
  auto br = quantum_bracket(star, f, g);
  MomentumPoly poisson(2);
  for (int i = 0; i < 2; ++i)
    poisson = poisson + f.at(0).dx(vars2[i]) * g.at(0).dp(i) -
              f.at(0).dp(i) * g.at(0).dx(vars2[i]);
  CHECK(equals_numeric(br.at(0), poisson, SampleDomain{}, 1e-9));
}

TEST_CASE("vector-field construction rejects bad field pairs") {
  Scalar x = Scalar::symbol("x");
  SampleDomain dom;
  dom.intervals["x"] = {0.35, 1.65};
  // X = p d_x and Y = x d_p do not commute
  auto nc_x = PhaseOp::vector_field(1, vars1, {MomentumPoly::momentum(1, 0)},
                                    {MomentumPoly(1)});
  auto nc_y = PhaseOp::vector_field(1, vars1, {MomentumPoly(1)},
                                    {MomentumPoly::from_scalar(1, x)});
  CHECK_THROWS_AS(star_from_vectorfields({nc_x}, {nc_y}, 3, vars1, dom),
                  NonCommutingFields);
  // X = x d_x and Y = d_p commute but their wedge is not the Poisson tensor
  auto wp_x = PhaseOp::vector_field(1, vars1,
                                    {MomentumPoly::from_scalar(1, x)},
                                    {MomentumPoly(1)});
  auto wp_y = PhaseOp::vector_field(
      1, vars1, {MomentumPoly(1)},
      {MomentumPoly::from_scalar(1, Scalar::constant(1))});
  CHECK_THROWS_AS(star_from_vectorfields({wp_x}, {wp_y}, 3, vars1, dom),
                  WrongPoissonTensor);
}

TEST_CASE("p-family generators must satisfy the reality condition") {
  // odd total degree violates the conjugation symmetry
  PPolynomial bad{{CRational(Rational(1, 2)), 1, {1, 0}}};
  CHECK_FALSE(p_reality_holds(bad, 1));
  CHECK_THROWS_AS(p_family_product(bad, 3, 1, vars1), RealityViolation);
  PPolynomial good{{CRational(Rational(-1, 8)), 2, {2, 2}}};
  CHECK(p_reality_holds(good, 1));
}

TEST_CASE("sigma involution is an involution") {
  Rational sg(1, 3);
  auto corpus = presets::sample_corpus(vars1, 3);
  SampleDomain dom;
  for (const auto& f : corpus)
    CHECK(equals_numeric(
        sigma_involution(sg, sigma_involution(sg, f, vars1), vars1), f, dom,
        1e-9));
}
