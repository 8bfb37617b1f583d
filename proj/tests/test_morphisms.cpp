#include <catch2/catch_amalgamated.hpp>

#include "curviq/presets.hpp"

using namespace curviq;

TEST_CASE("morphism composed with its inverse is the identity") {
  auto t = presets::polar();
  auto gamma = christoffel_from_transformation(t);
  auto s = build_S_T(gamma, 3);
  auto sinv = s.invert();
  auto corpus = presets::sample_corpus(t.vars(), 3);
  auto dom = t.domain();
  for (const auto& f : corpus) {
    CHECK(equals_numeric(sinv.apply(s.apply(f)), f, dom, 1e-9));
    CHECK(equals_numeric(s.apply(sinv.apply(f)), f, dom, 1e-9));
  }
}

TEST_CASE("morphisms start at the identity in hbar") {
  auto t = presets::polar();
  auto s = build_S_T(christoffel_from_transformation(t), 3);
  auto corpus = presets::sample_corpus(t.vars(), 3);
  auto dom = t.domain();
  for (const auto& f : corpus)
    CHECK(equals_numeric(s.apply(f).at(0), f.at(0), dom));
}

TEST_CASE("flat connection gives the trivial morphism") {
  std::vector<std::string> vars{"x1", "x2"};
  auto gamma = ChristoffelField::zero(2, vars);
  auto s = build_S_T(gamma, 3);
  auto corpus = presets::sample_corpus(vars, 3);
  SampleDomain dom;
  for (const auto& f : corpus) CHECK(equals_numeric(s.apply(f), f, dom));
}

TEST_CASE("chart morphism intertwines the two star products") {
  auto t = presets::polar();
  auto gamma = christoffel_from_transformation(t);
  auto s = build_S_T(gamma, 3);
  auto star1 = moyal(2, 3, t.vars());
  auto star2 = transformed_moyal(t, 3);
  auto corpus = presets::sample_corpus(t.vars(), 3);
  std::vector<std::pair<PhaseFunction, PhaseFunction>> pairs;
  for (size_t i = 0; i < corpus.size(); ++i)
    for (size_t j = i; j < corpus.size(); ++j)
      pairs.push_back({corpus[i], corpus[j]});
  auto rep = verify_intertwining(s, star1, star2, pairs, 2, t.domain());
  CHECK(rep.max_residual <= 1e-8);
}

TEST_CASE("sigma-family morphism intertwines Moyal with the sigma product") {
  std::vector<std::string> vars{"x"};
  Rational sg(1, 4), al(1, 6), be(-1, 3);
  auto s = build_S_sigma(sg, al, be, 3, 1, vars);
  auto star1 = moyal(1, 3, vars);
  auto star2 = sigma_product(sg, al, be, 3, 1, vars);
  auto corpus = presets::sample_corpus(vars, 3);
  std::vector<std::pair<PhaseFunction, PhaseFunction>> pairs;
  for (size_t i = 0; i < corpus.size(); ++i)
    for (size_t j = 0; j < corpus.size(); ++j)
      pairs.push_back({corpus[i], corpus[j]});
  auto rep = verify_intertwining(s, star1, star2, pairs, 3, SampleDomain{});
  CHECK(rep.max_residual <= 1e-8);
}

TEST_CASE("exponential morphism of a quadratic generator") {
  // S = exp(P) with P = -(1/8) hbar^2 X^2 Y^2 sends x^2 p^2 to
  // x^2 p^2 - hbar^2 / 2
  std::vector<std::string> vars{"x"};
  PPolynomial p{{CRational(Rational(-1, 8)), 2, {2, 2}}};
  auto s = build_S_P(p, 3, 1, vars);
  Scalar x = Scalar::symbol("x");
  auto f = PhaseFunction::from_poly(
      (MomentumPoly::momentum(1, 0) * MomentumPoly::momentum(1, 0))
          .scaled(x * x),
      3);
  auto sf = s.apply(f);
  SampleDomain dom;
  CHECK(equals_numeric(sf.at(0), f.at(0), dom));
  CHECK(equals_numeric(
      sf.at(2),
      MomentumPoly::from_scalar(1, Scalar::constant(-1, 2)), dom));
}

TEST_CASE("non-unital morphisms cannot be inverted") {
  std::vector<std::string> vars{"x"};
  Morphism s(1, 2, vars);
  PhaseOp bad = PhaseOp::zero(1, vars);
  bad.accumulate({0, 0},
                 MomentumPoly::from_scalar(1, Scalar::symbol("x")));
  s.order(0) = bad;  // breaks S = id + O(hbar)
  CHECK_THROWS_AS(s.invert(), NotUnital);
}

TEST_CASE("conjugation commutes with the chart morphism on real input") {
  auto t = presets::polar();
  auto s = build_S_T(christoffel_from_transformation(t), 3);
  auto corpus = presets::sample_corpus(t.vars(), 3);
  auto dom = t.domain();
  // real phase functions stay real at even hbar orders under S_T
  for (const auto& f : corpus) {
    auto sf = s.apply(f);
    CHECK(equals_numeric(sf.at(2), sf.at(2).conj(), dom));
  }
}
