#pragma once

/// Deterministic verification suites shared by the command-line `verify`
/// subcommand and the acceptance test binary.  Every suite takes the RNG
/// seed used for numeric sampling and returns a Report whose records carry
/// the measured residuals and the tolerances they were held to.

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "curviq/presets.hpp"
#include "curviq/report.hpp"

namespace curviq::suites {

namespace detail {

inline std::vector<std::pair<PhaseFunction, PhaseFunction>> all_pairs(
    const std::vector<PhaseFunction>& corpus) {
  std::vector<std::pair<PhaseFunction, PhaseFunction>> pairs;
  for (size_t i = 0; i < corpus.size(); ++i)
    for (size_t j = 0; j < corpus.size(); ++j)
      pairs.push_back({corpus[i], corpus[j]});
  return pairs;
}

/// Checks that Weyl ordering of the monomial prod x_i^{a_i} prod p_i^{b_i}
/// equals the average of the operator products over every ordering of the
/// individual position and momentum factors.
inline bool weyl_matches_average(const std::vector<std::string>& vars,
                                 const std::vector<int>& xdeg,
                                 const std::vector<int>& pdeg,
                                 const std::vector<ConfigOperator>& phat,
                                 const SampleDomain& dom) {
  int n = static_cast<int>(vars.size());
  std::vector<int> toks;  // token i < n: mult x_i; token n + i: phat_i
  std::vector<ConfigOperator> ops;
  for (int i = 0; i < n; ++i)
    ops.push_back(ConfigOperator::mult(n, vars, Scalar::symbol(vars[i])));
  for (int i = 0; i < n; ++i) ops.push_back(phat[i]);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < xdeg[i]; ++k) toks.push_back(i);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < pdeg[i]; ++k) toks.push_back(n + i);
  std::sort(toks.begin(), toks.end());
  ConfigOperator sum = ConfigOperator::zero(n, vars);
  long long count = 0;
  do {
    ConfigOperator term = ConfigOperator::identity(n, vars);
    for (int tk : toks) term = compose(term, ops[tk]);
    sum = sum + term;
    ++count;
  } while (std::next_permutation(toks.begin(), toks.end()));
  sum = sum.scaled(CRational(Rational(1, count)));
  MomentumPoly mono = MomentumPoly::from_scalar(n, Scalar::constant(1));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < xdeg[i]; ++k)
      mono = mono * MomentumPoly::from_scalar(n, Scalar::symbol(vars[i]));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < pdeg[i]; ++k)
      mono = mono * MomentumPoly::momentum(n, i);
  auto w = weyl_order(PhaseFunction::from_poly(mono, 3), phat);
  return operator_equals(w, sum, dom);
}

}  // namespace detail

/// Morphisms carry one star product into another:  S(f * g) = Sf *' Sg.
/// Checks the coordinate-transformation morphism on the polar chart, the
/// sigma-family morphism, the one-dimensional vector-field example, and
/// the exponential P-family morphism.
inline Report intertwining(std::uint64_t seed) {
  Report rep;
  // coordinate charts: Moyal vs. the transformed product, through hbar^2
  std::vector<std::pair<std::string, PointTransformation>> charts{
      {"polar", presets::polar()}, {"spherical", presets::spherical()}};
  for (auto& [name, t] : charts) {
    auto gamma = christoffel_from_transformation(t);
    auto s = build_S_T(gamma, 2);
    auto star1 = moyal(t.dim(), 2, t.vars());
    auto star2 = transformed_moyal(t, 2);
    auto corpus = presets::sample_corpus(t.vars(), 2);
    // the two corpus entries mixing three momentum factors make the
    // transformed product expensive on the 3-d chart; pair each of them
    // with the rest of the corpus but not with each other
    auto heavy = [&](size_t i) {
      return t.dim() == 3 && (i == 6 || i == 8);
    };
    std::vector<std::pair<PhaseFunction, PhaseFunction>> pairs;
    for (size_t i = 0; i < corpus.size(); ++i)
      for (size_t j = i; j < corpus.size(); ++j) {
        if (heavy(i) && heavy(j)) continue;
        pairs.push_back({corpus[i], corpus[j]});
      }
    auto r = verify_intertwining(s, star1, star2, pairs, 2,
                                 t.domain().with_seed(seed));
    rep.add(name + "-chart-morphism", -1, r.max_residual, 1e-8);
  }
  {  // sigma family on one degree of freedom
    std::vector<std::string> vars{"x"};
    Rational sg(1, 4), al(1, 6), be(-1, 3);
    auto s = build_S_sigma(sg, al, be, 3, 1, vars);
    auto star1 = moyal(1, 3, vars);
    auto star2 = sigma_product(sg, al, be, 3, 1, vars);
    auto pairs = detail::all_pairs(presets::sample_corpus(vars, 3));
    auto r = verify_intertwining(s, star1, star2, pairs, 3,
                                 SampleDomain{}.with_seed(seed));
    rep.add("sigma-family-morphism", -1, r.max_residual, 1e-8);
  }
  {  // vector-field product on x in (0.35, 1.65)
    auto [xs, ys] = presets::example1_fields();
    std::vector<std::string> vars{"x"};
    SampleDomain dom;
    dom.intervals["x"] = {0.35, 1.65};
    dom = dom.with_seed(seed);
    auto star2 = star_from_vectorfields(xs, ys, 3, vars, dom);
    auto star1 = moyal(1, 3, vars);
    auto s = presets::example1_morphism(3);
    auto pairs = detail::all_pairs(presets::sample_corpus(vars, 3));
    auto r = verify_intertwining(s, star1, star2, pairs, 2, dom);
    rep.add("vector-field-morphism", -1, r.max_residual, 1e-8);
  }
  {  // P-family: S = exp(P) with P = -(1/8) hbar^2 X^2 Y^2
    std::vector<std::string> vars{"x"};
    PPolynomial p{{CRational(Rational(-1, 8)), 2, {2, 2}}};
    auto star1 = moyal(1, 3, vars);
    auto star2 = p_family_product(p, 3, 1, vars);
    auto s = build_S_P(p, 3, 1, vars);
    auto pairs = detail::all_pairs(presets::sample_corpus(vars, 3));
    auto r = verify_intertwining(s, star1, star2, pairs, 3,
                                 SampleDomain{}.with_seed(seed));
    rep.add("p-family-morphism", -1, r.max_residual, 1e-8);
  }
  return rep;
}

/// Quantizes seeded random symmetric rank-2 and rank-3 observables through
/// the full morphism pipeline and through the closed-form covariant
/// operators, and checks the two agree on every preset chart.  Also checks
/// the minimal-scheme operators against the pipeline, the curved-space
/// operators against their flat-space limits, and the metric-tensor
/// Hamiltonian against the Laplace-Beltrami operator.
inline Report pipeline_vs_covariant(std::uint64_t seed) {
  Report rep;
  struct Chart {
    PointTransformation t;
    int nseeds;
  };
  std::vector<Chart> charts{{presets::polar(), 3}, {presets::spherical(), 2}};
  std::uint64_t k = 0;
  for (auto& chart : charts) {
    auto& t = chart.t;
    int n = t.dim();
    auto gamma = christoffel_from_transformation(t);
    auto dom = t.domain().with_seed(seed);
    auto s = build_S_T(gamma, 3);
    std::vector<ConfigOperator> phat;
    for (int j = 0; j < n; ++j) phat.push_back(momentum_operator(gamma, j));
    for (int i = 0; i < chart.nseeds; ++i, ++k) {
      auto k2 = presets::random_sym_tensor(2, seed + 11 + k, t.vars());
      Scalar v = Scalar::symbol(t.vars()[0]);
      auto h = presets::quadratic_observable(k2, v, 3);
      rep.add_bool("quadratic-pipeline-dim" + std::to_string(n) + "-k" +
                       std::to_string(i),
                   operator_equals(s_order(h, s, phat),
                                   quantize_quadratic_covariant(k2, v, gamma),
                                   dom, 1e-8),
                   1e-8);
      auto k3 = presets::random_sym_tensor(3, seed + 61 + k, t.vars());
      auto h3 = presets::cubic_observable(k3, 3);
      rep.add_bool("cubic-pipeline-dim" + std::to_string(n) + "-k" +
                       std::to_string(i),
                   operator_equals(s_order(h3, s, phat),
                                   quantize_cubic_covariant(k3, gamma), dom,
                                   1e-8),
                   1e-8);
    }
  }
  {  // minimal scheme on the polar chart
    auto t = presets::polar();
    auto gamma = christoffel_from_transformation(t);
    auto dom = t.domain().with_seed(seed);
    auto s = build_S_T(gamma, 3);
    std::vector<ConfigOperator> phat;
    for (int j = 0; j < 2; ++j) phat.push_back(momentum_operator(gamma, j));
    auto k2 = presets::random_sym_tensor(2, seed + 77, t.vars());
    Scalar v = Scalar::symbol("r");
    auto ac = presets::quadratic_observable(k2, v, 3);
    auto aq = minimal_observable_map(ac, gamma);
    auto diff = aq - ac;
    auto c = iterated_divergence(k2, gamma, 2);
    rep.add_bool(
        "observable-map-quadratic-delta",
        equals_numeric(diff.at(2),
                       MomentumPoly::from_scalar(
                           2, Scalar::constant(1, 8) * c.at({})),
                       dom),
        1e-9);
    rep.add_bool("minimal-quadratic-vs-pipeline",
                 operator_equals(s_order(aq, s, phat),
                                 minimal_quantize_quadratic(k2, v, gamma), dom,
                                 1e-8),
                 1e-8);
    auto k3 = presets::random_sym_tensor(3, seed + 78, t.vars());
    auto ac3 = presets::cubic_observable(k3, 3);
    auto aq3 = minimal_observable_map(ac3, gamma);
    rep.add_bool("minimal-cubic-vs-pipeline",
                 operator_equals(s_order(aq3, s, phat),
                                 minimal_quantize_cubic(k3, gamma), dom, 1e-8),
                 1e-8);
    auto d = quantize_quadratic_covariant(k2, v, gamma) -
             minimal_quantize_quadratic(k2, v, gamma);
    ConfigOperator expct =
        ConfigOperator::mult(2, t.vars(), Scalar::constant(-1, 8) * c.at({}))
            .hbar_shift(2);
    rep.add_bool("covariant-minus-minimal",
                 operator_equals(d, expct, dom, 1e-9), 1e-9);
    auto m = pullback_metric(t);
    auto kg = tensor_from_metric_inverse(m);
    rep.add_bool("metric-tensor-schemes-agree",
                 operator_equals(quantize_quadratic_covariant(kg, v, gamma),
                                 minimal_quantize_quadratic(kg, v, gamma), dom,
                                 1e-9),
                 1e-9);
    auto nat = quantize_quadratic_covariant(kg, Scalar(), gamma);
    auto lb = laplace_beltrami(m).scaled(CRational(Rational(-1, 2)))
                  .hbar_shift(2);
    rep.add_bool("laplace-beltrami", operator_equals(nat, lb, dom, 1e-9),
                 1e-9);
  }
  {  // curved-space operators
    auto sph = presets::two_sphere();
    auto kg = tensor_from_metric_inverse(sph);
    auto op0 = quantize_quadratic_curved(kg, Scalar(), sph, Rational(0));
    auto gamma = christoffel_from_metric(sph);
    auto minq = minimal_quantize_quadratic(kg, Scalar(), gamma);
    auto d = op0 - minq;
    ConfigOperator expct =
        ConfigOperator::mult(2, sph.vars, Scalar::constant(1, 4))
            .hbar_shift(2);
    auto sdom = sph.domain.with_seed(seed);
    rep.add_bool("sphere-scalar-curvature-term",
                 operator_equals(d, expct, sdom, 1e-9), 1e-9);
    auto t = presets::polar();
    auto dom = t.domain().with_seed(seed);
    auto gflat = pullback_metric(t);
    auto kf = presets::random_sym_tensor(2, seed + 5, t.vars());
    rep.add_bool(
        "curved-flat-limit-quadratic",
        operator_equals(
            quantize_quadratic_curved(kf, Scalar(), gflat, Rational(1, 3)),
            quantize_quadratic_covariant(kf, Scalar(),
                                         christoffel_from_metric(gflat)),
            dom, 1e-8),
        1e-8);
    auto k3 = presets::random_sym_tensor(3, seed + 6, t.vars());
    rep.add_bool(
        "curved-flat-limit-cubic",
        operator_equals(quantize_cubic_curved(k3, gflat, Rational(2, 3)),
                        quantize_cubic_covariant(
                            k3, christoffel_from_metric(gflat)),
                        dom, 1e-8),
        1e-8);
  }
  return rep;
}

/// The sigma-family involution: a closed-form fixed point, the
/// anti-homomorphism property (f*g)^# = g^# * f^#, and the reality
/// condition for the exponential P-family generator.
inline Report involution(std::uint64_t seed) {
  Report rep;
  std::vector<std::string> vars{"x"};
  Rational sg(1, 3), be(2, 5);
  Scalar x = Scalar::symbol("x");
  SampleDomain dom = SampleDomain{}.with_seed(seed);
  {  // A = x p^2 + hbar (beta x - 2 i sigma p) is a fixed point
    PhaseFunction a(1, 3);
    a.at(0) = (MomentumPoly::momentum(1, 0) * MomentumPoly::momentum(1, 0))
                  .scaled(x);
    a.at(1) =
        MomentumPoly::from_scalar(1, Scalar::constant(CRational(be)) * x) +
        MomentumPoly::momentum(1, 0).scaled(
            Scalar::constant(CRational(Rational(0), Rational(-2) * sg)));
    auto astar = sigma_involution(sg, a, vars);
    rep.add_bool("involution-fixed-point", equals_numeric(astar, a, dom),
                 1e-9);
  }
  {  // anti-homomorphism over the sigma product, on corpus pairs
    auto star = sigma_product(sg, Rational(1, 7), be, 3, 1, vars);
    auto corpus = presets::sample_corpus(vars, 3);
    bool ok = true;
    for (size_t i = 0; i < corpus.size(); ++i)
      for (size_t j = i; j < corpus.size(); ++j) {
        const auto& f = corpus[i];
        const auto& g = corpus[j];
        auto lhs = sigma_involution(sg, star.apply(f, g), vars);
        auto rhs = star.apply(sigma_involution(sg, g, vars),
                              sigma_involution(sg, f, vars));
        if (!equals_numeric(lhs, rhs, dom, 1e-8)) ok = false;
      }
    rep.add_bool("involution-antihomomorphism", ok, 1e-8);
  }
  {  // reality condition for P = -(1/8) hbar^2 X^2 Y^2
    PPolynomial p{{CRational(Rational(-1, 8)), 2, {2, 2}}};
    rep.add_bool("p-family-reality", p_reality_holds(p, 1), 1e-9);
  }
  return rep;
}

/// Formal self-adjointness with respect to the Riemannian volume density:
/// the covariant momentum operators, the quantized hydrogen Hamiltonian, a
/// seeded random quadratic observable, and the sign flip of a bare
/// derivative against the trivial density.
inline Report hermiticity(std::uint64_t seed) {
  Report rep;
  auto t = presets::spherical();
  auto gamma = christoffel_from_transformation(t);
  auto m = pullback_metric(t);
  auto dom = t.domain().with_seed(seed);
  bool ok = true;
  std::vector<ConfigOperator> phat;
  for (int j = 0; j < 3; ++j) {
    phat.push_back(momentum_operator(gamma, j));
    if (!operator_equals(formal_adjoint(phat.back(), m.volume_density),
                         phat.back(), dom))
      ok = false;
  }
  rep.add_bool("momentum-operators-self-adjoint", ok, 1e-9);
  auto h = presets::hydrogen_hamiltonian(3);
  auto op = s_order(h, build_S_T(gamma, 3), phat);
  rep.add_bool("hydrogen-operator-self-adjoint",
               operator_equals(formal_adjoint(op, m.volume_density), op, dom,
                               1e-8),
               1e-8);
  rep.add_bool(
      "bare-derivative-anti-self-adjoint",
      operator_equals(
          formal_adjoint(ConfigOperator::deriv(3, t.vars(), 0),
                         Scalar::constant(1)),
          ConfigOperator::deriv(3, t.vars(), 0).scaled(CRational(-1)), dom),
      1e-9);
  {  // seeded quadratic observable on the polar chart
    auto tp = presets::polar();
    auto gp = christoffel_from_transformation(tp);
    auto mp = pullback_metric(tp);
    auto domp = tp.domain().with_seed(seed);
    auto k2 = presets::random_sym_tensor(2, seed + 21, tp.vars());
    auto qc = quantize_quadratic_covariant(k2, Scalar::symbol("r"), gp);
    rep.add_bool("random-quadratic-self-adjoint",
                 operator_equals(formal_adjoint(qc, mp.volume_density), qc,
                                 domp, 1e-8),
                 1e-8);
  }
  return rep;
}

/// Closed-form results verified against the implementation: Christoffel
/// symbols and their trace identity, the order-2 morphism coefficients on
/// the spherical chart, the covariant momentum operators, the quantized
/// hydrogen Hamiltonian, curvature of flat and spherical metrics, the
/// Weyl-ordering averaging oracle, and the classical limit of the quantum
/// bracket.
inline Report paper_examples(std::uint64_t seed) {
  Report rep;
  {  // Christoffel symbols from transformation vs. from pullback metric
    std::vector<std::pair<std::string, PointTransformation>> charts{
        {"polar", presets::polar()},
        {"spherical", presets::spherical()},
        {"parabolic", presets::parabolic()}};
    for (auto& [name, t] : charts) {
      auto dom = t.domain().with_seed(seed);
      auto g1 = christoffel_from_transformation(t);
      auto g2 = christoffel_from_metric(pullback_metric(t));
      bool ok = true;
      for (int i = 0; i < t.dim(); ++i)
        for (int j = 0; j < t.dim(); ++j)
          for (int k = 0; k < t.dim(); ++k)
            if (!equals_numeric(g1.at(i, j, k), g2.at(i, j, k), dom))
              ok = false;
      rep.add_bool("christoffel-cross-validation-" + name, ok, 1e-9);
    }
  }
  {  // frozen spherical Christoffel values and the trace identity
    auto t = presets::spherical();
    auto g = christoffel_from_transformation(t);
    auto dom = t.domain().with_seed(seed);
    Scalar r = Scalar::symbol("r"), th = Scalar::symbol("theta");
    rep.add_bool("spherical-christoffel-r-thth",
                 equals_numeric(g.at(0, 1, 1), -r, dom), 1e-9);
    rep.add_bool("spherical-christoffel-th-rth",
                 equals_numeric(g.at(1, 0, 1), Scalar::constant(1) / r, dom),
                 1e-9);
    rep.add_bool(
        "spherical-christoffel-ph-thph",
        equals_numeric(g.at(2, 1, 2), Scalar::cos(th) / Scalar::sin(th), dom),
        1e-9);
    rep.add_bool(
        "spherical-christoffel-r-phph",
        equals_numeric(g.at(0, 2, 2),
                       -r * Scalar::sin(th) * Scalar::sin(th), dom),
        1e-9);
    auto m = pullback_metric(t);
    bool ok = true;
    for (int j = 0; j < 3; ++j)
      if (!equals_numeric(g.trace(j),
                          Scalar::ln(m.volume_density).diff(t.vars()[j]),
                          dom))
        ok = false;
    rep.add_bool("christoffel-trace-identity", ok, 1e-9);
  }
  {  // spherical morphism coefficients at order hbar^2
    auto t = presets::spherical();
    auto gamma = christoffel_from_transformation(t);
    auto s = build_S_T(gamma, 3);
    auto dom = t.domain().with_seed(seed);
    Scalar r = Scalar::symbol("r"), th = Scalar::symbol("theta");
    Scalar tanth = Scalar::tan(th);
    auto coeff = [&](PhaseIdx idx) {
      auto it = s.order(2).terms().find(idx);
      return it == s.order(2).terms().end() ? MomentumPoly(3) : it->second;
    };
    MomentumPoly expect = MomentumPoly::from_scalar(
        3, Scalar::constant(1, 4) * (Scalar::constant(1, 2) / (tanth * tanth) -
                                     Scalar::constant(1)));
    rep.add_bool("morphism-coeff-dpth2",
                 equals_numeric(coeff({0, 0, 0, 0, 2, 0}), expect, dom), 1e-9);
    expect = MomentumPoly::from_scalar(3, Scalar::constant(1, 4) / (r * tanth));
    rep.add_bool("morphism-coeff-dpr-dpth",
                 equals_numeric(coeff({0, 0, 0, 1, 1, 0}), expect, dom), 1e-9);
    expect = MomentumPoly::momentum(3, 2).scaled(Scalar::constant(1, 4) /
                                                 (r * r));
    rep.add_bool("morphism-coeff-pph-dpr2-dpph",
                 equals_numeric(coeff({0, 0, 0, 2, 0, 1}), expect, dom), 1e-9);
    expect = MomentumPoly::from_scalar(3, Scalar::constant(-1, 8) * r);
    rep.add_bool("morphism-coeff-dr-dpth2",
                 equals_numeric(coeff({1, 0, 0, 0, 2, 0}), expect, dom), 1e-9);
  }
  {  // covariant momentum operators and the hydrogen Hamiltonian
    auto t = presets::spherical();
    auto gamma = christoffel_from_transformation(t);
    auto dom = t.domain().with_seed(seed);
    std::vector<ConfigOperator> phat;
    for (int j = 0; j < 3; ++j) phat.push_back(momentum_operator(gamma, j));
    Scalar r = Scalar::symbol("r"), th = Scalar::symbol("theta");
    auto vars = t.vars();
    ConfigOperator pr_expect =
        (ConfigOperator::deriv(3, vars, 0) +
         ConfigOperator::mult(3, vars, Scalar::constant(1) / r))
            .scaled(-Scalar::i())
            .hbar_shift(1);
    rep.add_bool("momentum-operator-r",
                 operator_equals(phat[0], pr_expect, dom), 1e-9);
    ConfigOperator pth_expect =
        (ConfigOperator::deriv(3, vars, 1) +
         ConfigOperator::mult(3, vars,
                              Scalar::constant(1, 2) / Scalar::tan(th)))
            .scaled(-Scalar::i())
            .hbar_shift(1);
    rep.add_bool("momentum-operator-theta",
                 operator_equals(phat[1], pth_expect, dom), 1e-9);
    ConfigOperator pph_expect =
        ConfigOperator::deriv(3, vars, 2).scaled(-Scalar::i()).hbar_shift(1);
    rep.add_bool("momentum-operator-phi",
                 operator_equals(phat[2], pph_expect, dom), 1e-9);

    auto s = build_S_T(gamma, 3);
    auto h = presets::hydrogen_hamiltonian(3);
    auto sinv_h = s.invert().apply(h);
    Scalar m = Scalar::symbol("m"), ke = Scalar::symbol("ke");
    Scalar s2 = Scalar::sin(th) * Scalar::sin(th);
    MomentumPoly corr = MomentumPoly::from_scalar(
        3, Scalar::constant(-1, 8) / (m * r * r) *
               (Scalar::constant(1) / s2 + Scalar::constant(1)));
    rep.add_bool("hydrogen-correction-term",
                 equals_numeric(sinv_h.at(2), corr, dom), 1e-9);
    rep.add_bool("hydrogen-classical-part",
                 equals_numeric(sinv_h.at(0), h.at(0), dom), 1e-9);
    auto op = s_order(h, s, phat);
    Scalar hm = Scalar::constant(-1, 2) / m;
    ConfigOperator expect = ConfigOperator::zero(3, vars);
    expect.accumulate(2, {2, 0, 0}, hm);
    expect.accumulate(2, {1, 0, 0}, hm * Scalar::constant(2) / r);
    expect.accumulate(2, {0, 2, 0}, hm / (r * r));
    expect.accumulate(2, {0, 1, 0}, hm / (r * r * Scalar::tan(th)));
    expect.accumulate(2, {0, 0, 2}, hm / (r * r * s2));
    expect.accumulate(0, {0, 0, 0}, -ke / r);
    rep.add_bool("hydrogen-operator",
                 operator_equals(op, expect, dom, 1e-9), 1e-9);
  }
  {  // curvature: flat for coordinate charts, constant for the sphere
    std::vector<std::pair<std::string, PointTransformation>> charts{
        {"polar", presets::polar()},
        {"spherical", presets::spherical()},
        {"parabolic", presets::parabolic()}};
    for (auto& [name, t] : charts) {
      auto dom = t.domain().with_seed(seed);
      auto m = pullback_metric(t);
      auto c = curvature(christoffel_from_metric(m), m);
      bool ok = equals_numeric(c.scalar, Scalar(), dom);
      for (auto& row : c.ricci)
        for (auto& e : row)
          if (!equals_numeric(e, Scalar(), dom)) ok = false;
      rep.add_bool("flat-curvature-" + name, ok, 1e-9);
    }
    auto sph = presets::two_sphere();
    auto sdom = sph.domain.with_seed(seed);
    auto c = curvature(christoffel_from_metric(sph), sph);
    rep.add_bool("sphere-scalar-curvature",
                 equals_numeric(c.scalar, Scalar::constant(2), sdom), 1e-9);
    rep.add_bool("sphere-ricci-thth",
                 equals_numeric(c.ricci[0][0], Scalar::constant(1), sdom),
                 1e-9);
  }
  {  // Weyl ordering equals the symmetric average over operator orderings
    SampleDomain dom = SampleDomain{}.with_seed(seed);
    {
      std::vector<std::string> vars{"x1", "x2"};
      auto gamma = ChristoffelField::zero(2, vars);
      std::vector<ConfigOperator> phat{momentum_operator(gamma, 0),
                                       momentum_operator(gamma, 1)};
      bool ok = true;
      for (int a1 = 0; a1 <= 2; ++a1)
        for (int b1 = 0; b1 <= 3; ++b1)
          for (int a2 = 0; a2 <= 1; ++a2)
            for (int b2 = 0; b2 + b1 <= 3; ++b2)
              if (!detail::weyl_matches_average(vars, {a1, a2}, {b1, b2},
                                                phat, dom))
                ok = false;
      rep.add_bool("weyl-symmetric-average-dim2", ok, 1e-9);
    }
    {
      std::vector<std::string> vars{"x1", "x2", "x3"};
      auto gamma = ChristoffelField::zero(3, vars);
      std::vector<ConfigOperator> phat{momentum_operator(gamma, 0),
                                       momentum_operator(gamma, 1),
                                       momentum_operator(gamma, 2)};
      bool ok = true;
      for (int a1 = 0; a1 <= 1; ++a1)
        for (int a2 = 0; a2 <= 1; ++a2)
          for (int b1 = 0; b1 <= 2; ++b1)
            for (int b2 = 0; b2 + b1 <= 3; ++b2)
              for (int b3 = 0; b3 + b2 + b1 <= 3; ++b3) {
                if (a1 + a2 + b1 + b2 + b3 > 4) continue;
                if (!detail::weyl_matches_average(vars, {a1, a2, 0},
                                                  {b1, b2, b3}, phat, dom))
                  ok = false;
              }
      rep.add_bool("weyl-symmetric-average-dim3", ok, 1e-9);
    }
  }
  {  // quantum bracket reduces to the Poisson bracket at leading order
    std::vector<std::string> vars{"x1", "x2"};
    auto star = moyal(2, 3, vars);
    Scalar x1 = Scalar::symbol("x1"), x2 = Scalar::symbol("x2");
    PhaseFunction f(2, 3), g(2, 3);
    f.at(0) = (MomentumPoly::momentum(2, 0) * MomentumPoly::momentum(2, 0))
                  .scaled(x2) +
              MomentumPoly::from_scalar(2, Scalar::sin(x1));
    g.at(0) = MomentumPoly::momentum(2, 1).scaled(x1 * x1);
    auto br = quantum_bracket(star, f, g);
    MomentumPoly poisson(2);
    for (int i = 0; i < 2; ++i)
      poisson = poisson + f.at(0).dx(vars[i]) * g.at(0).dp(i) -
                f.at(0).dp(i) * g.at(0).dx(vars[i]);
    rep.add_bool("bracket-classical-limit",
                 equals_numeric(br.at(0), poisson,
                                SampleDomain{}.with_seed(seed), 1e-9),
                 1e-9);
  }
  return rep;
}

}  // namespace curviq::suites
