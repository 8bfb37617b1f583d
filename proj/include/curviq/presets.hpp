#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "curviq/quantize.hpp"

namespace curviq::presets {

/// Coordinate boxes that keep clear of the singular sets (r = 0,
/// sin(theta) = 0, tan(theta) poles, u = v = 0).
inline SampleDomain polar_domain() {
  SampleDomain d;
  d.intervals["r"] = {0.3, 1.6};
  d.intervals["theta"] = {0.3, 1.2};
  return d;
}

inline SampleDomain spherical_domain() {
  SampleDomain d;
  d.intervals["r"] = {0.3, 1.6};
  d.intervals["theta"] = {0.3, 1.2};
  d.intervals["phi"] = {0.3, 6.0};
  return d;
}

inline SampleDomain parabolic_domain() {
  SampleDomain d;
  d.intervals["u"] = {0.35, 1.65};
  d.intervals["v"] = {0.35, 1.65};
  return d;
}

inline PointTransformation identity(int n) {
  std::vector<std::string> vars;
  std::vector<Scalar> phi;
  for (int i = 0; i < n; ++i) {
    vars.push_back("x" + std::to_string(i + 1));
    phi.push_back(Scalar::symbol(vars.back()));
  }
  return PointTransformation(std::move(vars), std::move(phi), SampleDomain{});
}

/// x = r cos(theta), y = r sin(theta).
inline PointTransformation polar() {
  Scalar r = Scalar::symbol("r"), th = Scalar::symbol("theta");
  return PointTransformation({"r", "theta"},
                             {r * Scalar::cos(th), r * Scalar::sin(th)},
                             polar_domain());
}

/// x = r sin(theta) cos(phi), y = r sin(theta) sin(phi), z = r cos(theta).
inline PointTransformation spherical() {
  Scalar r = Scalar::symbol("r"), th = Scalar::symbol("theta"),
         ph = Scalar::symbol("phi");
  return PointTransformation(
      {"r", "theta", "phi"},
      {r * Scalar::sin(th) * Scalar::cos(ph),
       r * Scalar::sin(th) * Scalar::sin(ph), r * Scalar::cos(th)},
      spherical_domain());
}

/// Parabolic coordinates: x = (u^2 - v^2)/2, y = u v.
inline PointTransformation parabolic() {
  Scalar u = Scalar::symbol("u"), v = Scalar::symbol("v");
  return PointTransformation(
      {"u", "v"}, {Scalar::constant(1, 2) * (u * u - v * v), u * v},
      parabolic_domain());
}

/// Unit 2-sphere metric diag(1, sin^2 theta) in (theta, phi).
inline MetricField two_sphere() {
  SampleDomain d;
  d.intervals["theta"] = {0.3, 1.2};
  d.intervals["phi"] = {0.3, 6.0};
  Scalar th = Scalar::symbol("theta");
  Mat g = zero_matrix(2);
  g[0][0] = Scalar::constant(1);
  g[1][1] = Scalar::sin(th) * Scalar::sin(th);
  return MetricField(2, {"theta", "phi"}, std::move(g), d);
}

/// One-dimensional worked example: the commuting pair
/// X' = x^2 d_x - 2 x p d_p,  Y' = x^{-2} d_p
/// obtained from the Moyal fields under (x, p) -> (-1/x, x^2 p).
inline std::pair<std::vector<PhaseOp>, std::vector<PhaseOp>> example1_fields() {
  std::vector<std::string> vars{"x"};
  Scalar x = Scalar::symbol("x");
  Scalar x2 = x * x;
  Scalar xm2 = Scalar::constant(1) / x2;
  MomentumPoly a(1), b(1);
  a = MomentumPoly::from_scalar(1, x2);
  b = MomentumPoly::momentum(1, 0).scaled(Scalar::constant(-2) * x);
  PhaseOp xfield = PhaseOp::vector_field(1, vars, {a}, {b});
  PhaseOp yfield = PhaseOp::vector_field(
      1, vars, {MomentumPoly(1)}, {MomentumPoly::from_scalar(1, xm2)});
  return {{xfield}, {yfield}};
}

/// The printed morphism for that example:
/// S = id + (hbar^2/4)(2 x^{-2} d_p^2 + x^{-2} p d_p^3 - x^{-1} d_x d_p^2).
inline Morphism example1_morphism(int trunc) {
  std::vector<std::string> vars{"x"};
  Morphism s(1, trunc, vars);
  if (trunc < 2) return s;
  Scalar x = Scalar::symbol("x");
  Scalar xm1 = Scalar::constant(1) / x;
  Scalar xm2 = xm1 * xm1;
  PhaseOp s2 = PhaseOp::zero(1, vars);
  s2.accumulate({0, 2}, MomentumPoly::from_scalar(1, Scalar::constant(1, 2) * xm2));
  s2.accumulate({0, 3}, MomentumPoly::momentum(1, 0)
                            .scaled(Scalar::constant(1, 4) * xm2));
  s2.accumulate({1, 2}, MomentumPoly::from_scalar(
                            1, Scalar::constant(-1, 4) * xm1));
  s.order(2) = s2;
  return s;
}

/// Hydrogen-atom Hamiltonian in spherical coordinates,
/// H = (p_r^2 + p_theta^2/r^2 + p_phi^2/(r^2 sin^2 theta)) / (2m) - ke/r,
/// with the mass m and the Coulomb constant ke = e^2/(4 pi eps0) kept as
/// symbolic atoms.
inline PhaseFunction hydrogen_hamiltonian(int trunc) {
  Scalar r = Scalar::symbol("r"), th = Scalar::symbol("theta");
  Scalar m = Scalar::symbol("m"), ke = Scalar::symbol("ke");
  Scalar r2 = r * r;
  Scalar s2 = Scalar::sin(th) * Scalar::sin(th);
  Scalar half_m = Scalar::constant(1) / (Scalar::constant(2) * m);
  MomentumPoly pr = MomentumPoly::momentum(3, 0);
  MomentumPoly pt = MomentumPoly::momentum(3, 1);
  MomentumPoly pp = MomentumPoly::momentum(3, 2);
  MomentumPoly h = (pr * pr).scaled(half_m) +
                   (pt * pt).scaled(half_m / r2) +
                   (pp * pp).scaled(half_m / (r2 * s2)) +
                   MomentumPoly::from_scalar(3, -ke / r);
  return PhaseFunction::from_poly(h, trunc);
}

/// Deterministic degree <= 3 test corpus on the given coordinate chart.
inline std::vector<PhaseFunction> sample_corpus(
    const std::vector<std::string>& vars, int trunc) {
  int n = static_cast<int>(vars.size());
  std::vector<PhaseFunction> out;
  auto add = [&](const MomentumPoly& p) {
    out.push_back(PhaseFunction::from_poly(p, trunc));
  };
  Scalar x0 = Scalar::symbol(vars[0]);
  MomentumPoly p0 = MomentumPoly::momentum(n, 0);
  add(MomentumPoly::from_scalar(n, x0 * x0));
  add(p0 * p0);
  add(p0.scaled(x0));
  add((p0 * p0 * p0).scaled(Scalar::constant(1, 3)) +
      MomentumPoly::from_scalar(n, x0));
  if (n >= 2) {
    Scalar x1 = Scalar::symbol(vars[1]);
    MomentumPoly p1 = MomentumPoly::momentum(n, 1);
    add(p0 * p1);
    add((p1 * p1).scaled(x0) + p0.scaled(x1 * x0));
    add((p0 * p1 * p1).scaled(Scalar::constant(1, 2)));
  }
  if (n >= 3) {
    MomentumPoly p1 = MomentumPoly::momentum(n, 1);
    MomentumPoly p2 = MomentumPoly::momentum(n, 2);
    add(p2 * p2);
    add(p0 * p1 * p2);
  }
  return out;
}

/// Seeded random symmetric contravariant tensor with small-integer
/// polynomial components in the chart variables.
inline SymTensorField random_sym_tensor(int rank, std::uint64_t seed,
                                        const std::vector<std::string>& vars) {
  int n = static_cast<int>(vars.size());
  SymTensorField t(n, rank, 0, vars);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_int_distribution<int> deg(0, 2);
  t.enumerate([&](const std::vector<int>& idx) {
    std::vector<int> sorted = idx;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != idx) return;  // fill canonical slots only
    Scalar c = Scalar::constant(coeff(rng));
    int d = deg(rng);
    for (int k = 0; k < d; ++k) c = c * Scalar::symbol(vars[pick(rng)]);
    // symmetrize by copying to every permutation slot
    std::vector<int> perm = sorted;
    do {
      t.at(perm) = c;
    } while (std::next_permutation(perm.begin(), perm.end()));
  });
  return t;
}

/// Classical observable 1/2 K^{ij} p_i p_j + V.
inline PhaseFunction quadratic_observable(const SymTensorField& k,
                                          const Scalar& v, int trunc) {
  int n = k.dim();
  MomentumPoly h(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      h = h + (MomentumPoly::momentum(n, i) * MomentumPoly::momentum(n, j))
                  .scaled(Scalar::constant(1, 2) * k.at({i, j}));
  h = h + MomentumPoly::from_scalar(n, v);
  return PhaseFunction::from_poly(h, trunc);
}

/// Classical observable K^{ijk} p_i p_j p_k.
inline PhaseFunction cubic_observable(const SymTensorField& k, int trunc) {
  int n = k.dim();
  MomentumPoly h(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l)
        h = h + (MomentumPoly::momentum(n, i) * MomentumPoly::momentum(n, j) *
                 MomentumPoly::momentum(n, l))
                    .scaled(k.at({i, j, l}));
  return PhaseFunction::from_poly(h, trunc);
}

}  // namespace curviq::presets
