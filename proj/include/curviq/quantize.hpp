#pragma once

#include <vector>

#include "curviq/config_operator.hpp"

namespace curviq {

namespace detail {

/// Covariant Hessian acting on scalars: d_j d_k - Gamma^m_{jk} d_m.
inline ConfigOperator hessian_op(const ChristoffelField& gamma, int j, int k) {
  int n = gamma.n;
  const auto& vars = gamma.vars;
  ConfigOperator h = compose(ConfigOperator::deriv(n, vars, j),
                             ConfigOperator::deriv(n, vars, k));
  for (int m = 0; m < n; ++m)
    h = h - ConfigOperator::deriv(n, vars, m).scaled(gamma.at(m, j, k));
  return h;
}

/// Covariant divergence of an operator-valued vector field:
/// (div V) psi = d_i (V^i psi) + Gamma^i_{mi} V^m psi.
inline ConfigOperator div_op(const ChristoffelField& gamma,
                             const std::vector<ConfigOperator>& v) {
  int n = gamma.n;
  const auto& vars = gamma.vars;
  ConfigOperator r = ConfigOperator::zero(n, vars);
  for (int i = 0; i < n; ++i)
    r = r + compose(ConfigOperator::deriv(n, vars, i), v[i]);
  for (int m = 0; m < n; ++m)
    r = r + v[m].scaled(gamma.trace(m));
  return r;
}

/// The pseudo-Laplace operator Delta_K = nabla_i K^{ij} nabla_j.
inline ConfigOperator pseudo_laplace(const SymTensorField& k,
                                     const ChristoffelField& gamma) {
  int n = gamma.n;
  const auto& vars = gamma.vars;
  std::vector<ConfigOperator> w(n, ConfigOperator::zero(n, vars));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      w[i] = w[i] +
             compose(ConfigOperator::mult(n, vars, k.at({i, j})),
                     ConfigOperator::deriv(n, vars, j));
  return div_op(gamma, w);
}

/// nabla_i K^{ijk} nabla_j nabla_k.
inline ConfigOperator cubic_first_block(const SymTensorField& k,
                                        const ChristoffelField& gamma) {
  int n = gamma.n;
  const auto& vars = gamma.vars;
  std::vector<ConfigOperator> w(n, ConfigOperator::zero(n, vars));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int kk = 0; kk < n; ++kk)
        w[i] = w[i] + compose(ConfigOperator::mult(n, vars, k.at({i, j, kk})),
                              hessian_op(gamma, j, kk));
  return div_op(gamma, w);
}

/// nabla_i nabla_j K^{ijk} nabla_k.
inline ConfigOperator cubic_second_block(const SymTensorField& k,
                                         const ChristoffelField& gamma) {
  int n = gamma.n;
  const auto& vars = gamma.vars;
  // U^{ij} = K^{ijk} d_k (operator-valued rank-2 tensor)
  std::vector<std::vector<ConfigOperator>> u(
      n, std::vector<ConfigOperator>(n, ConfigOperator::zero(n, vars)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int kk = 0; kk < n; ++kk)
        u[i][j] = u[i][j] +
                  compose(ConfigOperator::mult(n, vars, k.at({i, j, kk})),
                          ConfigOperator::deriv(n, vars, kk));
  // A^i = nabla_j U^{ij}
  std::vector<ConfigOperator> a(n, ConfigOperator::zero(n, vars));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      a[i] = a[i] + compose(ConfigOperator::deriv(n, vars, j), u[i][j]);
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < n; ++m)
        a[i] = a[i] + u[m][j].scaled(gamma.at(i, m, j)) +
               u[i][m].scaled(gamma.at(j, m, j));
  }
  return div_op(gamma, a);
}

}  // namespace detail

/// Quadratic covariant quantum Hamiltonian:
/// -(hbar^2/2)(nabla_i K^{ij} nabla_j + 1/4 K^{ij}_{;ij}) + V.
inline ConfigOperator quantize_quadratic_covariant(
    const SymTensorField& k, const Scalar& v, const ChristoffelField& gamma) {
  int n = gamma.n;
  const auto& vars = gamma.vars;
  ConfigOperator bracket = detail::pseudo_laplace(k, gamma);
  TensorField c = iterated_divergence(k, gamma, 2);  // K^{ij}_{;ij}, scalar
  bracket = bracket + ConfigOperator::mult(n, vars,
                                           Scalar::constant(1, 4) * c.at({}));
  return bracket.scaled(CRational(Rational(-1, 2))).hbar_shift(2) +
         ConfigOperator::mult(n, vars, v);
}

/// Cubic covariant quantum Hamiltonian:
/// (i hbar^3/2)(nabla_i K nabla_j nabla_k + nabla_i nabla_j K nabla_k
///   + 1/4 nabla_k K^{ijk}_{;ij} + 1/4 K^{ijk}_{;ij} nabla_k).
inline ConfigOperator quantize_cubic_covariant(const SymTensorField& k,
                                               const ChristoffelField& gamma) {
  int n = gamma.n;
  const auto& vars = gamma.vars;
  ConfigOperator sum = detail::cubic_first_block(k, gamma) +
                       detail::cubic_second_block(k, gamma);
  TensorField c = iterated_divergence(k, gamma, 2);  // C^k = K^{ijk}_{;ij}
  std::vector<ConfigOperator> cv;
  for (int kk = 0; kk < n; ++kk)
    cv.push_back(ConfigOperator::mult(n, vars, c.at({kk})));
  ConfigOperator div_c = detail::div_op(gamma, cv);  // nabla_k (C^k .)
  ConfigOperator c_grad = ConfigOperator::zero(n, vars);
  for (int kk = 0; kk < n; ++kk)
    c_grad = c_grad + compose(cv[kk], ConfigOperator::deriv(n, vars, kk));
  sum = sum + (div_c + c_grad).scaled(CRational(Rational(1, 4)));
  return sum.scaled(CRational(Rational(0), Rational(1, 2))).hbar_shift(3);
}

/// Curved-space quadratic operator: the covariant bracket gains
/// -1/4 (1-alpha) K^{ij} R_{ij}.
inline ConfigOperator quantize_quadratic_curved(const SymTensorField& k,
                                                const Scalar& v,
                                                const MetricField& g,
                                                Rational alpha) {
  ChristoffelField gamma = christoffel_from_metric(g);
  CurvatureData curv = curvature(gamma, g);
  int n = gamma.n;
  const auto& vars = gamma.vars;
  Scalar kr;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) kr += k.at({i, j}) * curv.ricci[i][j];
  Scalar extra = Scalar::constant(CRational(Rational(-1, 4) *
                                            (Rational(1) - alpha))) *
                 kr;
  ConfigOperator bracket = detail::pseudo_laplace(k, gamma);
  TensorField c = iterated_divergence(k, gamma, 2);
  bracket = bracket + ConfigOperator::mult(
                          n, vars,
                          Scalar::constant(1, 4) * c.at({}) + extra);
  return bracket.scaled(CRational(Rational(-1, 2))).hbar_shift(2) +
         ConfigOperator::mult(n, vars, v);
}

/// Curved-space cubic operator: the covariant sum gains
/// -3/4 (1-alpha) (nabla_i (K^{ijk} R_{jk} .) + K^{ijk} R_{jk} nabla_i).
inline ConfigOperator quantize_cubic_curved(const SymTensorField& k,
                                            const MetricField& g,
                                            Rational alpha) {
  ChristoffelField gamma = christoffel_from_metric(g);
  CurvatureData curv = curvature(gamma, g);
  int n = gamma.n;
  const auto& vars = gamma.vars;
  ConfigOperator sum = detail::cubic_first_block(k, gamma) +
                       detail::cubic_second_block(k, gamma);
  TensorField c = iterated_divergence(k, gamma, 2);
  std::vector<ConfigOperator> cv;
  for (int kk = 0; kk < n; ++kk)
    cv.push_back(ConfigOperator::mult(n, vars, c.at({kk})));
  ConfigOperator c_grad = ConfigOperator::zero(n, vars);
  for (int kk = 0; kk < n; ++kk)
    c_grad = c_grad + compose(cv[kk], ConfigOperator::deriv(n, vars, kk));
  sum = sum + (detail::div_op(gamma, cv) + c_grad)
                  .scaled(CRational(Rational(1, 4)));
  // B^i = K^{ijk} R_{jk}
  std::vector<ConfigOperator> bv;
  std::vector<Scalar> b(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      for (int kk = 0; kk < n; ++kk)
        b[i] += k.at({i, j, kk}) * curv.ricci[j][kk];
    bv.push_back(ConfigOperator::mult(n, vars, b[i]));
  }
  ConfigOperator b_grad = ConfigOperator::zero(n, vars);
  for (int i = 0; i < n; ++i)
    b_grad = b_grad + compose(bv[i], ConfigOperator::deriv(n, vars, i));
  sum = sum + (detail::div_op(gamma, bv) + b_grad)
                  .scaled(CRational(Rational(-3, 4) * (Rational(1) - alpha)));
  return sum.scaled(CRational(Rational(0), Rational(1, 2))).hbar_shift(3);
}

namespace detail {

inline long long factorial(int n) {
  long long r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

/// Degree-d homogeneous part of a momentum polynomial as a fully
/// symmetric contravariant rank-d tensor.
inline SymTensorField tensor_from_poly_part(const MomentumPoly& f, int d,
                                            const std::vector<std::string>& vars) {
  int n = f.dim();
  SymTensorField t(n, d, 0, vars);
  for (const auto& [m, c] : f.terms()) {
    int deg = 0;
    for (int e : m) deg += e;
    if (deg != d) continue;
    long long mfact = 1;
    for (int e : m) mfact *= factorial(e);
    Scalar comp = c * Scalar::constant(CRational(Rational(mfact, factorial(d))));
    t.enumerate([&](const std::vector<int>& idx) {
      std::vector<int> mult(n, 0);
      for (int v : idx) ++mult[v];
      if (mult == m) t.at(idx) = comp;
    });
  }
  return t;
}

inline MomentumPoly poly_from_tensor(const TensorField& t) {
  MomentumPoly r(t.dim());
  t.enumerate([&](const std::vector<int>& idx) {
    if (t.at(idx).is_zero()) return;
    MomentumPoly mono = MomentumPoly::from_scalar(t.dim(), t.at(idx));
    for (int v : idx) mono = mono * MomentumPoly::momentum(t.dim(), v);
    r = r + mono;
  });
  return r;
}

/// One application of the hbar^2 generator of the observable map: for each
/// homogeneous momentum degree, strip two momentum slots off the symmetric
/// coefficient tensor, apply nabla_k nabla_j, contract, and weight by 1/4.
inline MomentumPoly observable_generator(const MomentumPoly& f,
                                         const ChristoffelField& gamma) {
  int n = gamma.n;
  MomentumPoly out(n);
  int max_deg = f.degree();
  for (int d = 2; d <= max_deg; ++d) {
    SymTensorField t = tensor_from_poly_part(f, d, gamma.vars);
    // strip two tensor slots (no combinatorial multiplicity), covariantly
    // differentiate and contract the stripped slots in order; the uniform
    // weight 1/4 is the normalization that makes the map compatible with
    // the closed-form quadratic and cubic operators
    TensorField contracted = t.covariant_derivative(gamma)
                                 .covariant_derivative(gamma)
                                 .contract(0, 0)
                                 .contract(0, 0);
    out = out + poly_from_tensor(contracted)
                    .scaled(CRational(Rational(1, 4)));
  }
  return out;
}

}  // namespace detail

/// Observable map A_Q = exp((hbar^2/8) sum nabla_k nabla_j d_{p_k} d_{p_j}) A_C.
/// The series terminates: each application lowers momentum degree by two.
inline PhaseFunction minimal_observable_map(const PhaseFunction& a,
                                            const ChristoffelField& gamma) {
  PhaseFunction r = a;
  PhaseFunction cur = a;
  int iter = 0;
  while (true) {
    ++iter;
    PhaseFunction next(a.dim(), a.truncation());
    bool any = false;
    for (int h = 0; h + 2 <= a.truncation(); ++h) {
      MomentumPoly g = detail::observable_generator(cur.at(h), gamma)
                           .scaled(CRational(Rational(1, iter)));
      if (!g.is_zero()) any = true;
      next.at(h + 2) = g;
    }
    if (!any) break;
    r = r + next;
    cur = next;
  }
  return r;
}

/// Minimal quantization: -(hbar^2/2) nabla_i K^{ij} nabla_j + V.
inline ConfigOperator minimal_quantize_quadratic(const SymTensorField& k,
                                                 const Scalar& v,
                                                 const ChristoffelField& gamma) {
  return detail::pseudo_laplace(k, gamma)
             .scaled(CRational(Rational(-1, 2)))
             .hbar_shift(2) +
         ConfigOperator::mult(gamma.n, gamma.vars, v);
}

/// Minimal cubic quantization:
/// (i hbar^3/2)(nabla_i K nabla_j nabla_k + nabla_i nabla_j K nabla_k).
inline ConfigOperator minimal_quantize_cubic(const SymTensorField& k,
                                             const ChristoffelField& gamma) {
  return (detail::cubic_first_block(k, gamma) +
          detail::cubic_second_block(k, gamma))
      .scaled(CRational(Rational(0), Rational(1, 2)))
      .hbar_shift(3);
}

/// Laplace-Beltrami operator Delta = nabla_i g^{ij} nabla_j (at hbar^0).
inline ConfigOperator laplace_beltrami(const MetricField& g) {
  ChristoffelField gamma = christoffel_from_metric(g);
  return detail::pseudo_laplace(tensor_from_metric_inverse(g), gamma);
}

}  // namespace curviq
