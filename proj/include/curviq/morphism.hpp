#pragma once

#include <vector>

#include "curviq/star_product.hpp"

namespace curviq {

/// Equivalence morphism between star products: a truncated hbar series of
/// phase-space differential operators with identity leading term,
/// S = id + hbar S_1 + hbar^2 S_2 + ...
class Morphism {
public:
  Morphism(int n, int trunc, std::vector<std::string> vars)
      : n_(n), k_(trunc), vars_(std::move(vars)),
        ops_(trunc + 1, PhaseOp::zero(n, vars_)) {
    ops_[0] = PhaseOp::identity(n_, vars_);
  }

  int dim() const { return n_; }
  int truncation() const { return k_; }
  const std::vector<std::string>& vars() const { return vars_; }
  const PhaseOp& order(int hbar_power) const { return ops_[hbar_power]; }
  PhaseOp& order(int hbar_power) { return ops_[hbar_power]; }

  static Morphism identity(int n, int trunc, std::vector<std::string> vars) {
    return Morphism(n, trunc, std::move(vars));
  }

  bool is_unital() const {
    const auto& t = ops_[0].terms();
    if (t.size() != 1) return false;
    auto& [idx, c] = *t.begin();
    for (int v : idx)
      if (v != 0) return false;
    auto one = MomentumPoly::constant(n_, CRational(1));
    return (c - one).is_zero();
  }

  PhaseFunction apply(const PhaseFunction& f) const {
    if (f.dim() != n_) throw DimensionMismatch("morphism dimension mismatch");
    if (f.truncation() != k_) throw TruncationMismatch();
    PhaseFunction r(n_, k_);
    for (int ord = 0; ord <= k_; ++ord)
      r = r + ops_[ord].apply(f).hbar_shift(ord);
    return r;
  }

  friend Morphism compose(const Morphism& a, const Morphism& b) {
    Morphism r(a.n_, a.k_, a.vars_);
    r.ops_[0] = PhaseOp::zero(a.n_, a.vars_);
    for (int m = 0; m <= a.k_; ++m) {
      PhaseOp acc = PhaseOp::zero(a.n_, a.vars_);
      for (int j = 0; j <= m; ++j)
        acc = acc + compose(a.ops_[j], b.ops_[m - j]);
      r.ops_[m] = acc;
    }
    return r;
  }

  /// Formal Neumann inverse: for S = id + A with A of hbar degree >= 1,
  /// S^{-1} = sum_m (-A)^m truncated at hbar^K.
  Morphism invert() const {
    if (!is_unital()) throw NotUnital();
    Morphism a = *this;  // A = S - id, stored per order with ops_[0] = 0
    a.ops_[0] = PhaseOp::zero(n_, vars_);
    Morphism inv = identity(n_, k_, vars_);
    Morphism power = identity(n_, k_, vars_);
    for (int m = 1; m <= k_; ++m) {
      power = compose(power, a);  // A^m, lowest order hbar^m
      int sign = m % 2 == 0 ? 1 : -1;
      for (int ord = m; ord <= k_; ++ord)
        inv.ops_[ord] =
            inv.ops_[ord] + power.ops_[ord].scaled(CRational(sign));
    }
    return inv;
  }

private:
  int n_, k_;
  std::vector<std::string> vars_;
  std::vector<PhaseOp> ops_;
};

/// exp of a sum of hbar-graded operator terms, expanded multinomially.
struct MorphExpTerm {
  int hbar_deg = 1;
  CRational coeff;
  PhaseOp op;
};

inline Morphism exp_morphism(int n, int trunc, std::vector<std::string> vars,
                             const std::vector<MorphExpTerm>& gens) {
  for (const auto& g : gens)
    if (g.hbar_deg < 1) throw Error("exp_morphism term with hbar degree < 1");
  Morphism s(n, trunc, vars);
  std::vector<int> mult(gens.size(), 0);
  // recursive multiset enumeration
  struct Rec {
    int n, k;
    const std::vector<std::string>& vars;
    const std::vector<MorphExpTerm>& gens;
    Morphism& s;
    void go(std::vector<int>& mult, std::size_t pos, int deg) {
      if (pos == gens.size()) {
        if (deg == 0) return;
        CRational coeff(1);
        PhaseOp op = PhaseOp::identity(n, vars);
        for (std::size_t t = 0; t < gens.size(); ++t)
          for (int m = 0; m < mult[t]; ++m) {
            coeff = coeff * gens[t].coeff * CRational(Rational(1, m + 1));
            op = compose(op, gens[t].op);
          }
        s.order(deg) = s.order(deg) + op.scaled(coeff);
        return;
      }
      for (int m = 0; deg + m * gens[pos].hbar_deg <= k; ++m) {
        mult[pos] = m;
        go(mult, pos + 1, deg + m * gens[pos].hbar_deg);
      }
      mult[pos] = 0;
    }
  } rec{n, trunc, vars, gens, s};
  rec.go(mult, 0, 0);
  return s;
}

namespace detail {

/// The shared hbar^2 operator of the flat and curved morphisms, with the
/// quadratic-in-Gamma dp dp block passed in by the caller.
inline PhaseOp morphism_order2(const ChristoffelField& gamma,
                               const Mat& dpdp_coeff) {
  int n = gamma.n;
  const auto& vars = gamma.vars;
  PhaseOp s2 = PhaseOp::zero(n, vars);
  CRational c24(Rational(1, 24));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      // 3 * coeff_{jk} dp_j dp_k
      if (!dpdp_coeff[j][k].is_zero()) {
        PhaseIdx idx(2 * n, 0);
        idx[n + j] += 1;
        idx[n + k] += 1;
        s2.accumulate(idx, MomentumPoly::from_scalar(
                               n, Scalar::constant(3) * dpdp_coeff[j][k])
                               .scaled(c24));
      }
      // 3 Gamma^i_{jk} dx_i dp_j dp_k
      for (int i = 0; i < n; ++i) {
        const Scalar& g = gamma.at(i, j, k);
        if (g.is_zero()) continue;
        PhaseIdx idx(2 * n, 0);
        idx[i] += 1;
        idx[n + j] += 1;
        idx[n + k] += 1;
        s2.accumulate(idx, MomentumPoly::from_scalar(n, Scalar::constant(3) * g)
                               .scaled(c24));
      }
    }
  // (2 Gamma^i_{nl} Gamma^n_{jk} - d_l Gamma^i_{jk}) p_i dp_j dp_k dp_l
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Scalar c;
          for (int m = 0; m < n; ++m)
            c += Scalar::constant(2) * gamma.at(i, m, l) * gamma.at(m, j, k);
          c -= gamma.at(i, j, k).diff(vars[l]);
          if (c.is_zero()) continue;
          PhaseIdx idx(2 * n, 0);
          idx[n + j] += 1;
          idx[n + k] += 1;
          idx[n + l] += 1;
          s2.accumulate(idx, MomentumPoly::momentum(n, i).scaled(c).scaled(c24));
        }
  return s2;
}

}  // namespace detail

/// Canonical morphism of a point transformation, to second order in hbar;
/// the hbar^3 slot is identically zero (the error term is o(hbar^4)).
inline Morphism build_S_T(const ChristoffelField& gamma, int trunc) {
  int n = gamma.n;
  Mat dpdp = zero_matrix(n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      Scalar s;
      for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l)
          s += gamma.at(i, l, j) * gamma.at(l, i, k);
      dpdp[j][k] = s;
    }
  Morphism s(n, trunc, gamma.vars);
  if (trunc >= 2) s.order(2) = detail::morphism_order2(gamma, dpdp);
  return s;
}

/// Curved-space family: the Gamma.Gamma dp dp block gains alpha * Ricci.
inline Morphism build_S_curved(const ChristoffelField& gamma,
                               const CurvatureData& curv, Rational alpha,
                               int trunc) {
  int n = gamma.n;
  Mat dpdp = zero_matrix(n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      Scalar s;
      for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l)
          s += gamma.at(i, l, j) * gamma.at(l, i, k);
      s += Scalar::constant(CRational(alpha)) * curv.ricci[j][k];
      dpdp[j][k] = s;
    }
  Morphism s(n, trunc, gamma.vars);
  if (trunc >= 2) s.order(2) = detail::morphism_order2(gamma, dpdp);
  return s;
}

/// S_{sigma,alpha,beta} = exp(-i hbar sigma XY + (hbar/2)(alpha XX + beta YY)).
inline Morphism build_S_sigma(Rational sigma, Rational alpha, Rational beta,
                              int trunc, int n,
                              std::vector<std::string> vars) {
  std::vector<MorphExpTerm> gens;
  for (int i = 0; i < n; ++i) {
    PhaseOp X = PhaseOp::deriv_x(n, vars, i);
    PhaseOp Y = PhaseOp::deriv_p(n, vars, i);
    if (!sigma.is_zero())
      gens.push_back({1, CRational(Rational(0), -sigma), compose(X, Y)});
    if (!alpha.is_zero())
      gens.push_back({1, CRational(alpha * Rational(1, 2)), compose(X, X)});
    if (!beta.is_zero())
      gens.push_back({1, CRational(beta * Rational(1, 2)), compose(Y, Y)});
  }
  return exp_morphism(n, trunc, std::move(vars), gens);
}

/// S = exp(P(X_1,...,Y_N; hbar)) on natural coordinate fields.
inline Morphism build_S_P(const PPolynomial& p, int trunc, int n,
                          std::vector<std::string> vars) {
  std::vector<MorphExpTerm> gens;
  for (const auto& m : p) {
    if (m.hbar_power < 1) throw Error("P term with hbar power < 1");
    gens.push_back({m.hbar_power, m.coeff,
                    detail::p_monomial_op(n, vars, m.exps)});
  }
  return exp_morphism(n, trunc, std::move(vars), gens);
}

struct IntertwiningRecord {
  std::size_t pair_index;
  std::vector<double> residual_by_order;
  double max_residual = 0.0;
};

struct IntertwiningReport {
  std::vector<IntertwiningRecord> records;
  double max_residual = 0.0;
  bool pass(double tol) const { return max_residual <= tol; }
};

/// Check S(f *1 g) = (Sf) *2 (Sg) through hbar^order at sample points.
inline IntertwiningReport verify_intertwining(
    const Morphism& s, const StarProduct& star1, const StarProduct& star2,
    const std::vector<std::pair<PhaseFunction, PhaseFunction>>& corpus,
    int order, const SampleDomain& dom) {
  IntertwiningReport rep;
  for (std::size_t idx = 0; idx < corpus.size(); ++idx) {
    const auto& [f, g] = corpus[idx];
    PhaseFunction lhs = s.apply(star1.apply(f, g));
    PhaseFunction rhs = star2.apply(s.apply(f), s.apply(g));
    std::vector<double> res = residuals_by_order(lhs, rhs, dom);
    IntertwiningRecord rec;
    rec.pair_index = idx;
    for (int j = 0; j <= order && j < static_cast<int>(res.size()); ++j) {
      rec.residual_by_order.push_back(res[j]);
      rec.max_residual = std::max(rec.max_residual, res[j]);
    }
    rep.max_residual = std::max(rep.max_residual, rec.max_residual);
    rep.records.push_back(std::move(rec));
  }
  return rep;
}

}  // namespace curviq
