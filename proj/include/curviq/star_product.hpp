#pragma once

#include <utility>
#include <vector>

#include "curviq/geometry.hpp"
#include "curviq/phase_op.hpp"

namespace curviq {

/// One generator term of the exponent of a star product:
/// coeff * hbar^deg * (left-acting op on f) (right-acting op on g).
struct ExpTerm {
  int hbar_deg = 1;
  CRational coeff;
  PhaseOp left;
  PhaseOp right;
};

/// A bidifferential term of the expanded product, for printing.
struct StarTermRow {
  int hbar_power;
  MomentumPoly coeff;
  PhaseIdx left;
  PhaseIdx right;
};

/// Associative hbar-truncated star product, stored order by order as
/// pairs of phase-space differential operators acting on the two factors.
/// The hbar^0 term of every instance is pointwise multiplication.
class StarProduct {
public:
  StarProduct(int n, int trunc, std::vector<std::string> vars)
      : n_(n), k_(trunc), vars_(std::move(vars)), orders_(trunc + 1) {
    orders_[0].push_back(
        {PhaseOp::identity(n_, vars_), PhaseOp::identity(n_, vars_)});
  }

  int dim() const { return n_; }
  int truncation() const { return k_; }
  const std::vector<std::string>& vars() const { return vars_; }

  /// Build by multinomial expansion of exp(sum of generator terms),
  /// truncated at hbar^K. All generator terms must carry hbar_deg >= 1.
  static StarProduct from_exponent(int n, int trunc,
                                   std::vector<std::string> vars,
                                   const std::vector<ExpTerm>& gens) {
    StarProduct s(n, trunc, vars);
    for (const auto& g : gens)
      if (g.hbar_deg < 1)
        throw Error("star product exponent term with hbar degree < 1");
    std::vector<int> mult(gens.size(), 0);
    s.expand_rec(gens, mult, 0, 0);
    return s;
  }

  PhaseFunction apply(const PhaseFunction& f, const PhaseFunction& g) const {
    if (f.dim() != n_ || g.dim() != n_)
      throw DimensionMismatch("star product dimension mismatch");
    if (f.truncation() != k_ || g.truncation() != k_)
      throw TruncationMismatch();
    PhaseFunction r(n_, k_);
    for (int ord = 0; ord <= k_; ++ord) {
      for (auto& [left, right] : orders_[ord]) {
        PhaseFunction lf = left.apply(f);
        PhaseFunction rg = right.apply(g);
        r = r + (lf * rg).hbar_shift(ord);
      }
    }
    return r;
  }

  /// Flattened bidifferential term table (duplicates merged).
  std::vector<StarTermRow> term_table() const {
    std::map<std::pair<int, std::pair<PhaseIdx, PhaseIdx>>, MomentumPoly> acc;
    for (int ord = 0; ord <= k_; ++ord)
      for (auto& [left, right] : orders_[ord])
        for (auto& [la, lc] : left.terms())
          for (auto& [ra, rc] : right.terms()) {
            auto key = std::make_pair(ord, std::make_pair(la, ra));
            auto it = acc.find(key);
            if (it == acc.end())
              acc.emplace(key, lc * rc);
            else
              it->second = it->second + lc * rc;
          }
    std::vector<StarTermRow> rows;
    for (auto& [key, c] : acc) {
      if (c.is_zero()) continue;
      rows.push_back({key.first, c, key.second.first, key.second.second});
    }
    return rows;
  }

private:
  void expand_rec(const std::vector<ExpTerm>& gens, std::vector<int>& mult,
                  std::size_t pos, int deg) {
    if (pos == gens.size()) {
      if (deg == 0) return;  // identity term pre-seeded
      CRational coeff(1);
      PhaseOp left = PhaseOp::identity(n_, vars_);
      PhaseOp right = PhaseOp::identity(n_, vars_);
      for (std::size_t t = 0; t < gens.size(); ++t) {
        for (int m = 0; m < mult[t]; ++m) {
          coeff = coeff * gens[t].coeff;
          coeff = coeff * CRational(Rational(1, m + 1));  // 1/m_t!
          left = compose(left, gens[t].left);
          right = compose(right, gens[t].right);
        }
      }
      orders_[deg].push_back({left.scaled(coeff), right});
      return;
    }
    for (int m = 0; deg + m * gens[pos].hbar_deg <= k_; ++m) {
      mult[pos] = m;
      expand_rec(gens, mult, pos + 1, deg + m * gens[pos].hbar_deg);
    }
    mult[pos] = 0;
  }

  int n_, k_;
  std::vector<std::string> vars_;
  std::vector<std::vector<std::pair<PhaseOp, PhaseOp>>> orders_;
};

/// Moyal product: exp((i hbar/2)(<dx.dp> - <dp.dx>)) truncated at hbar^K.
inline StarProduct moyal(int n, int trunc, std::vector<std::string> vars) {
  std::vector<ExpTerm> gens;
  CRational half_i(Rational(0), Rational(1, 2));
  for (int i = 0; i < n; ++i) {
    gens.push_back({1, half_i, PhaseOp::deriv_x(n, vars, i),
                    PhaseOp::deriv_p(n, vars, i)});
    gens.push_back({1, -half_i, PhaseOp::deriv_p(n, vars, i),
                    PhaseOp::deriv_x(n, vars, i)});
  }
  return StarProduct::from_exponent(n, trunc, std::move(vars), gens);
}

/// Poisson bracket induced by the fields sum_i X_i ^ Y_i.
inline MomentumPoly field_bracket(const std::vector<PhaseOp>& xs,
                                  const std::vector<PhaseOp>& ys,
                                  const MomentumPoly& f,
                                  const MomentumPoly& g) {
  MomentumPoly r(f.dim());
  for (std::size_t i = 0; i < xs.size(); ++i)
    r = r + xs[i].apply(f) * ys[i].apply(g) - ys[i].apply(f) * xs[i].apply(g);
  return r;
}

/// Star product generated by pairwise commuting vector fields whose wedge
/// reproduces the canonical Poisson tensor. Both preconditions are checked
/// numerically on the given domain.
inline StarProduct star_from_vectorfields(const std::vector<PhaseOp>& xs,
                                          const std::vector<PhaseOp>& ys,
                                          int trunc,
                                          std::vector<std::string> vars,
                                          const SampleDomain& dom) {
  int n = static_cast<int>(xs.size());
  std::vector<PhaseOp> all;
  all.insert(all.end(), xs.begin(), xs.end());
  all.insert(all.end(), ys.begin(), ys.end());
  for (std::size_t a = 0; a < all.size(); ++a)
    for (std::size_t b = a + 1; b < all.size(); ++b)
      if (!is_zero_numeric(commutator(all[a], all[b]), dom))
        throw NonCommutingFields();
  // wedge must reproduce {x^a, p_b} = delta, {x,x} = {p,p} = 0
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      MomentumPoly xa = MomentumPoly::from_scalar(n, Scalar::symbol(vars[a]));
      MomentumPoly xb = MomentumPoly::from_scalar(n, Scalar::symbol(vars[b]));
      MomentumPoly pa = MomentumPoly::momentum(n, a);
      MomentumPoly pb = MomentumPoly::momentum(n, b);
      MomentumPoly delta =
          MomentumPoly::constant(n, CRational(a == b ? 1 : 0));
      if (!equals_numeric(field_bracket(xs, ys, xa, pb), delta, dom) ||
          !equals_numeric(field_bracket(xs, ys, xa, xb), MomentumPoly(n), dom) ||
          !equals_numeric(field_bracket(xs, ys, pa, pb), MomentumPoly(n), dom))
        throw WrongPoissonTensor();
    }
  std::vector<ExpTerm> gens;
  CRational half_i(Rational(0), Rational(1, 2));
  for (int i = 0; i < n; ++i) {
    gens.push_back({1, half_i, xs[i], ys[i]});
    gens.push_back({1, -half_i, ys[i], xs[i]});
  }
  return StarProduct::from_exponent(n, trunc, std::move(vars), gens);
}

/// The commuting fields D_{x'^i}, D_{p'_i} of a Moyal product carried
/// through a point transformation.
struct TransformedFields {
  std::vector<PhaseOp> dx, dp;
};

inline TransformedFields transformed_fields(const PointTransformation& t) {
  int n = t.dim();
  const auto& vars = t.vars();
  const Mat& jac = t.jacobian();
  const Mat& inv = t.inverse_jacobian();
  TransformedFields f;
  for (int i = 0; i < n; ++i) {
    std::vector<MomentumPoly> a(n, MomentumPoly(n)), b(n, MomentumPoly(n));
    for (int j = 0; j < n; ++j)
      a[j] = a[j] + MomentumPoly::from_scalar(n, inv[j][i]);
    for (int l = 0; l < n; ++l) {
      // [(phi')^-1]^j_i [(phi')^-1]^r_k [phi'']^k_{jl} p'_r
      MomentumPoly c(n);
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int r = 0; r < n; ++r)
            c = c + MomentumPoly::momentum(n, r).scaled(inv[j][i] * inv[r][k] *
                                                        t.hessian(k, j, l));
      b[l] = b[l] + c;
    }
    f.dx.push_back(PhaseOp::vector_field(n, vars, a, b));
  }
  for (int i = 0; i < n; ++i) {
    std::vector<MomentumPoly> a(n, MomentumPoly(n)), b(n, MomentumPoly(n));
    for (int j = 0; j < n; ++j)
      b[j] = b[j] + MomentumPoly::from_scalar(n, jac[i][j]);
    f.dp.push_back(PhaseOp::vector_field(n, vars, a, b));
  }
  return f;
}

/// The Moyal product written in the curvilinear chart of `t`.
inline StarProduct transformed_moyal(const PointTransformation& t, int trunc) {
  TransformedFields f = transformed_fields(t);
  std::vector<ExpTerm> gens;
  CRational half_i(Rational(0), Rational(1, 2));
  for (int i = 0; i < t.dim(); ++i) {
    gens.push_back({1, half_i, f.dx[i], f.dp[i]});
    gens.push_back({1, -half_i, f.dp[i], f.dx[i]});
  }
  return StarProduct::from_exponent(t.dim(), trunc, t.vars(), gens);
}

/// Three-parameter deformation family in natural coordinates (per-axis
/// diagonal extension for N > 1).
inline StarProduct sigma_product(Rational sigma, Rational alpha, Rational beta,
                                 int trunc, int n,
                                 std::vector<std::string> vars) {
  std::vector<ExpTerm> gens;
  for (int i = 0; i < n; ++i) {
    PhaseOp X = PhaseOp::deriv_x(n, vars, i);
    PhaseOp Y = PhaseOp::deriv_p(n, vars, i);
    gens.push_back({1, CRational(Rational(0), Rational(1, 2) - sigma), X, Y});
    gens.push_back({1, CRational(Rational(0), -(Rational(1, 2) + sigma)), Y, X});
    if (!alpha.is_zero()) gens.push_back({1, CRational(alpha), X, X});
    if (!beta.is_zero()) gens.push_back({1, CRational(beta), Y, Y});
  }
  return StarProduct::from_exponent(n, trunc, std::move(vars), gens);
}

/// Involution of the sigma family: f* = exp(-2 i hbar sigma XY) conj(f).
inline PhaseFunction sigma_involution(Rational sigma, const PhaseFunction& f,
                                      const std::vector<std::string>& vars) {
  int n = f.dim();
  PhaseFunction r(n, f.truncation());
  PhaseFunction cf = f.conj();
  // sum over axes of XY (diagonal extension)
  PhaseOp gen = PhaseOp::zero(n, vars);
  for (int i = 0; i < n; ++i)
    gen = gen + compose(PhaseOp::deriv_x(n, vars, i),
                        PhaseOp::deriv_p(n, vars, i));
  CRational c(Rational(0), Rational(-2) * sigma);
  PhaseOp power = PhaseOp::identity(n, vars);
  CRational fact(1);
  for (int m = 0; m <= f.truncation(); ++m) {
    if (m > 0) {
      power = compose(power, gen);
      fact = fact * c * CRational(Rational(1, m));
    }
    PhaseOp term = m == 0 ? power : power.scaled(fact);
    r = r + term.apply(cf).hbar_shift(m);
  }
  return r;
}

/// Monomial of the P polynomial of the invariant family: coefficient,
/// explicit hbar power, and exponents over (X_1..X_N, Y_1..Y_N).
struct PMonomial {
  CRational coeff;
  int hbar_power = 0;
  std::vector<int> exps;  // size 2N
};

using PPolynomial = std::vector<PMonomial>;

/// conj P(X...,Y...) = P(Y...,X...).
inline bool p_reality_holds(const PPolynomial& p, int n) {
  for (const auto& m : p) {
    std::vector<int> swapped(2 * n);
    for (int i = 0; i < n; ++i) {
      swapped[i] = m.exps[n + i];
      swapped[n + i] = m.exps[i];
    }
    CRational partner(0);
    for (const auto& o : p)
      if (o.hbar_power == m.hbar_power && o.exps == swapped)
        partner += o.coeff;
    if (!(partner == m.coeff.conj())) return false;
  }
  return true;
}

namespace detail {

inline PhaseOp p_monomial_op(int n, const std::vector<std::string>& vars,
                             const std::vector<int>& exps) {
  PhaseOp op = PhaseOp::identity(n, vars);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < exps[i]; ++k)
      op = compose(op, PhaseOp::deriv_x(n, vars, i));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < exps[n + i]; ++k)
      op = compose(op, PhaseOp::deriv_p(n, vars, i));
  return op;
}

inline void p_split_rec(const PMonomial& m, int n,
                        const std::vector<std::string>& vars,
                        std::vector<int>& left, std::size_t pos,
                        long long mult, std::vector<ExpTerm>& out) {
  if (pos == m.exps.size()) {
    bool pure_left = true, pure_right = true;
    for (std::size_t j = 0; j < m.exps.size(); ++j) {
      if (left[j] != m.exps[j]) pure_left = false;
      if (left[j] != 0) pure_right = false;
    }
    // P(left+right) - P(left) - P(right) keeps only the mixed splits
    if (pure_left || pure_right) return;
    std::vector<int> right(m.exps.size());
    for (std::size_t j = 0; j < m.exps.size(); ++j)
      right[j] = m.exps[j] - left[j];
    out.push_back({m.hbar_power, m.coeff * CRational(mult),
                   p_monomial_op(n, vars, left), p_monomial_op(n, vars, right)});
    return;
  }
  for (int l = 0; l <= m.exps[pos]; ++l) {
    left[pos] = l;
    p_split_rec(m, n, vars, left, pos + 1, mult * binom(m.exps[pos], l), out);
  }
  left[pos] = 0;
}

}  // namespace detail

/// Invariant star-product family generated by a P polynomial on natural
/// coordinate fields. P terms that act purely on one factor cancel by
/// construction; the Moyal part is always present.
inline StarProduct p_family_product(const PPolynomial& p, int trunc, int n,
                                    std::vector<std::string> vars) {
  if (!p_reality_holds(p, n)) throw RealityViolation();
  std::vector<ExpTerm> gens;
  CRational half_i(Rational(0), Rational(1, 2));
  for (int i = 0; i < n; ++i) {
    gens.push_back({1, half_i, PhaseOp::deriv_x(n, vars, i),
                    PhaseOp::deriv_p(n, vars, i)});
    gens.push_back({1, -half_i, PhaseOp::deriv_p(n, vars, i),
                    PhaseOp::deriv_x(n, vars, i)});
  }
  for (const auto& m : p) {
    if (m.hbar_power < 1)
      throw Error("P polynomial term with hbar power < 1");
    std::vector<int> left(2 * n, 0);
    detail::p_split_rec(m, n, vars, left, 0, 1, gens);
  }
  return StarProduct::from_exponent(n, trunc, std::move(vars), gens);
}

/// (1/(i hbar)) (f * g - g * f); the result lives one hbar slot lower.
inline PhaseFunction quantum_bracket(const StarProduct& star,
                                     const PhaseFunction& f,
                                     const PhaseFunction& g) {
  PhaseFunction comm = star.apply(f, g) - star.apply(g, f);
  // division by i hbar: shift grading down and scale by 1/i = -i
  return comm.hbar_divide().scaled(CRational(Rational(0), Rational(-1)));
}

}  // namespace curviq
