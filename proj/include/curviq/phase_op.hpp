#pragma once

#include <map>
#include <string>
#include <vector>

#include "curviq/phase_function.hpp"

namespace curviq {

/// Derivative multi-index over phase space: slots 0..N-1 are x-derivatives,
/// slots N..2N-1 are p-derivatives.
using PhaseIdx = std::vector<int>;

inline long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int j = 1; j <= k; ++j) r = r * (n - j + 1) / j;
  return r;
}

/// A phase-space differential operator in normal form: a finitely
/// supported map from derivative multi-indices to MomentumPoly
/// coefficients, all derivatives to the right of all coefficients.
class PhaseOp {
public:
  PhaseOp(int n, std::vector<std::string> vars)
      : n_(n), vars_(std::move(vars)) {}

  static PhaseOp identity(int n, std::vector<std::string> vars) {
    PhaseOp op(n, std::move(vars));
    op.accumulate(PhaseIdx(2 * n, 0), MomentumPoly::constant(n, CRational(1)));
    return op;
  }
  static PhaseOp zero(int n, std::vector<std::string> vars) {
    return PhaseOp(n, std::move(vars));
  }
  static PhaseOp deriv_x(int n, std::vector<std::string> vars, int i) {
    PhaseOp op(n, std::move(vars));
    PhaseIdx idx(2 * n, 0);
    idx[i] = 1;
    op.accumulate(idx, MomentumPoly::constant(n, CRational(1)));
    return op;
  }
  static PhaseOp deriv_p(int n, std::vector<std::string> vars, int i) {
    PhaseOp op(n, std::move(vars));
    PhaseIdx idx(2 * n, 0);
    idx[n + i] = 1;
    op.accumulate(idx, MomentumPoly::constant(n, CRational(1)));
    return op;
  }
  static PhaseOp mult(int n, std::vector<std::string> vars,
                      const MomentumPoly& f) {
    PhaseOp op(n, std::move(vars));
    op.accumulate(PhaseIdx(2 * n, 0), f);
    return op;
  }
  /// First-order operator sum_i a^i d_{x^i} + b_i d_{p_i}.
  static PhaseOp vector_field(int n, std::vector<std::string> vars,
                              const std::vector<MomentumPoly>& a,
                              const std::vector<MomentumPoly>& b) {
    PhaseOp op(n, std::move(vars));
    for (int i = 0; i < n; ++i) {
      PhaseIdx ix(2 * n, 0);
      ix[i] = 1;
      op.accumulate(ix, a[i]);
      PhaseIdx ip(2 * n, 0);
      ip[n + i] = 1;
      op.accumulate(ip, b[i]);
    }
    return op;
  }

  int dim() const { return n_; }
  const std::vector<std::string>& vars() const { return vars_; }
  const std::map<PhaseIdx, MomentumPoly>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  void accumulate(const PhaseIdx& idx, const MomentumPoly& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(idx);
    if (it == terms_.end()) {
      terms_[idx] = c;
      return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  MomentumPoly derivative(const MomentumPoly& f, const PhaseIdx& idx) const {
    MomentumPoly r = f;
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < idx[i]; ++k) r = r.dx(vars_[i]);
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < idx[n_ + i]; ++k) r = r.dp(i);
    return r;
  }

  MomentumPoly apply(const MomentumPoly& f) const {
    MomentumPoly r(n_);
    for (auto& [idx, c] : terms_) r = r + c * derivative(f, idx);
    return r;
  }

  PhaseFunction apply(const PhaseFunction& f) const {
    PhaseFunction r(f.dim(), f.truncation());
    for (int j = 0; j <= f.truncation(); ++j) r.at(j) = apply(f.at(j));
    return r;
  }

  friend PhaseOp operator+(const PhaseOp& a, const PhaseOp& b) {
    PhaseOp r = a;
    for (auto& [idx, c] : b.terms_) r.accumulate(idx, c);
    return r;
  }
  friend PhaseOp operator-(const PhaseOp& a, const PhaseOp& b) {
    PhaseOp r = a;
    for (auto& [idx, c] : b.terms_) r.accumulate(idx, -c);
    return r;
  }

  PhaseOp scaled(const Scalar& s) const {
    PhaseOp r(n_, vars_);
    for (auto& [idx, c] : terms_) r.accumulate(idx, c.scaled(s));
    return r;
  }
  PhaseOp scaled(CRational c) const { return scaled(Scalar::constant(c)); }

  /// Operator composition with Leibniz expansion into normal form.
  friend PhaseOp compose(const PhaseOp& a, const PhaseOp& b) {
    PhaseOp r(a.n_, a.vars_);
    for (auto& [alpha, ca] : a.terms_) {
      for (auto& [beta, cb] : b.terms_) {
        // sum over gamma <= alpha of binom(alpha,gamma)
        //   ca * (d^gamma cb) d^{alpha-gamma+beta}
        PhaseIdx gamma(2 * a.n_, 0);
        a.compose_rec(r, alpha, beta, ca, cb, gamma, 0, 1);
      }
    }
    return r;
  }

  PhaseOp conj() const {
    PhaseOp r(n_, vars_);
    for (auto& [idx, c] : terms_) r.accumulate(idx, c.conj());
    return r;
  }

  void collect_symbols(std::set<std::string>& out) const {
    for (auto& [idx, c] : terms_) c.collect_symbols(out);
  }

private:
  void compose_rec(PhaseOp& r, const PhaseIdx& alpha, const PhaseIdx& beta,
                   const MomentumPoly& ca, const MomentumPoly& cb,
                   PhaseIdx& gamma, int pos, long long mult) const {
    if (pos == 2 * n_) {
      MomentumPoly d = derivative(cb, gamma);
      if (d.is_zero()) return;
      PhaseIdx out(2 * n_, 0);
      for (int j = 0; j < 2 * n_; ++j) out[j] = alpha[j] - gamma[j] + beta[j];
      MomentumPoly coeff = ca * d;
      if (mult != 1) coeff = coeff.scaled(CRational(mult));
      r.accumulate(out, coeff);
      return;
    }
    for (int g = 0; g <= alpha[pos]; ++g) {
      gamma[pos] = g;
      compose_rec(r, alpha, beta, ca, cb, gamma, pos + 1,
                  mult * binom(alpha[pos], g));
    }
    gamma[pos] = 0;
  }

  int n_;
  std::vector<std::string> vars_;
  std::map<PhaseIdx, MomentumPoly> terms_;
};

inline PhaseOp commutator(const PhaseOp& a, const PhaseOp& b) {
  return compose(a, b) - compose(b, a);
}

/// Numeric zero test of an operator, coefficient by coefficient.
inline bool is_zero_numeric(const PhaseOp& op, const SampleDomain& dom,
                            double tol = 1e-9) {
  MomentumPoly zero(op.dim());
  for (auto& [idx, c] : op.terms())
    if (!equals_numeric(c, zero, dom, tol)) return false;
  return true;
}

}  // namespace curviq
