#pragma once

#include <map>
#include <string>
#include <vector>

#include "curviq/morphism.hpp"

namespace curviq {

/// Derivative multi-index over configuration variables only.
using DerivIdx = std::vector<int>;

/// Differential operator on configuration space in normal form: an
/// hbar-graded, finitely supported map from d_x multi-indices to Scalar
/// coefficients, all derivatives pushed to the right of all coefficients.
class ConfigOperator {
public:
  ConfigOperator(int n, std::vector<std::string> vars)
      : n_(n), vars_(std::move(vars)) {}

  static ConfigOperator identity(int n, std::vector<std::string> vars) {
    ConfigOperator op(n, std::move(vars));
    op.accumulate(0, DerivIdx(n, 0), Scalar::constant(1));
    return op;
  }
  static ConfigOperator zero(int n, std::vector<std::string> vars) {
    return ConfigOperator(n, std::move(vars));
  }
  /// Multiplication operator by f(x), at hbar^0.
  static ConfigOperator mult(int n, std::vector<std::string> vars,
                             const Scalar& f) {
    ConfigOperator op(n, std::move(vars));
    op.accumulate(0, DerivIdx(n, 0), f);
    return op;
  }
  /// d_{x^i}, at hbar^0.
  static ConfigOperator deriv(int n, std::vector<std::string> vars, int i) {
    ConfigOperator op(n, std::move(vars));
    DerivIdx idx(n, 0);
    idx[i] = 1;
    op.accumulate(0, idx, Scalar::constant(1));
    return op;
  }

  int dim() const { return n_; }
  const std::vector<std::string>& vars() const { return vars_; }
  const std::map<int, std::map<DerivIdx, Scalar>>& terms() const {
    return terms_;
  }
  bool empty() const { return terms_.empty(); }

  void accumulate(int hbar, const DerivIdx& idx, const Scalar& c) {
    if (c.is_zero()) return;
    auto& slot = terms_[hbar];
    auto it = slot.find(idx);
    if (it == slot.end()) {
      slot[idx] = c;
    } else {
      it->second += c;
      if (it->second.is_zero()) slot.erase(it);
    }
    if (slot.empty()) terms_.erase(hbar);
  }

  friend ConfigOperator operator+(const ConfigOperator& a,
                                  const ConfigOperator& b) {
    ConfigOperator r = a;
    for (auto& [h, slot] : b.terms_)
      for (auto& [idx, c] : slot) r.accumulate(h, idx, c);
    return r;
  }
  friend ConfigOperator operator-(const ConfigOperator& a,
                                  const ConfigOperator& b) {
    ConfigOperator r = a;
    for (auto& [h, slot] : b.terms_)
      for (auto& [idx, c] : slot) r.accumulate(h, idx, -c);
    return r;
  }

  ConfigOperator scaled(const Scalar& s) const {
    ConfigOperator r(n_, vars_);
    for (auto& [h, slot] : terms_)
      for (auto& [idx, c] : slot) r.accumulate(h, idx, c * s);
    return r;
  }
  ConfigOperator scaled(CRational c) const {
    return scaled(Scalar::constant(c));
  }

  /// Multiply by hbar^s (shift the grading).
  ConfigOperator hbar_shift(int s) const {
    ConfigOperator r(n_, vars_);
    for (auto& [h, slot] : terms_)
      for (auto& [idx, c] : slot) r.accumulate(h + s, idx, c);
    return r;
  }

  /// Leibniz composition into normal form; hbar powers add.
  friend ConfigOperator compose(const ConfigOperator& a,
                                const ConfigOperator& b) {
    ConfigOperator r(a.n_, a.vars_);
    for (auto& [ha, slota] : a.terms_)
      for (auto& [alpha, ca] : slota)
        for (auto& [hb, slotb] : b.terms_)
          for (auto& [beta, cb] : slotb) {
            DerivIdx gamma(a.n_, 0);
            a.compose_rec(r, ha + hb, alpha, beta, ca, cb, gamma, 0, 1);
          }
    return r;
  }

  /// Apply to a test function; result is a map hbar power -> Scalar.
  std::map<int, Scalar> apply(const Scalar& f) const {
    std::map<int, Scalar> out;
    for (auto& [h, slot] : terms_) {
      Scalar acc;
      for (auto& [idx, c] : slot) acc += c * derivative(f, idx);
      if (!acc.is_zero()) out[h] = acc;
    }
    return out;
  }

  Scalar derivative(const Scalar& f, const DerivIdx& idx) const {
    Scalar r = f;
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < idx[i]; ++k) r = r.diff(vars_[i]);
    return r;
  }

  void collect_symbols(std::set<std::string>& out) const {
    for (auto& [h, slot] : terms_)
      for (auto& [idx, c] : slot) c.collect_symbols(out);
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto& [h, slot] : terms_)
      for (auto& [idx, c] : slot) {
        if (!s.empty()) s += " + ";
        s += "hbar^" + std::to_string(h) + " (" + c.str() + ")";
        for (int i = 0; i < n_; ++i)
          for (int k = 0; k < idx[i]; ++k) s += " d_" + vars_[i];
      }
    return s;
  }

private:
  void compose_rec(ConfigOperator& r, int h, const DerivIdx& alpha,
                   const DerivIdx& beta, const Scalar& ca, const Scalar& cb,
                   DerivIdx& gamma, int pos, long long mult) const {
    if (pos == n_) {
      Scalar d = derivative(cb, gamma);
      if (d.is_zero()) return;
      DerivIdx out(n_, 0);
      for (int j = 0; j < n_; ++j) out[j] = alpha[j] - gamma[j] + beta[j];
      Scalar coeff = ca * d;
      if (mult != 1) coeff = coeff * Scalar::constant(CRational(mult));
      r.accumulate(h, out, coeff);
      return;
    }
    for (int g = 0; g <= alpha[pos]; ++g) {
      gamma[pos] = g;
      compose_rec(r, h, alpha, beta, ca, cb, gamma, pos + 1,
                  mult * binom(alpha[pos], g));
    }
    gamma[pos] = 0;
  }

  int n_;
  std::vector<std::string> vars_;
  std::map<int, std::map<DerivIdx, Scalar>> terms_;
};

/// Momentum operator in curvilinear coordinates:
/// phat_j = -i hbar (d_{x^j} + 1/2 Gamma^k_{jk}).
inline ConfigOperator momentum_operator(const ChristoffelField& gamma, int j) {
  int n = gamma.n;
  ConfigOperator op = ConfigOperator::deriv(n, gamma.vars, j) +
                      ConfigOperator::mult(n, gamma.vars,
                                           Scalar::constant(1, 2) *
                                               gamma.trace(j));
  return op.scaled(-Scalar::i()).hbar_shift(1);
}

/// Weyl (symmetric) ordering by subset symmetrization: each monomial
/// f(x) p_{i_1}...p_{i_m} maps to 2^{-m} sum over all splits of the
/// momentum multiset L into left/right factors of  phat_L f(x) phat_{L^c}.
inline ConfigOperator weyl_order(const PhaseFunction& a,
                                 const std::vector<ConfigOperator>& phat) {
  int n = a.dim();
  const auto& vars = phat.at(0).vars();
  ConfigOperator out = ConfigOperator::zero(n, vars);
  for (int h = 0; h <= a.truncation(); ++h) {
    for (const auto& [m, c] : a.at(h).terms()) {
      int deg = 0;
      for (int e : m) deg += e;
      // enumerate componentwise splits a_i + b_i = m_i with multiplicity
      // prod binom(m_i, a_i)
      std::vector<int> left(n, 0);
      long long denom = 1;
      for (int d = 0; d < deg; ++d) denom *= 2;
      struct Rec {
        int n;
        const std::vector<int>& m;
        const Scalar& c;
        const std::vector<ConfigOperator>& phat;
        ConfigOperator& out;
        int h;
        long long denom;
        void go(std::vector<int>& left, int pos, long long mult) {
          if (pos == n) {
            ConfigOperator term = ConfigOperator::mult(
                phat[0].dim(), phat[0].vars(),
                c * Scalar::constant(CRational(Rational(mult, denom))));
            for (int i = n - 1; i >= 0; --i)
              for (int k = 0; k < left[i]; ++k) term = compose(phat[i], term);
            for (int i = 0; i < n; ++i)
              for (int k = 0; k < m[i] - left[i]; ++k)
                term = compose(term, phat[i]);
            out = out + term.hbar_shift(h);
            return;
          }
          for (int l = 0; l <= m[pos]; ++l) {
            left[pos] = l;
            go(left, pos + 1, mult * binom(m[pos], l));
          }
          left[pos] = 0;
        }
      } rec{n, m, c, phat, out, h, denom};
      rec.go(left, 0, 1);
    }
  }
  return out;
}

/// S-ordering: A_S = (S^{-1} A)_W.
inline ConfigOperator s_order(const PhaseFunction& a, const Morphism& s,
                              const std::vector<ConfigOperator>& phat) {
  return weyl_order(s.invert().apply(a), phat);
}

/// Formal adjoint against a positive weight density mu: each term
/// hbar^k c(x) d^alpha maps to hbar^k (-1)^{|alpha|} mu^{-1} d^alpha mu
/// conj(c), by symbolic integration by parts (no boundary terms).
inline ConfigOperator formal_adjoint(const ConfigOperator& op,
                                     const Scalar& density) {
  int n = op.dim();
  const auto& vars = op.vars();
  Scalar inv_mu = Scalar::constant(1) / density;
  ConfigOperator r = ConfigOperator::zero(n, vars);
  for (auto& [h, slot] : op.terms())
    for (auto& [idx, c] : slot) {
      int total = 0;
      ConfigOperator term =
          ConfigOperator::mult(n, vars, density * c.conj());
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < idx[i]; ++k) {
          term = compose(ConfigOperator::deriv(n, vars, i), term);
          ++total;
        }
      term = compose(ConfigOperator::mult(n, vars, inv_mu), term);
      if (total % 2 != 0) term = term.scaled(CRational(-1));
      r = r + term.hbar_shift(h);
    }
  return r;
}

/// Normal-form equality through the numeric oracle, coefficient by
/// coefficient (missing entries count as zero).
inline bool operator_equals(const ConfigOperator& a, const ConfigOperator& b,
                            const SampleDomain& dom, double tol = 1e-9) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("operator dimensions differ");
  std::set<std::pair<int, DerivIdx>> keys;
  for (auto& [h, slot] : a.terms())
    for (auto& [idx, c] : slot) keys.insert({h, idx});
  for (auto& [h, slot] : b.terms())
    for (auto& [idx, c] : slot) keys.insert({h, idx});
  for (auto& [h, idx] : keys) {
    Scalar ca, cb;
    auto ita = a.terms().find(h);
    if (ita != a.terms().end()) {
      auto it = ita->second.find(idx);
      if (it != ita->second.end()) ca = it->second;
    }
    auto itb = b.terms().find(h);
    if (itb != b.terms().end()) {
      auto it = itb->second.find(idx);
      if (it != itb->second.end()) cb = it->second;
    }
    if (!equals_numeric(ca, cb, dom, tol)) return false;
  }
  return true;
}

}  // namespace curviq
