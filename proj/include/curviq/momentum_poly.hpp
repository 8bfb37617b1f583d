#pragma once

#include <map>
#include <numeric>
#include <vector>

#include "curviq/scalar.hpp"

namespace curviq {

/// Exponent vector over the N momenta.
using MomIdx = std::vector<int>;

/// Polynomial in the momenta p_1..p_N with Scalar coefficients.
/// Structurally-zero coefficients are never stored.
class MomentumPoly {
public:
  explicit MomentumPoly(int n = 1) : n_(n) {}

  static MomentumPoly from_scalar(int n, const Scalar& s) {
    MomentumPoly p(n);
    p.set(MomIdx(n, 0), s);
    return p;
  }
  static MomentumPoly constant(int n, CRational c) {
    return from_scalar(n, Scalar::constant(c));
  }
  /// The coordinate observable p_i.
  static MomentumPoly momentum(int n, int i) {
    MomentumPoly p(n);
    MomIdx m(n, 0);
    m[i] = 1;
    p.set(m, Scalar::constant(1));
    return p;
  }

  int dim() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<MomIdx, Scalar>& terms() const { return terms_; }

  void set(const MomIdx& m, const Scalar& c) {
    if (c.is_zero())
      terms_.erase(m);
    else
      terms_[m] = c;
  }
  void accumulate(const MomIdx& m, const Scalar& c) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      if (!c.is_zero()) terms_[m] = c;
      return;
    }
    Scalar s = it->second + c;
    if (s.is_zero())
      terms_.erase(it);
    else
      it->second = s;
  }

  Scalar coefficient(const MomIdx& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar() : it->second;
  }

  int degree() const {
    int d = 0;
    for (auto& [m, c] : terms_)
      d = std::max(d, std::accumulate(m.begin(), m.end(), 0));
    return d;
  }

  friend MomentumPoly operator+(const MomentumPoly& a, const MomentumPoly& b) {
    check_dims(a, b);
    MomentumPoly r = a;
    for (auto& [m, c] : b.terms_) r.accumulate(m, c);
    return r;
  }
  friend MomentumPoly operator-(const MomentumPoly& a, const MomentumPoly& b) {
    check_dims(a, b);
    MomentumPoly r = a;
    for (auto& [m, c] : b.terms_) r.accumulate(m, -c);
    return r;
  }
  friend MomentumPoly operator*(const MomentumPoly& a, const MomentumPoly& b) {
    check_dims(a, b);
    MomentumPoly r(a.n_);
    for (auto& [ma, ca] : a.terms_)
      for (auto& [mb, cb] : b.terms_) {
        MomIdx m(a.n_);
        for (int i = 0; i < a.n_; ++i) m[i] = ma[i] + mb[i];
        r.accumulate(m, ca * cb);
      }
    return r;
  }
  MomentumPoly operator-() const { return scaled(Scalar::constant(-1)); }

  MomentumPoly scaled(const Scalar& s) const {
    MomentumPoly r(n_);
    for (auto& [m, c] : terms_) r.set(m, s * c);
    return r;
  }
  MomentumPoly scaled(CRational c) const { return scaled(Scalar::constant(c)); }

  /// d/dx^var applied coefficient-wise.
  MomentumPoly dx(const std::string& var) const {
    MomentumPoly r(n_);
    for (auto& [m, c] : terms_) r.accumulate(m, c.diff(var));
    return r;
  }

  /// d/dp_i.
  MomentumPoly dp(int i) const {
    MomentumPoly r(n_);
    for (auto& [m, c] : terms_) {
      if (m[i] == 0) continue;
      MomIdx m2 = m;
      m2[i] -= 1;
      r.accumulate(m2, Scalar::constant(m[i]) * c);
    }
    return r;
  }

  MomentumPoly conj() const {
    MomentumPoly r(n_);
    for (auto& [m, c] : terms_) r.set(m, c.conj());
    return r;
  }

  MomentumPoly substitute(const std::map<std::string, Scalar>& subs) const {
    MomentumPoly r(n_);
    for (auto& [m, c] : terms_) r.accumulate(m, c.substitute(subs));
    return r;
  }

  /// Evaluate at a configuration point (env) and momentum values.
  std::complex<double> eval(const Env& env,
                            const std::vector<std::complex<double>>& p,
                            double eps = 1e-12) const {
    std::complex<double> s = 0;
    for (auto& [m, c] : terms_) {
      std::complex<double> t = c.eval(env, eps);
      for (int i = 0; i < n_; ++i)
        for (int k = 0; k < m[i]; ++k) t *= p[i];
      s += t;
    }
    return s;
  }

  void collect_symbols(std::set<std::string>& out) const {
    for (auto& [m, c] : terms_) c.collect_symbols(out);
  }

  std::string str(const std::vector<std::string>& pnames = {}) const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto& [m, c] : terms_) {
      if (!first) s += " + ";
      first = false;
      s += c.str();
      for (int i = 0; i < n_; ++i) {
        if (m[i] == 0) continue;
        std::string pn = i < static_cast<int>(pnames.size())
                             ? "p_" + pnames[i]
                             : "p" + std::to_string(i + 1);
        s += "*" + pn;
        if (m[i] > 1) s += "^" + std::to_string(m[i]);
      }
    }
    return s;
  }

private:
  static void check_dims(const MomentumPoly& a, const MomentumPoly& b) {
    if (a.n_ != b.n_)
      throw DimensionMismatch("momentum polynomial dimensions differ");
  }

  int n_;
  std::map<MomIdx, Scalar> terms_;
};

}  // namespace curviq
