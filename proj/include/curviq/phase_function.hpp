#pragma once

#include <vector>

#include "curviq/momentum_poly.hpp"

namespace curviq {

/// Truncated formal series in hbar whose coefficients are momentum
/// polynomials. hbar is a grading index here, never a symbol: slot k of
/// `coeffs` holds the hbar^k coefficient and arithmetic discards degrees
/// above the truncation order.
class PhaseFunction {
public:
  PhaseFunction(int n, int trunc)
      : n_(n), k_(trunc), coeffs_(trunc + 1, MomentumPoly(n)) {}

  static PhaseFunction from_poly(const MomentumPoly& p, int trunc,
                                 int hbar_power = 0) {
    PhaseFunction f(p.dim(), trunc);
    if (hbar_power <= trunc) f.coeffs_[hbar_power] = p;
    return f;
  }
  static PhaseFunction from_scalar(int n, const Scalar& s, int trunc) {
    return from_poly(MomentumPoly::from_scalar(n, s), trunc);
  }
  static PhaseFunction one(int n, int trunc) {
    return from_poly(MomentumPoly::constant(n, CRational(1)), trunc);
  }

  int dim() const { return n_; }
  int truncation() const { return k_; }
  const MomentumPoly& at(int hbar_power) const { return coeffs_[hbar_power]; }
  MomentumPoly& at(int hbar_power) { return coeffs_[hbar_power]; }

  bool is_zero() const {
    for (auto& c : coeffs_)
      if (!c.is_zero()) return false;
    return true;
  }

  friend PhaseFunction operator+(const PhaseFunction& a,
                                 const PhaseFunction& b) {
    check(a, b);
    PhaseFunction r(a.n_, a.k_);
    for (int j = 0; j <= a.k_; ++j) r.coeffs_[j] = a.coeffs_[j] + b.coeffs_[j];
    return r;
  }
  friend PhaseFunction operator-(const PhaseFunction& a,
                                 const PhaseFunction& b) {
    check(a, b);
    PhaseFunction r(a.n_, a.k_);
    for (int j = 0; j <= a.k_; ++j) r.coeffs_[j] = a.coeffs_[j] - b.coeffs_[j];
    return r;
  }
  /// Cauchy product truncated at the shared order.
  friend PhaseFunction operator*(const PhaseFunction& a,
                                 const PhaseFunction& b) {
    check(a, b);
    PhaseFunction r(a.n_, a.k_);
    for (int ja = 0; ja <= a.k_; ++ja) {
      if (a.coeffs_[ja].is_zero()) continue;
      for (int jb = 0; ja + jb <= a.k_; ++jb)
        r.coeffs_[ja + jb] = r.coeffs_[ja + jb] + a.coeffs_[ja] * b.coeffs_[jb];
    }
    return r;
  }
  PhaseFunction operator-() const { return scaled(Scalar::constant(-1)); }

  PhaseFunction scaled(const Scalar& s) const {
    PhaseFunction r(n_, k_);
    for (int j = 0; j <= k_; ++j) r.coeffs_[j] = coeffs_[j].scaled(s);
    return r;
  }
  PhaseFunction scaled(CRational c) const { return scaled(Scalar::constant(c)); }

  /// Multiply by hbar^s (shift the grading up, dropping overflow).
  PhaseFunction hbar_shift(int s) const {
    PhaseFunction r(n_, k_);
    for (int j = 0; j + s <= k_; ++j)
      if (j + s >= 0) r.coeffs_[j + s] = coeffs_[j];
    return r;
  }

  /// Divide by hbar: slot 0 must be zero; truncation drops by one slot.
  PhaseFunction hbar_divide() const {
    PhaseFunction r(n_, k_ - 1);
    for (int j = 0; j <= k_ - 1; ++j) r.coeffs_[j] = coeffs_[j + 1];
    return r;
  }

  PhaseFunction truncated(int new_k) const {
    PhaseFunction r(n_, new_k);
    for (int j = 0; j <= std::min(new_k, k_); ++j) r.coeffs_[j] = coeffs_[j];
    return r;
  }

  PhaseFunction conj() const {
    PhaseFunction r(n_, k_);
    for (int j = 0; j <= k_; ++j) r.coeffs_[j] = coeffs_[j].conj();
    return r;
  }

  PhaseFunction substitute(const std::map<std::string, Scalar>& subs) const {
    PhaseFunction r(n_, k_);
    for (int j = 0; j <= k_; ++j) r.coeffs_[j] = coeffs_[j].substitute(subs);
    return r;
  }

  void collect_symbols(std::set<std::string>& out) const {
    for (auto& c : coeffs_) c.collect_symbols(out);
  }

  std::string str(const std::vector<std::string>& pnames = {}) const {
    std::string s;
    bool first = true;
    for (int j = 0; j <= k_; ++j) {
      if (coeffs_[j].is_zero()) continue;
      if (!first) s += " + ";
      first = false;
      if (j > 0) s += "hbar^" + std::to_string(j) + "*(";
      s += coeffs_[j].str(pnames);
      if (j > 0) s += ")";
    }
    return first ? "0" : s;
  }

private:
  static void check(const PhaseFunction& a, const PhaseFunction& b) {
    if (a.n_ != b.n_)
      throw DimensionMismatch("phase function dimensions differ");
    if (a.k_ != b.k_) throw TruncationMismatch();
  }

  int n_, k_;
  std::vector<MomentumPoly> coeffs_;
};

}  // namespace curviq
