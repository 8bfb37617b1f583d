#pragma once

#include <string>
#include <vector>

#include "curviq/sample_domain.hpp"

namespace curviq {

using Mat = std::vector<std::vector<Scalar>>;

inline Mat zero_matrix(int n) {
  return Mat(n, std::vector<Scalar>(n, Scalar()));
}

inline Scalar determinant(const Mat& m) {
  int n = static_cast<int>(m.size());
  if (n == 1) return m[0][0];
  Scalar det;
  for (int j = 0; j < n; ++j) {
    Mat minor;
    for (int r = 1; r < n; ++r) {
      std::vector<Scalar> row;
      for (int c = 0; c < n; ++c)
        if (c != j) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    Scalar term = m[0][j] * determinant(minor);
    det += (j % 2 == 0) ? term : -term;
  }
  return det;
}

/// Symbolic inverse via adjugate over determinant.
inline Mat invert_matrix(const Mat& m) {
  int n = static_cast<int>(m.size());
  Scalar det = determinant(m);
  if (det.is_zero()) throw SingularJacobian();
  Mat inv = zero_matrix(n);
  if (n == 1) {
    inv[0][0] = Scalar::constant(1) / det;
    return inv;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Mat minor;
      for (int r = 0; r < n; ++r) {
        if (r == i) continue;
        std::vector<Scalar> row;
        for (int c = 0; c < n; ++c)
          if (c != j) row.push_back(m[r][c]);
        minor.push_back(std::move(row));
      }
      Scalar cof = determinant(minor);
      if ((i + j) % 2 != 0) cof = -cof;
      inv[j][i] = cof / det;  // adjugate transposes
    }
  return inv;
}

/// Torsion-free connection coefficients Gamma^i_{jk}.
struct ChristoffelField {
  int n = 0;
  std::vector<std::string> vars;
  std::vector<Scalar> comp;  // i*n*n + j*n + k

  ChristoffelField() = default;
  ChristoffelField(int n_, std::vector<std::string> vars_)
      : n(n_), vars(std::move(vars_)), comp(n_ * n_ * n_, Scalar()) {}

  static ChristoffelField zero(int n, std::vector<std::string> vars) {
    return ChristoffelField(n, std::move(vars));
  }

  const Scalar& at(int i, int j, int k) const {
    return comp[(i * n + j) * n + k];
  }
  Scalar& at(int i, int j, int k) { return comp[(i * n + j) * n + k]; }

  /// Contracted trace Gamma^k_{jk}.
  Scalar trace(int j) const {
    Scalar s;
    for (int k = 0; k < n; ++k) s += at(k, j, k);
    return s;
  }

  bool is_zero() const {
    for (auto& c : comp)
      if (!c.is_zero()) return false;
    return true;
  }
};

/// Symmetric metric with cached inverse, determinant and volume density.
struct MetricField {
  int n = 0;
  std::vector<std::string> vars;
  Mat g, g_inv;
  Scalar det_g;
  Scalar volume_density;  // sqrt(|det g|), taken as sqrt(det g) on the domain
  SampleDomain domain;

  MetricField() = default;
  MetricField(int n_, std::vector<std::string> vars_, Mat g_,
              SampleDomain dom = {})
      : n(n_), vars(std::move(vars_)), g(std::move(g_)), domain(std::move(dom)) {
    det_g = determinant(g);
    if (det_g.is_zero()) throw SingularMetric();
    g_inv = invert_matrix(g);
    volume_density = Scalar::sqrt(det_g);
  }

  static MetricField identity(int n, std::vector<std::string> vars,
                              SampleDomain dom = {}) {
    Mat g = zero_matrix(n);
    for (int i = 0; i < n; ++i) g[i][i] = Scalar::constant(1);
    return MetricField(n, std::move(vars), std::move(g), std::move(dom));
  }
};

/// Levi-Civita connection of a metric:
/// Gamma^i_jk = 1/2 g^{il} (d_j g_{lk} + d_k g_{lj} - d_l g_{jk}).
inline ChristoffelField christoffel_from_metric(const MetricField& m) {
  ChristoffelField gamma(m.n, m.vars);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j)
      for (int k = j; k < m.n; ++k) {
        Scalar s;
        for (int l = 0; l < m.n; ++l) {
          Scalar inner = m.g[l][k].diff(m.vars[j]) +
                         m.g[l][j].diff(m.vars[k]) -
                         m.g[j][k].diff(m.vars[l]);
          s += m.g_inv[i][l] * inner;
        }
        s = Scalar::constant(1, 2) * s;
        gamma.at(i, j, k) = s;
        gamma.at(i, k, j) = s;
      }
  return gamma;
}

/// Coordinate change x = phi(x') on configuration space, with the flat
/// target metric of the given diagonal signature. The induced phase-space
/// map transforms momenta with the inverse Jacobian.
class PointTransformation {
public:
  PointTransformation(std::vector<std::string> vars, std::vector<Scalar> phi,
                      SampleDomain domain, std::vector<int> signature = {})
      : n_(static_cast<int>(vars.size())),
        vars_(std::move(vars)),
        phi_(std::move(phi)),
        domain_(std::move(domain)),
        signature_(std::move(signature)) {
    if (static_cast<int>(phi_.size()) != n_)
      throw DimensionMismatch("transformation component count != dimension");
    if (signature_.empty()) signature_.assign(n_, 1);
    jac_ = zero_matrix(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) jac_[i][j] = phi_[i].diff(vars_[j]);
    det_jac_ = determinant(jac_);
    check_regular();
    jac_inv_ = invert_matrix(jac_);
  }

  int dim() const { return n_; }
  const std::vector<std::string>& vars() const { return vars_; }
  const std::vector<Scalar>& phi() const { return phi_; }
  const SampleDomain& domain() const { return domain_; }
  const std::vector<int>& signature() const { return signature_; }

  /// [phi']^i_j = d phi^i / d x'^j.
  const Mat& jacobian() const { return jac_; }
  const Mat& inverse_jacobian() const { return jac_inv_; }
  const Scalar& jacobian_det() const { return det_jac_; }

  /// [phi'']^i_{jk}.
  Scalar hessian(int i, int j, int k) const {
    return jac_[i][j].diff(vars_[k]);
  }

  /// Momentum part of the induced phase-space map:
  /// p_i = [(phi')^{-1}]^j_i p'_j, as momentum polynomials in (x', p').
  std::vector<MomentumPoly> momentum_map() const {
    std::vector<MomentumPoly> ps;
    for (int i = 0; i < n_; ++i) {
      MomentumPoly p(n_);
      for (int j = 0; j < n_; ++j)
        p = p + MomentumPoly::momentum(n_, j).scaled(jac_inv_[j][i]);
      ps.push_back(std::move(p));
    }
    return ps;
  }

private:
  void check_regular() const {
    if (det_jac_.is_zero()) throw SingularJacobian();
    std::set<std::string> vars = det_jac_.symbols();
    bool ok = true;
    draw_samples(domain_.with_samples(16), vars, 0, [&](const SamplePoint& pt) {
      if (std::abs(det_jac_.eval(pt.env, domain_.eps_dom)) < domain_.eps_dom)
        ok = false;
    });
    if (!ok) throw SingularJacobian();
  }

  int n_;
  std::vector<std::string> vars_;
  std::vector<Scalar> phi_;
  SampleDomain domain_;
  std::vector<int> signature_;
  Mat jac_, jac_inv_;
  Scalar det_jac_;
};

/// Gamma^i_jk = [(phi')^{-1}]^i_r [phi'']^r_{jk}.
inline ChristoffelField christoffel_from_transformation(
    const PointTransformation& t) {
  int n = t.dim();
  ChristoffelField gamma(n, t.vars());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k) {
        Scalar s;
        for (int r = 0; r < n; ++r)
          s += t.inverse_jacobian()[i][r] * t.hessian(r, j, k);
        gamma.at(i, j, k) = s;
        gamma.at(i, k, j) = s;
      }
  return gamma;
}

/// g' = J^T eta J with eta the diagonal flat metric of the signature.
inline MetricField pullback_metric(const PointTransformation& t) {
  int n = t.dim();
  Mat g = zero_matrix(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Scalar s;
      for (int a = 0; a < n; ++a)
        s += Scalar::constant(t.signature()[a]) * t.jacobian()[a][i] *
             t.jacobian()[a][j];
      g[i][j] = s;
    }
  return MetricField(n, t.vars(), std::move(g), t.domain());
}

/// Mixed-rank tensor field: `upper` contravariant slots then `lower`
/// covariant slots, components stored densely.
class TensorField {
public:
  TensorField(int n, int upper, int lower, std::vector<std::string> vars)
      : n_(n),
        upper_(upper),
        lower_(lower),
        vars_(std::move(vars)),
        comp_(pow_n(upper + lower), Scalar()) {}

  int dim() const { return n_; }
  int upper_rank() const { return upper_; }
  int lower_rank() const { return lower_; }
  const std::vector<std::string>& vars() const { return vars_; }

  const Scalar& at(const std::vector<int>& idx) const {
    return comp_[flat(idx)];
  }
  Scalar& at(const std::vector<int>& idx) { return comp_[flat(idx)]; }

  bool symmetric_upper() const {
    // full symmetry of contravariant slots
    bool ok = true;
    enumerate([&](const std::vector<int>& id) {
      for (int a = 0; a < upper_; ++a)
        for (int b = a + 1; b < upper_; ++b) {
          std::vector<int> sw = id;
          std::swap(sw[a], sw[b]);
          if (!(at(id) == at(sw))) ok = false;
        }
    });
    return ok;
  }

  /// Covariant derivative; the new covariant slot is appended last.
  TensorField covariant_derivative(const ChristoffelField& gamma) const {
    TensorField r(n_, upper_, lower_ + 1, vars_);
    r.enumerate([&](const std::vector<int>& idx) {
      int k = idx.back();
      std::vector<int> base(idx.begin(), idx.end() - 1);
      Scalar s = at(base).diff(vars_[k]);
      for (int a = 0; a < upper_; ++a) {
        for (int m = 0; m < n_; ++m) {
          std::vector<int> sub = base;
          int orig = sub[a];
          sub[a] = m;
          s += gamma.at(orig, m, k) * at(sub);
        }
      }
      for (int a = upper_; a < upper_ + lower_; ++a) {
        for (int m = 0; m < n_; ++m) {
          std::vector<int> sub = base;
          int orig = sub[a];
          sub[a] = m;
          s -= gamma.at(m, orig, k) * at(sub);
        }
      }
      r.at(idx) = s;
    });
    return r;
  }

  /// Contract contravariant slot `up` with covariant slot `low`
  /// (positions within their own groups).
  TensorField contract(int up, int low) const {
    if (up >= upper_ || low >= lower_)
      throw RankMismatch("contraction slot out of range");
    TensorField r(n_, upper_ - 1, lower_ - 1, vars_);
    r.enumerate([&](const std::vector<int>& idx) {
      Scalar s;
      for (int m = 0; m < n_; ++m) {
        std::vector<int> full;
        int src = 0;
        for (int a = 0; a < upper_; ++a)
          full.push_back(a == up ? m : idx[src++]);
        for (int a = 0; a < lower_; ++a)
          full.push_back(a == low ? m : idx[src++]);
        s += at(full);
      }
      r.at(idx) = s;
    });
    return r;
  }

  template <typename Fn>
  void enumerate(Fn fn) const {
    std::vector<int> idx(upper_ + lower_, 0);
    enumerate_rec(idx, 0, fn);
  }

private:
  template <typename Fn>
  void enumerate_rec(std::vector<int>& idx, int pos, Fn& fn) const {
    if (pos == static_cast<int>(idx.size())) {
      fn(const_cast<const std::vector<int>&>(idx));
      return;
    }
    for (int v = 0; v < n_; ++v) {
      idx[pos] = v;
      enumerate_rec(idx, pos + 1, fn);
    }
  }

  std::size_t pow_n(int r) const {
    std::size_t s = 1;
    for (int k = 0; k < r; ++k) s *= n_;
    return s;
  }
  std::size_t flat(const std::vector<int>& idx) const {
    std::size_t f = 0;
    for (int v : idx) f = f * n_ + v;
    return f;
  }

  int n_, upper_, lower_;
  std::vector<std::string> vars_;
  std::vector<Scalar> comp_;
};

/// Fully contravariant symmetric tensor (rank 2 or 3 in practice).
using SymTensorField = TensorField;

inline SymTensorField tensor_from_metric_inverse(const MetricField& m) {
  SymTensorField k(m.n, 2, 0, m.vars);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) k.at({i, j}) = m.g_inv[i][j];
  return k;
}

/// K^{i..}_{;ij..}: iterated covariant derivatives applied left to right,
/// then full contraction of the first `m` upper slots with the derivative
/// slots in order. For K^{ij}: returns the scalar K^{ij}_{;ij}.
inline TensorField iterated_divergence(const TensorField& k,
                                       const ChristoffelField& gamma,
                                       int n_derivs) {
  TensorField t = k;
  for (int d = 0; d < n_derivs; ++d) t = t.covariant_derivative(gamma);
  for (int d = 0; d < n_derivs; ++d) t = t.contract(0, 0);
  return t;
}

/// Riemann, Ricci and scalar curvature.
struct CurvatureData {
  int n = 0;
  std::vector<Scalar> riemann;  // R^i_{jkl}
  Mat ricci;                    // R_jk
  Scalar scalar;

  const Scalar& riem(int i, int j, int k, int l) const {
    return riemann[((i * n + j) * n + k) * n + l];
  }
  Scalar& riem(int i, int j, int k, int l) {
    return riemann[((i * n + j) * n + k) * n + l];
  }
};

inline CurvatureData curvature(const ChristoffelField& gamma,
                               const MetricField& g) {
  int n = gamma.n;
  CurvatureData c;
  c.n = n;
  c.riemann.assign(n * n * n * n, Scalar());
  c.ricci = zero_matrix(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Scalar s = gamma.at(i, j, l).diff(gamma.vars[k]) -
                     gamma.at(i, j, k).diff(gamma.vars[l]);
          for (int m = 0; m < n; ++m)
            s += gamma.at(i, k, m) * gamma.at(m, j, l) -
                 gamma.at(i, l, m) * gamma.at(m, j, k);
          c.riem(i, j, k, l) = s;
        }
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      Scalar s;
      for (int i = 0; i < n; ++i) s += c.riem(i, j, i, k);
      c.ricci[j][k] = s;
    }
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) c.scalar += g.g_inv[j][k] * c.ricci[j][k];
  return c;
}

}  // namespace curviq
