#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "curviq/phase_function.hpp"

namespace curviq {

/// Seeded sampling box for numeric equality testing. Configuration
/// variables get per-name intervals (coordinate presets exclude their
/// singular sets); momenta share one interval; anything unlisted falls
/// back to a safe default away from the usual singularities.
struct SampleDomain {
  int n_samples = 64;
  double eps_dom = 1e-8;
  std::uint64_t seed = 20240901;
  std::map<std::string, std::pair<double, double>> intervals;
  std::pair<double, double> momentum_interval{-2.0, 2.0};
  std::pair<double, double> default_interval{0.35, 1.65};
  std::map<std::string, double> pinned;  // named constants fixed to a value

  SampleDomain with_seed(std::uint64_t s) const {
    SampleDomain d = *this;
    d.seed = s;
    return d;
  }
  SampleDomain with_samples(int n) const {
    SampleDomain d = *this;
    d.n_samples = n;
    return d;
  }
  SampleDomain pin(const std::string& name, double v) const {
    SampleDomain d = *this;
    d.pinned[name] = v;
    return d;
  }
};

struct SamplePoint {
  Env env;
  std::vector<std::complex<double>> p;
};

/// Draw n valid points: a point is rejected when `reject` throws
/// DivisionByZero (a denominator got within eps_dom of zero).
template <typename RejectFn>
std::vector<SamplePoint> draw_samples(const SampleDomain& dom,
                                      const std::set<std::string>& vars,
                                      int n_momenta, RejectFn reject) {
  std::mt19937_64 rng(dom.seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<SamplePoint> pts;
  int attempts = 0, budget = 400 * dom.n_samples + 400;
  while (static_cast<int>(pts.size()) < dom.n_samples) {
    if (++attempts > budget) throw DomainExhausted();
    SamplePoint pt;
    for (const auto& v : vars) {
      auto pin = dom.pinned.find(v);
      if (pin != dom.pinned.end()) {
        pt.env[v] = pin->second;
        continue;
      }
      auto it = dom.intervals.find(v);
      auto [lo, hi] = it == dom.intervals.end() ? dom.default_interval : it->second;
      pt.env[v] = lo + (hi - lo) * uni(rng);
    }
    for (int i = 0; i < n_momenta; ++i) {
      auto [lo, hi] = dom.momentum_interval;
      pt.p.push_back(lo + (hi - lo) * uni(rng));
    }
    try {
      reject(pt);
    } catch (const DivisionByZero&) {
      continue;
    }
    pts.push_back(std::move(pt));
  }
  return pts;
}

namespace detail {

inline bool close(std::complex<double> x, std::complex<double> y, double tol) {
  double m = std::max(std::abs(x), std::abs(y));
  return std::abs(x - y) <= tol * (1.0 + m);
}

}  // namespace detail

/// Seeded-sampling equality oracle: true iff the two expressions agree to
/// relative tolerance `tol` at every sample point of the domain.
inline bool equals_numeric(const Scalar& a, const Scalar& b,
                           const SampleDomain& dom, double tol = 1e-9) {
  std::set<std::string> vars = a.symbols();
  b.collect_symbols(vars);
  bool ok = true;
  auto pts = draw_samples(dom, vars, 0, [&](const SamplePoint& pt) {
    std::complex<double> va = a.eval(pt.env, dom.eps_dom);
    std::complex<double> vb = b.eval(pt.env, dom.eps_dom);
    if (!detail::close(va, vb, tol)) ok = false;
  });
  (void)pts;
  return ok;
}

inline bool equals_numeric(const MomentumPoly& a, const MomentumPoly& b,
                           const SampleDomain& dom, double tol = 1e-9) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("momentum polynomial dimensions differ");
  std::set<std::string> vars;
  a.collect_symbols(vars);
  b.collect_symbols(vars);
  bool ok = true;
  draw_samples(dom, vars, a.dim(), [&](const SamplePoint& pt) {
    std::complex<double> va = a.eval(pt.env, pt.p, dom.eps_dom);
    std::complex<double> vb = b.eval(pt.env, pt.p, dom.eps_dom);
    if (!detail::close(va, vb, tol)) ok = false;
  });
  return ok;
}

inline bool equals_numeric(const PhaseFunction& a, const PhaseFunction& b,
                           const SampleDomain& dom, double tol = 1e-9) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("phase function dimensions differ");
  if (a.truncation() != b.truncation()) throw TruncationMismatch();
  for (int j = 0; j <= a.truncation(); ++j)
    if (!equals_numeric(a.at(j), b.at(j), dom, tol)) return false;
  return true;
}

/// Max pointwise relative residual |a-b|/(1+max|a|,|b|) over the domain,
/// reported per hbar order. Used by the verification suites.
inline std::vector<double> residuals_by_order(const PhaseFunction& a,
                                              const PhaseFunction& b,
                                              const SampleDomain& dom) {
  if (a.truncation() != b.truncation()) throw TruncationMismatch();
  std::vector<double> res(a.truncation() + 1, 0.0);
  std::set<std::string> vars;
  a.collect_symbols(vars);
  b.collect_symbols(vars);
  draw_samples(dom, vars, a.dim(), [&](const SamplePoint& pt) {
    // evaluate everything before committing so a rejected point leaves
    // no partial residuals behind
    std::vector<std::complex<double>> va, vb;
    for (int j = 0; j <= a.truncation(); ++j) {
      va.push_back(a.at(j).eval(pt.env, pt.p, dom.eps_dom));
      vb.push_back(b.at(j).eval(pt.env, pt.p, dom.eps_dom));
    }
    for (int j = 0; j <= a.truncation(); ++j) {
      double m = std::max(std::abs(va[j]), std::abs(vb[j]));
      res[j] = std::max(res[j], std::abs(va[j] - vb[j]) / (1.0 + m));
    }
  });
  return res;
}

}  // namespace curviq
