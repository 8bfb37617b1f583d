#pragma once

#include <cctype>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "curviq/config_operator.hpp"
#include "curviq/report.hpp"

namespace curviq::emit {

using nlohmann::json;

// ---------------------------------------------------------------------------
// LaTeX
// ---------------------------------------------------------------------------

inline std::string latex_rational(const Rational& r) {
  if (r.is_integer()) return std::to_string(r.num());
  std::string sign = r.num() < 0 ? "-" : "";
  long long n = r.num() < 0 ? -r.num() : r.num();
  return sign + "\\frac{" + std::to_string(n) + "}{" +
         std::to_string(r.den()) + "}";
}

inline std::string latex_crational(const CRational& c) {
  if (c.im.is_zero()) return latex_rational(c.re);
  std::string im = c.im.is_one() ? "i"
                   : c.im == Rational(-1)
                       ? "-i"
                       : latex_rational(c.im) + " i";
  if (c.re.is_zero()) return im;
  std::string s = latex_rational(c.re);
  if (!(c.im < Rational(0))) s += " + ";
  return "\\left(" + s + im + "\\right)";
}

inline std::string latex_symbol(const std::string& name) {
  static const std::map<std::string, std::string> greek = {
      {"theta", "\\theta"}, {"phi", "\\varphi"}, {"alpha", "\\alpha"},
      {"beta", "\\beta"},   {"sigma", "\\sigma"}, {"hbar", "\\hbar"},
      {"rho", "\\rho"},     {"lambda", "\\lambda"}};
  auto it = greek.find(name);
  if (it != greek.end()) return it->second;
  if (name.size() == 1) return name;
  // letter followed by digits -> subscript
  std::size_t d = 0;
  while (d < name.size() && !std::isdigit(static_cast<unsigned char>(name[d])))
    ++d;
  if (d > 0 && d < name.size()) {
    bool all_digits = true;
    for (std::size_t j = d; j < name.size(); ++j)
      if (!std::isdigit(static_cast<unsigned char>(name[j])))
        all_digits = false;
    if (all_digits)
      return name.substr(0, d) + "_{" + name.substr(d) + "}";
  }
  return "\\mathrm{" + name + "}";
}

namespace detail {
// Precedence context for parenthesization: 0 sum, 1 product, 2 power base.
inline std::string latex_scalar_rec(const Scalar& s, int ctx) {
  switch (s.kind()) {
    case NodeKind::Constant: {
      std::string r = latex_crational(s.value());
      bool needs = ctx >= 1 && (r.find('+') != std::string::npos ||
                                (ctx == 2 && r.size() > 1) ||
                                (ctx >= 1 && !r.empty() && r[0] == '-'));
      return needs ? "\\left(" + r + "\\right)" : r;
    }
    case NodeKind::Symbol:
      return latex_symbol(s.name());
    case NodeKind::Add: {
      std::string r;
      for (std::size_t j = 0; j < s.kids().size(); ++j) {
        if (j) r += " + ";
        r += latex_scalar_rec(s.kids()[j], 0);
      }
      if (ctx >= 1) return "\\left(" + r + "\\right)";
      return r;
    }
    case NodeKind::Mul: {
      // split into numerator and denominator by sign of Pow exponents
      std::vector<std::string> num, den;
      for (const auto& k : s.kids()) {
        if (k.kind() == NodeKind::Pow && k.expo() < Rational(0)) {
          Rational e = -k.expo();
          if (e.is_one())
            den.push_back(latex_scalar_rec(k.kids()[0], 1));
          else
            den.push_back(latex_scalar_rec(k.kids()[0], 2) + "^{" +
                          latex_rational(e) + "}");
        } else {
          num.push_back(latex_scalar_rec(k, 1));
        }
      }
      auto joined = [](const std::vector<std::string>& v) {
        std::string r;
        for (std::size_t j = 0; j < v.size(); ++j) {
          if (j) r += " ";
          r += v[j];
        }
        return r.empty() ? std::string("1") : r;
      };
      std::string r = den.empty()
                          ? joined(num)
                          : "\\frac{" + joined(num) + "}{" + joined(den) + "}";
      if (ctx == 2) return "\\left(" + r + "\\right)";
      return r;
    }
    case NodeKind::Pow: {
      std::string r = latex_scalar_rec(s.kids()[0], 2) + "^{" +
                      latex_rational(s.expo()) + "}";
      return r;
    }
    case NodeKind::Fun: {
      const char* names[] = {"\\sin", "\\cos", "\\tan", "\\exp", "\\ln",
                             "\\sqrt"};
      std::string fn = names[static_cast<int>(s.fun())];
      std::string arg = latex_scalar_rec(s.kids()[0], 0);
      if (s.fun() == FunKind::Sqrt) return fn + "{" + arg + "}";
      return fn + "\\left(" + arg + "\\right)";
    }
  }
  return "?";
}
}  // namespace detail

inline std::string latex_scalar(const Scalar& s) {
  return detail::latex_scalar_rec(s, 0);
}

inline std::string latex_momentum_poly(const MomentumPoly& p,
                                       const std::vector<std::string>& vars) {
  if (p.terms().empty()) return "0";
  std::string r;
  for (const auto& [m, c] : p.terms()) {
    if (!r.empty()) r += " + ";
    r += detail::latex_scalar_rec(c, 1);
    for (int i = 0; i < p.dim(); ++i)
      for (int k = 0; k < m[i]; ++k) r += " p_{" + latex_symbol(vars[i]) + "}";
  }
  return r;
}

inline std::string latex_phase_function(const PhaseFunction& f,
                                        const std::vector<std::string>& vars) {
  std::string r;
  for (int h = 0; h <= f.truncation(); ++h) {
    if (f.at(h).terms().empty()) continue;
    if (!r.empty()) r += " + ";
    if (h > 0) r += "\\hbar^{" + std::to_string(h) + "}\\left(";
    r += latex_momentum_poly(f.at(h), vars);
    if (h > 0) r += "\\right)";
  }
  return r.empty() ? "0" : r;
}

inline std::string latex_config_operator(const ConfigOperator& op) {
  if (op.empty()) return "0";
  std::string r;
  for (const auto& [h, slot] : op.terms())
    for (const auto& [idx, c] : slot) {
      if (!r.empty()) r += " + ";
      if (h > 0) r += "\\hbar^{" + std::to_string(h) + "} ";
      r += "\\left(" + latex_scalar(c) + "\\right)";
      for (int i = 0; i < op.dim(); ++i)
        for (int k = 0; k < idx[i]; ++k)
          r += " \\partial_{" + latex_symbol(op.vars()[i]) + "}";
    }
  return r;
}

inline std::string latex_phase_op(const PhaseOp& op,
                                  const std::vector<std::string>& vars) {
  if (op.terms().empty()) return "0";
  int n = static_cast<int>(vars.size());
  std::string r;
  for (const auto& [idx, c] : op.terms()) {
    if (!r.empty()) r += " + ";
    r += "\\left(" + latex_momentum_poly(c, vars) + "\\right)";
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < idx[i]; ++k)
        r += " \\partial_{" + latex_symbol(vars[i]) + "}";
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < idx[n + i]; ++k)
        r += " \\partial_{p_{" + latex_symbol(vars[i]) + "}}";
  }
  return r;
}

inline std::string latex_morphism(const Morphism& s) {
  std::string r = "\\mathrm{id}";
  for (int h = 1; h <= s.truncation(); ++h) {
    if (s.order(h).terms().empty()) continue;
    r += " + \\hbar^{" + std::to_string(h) + "}\\left(" +
         latex_phase_op(s.order(h), s.vars()) + "\\right)";
  }
  return r;
}

inline std::string latex_christoffel(const ChristoffelField& gamma) {
  std::string r = "\\begin{aligned}\n";
  bool any = false;
  for (int i = 0; i < gamma.n; ++i)
    for (int j = 0; j < gamma.n; ++j)
      for (int k = j; k < gamma.n; ++k) {
        const Scalar& c = gamma.at(i, j, k);
        if (c.is_zero()) continue;
        any = true;
        r += "\\Gamma^{" + latex_symbol(gamma.vars[i]) + "}_{" +
             latex_symbol(gamma.vars[j]) + " " + latex_symbol(gamma.vars[k]) +
             "} &= " + latex_scalar(c) + " \\\\\n";
      }
  if (!any) r += "\\Gamma &= 0 \\\\\n";
  r += "\\end{aligned}";
  return r;
}

inline std::string latex_star(const StarProduct& star) {
  std::string r = "\\begin{aligned}\n";
  for (const auto& row : star.term_table()) {
    if (row.hbar_power == 0) continue;
    int n = star.dim();
    r += "&\\hbar^{" + std::to_string(row.hbar_power) + "}\\; \\left(" +
         latex_momentum_poly(row.coeff, star.vars()) + "\\right)";
    auto side = [&](const PhaseIdx& idx, const char* arrow) {
      std::string s;
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < idx[i]; ++k)
          s += "\\" + std::string(arrow) + "{\\partial}_{" +
               latex_symbol(star.vars()[i]) + "}";
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < idx[n + i]; ++k)
          s += "\\" + std::string(arrow) + "{\\partial}_{p_{" +
               latex_symbol(star.vars()[i]) + "}}";
      return s;
    };
    r += side(row.left, "overleftarrow") + side(row.right, "overrightarrow");
    r += " \\\\\n";
  }
  r += "\\end{aligned}";
  return r;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

inline json json_config_operator(const ConfigOperator& op) {
  json terms = json::array();
  for (const auto& [h, slot] : op.terms())
    for (const auto& [idx, c] : slot)
      terms.push_back({{"hbar_power", h},
                       {"multi_index", idx},
                       {"coefficient", c.str()}});
  return {{"vars", op.vars()}, {"terms", terms}};
}

inline json json_phase_op(const PhaseOp& op,
                          const std::vector<std::string>& vars) {
  json terms = json::array();
  for (const auto& [idx, c] : op.terms())
    terms.push_back({{"multi_index", idx}, {"coefficient", c.str()}});
  return terms;
}

inline json json_morphism(const Morphism& s) {
  json orders = json::array();
  for (int h = 0; h <= s.truncation(); ++h)
    orders.push_back({{"hbar_power", h},
                      {"operator", json_phase_op(s.order(h), s.vars())}});
  return {{"vars", s.vars()}, {"orders", orders}};
}

inline json json_christoffel(const ChristoffelField& gamma) {
  json rows = json::array();
  for (int i = 0; i < gamma.n; ++i)
    for (int j = 0; j < gamma.n; ++j)
      for (int k = j; k < gamma.n; ++k)
        if (!gamma.at(i, j, k).is_zero())
          rows.push_back({{"upper", gamma.vars[i]},
                          {"lower", {gamma.vars[j], gamma.vars[k]}},
                          {"value", gamma.at(i, j, k).str()}});
  return {{"vars", gamma.vars}, {"components", rows}};
}

inline json json_star(const StarProduct& star) {
  json rows = json::array();
  for (const auto& row : star.term_table())
    rows.push_back({{"hbar_power", row.hbar_power},
                    {"coefficient", row.coeff.str()},
                    {"left", row.left},
                    {"right", row.right}});
  return {{"vars", star.vars()},
          {"truncation", star.truncation()},
          {"terms", rows}};
}

inline json json_report(const Report& rep, const std::string& command,
                        std::uint64_t seed) {
  json checks = json::array();
  for (const auto& c : rep.checks)
    checks.push_back({{"id", c.id},
                      {"hbar_order", c.hbar_order},
                      {"residual", c.residual},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass}});
  return {{"command", command},
          {"seed", seed},
          {"pass", rep.pass()},
          {"checks", checks}};
}

// ---------------------------------------------------------------------------
// Plain text
// ---------------------------------------------------------------------------

inline std::string text_christoffel(const ChristoffelField& gamma) {
  std::string r;
  for (int i = 0; i < gamma.n; ++i)
    for (int j = 0; j < gamma.n; ++j)
      for (int k = j; k < gamma.n; ++k)
        if (!gamma.at(i, j, k).is_zero())
          r += "Gamma^" + gamma.vars[i] + "_{" + gamma.vars[j] + "," +
               gamma.vars[k] + "} = " + gamma.at(i, j, k).str() + "\n";
  if (r.empty()) r = "(all components vanish)\n";
  return r;
}

inline std::string text_star(const StarProduct& star) {
  std::string r;
  int n = star.dim();
  for (const auto& row : star.term_table()) {
    if (row.hbar_power == 0) continue;
    r += "hbar^" + std::to_string(row.hbar_power) + "  (" +
         row.coeff.str() + ")";
    auto side = [&](const PhaseIdx& idx, const std::string& tag) {
      std::string s;
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < idx[i]; ++k)
          s += " " + tag + "d_" + star.vars()[i];
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < idx[n + i]; ++k)
          s += " " + tag + "d_p_" + star.vars()[i];
      return s;
    };
    r += side(row.left, "L:") + side(row.right, "R:") + "\n";
  }
  return r;
}

inline std::string text_phase_op(const PhaseOp& op,
                                 const std::vector<std::string>& vars) {
  if (op.terms().empty()) return "0";
  int n = static_cast<int>(vars.size());
  std::string r;
  for (const auto& [idx, c] : op.terms()) {
    if (!r.empty()) r += " + ";
    r += "(" + c.str() + ")";
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < idx[i]; ++k) r += " d_" + vars[i];
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < idx[n + i]; ++k) r += " d_p_" + vars[i];
  }
  return r;
}

inline std::string text_morphism(const Morphism& s) {
  std::string r = "id";
  for (int h = 1; h <= s.truncation(); ++h) {
    if (s.order(h).terms().empty()) continue;
    r += "\n + hbar^" + std::to_string(h) + " [" +
         text_phase_op(s.order(h), s.vars()) + "]";
  }
  return r + "\n";
}

inline std::string text_report(const Report& rep) {
  std::string r;
  for (const auto& c : rep.checks) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3e (tol %.1e)", c.residual,
                  c.tolerance);
    r += std::string(c.pass ? "pass" : "FAIL") + "  " + c.id;
    if (c.hbar_order >= 0) r += " [hbar^" + std::to_string(c.hbar_order) + "]";
    r += "  residual " + std::string(buf) + "\n";
  }
  r += rep.pass() ? "ALL CHECKS PASSED\n" : "CHECK FAILURES PRESENT\n";
  return r;
}

inline std::string latex_report(const Report& rep) {
  std::string r = "\\begin{tabular}{llrr}\n";
  r += "check & status & residual & tolerance \\\\\n\\hline\n";
  for (const auto& c : rep.checks) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3e & %.1e", c.residual, c.tolerance);
    std::string id = c.id;
    for (size_t i = 0; i < id.size(); ++i)
      if (id[i] == '_') id.replace(i, 1, "\\_"), i += 1;
    r += "\\texttt{" + id + "} & " +
         (c.pass ? "pass" : "\\textbf{fail}") + " & " + buf + " \\\\\n";
  }
  r += "\\end{tabular}";
  return r;
}

}  // namespace curviq::emit
