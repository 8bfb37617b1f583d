#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "curviq/errors.hpp"
#include "curviq/rational.hpp"

namespace curviq {

enum class FunKind { Sin, Cos, Tan, Exp, Ln, Sqrt };

inline const char* fun_name(FunKind f) {
  switch (f) {
    case FunKind::Sin: return "sin";
    case FunKind::Cos: return "cos";
    case FunKind::Tan: return "tan";
    case FunKind::Exp: return "exp";
    case FunKind::Ln: return "ln";
    case FunKind::Sqrt: return "sqrt";
  }
  return "?";
}

enum class NodeKind { Constant, Symbol, Fun, Pow, Mul, Add };

class Scalar;

struct ScalarNode {
  NodeKind kind;
  CRational value;              // Constant
  std::string name;             // Symbol
  FunKind fun = FunKind::Sin;   // Fun
  Rational expo;                // Pow exponent
  std::vector<Scalar> kids;     // Fun: 1, Pow: 1, Add/Mul: n
  std::size_t hash = 0;
};

using Env = std::map<std::string, std::complex<double>>;

/// Immutable symbolic expression over configuration variables and named
/// constants. Sums and products are kept flattened and sorted, with like
/// terms and like factors collected, so structurally equal expressions
/// compare equal. Full simplification to canonical zero is not attempted;
/// equality of distinct forms is decided numerically (see equals_numeric).
class Scalar {
public:
  Scalar() : Scalar(constant(0)) {}

  static Scalar constant(CRational c) {
    ScalarNode n;
    n.kind = NodeKind::Constant;
    n.value = c;
    return finish(std::move(n));
  }
  static Scalar constant(std::int64_t num, std::int64_t den) {
    return constant(CRational(Rational(num, den)));
  }
  static Scalar i() { return constant(CRational::i()); }
  static Scalar symbol(std::string name) {
    ScalarNode n;
    n.kind = NodeKind::Symbol;
    n.name = std::move(name);
    return finish(std::move(n));
  }

  NodeKind kind() const { return n_->kind; }
  const CRational& value() const { return n_->value; }
  const std::string& name() const { return n_->name; }
  FunKind fun() const { return n_->fun; }
  const Rational& expo() const { return n_->expo; }
  const std::vector<Scalar>& kids() const { return n_->kids; }
  std::size_t hash() const { return n_->hash; }

  bool is_zero() const {
    return n_->kind == NodeKind::Constant && n_->value.is_zero();
  }
  bool is_one() const {
    return n_->kind == NodeKind::Constant && n_->value.is_one();
  }
  bool is_constant() const { return n_->kind == NodeKind::Constant; }

  friend int compare(const Scalar& a, const Scalar& b) {
    if (a.n_ == b.n_) return 0;
    if (a.kind() != b.kind())
      return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
    switch (a.kind()) {
      case NodeKind::Constant: {
        auto cr = [](const CRational& x, const CRational& y) {
          if (x.re != y.re) return x.re < y.re ? -1 : 1;
          if (x.im != y.im) return x.im < y.im ? -1 : 1;
          return 0;
        };
        return cr(a.value(), b.value());
      }
      case NodeKind::Symbol:
        return a.name().compare(b.name());
      case NodeKind::Fun:
        if (a.fun() != b.fun())
          return static_cast<int>(a.fun()) < static_cast<int>(b.fun()) ? -1 : 1;
        return compare(a.kids()[0], b.kids()[0]);
      case NodeKind::Pow: {
        int c = compare(a.kids()[0], b.kids()[0]);
        if (c != 0) return c;
        if (a.expo() != b.expo()) return a.expo() < b.expo() ? -1 : 1;
        return 0;
      }
      case NodeKind::Mul:
      case NodeKind::Add: {
        std::size_t m = std::min(a.kids().size(), b.kids().size());
        for (std::size_t k = 0; k < m; ++k) {
          int c = compare(a.kids()[k], b.kids()[k]);
          if (c != 0) return c;
        }
        if (a.kids().size() != b.kids().size())
          return a.kids().size() < b.kids().size() ? -1 : 1;
        return 0;
      }
    }
    return 0;
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.n_ == b.n_) return true;
    if (a.hash() != b.hash()) return false;
    return compare(a, b) == 0;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    return add({a, b});
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    return add({a, mul({constant(-1), b})});
  }
  Scalar operator-() const { return mul({constant(-1), *this}); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    return mul({a, b});
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    return mul({a, pow(b, Rational(-1))});
  }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  /// n-ary flattened sum with like-term collection.
  static Scalar add(std::vector<Scalar> terms) {
    std::vector<Scalar> flat;
    for (auto& t : terms) {
      if (t.kind() == NodeKind::Add)
        flat.insert(flat.end(), t.kids().begin(), t.kids().end());
      else
        flat.push_back(std::move(t));
    }
    CRational const_sum(0);
    // core -> accumulated coefficient
    std::map<Scalar, CRational, Less> collected;
    for (auto& t : flat) {
      if (t.is_constant()) {
        const_sum += t.value();
        continue;
      }
      auto [coeff, core] = split_coeff(t);
      collected[core] += coeff;
    }
    std::vector<Scalar> out;
    for (auto& [core, coeff] : collected) {
      if (coeff.is_zero()) continue;
      out.push_back(coeff.is_one() ? core : mul({constant(coeff), core}));
    }
    if (!const_sum.is_zero()) out.push_back(constant(const_sum));
    std::sort(out.begin(), out.end(),
              [](const Scalar& x, const Scalar& y) { return compare(x, y) < 0; });
    if (out.empty()) return constant(0);
    if (out.size() == 1) return out[0];
    ScalarNode n;
    n.kind = NodeKind::Add;
    n.kids = std::move(out);
    return finish(std::move(n));
  }

  /// n-ary flattened product with constant folding and exponent collection.
  static Scalar mul(std::vector<Scalar> factors) {
    std::vector<Scalar> flat;
    for (auto& f : factors) {
      if (f.kind() == NodeKind::Mul)
        flat.insert(flat.end(), f.kids().begin(), f.kids().end());
      else
        flat.push_back(std::move(f));
    }
    CRational const_prod(1);
    std::map<Scalar, Rational, Less> bases;
    for (auto& f : flat) {
      if (f.is_constant()) {
        const_prod = const_prod * f.value();
        continue;
      }
      if (f.kind() == NodeKind::Pow) {
        bases[f.kids()[0]] += f.expo();
      } else {
        bases[f] += Rational(1);
      }
    }
    if (const_prod.is_zero()) return constant(0);
    std::vector<Scalar> out;
    for (auto& [base, e] : bases) {
      if (e.is_zero()) continue;
      Scalar p = pow(base, e);
      if (p.is_constant()) {
        const_prod = const_prod * p.value();
        continue;
      }
      if (p.kind() == NodeKind::Mul) {
        // pow() distributed over a product; merge its factors directly
        for (auto& k : p.kids()) {
          if (k.is_constant())
            const_prod = const_prod * k.value();
          else
            out.push_back(k);
        }
      } else {
        out.push_back(p);
      }
    }
    if (const_prod.is_zero()) return constant(0);
    std::sort(out.begin(), out.end(),
              [](const Scalar& x, const Scalar& y) { return compare(x, y) < 0; });
    if (out.empty()) return constant(const_prod);
    if (!const_prod.is_one()) {
      out.insert(out.begin(), constant(const_prod));
    }
    if (out.size() == 1) return out[0];
    ScalarNode n;
    n.kind = NodeKind::Mul;
    n.kids = std::move(out);
    return finish(std::move(n));
  }

  static Scalar pow(const Scalar& base, Rational e) {
    if (e.is_zero()) return constant(1);
    if (e.is_one()) return base;
    if (base.is_one()) return constant(1);
    if (base.is_zero()) {
      if (e < Rational(0)) throw DivisionByZero("0 raised to negative power");
      return constant(0);
    }
    if (base.is_constant() && e.is_integer())
      return constant(base.value().pow(static_cast<int>(e.num())));
    if (e.is_integer()) {
      // safe for integer outer exponents on the principal branch
      if (base.kind() == NodeKind::Pow)
        return pow(base.kids()[0], base.expo() * e);
      if (base.kind() == NodeKind::Mul) {
        std::vector<Scalar> fs;
        for (auto& k : base.kids()) fs.push_back(pow(k, e));
        return mul(std::move(fs));
      }
    }
    ScalarNode n;
    n.kind = NodeKind::Pow;
    n.expo = e;
    n.kids = {base};
    return finish(std::move(n));
  }

  static Scalar apply(FunKind f, const Scalar& arg) {
    ScalarNode n;
    n.kind = NodeKind::Fun;
    n.fun = f;
    n.kids = {arg};
    return finish(std::move(n));
  }
  static Scalar sin(const Scalar& x) { return apply(FunKind::Sin, x); }
  static Scalar cos(const Scalar& x) { return apply(FunKind::Cos, x); }
  static Scalar tan(const Scalar& x) { return apply(FunKind::Tan, x); }
  static Scalar exp(const Scalar& x) { return apply(FunKind::Exp, x); }
  static Scalar ln(const Scalar& x) { return apply(FunKind::Ln, x); }
  static Scalar sqrt(const Scalar& x) { return apply(FunKind::Sqrt, x); }

  /// Partial derivative; unknown names (named constants) differentiate to 0.
  Scalar diff(const std::string& var) const {
    switch (kind()) {
      case NodeKind::Constant:
        return constant(0);
      case NodeKind::Symbol:
        return name() == var ? constant(1) : constant(0);
      case NodeKind::Add: {
        std::vector<Scalar> ts;
        for (auto& k : kids()) ts.push_back(k.diff(var));
        return add(std::move(ts));
      }
      case NodeKind::Mul: {
        std::vector<Scalar> ts;
        for (std::size_t j = 0; j < kids().size(); ++j) {
          std::vector<Scalar> fs = kids();
          fs[j] = kids()[j].diff(var);
          ts.push_back(mul(std::move(fs)));
        }
        return add(std::move(ts));
      }
      case NodeKind::Pow: {
        const Scalar& b = kids()[0];
        return mul({constant(CRational(expo())), pow(b, expo() - Rational(1)),
                    b.diff(var)});
      }
      case NodeKind::Fun: {
        const Scalar& a = kids()[0];
        Scalar outer = constant(0);
        switch (fun()) {
          case FunKind::Sin: outer = cos(a); break;
          case FunKind::Cos: outer = -sin(a); break;
          case FunKind::Tan:
            outer = constant(1) + mul({tan(a), tan(a)});
            break;
          case FunKind::Exp: outer = exp(a); break;
          case FunKind::Ln: outer = pow(a, Rational(-1)); break;
          case FunKind::Sqrt:
            outer = mul({constant(1, 2), pow(a, Rational(-1, 2))});
            break;
        }
        return mul({outer, a.diff(var)});
      }
    }
    return constant(0);
  }

  /// Numeric evaluation. Throws UnboundVariable / DivisionByZero.
  std::complex<double> eval(const Env& env, double eps = 1e-12) const {
    switch (kind()) {
      case NodeKind::Constant:
        return value().to_complex();
      case NodeKind::Symbol: {
        auto it = env.find(name());
        if (it == env.end()) throw UnboundVariable(name());
        return it->second;
      }
      case NodeKind::Add: {
        std::complex<double> s = 0;
        for (auto& k : kids()) s += k.eval(env, eps);
        return s;
      }
      case NodeKind::Mul: {
        std::complex<double> p = 1;
        for (auto& k : kids()) p *= k.eval(env, eps);
        return p;
      }
      case NodeKind::Pow: {
        std::complex<double> b = kids()[0].eval(env, eps);
        if (expo() < Rational(0) && std::abs(b) < eps) throw DivisionByZero();
        if (expo().is_integer()) {
          std::complex<double> r = 1, x = b;
          std::int64_t e = expo().num();
          bool inv = e < 0;
          if (inv) e = -e;
          while (e > 0) {
            if (e & 1) r *= x;
            x *= x;
            e >>= 1;
          }
          return inv ? 1.0 / r : r;
        }
        return std::pow(b, expo().to_double());
      }
      case NodeKind::Fun: {
        std::complex<double> a = kids()[0].eval(env, eps);
        switch (fun()) {
          case FunKind::Sin: return std::sin(a);
          case FunKind::Cos: return std::cos(a);
          case FunKind::Tan:
            if (std::abs(std::cos(a)) < eps) throw DivisionByZero();
            return std::tan(a);
          case FunKind::Exp: return std::exp(a);
          case FunKind::Ln:
            if (std::abs(a) < eps) throw DivisionByZero();
            return std::log(a);
          case FunKind::Sqrt: return std::sqrt(a);
        }
        return 0;
      }
    }
    return 0;
  }

  /// Complex conjugate; variables and named constants are taken real.
  Scalar conj() const {
    switch (kind()) {
      case NodeKind::Constant:
        return constant(value().conj());
      case NodeKind::Symbol:
        return *this;
      case NodeKind::Add: {
        std::vector<Scalar> ts;
        for (auto& k : kids()) ts.push_back(k.conj());
        return add(std::move(ts));
      }
      case NodeKind::Mul: {
        std::vector<Scalar> ts;
        for (auto& k : kids()) ts.push_back(k.conj());
        return mul(std::move(ts));
      }
      case NodeKind::Pow:
        return pow(kids()[0].conj(), expo());
      case NodeKind::Fun:
        return apply(fun(), kids()[0].conj());
    }
    return *this;
  }

  /// Substitute symbols by expressions (simultaneous).
  Scalar substitute(const std::map<std::string, Scalar>& subs) const {
    switch (kind()) {
      case NodeKind::Constant:
        return *this;
      case NodeKind::Symbol: {
        auto it = subs.find(name());
        return it == subs.end() ? *this : it->second;
      }
      case NodeKind::Add: {
        std::vector<Scalar> ts;
        for (auto& k : kids()) ts.push_back(k.substitute(subs));
        return add(std::move(ts));
      }
      case NodeKind::Mul: {
        std::vector<Scalar> ts;
        for (auto& k : kids()) ts.push_back(k.substitute(subs));
        return mul(std::move(ts));
      }
      case NodeKind::Pow:
        return pow(kids()[0].substitute(subs), expo());
      case NodeKind::Fun:
        return apply(fun(), kids()[0].substitute(subs));
    }
    return *this;
  }

  void collect_symbols(std::set<std::string>& out) const {
    if (kind() == NodeKind::Symbol) {
      out.insert(name());
      return;
    }
    for (auto& k : kids()) k.collect_symbols(out);
  }
  std::set<std::string> symbols() const {
    std::set<std::string> s;
    collect_symbols(s);
    return s;
  }

  std::string str() const {
    switch (kind()) {
      case NodeKind::Constant:
        return value().str();
      case NodeKind::Symbol:
        return name();
      case NodeKind::Add: {
        std::string s;
        for (std::size_t j = 0; j < kids().size(); ++j) {
          if (j) s += " + ";
          s += kids()[j].str();
        }
        return "(" + s + ")";
      }
      case NodeKind::Mul: {
        std::string s;
        for (std::size_t j = 0; j < kids().size(); ++j) {
          if (j) s += "*";
          s += kids()[j].str();
        }
        return s;
      }
      case NodeKind::Pow:
        return kids()[0].str() + "^(" + expo().str() + ")";
      case NodeKind::Fun:
        return std::string(fun_name(fun())) + "(" + kids()[0].str() + ")";
    }
    return "?";
  }

  struct Less {
    bool operator()(const Scalar& a, const Scalar& b) const {
      return compare(a, b) < 0;
    }
  };

private:
  explicit Scalar(std::shared_ptr<const ScalarNode> n) : n_(std::move(n)) {}

  static Scalar finish(ScalarNode&& n) {
    n.hash = compute_hash(n);
    return Scalar(std::make_shared<const ScalarNode>(std::move(n)));
  }

  static std::size_t compute_hash(const ScalarNode& n) {
    std::size_t h = static_cast<std::size_t>(n.kind) * 0x9e3779b97f4a7c15ull;
    auto mix = [&h](std::size_t v) {
      h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    switch (n.kind) {
      case NodeKind::Constant:
        mix(std::hash<std::int64_t>()(n.value.re.num()));
        mix(std::hash<std::int64_t>()(n.value.re.den()));
        mix(std::hash<std::int64_t>()(n.value.im.num()));
        mix(std::hash<std::int64_t>()(n.value.im.den()));
        break;
      case NodeKind::Symbol:
        mix(std::hash<std::string>()(n.name));
        break;
      case NodeKind::Fun:
        mix(static_cast<std::size_t>(n.fun));
        mix(n.kids[0].hash());
        break;
      case NodeKind::Pow:
        mix(std::hash<std::int64_t>()(n.expo.num()));
        mix(std::hash<std::int64_t>()(n.expo.den()));
        mix(n.kids[0].hash());
        break;
      case NodeKind::Mul:
      case NodeKind::Add:
        for (auto& k : n.kids) mix(k.hash());
        break;
    }
    return h;
  }

  /// Split a term into (constant coefficient, remaining core factor).
  static std::pair<CRational, Scalar> split_coeff(const Scalar& t) {
    if (t.kind() == NodeKind::Mul && t.kids()[0].is_constant()) {
      std::vector<Scalar> rest(t.kids().begin() + 1, t.kids().end());
      Scalar core = rest.size() == 1 ? rest[0] : raw_mul(std::move(rest));
      return {t.kids()[0].value(), core};
    }
    return {CRational(1), t};
  }

  // Rebuild a product node from already-canonical sorted factors.
  static Scalar raw_mul(std::vector<Scalar> fs) {
    ScalarNode n;
    n.kind = NodeKind::Mul;
    n.kids = std::move(fs);
    return finish(std::move(n));
  }

  std::shared_ptr<const ScalarNode> n_;
};

inline Scalar operator*(std::int64_t c, const Scalar& s) {
  return Scalar::constant(CRational(c)) * s;
}

/// Free-function spelling used throughout the library.
inline Scalar differentiate(const Scalar& f, const std::string& var) {
  return f.diff(var);
}

}  // namespace curviq
