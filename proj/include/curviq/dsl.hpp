#pragma once

#include <cctype>
#include <cstdio>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "curviq/presets.hpp"

namespace curviq::dsl {

// ---------------------------------------------------------------------------
// Source positions and errors
// ---------------------------------------------------------------------------

struct SourcePos {
  int line = 1;
  int col = 1;
  std::string str() const {
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
  }
};

struct SyntaxError : Error {
  SourcePos pos;
  SyntaxError(const std::string& what, SourcePos p)
      : Error("syntax error at " + p.str() + ": " + what), pos(p) {}
};

struct UndeclaredName : Error {
  SourcePos pos;
  std::string name;
  UndeclaredName(const std::string& n, SourcePos p)
      : Error("undeclared name '" + n + "' at " + p.str()), pos(p), name(n) {}
};

struct ModelDimensionError : DimensionMismatch {
  SourcePos pos;
  ModelDimensionError(const std::string& what, SourcePos p)
      : DimensionMismatch("dimension error at " + p.str() + ": " + what),
        pos(p) {}
};

// ---------------------------------------------------------------------------
// Expression AST
// ---------------------------------------------------------------------------

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

enum class ExprKind { Number, Name, Neg, Bin, Call };

struct ExprNode {
  ExprKind kind;
  SourcePos pos;
  Rational number;        // Number
  std::string name;       // Name / Call function name
  char op = 0;            // Bin: + - * / ^
  ExprPtr lhs, rhs;       // Bin: both; Neg/Call: lhs only
};

inline ExprPtr make_expr(ExprNode n) {
  return std::make_shared<const ExprNode>(std::move(n));
}

namespace detail {
std::optional<Rational> const_eval_fwd(const ExprPtr& e);
}

inline bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  // constant subtrees compare by value, so that 0.5 and 1/2 round-trip
  {
    auto ca = detail::const_eval_fwd(a);
    auto cb = detail::const_eval_fwd(b);
    if (ca && cb) return *ca == *cb;
  }
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case ExprKind::Number:
      return a->number == b->number;
    case ExprKind::Name:
      return a->name == b->name;
    case ExprKind::Neg:
      return expr_equal(a->lhs, b->lhs);
    case ExprKind::Bin:
      return a->op == b->op && expr_equal(a->lhs, b->lhs) &&
             expr_equal(a->rhs, b->rhs);
    case ExprKind::Call:
      return a->name == b->name && expr_equal(a->lhs, b->lhs);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Model AST
// ---------------------------------------------------------------------------

struct VarDecl {
  std::string name;
  double lo = 0.0, hi = 1.0;
  SourcePos pos;
};

struct Assign {
  std::string target;
  ExprPtr value;
  SourcePos pos;
};

enum class StanzaKind { Transform, Metric, Hamiltonian, Fields, Product,
                        Quantize };

struct Stanza {
  StanzaKind kind;
  std::string name;               // declaration name (empty for quantize)
  std::string on;                 // hamiltonian: chart name
  int dim = 0;                    // transform/metric/fields
  std::vector<std::string> symbols;  // hamiltonian: named constants
  std::vector<VarDecl> vars;
  std::vector<Assign> assigns;
  SourcePos pos;
};

struct ModelFile {
  std::vector<Stanza> stanzas;

  const Stanza* find(const std::string& name) const {
    for (const auto& s : stanzas)
      if (s.name == name && s.kind != StanzaKind::Quantize) return &s;
    return nullptr;
  }
  const Stanza* find(const std::string& name, StanzaKind kind) const {
    for (const auto& s : stanzas)
      if (s.name == name && s.kind == kind) return &s;
    return nullptr;
  }
};

inline bool stanza_equal(const Stanza& a, const Stanza& b) {
  if (a.kind != b.kind || a.name != b.name || a.on != b.on ||
      a.dim != b.dim || a.symbols != b.symbols ||
      a.vars.size() != b.vars.size() || a.assigns.size() != b.assigns.size())
    return false;
  for (std::size_t j = 0; j < a.vars.size(); ++j)
    if (a.vars[j].name != b.vars[j].name || a.vars[j].lo != b.vars[j].lo ||
        a.vars[j].hi != b.vars[j].hi)
      return false;
  for (std::size_t j = 0; j < a.assigns.size(); ++j)
    if (a.assigns[j].target != b.assigns[j].target ||
        !expr_equal(a.assigns[j].value, b.assigns[j].value))
      return false;
  return true;
}

inline bool model_equal(const ModelFile& a, const ModelFile& b) {
  if (a.stanzas.size() != b.stanzas.size()) return false;
  for (std::size_t j = 0; j < a.stanzas.size(); ++j)
    if (!stanza_equal(a.stanzas[j], b.stanzas[j])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

namespace detail {

enum class TokKind { Ident, Number, Punct, End };

struct Token {
  TokKind kind = TokKind::End;
  std::string text;
  double num_value = 0.0;
  Rational rat_value;
  bool is_decimal = false;
  SourcePos pos;
};

class Lexer {
public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return cur_; }
  Token next() {
    Token t = cur_;
    advance();
    return t;
  }

private:
  void advance() {
    skip_ws();
    cur_ = Token{};
    cur_.pos = pos_;
    if (i_ >= src_.size()) {
      cur_.kind = TokKind::End;
      return;
    }
    char c = src_[i_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string s;
      while (i_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[i_])) ||
              src_[i_] == '_'))
        s += take();
      cur_.kind = TokKind::Ident;
      cur_.text = std::move(s);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string s;
      bool dec = false;
      while (i_ < src_.size() &&
             (std::isdigit(static_cast<unsigned char>(src_[i_])) ||
              src_[i_] == '.')) {
        if (src_[i_] == '.') {
          if (dec) break;
          dec = true;
        }
        s += take();
      }
      cur_.kind = TokKind::Number;
      cur_.text = s;
      cur_.is_decimal = dec;
      cur_.num_value = std::stod(s);
      if (!dec) {
        cur_.rat_value = Rational(std::stoll(s));
      } else {
        auto dot = s.find('.');
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        long long den = 1;
        for (std::size_t k = dot + 1; k < s.size(); ++k) den *= 10;
        cur_.rat_value = Rational(std::stoll(digits), den);
      }
      return;
    }
    static const std::string punct = "{}(),;=^*/+-.";
    if (punct.find(c) != std::string::npos) {
      cur_.kind = TokKind::Punct;
      cur_.text = std::string(1, take());
      return;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
  }

  void skip_ws() {
    while (i_ < src_.size()) {
      char c = src_[i_];
      if (c == '#') {
        while (i_ < src_.size() && src_[i_] != '\n') take();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        take();
      } else {
        break;
      }
    }
  }

  char take() {
    char c = src_[i_++];
    if (c == '\n') {
      ++pos_.line;
      pos_.col = 1;
    } else {
      ++pos_.col;
    }
    return c;
  }

  const std::string& src_;
  std::size_t i_ = 0;
  SourcePos pos_;
  Token cur_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

class Parser {
public:
  explicit Parser(const std::string& src) : lex_(src) {}

  ModelFile parse_model() {
    ModelFile m;
    while (lex_.peek().kind != detail::TokKind::End)
      m.stanzas.push_back(parse_stanza(m));
    return m;
  }

  /// Parse a single expression (exposed for tests).
  ExprPtr parse_expression() {
    ExprPtr e = parse_expr();
    expect_end();
    return e;
  }

private:
  using Token = detail::Token;
  using TokKind = detail::TokKind;

  Stanza parse_stanza(const ModelFile& so_far) {
    Token head = expect_ident("stanza keyword");
    Stanza s;
    s.pos = head.pos;
    if (head.text == "transform") {
      s.kind = StanzaKind::Transform;
      parse_named_dim_header(s, so_far);
      parse_block(s, /*vars_required=*/true);
      check_transform(s);
    } else if (head.text == "metric") {
      s.kind = StanzaKind::Metric;
      parse_named_dim_header(s, so_far);
      parse_block(s, true);
      check_metric(s);
    } else if (head.text == "fields") {
      s.kind = StanzaKind::Fields;
      parse_named_dim_header(s, so_far);
      parse_block(s, true);
      check_fields(s);
    } else if (head.text == "hamiltonian") {
      s.kind = StanzaKind::Hamiltonian;
      s.name = declare_name(so_far);
      expect_keyword("on");
      Token chart = expect_ident("chart name");
      s.on = chart.text;
      const Stanza* t = so_far.find(s.on, StanzaKind::Transform);
      if (t == nullptr) t = so_far.find(s.on, StanzaKind::Metric);
      if (t == nullptr) throw UndeclaredName(s.on, chart.pos);
      s.dim = t->dim;
      s.vars = t->vars;
      parse_block(s, false);
      check_hamiltonian(s);
    } else if (head.text == "product") {
      s.kind = StanzaKind::Product;
      s.name = declare_name(so_far);
      parse_block(s, false);
      check_product(s);
    } else if (head.text == "quantize") {
      s.kind = StanzaKind::Quantize;
      parse_block(s, false);
      check_quantize(s, so_far);
    } else {
      throw SyntaxError("unknown stanza keyword '" + head.text + "'",
                        head.pos);
    }
    return s;
  }

  std::string declare_name(const ModelFile& so_far) {
    Token t = expect_ident("declaration name");
    if (so_far.find(t.text) != nullptr)
      throw SyntaxError("redefinition of '" + t.text + "'", t.pos);
    return t.text;
  }

  void parse_named_dim_header(Stanza& s, const ModelFile& so_far) {
    s.name = declare_name(so_far);
    expect_keyword("dim");
    Token d = expect_token(TokKind::Number, "dimension");
    if (d.is_decimal || !d.rat_value.is_integer() || d.rat_value.num() < 1)
      throw SyntaxError("dimension must be a positive integer", d.pos);
    s.dim = static_cast<int>(d.rat_value.num());
  }

  void parse_block(Stanza& s, bool vars_required) {
    expect_punct("{");
    while (!try_punct("}")) {
      Token t = expect_ident("declaration");
      if (t.text == "vars") {
        parse_vars(s);
      } else if (t.text == "symbols") {
        do {
          Token n = expect_ident("symbol name");
          s.symbols.push_back(n.text);
        } while (try_punct(","));
        expect_punct(";");
      } else {
        // assignment: target [. component] = expr ;
        Assign a;
        a.pos = t.pos;
        a.target = t.text;
        if (try_punct(".")) {
          Token comp = expect_ident("component");
          a.target += "." + comp.text;
        }
        expect_punct("=");
        a.value = parse_expr();
        expect_punct(";");
        s.assigns.push_back(std::move(a));
      }
    }
    if (vars_required && s.vars.empty())
      throw SyntaxError("stanza requires a 'vars' declaration", s.pos);
  }

  void parse_vars(Stanza& s) {
    do {
      VarDecl v;
      Token n = expect_ident("variable name");
      v.name = n.text;
      v.pos = n.pos;
      expect_keyword("in");
      expect_punct("(");
      v.lo = parse_signed_number();
      expect_punct(",");
      v.hi = parse_signed_number();
      expect_punct(")");
      if (!(v.lo < v.hi))
        throw SyntaxError("empty interval for variable '" + v.name + "'",
                          v.pos);
      for (const auto& o : s.vars)
        if (o.name == v.name)
          throw SyntaxError("duplicate variable '" + v.name + "'", v.pos);
      s.vars.push_back(std::move(v));
    } while (try_punct(","));
    expect_punct(";");
  }

  double parse_signed_number() {
    bool neg = try_punct("-");
    Token t = expect_token(TokKind::Number, "number");
    return neg ? -t.num_value : t.num_value;
  }

  // expr := term (('+'|'-') term)*
  ExprPtr parse_expr() {
    ExprPtr e = parse_term();
    while (true) {
      if (peek_punct("+") || peek_punct("-")) {
        Token op = lex_.next();
        ExprPtr r = parse_term();
        ExprNode n;
        n.kind = ExprKind::Bin;
        n.pos = op.pos;
        n.op = op.text[0];
        n.lhs = e;
        n.rhs = r;
        e = make_expr(std::move(n));
      } else {
        return e;
      }
    }
  }

  // term := factor (('*'|'/') factor)*
  ExprPtr parse_term() {
    ExprPtr e = parse_factor();
    while (true) {
      if (peek_punct("*") || peek_punct("/")) {
        Token op = lex_.next();
        ExprPtr r = parse_factor();
        ExprNode n;
        n.kind = ExprKind::Bin;
        n.pos = op.pos;
        n.op = op.text[0];
        n.lhs = e;
        n.rhs = r;
        e = make_expr(std::move(n));
      } else {
        return e;
      }
    }
  }

  // factor := unary ('^' factor)?   (right associative)
  ExprPtr parse_factor() {
    ExprPtr e = parse_unary();
    if (peek_punct("^")) {
      Token op = lex_.next();
      ExprPtr r = parse_factor();
      ExprNode n;
      n.kind = ExprKind::Bin;
      n.pos = op.pos;
      n.op = '^';
      n.lhs = e;
      n.rhs = r;
      return make_expr(std::move(n));
    }
    return e;
  }

  ExprPtr parse_unary() {
    if (peek_punct("-")) {
      Token op = lex_.next();
      ExprNode n;
      n.kind = ExprKind::Neg;
      n.pos = op.pos;
      n.lhs = parse_unary();
      return make_expr(std::move(n));
    }
    return parse_primary();
  }

  ExprPtr parse_primary() {
    Token t = lex_.peek();
    if (t.kind == TokKind::Number) {
      lex_.next();
      ExprNode n;
      n.kind = ExprKind::Number;
      n.pos = t.pos;
      n.number = t.rat_value;
      return make_expr(std::move(n));
    }
    if (t.kind == TokKind::Ident) {
      lex_.next();
      if (peek_punct("(")) {
        lex_.next();
        ExprPtr arg = parse_expr();
        expect_punct(")");
        ExprNode n;
        n.kind = ExprKind::Call;
        n.pos = t.pos;
        n.name = t.text;
        n.lhs = arg;
        return make_expr(std::move(n));
      }
      ExprNode n;
      n.kind = ExprKind::Name;
      n.pos = t.pos;
      n.name = t.text;
      return make_expr(std::move(n));
    }
    if (peek_punct("(")) {
      lex_.next();
      ExprPtr e = parse_expr();
      expect_punct(")");
      return e;
    }
    throw SyntaxError("expected expression, found '" + describe(t) + "'",
                      t.pos);
  }

  // --- stanza-level semantic checks (shape only; expression conversion is
  // separate so that parse errors and name errors carry positions) ---

  void check_transform(const Stanza& s) {
    if (static_cast<int>(s.vars.size()) != s.dim)
      throw ModelDimensionError("transform declares " +
                                    std::to_string(s.vars.size()) +
                                    " vars for dim " + std::to_string(s.dim),
                                s.pos);
    std::set<std::string> seen;
    for (const auto& a : s.assigns) {
      if (a.target.size() < 2 || a.target[0] != 'x' ||
          !all_digits(a.target.substr(1)))
        throw SyntaxError("transform assignments must target x1..x" +
                              std::to_string(s.dim),
                          a.pos);
      int i = std::stoi(a.target.substr(1));
      if (i < 1 || i > s.dim)
        throw ModelDimensionError("target " + a.target + " out of range",
                                  a.pos);
      if (!seen.insert(a.target).second)
        throw SyntaxError("duplicate assignment to " + a.target, a.pos);
    }
    if (static_cast<int>(seen.size()) != s.dim)
      throw ModelDimensionError("transform must assign all of x1..x" +
                                    std::to_string(s.dim),
                                s.pos);
  }

  void check_metric(const Stanza& s) {
    if (static_cast<int>(s.vars.size()) != s.dim)
      throw ModelDimensionError("metric declares " +
                                    std::to_string(s.vars.size()) +
                                    " vars for dim " + std::to_string(s.dim),
                                s.pos);
    for (const auto& a : s.assigns) {
      auto [i, j] = metric_target(a);
      if (i < 1 || i > s.dim || j < 1 || j > s.dim)
        throw ModelDimensionError("metric component " + a.target +
                                      " out of range",
                                  a.pos);
    }
  }

  void check_fields(const Stanza& s) {
    for (const auto& a : s.assigns) field_target(a, s);
  }

  void check_hamiltonian(const Stanza& s) {
    bool has_expr = false;
    for (const auto& a : s.assigns) {
      if (a.target != "expr")
        throw SyntaxError("hamiltonian stanza allows only 'expr ='", a.pos);
      if (has_expr)
        throw SyntaxError("duplicate 'expr' assignment", a.pos);
      has_expr = true;
    }
    if (!has_expr)
      throw SyntaxError("hamiltonian stanza requires 'expr ='", s.pos);
  }

  void check_product(const Stanza& s) {
    for (const auto& a : s.assigns)
      if (a.target != "sigma" && a.target != "alpha" && a.target != "beta")
        throw SyntaxError("product stanza allows sigma, alpha, beta", a.pos);
  }

  void check_quantize(const Stanza& s, const ModelFile& so_far) {
    for (const auto& a : s.assigns) {
      if (a.target == "hamiltonian") {
        const ExprNode& v = *a.value;
        if (v.kind != ExprKind::Name)
          throw SyntaxError("expected a hamiltonian name", a.pos);
        if (so_far.find(v.name, StanzaKind::Hamiltonian) == nullptr)
          throw UndeclaredName(v.name, v.pos);
      } else if (a.target == "method") {
        const ExprNode& v = *a.value;
        bool ok = false;
        if (v.kind == ExprKind::Name)
          ok = v.name == "weyl" || v.name == "s_order" ||
               v.name == "covariant" || v.name == "minimal";
        if (v.kind == ExprKind::Call && v.name == "curved") ok = true;
        if (!ok)
          throw SyntaxError(
              "method must be weyl | s_order | covariant | curved(alpha) | "
              "minimal",
              a.pos);
      } else if (a.target == "order") {
        const ExprNode& v = *a.value;
        if (v.kind != ExprKind::Number || !v.number.is_integer() ||
            v.number.num() < 0)
          throw SyntaxError("order must be a nonnegative integer", a.pos);
      } else {
        throw SyntaxError("quantize stanza allows hamiltonian, method, order",
                          a.pos);
      }
    }
  }

public:
  static bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  }

  /// g_ij target -> (i, j), 1-based.
  static std::pair<int, int> metric_target(const Assign& a) {
    const std::string& t = a.target;
    if (t.size() >= 4 && t.rfind("g_", 0) == 0 && all_digits(t.substr(2)) &&
        t.size() == 4)
      return {t[2] - '0', t[3] - '0'};
    throw SyntaxError("metric assignments must target g_ij (single digits)",
                      a.pos);
  }

  /// X<k>.dx_<var> / X<k>.dp_<var> (and Y<k>.*) -> (is_x_family, k,
  /// is_position_component, var index).
  struct FieldTarget {
    bool x_family;
    int index;          // 1-based pair index
    bool dx_component;  // true: coefficient of d_{x^i}; false: of d_{p_i}
    int var;            // 0-based variable index
  };
  static FieldTarget field_target(const Assign& a, const Stanza& s) {
    const std::string& t = a.target;
    auto dot = t.find('.');
    if (dot == std::string::npos)
      throw SyntaxError("fields assignments must look like X1.dx_<var>",
                        a.pos);
    std::string head = t.substr(0, dot), comp = t.substr(dot + 1);
    if (head.size() < 2 || (head[0] != 'X' && head[0] != 'Y') ||
        !all_digits(head.substr(1)))
      throw SyntaxError("field name must be X<k> or Y<k>", a.pos);
    FieldTarget ft;
    ft.x_family = head[0] == 'X';
    ft.index = std::stoi(head.substr(1));
    if (ft.index < 1 || ft.index > s.dim)
      throw ModelDimensionError("field index out of range in " + t, a.pos);
    bool dx = comp.rfind("dx", 0) == 0;
    bool dp = comp.rfind("dp", 0) == 0;
    if (!dx && !dp)
      throw SyntaxError("field component must be dx_<var> or dp_<var>",
                        a.pos);
    ft.dx_component = dx;
    std::string var = comp.size() > 2 && comp[2] == '_' ? comp.substr(3) : "";
    if (var.empty()) {
      if (s.dim != 1)
        throw ModelDimensionError(
            "component shorthand dx/dp needs dim 1; use dx_<var>", a.pos);
      ft.var = 0;
      return ft;
    }
    for (std::size_t j = 0; j < s.vars.size(); ++j)
      if (s.vars[j].name == var) {
        ft.var = static_cast<int>(j);
        return ft;
      }
    throw UndeclaredName(var, a.pos);
  }

private:
  // --- token utilities ---

  Token expect_token(TokKind k, const std::string& what) {
    Token t = lex_.next();
    if (t.kind != k)
      throw SyntaxError("expected " + what + ", found '" + describe(t) + "'",
                        t.pos);
    return t;
  }
  Token expect_ident(const std::string& what) {
    return expect_token(TokKind::Ident, what);
  }
  void expect_keyword(const std::string& kw) {
    Token t = lex_.next();
    if (t.kind != TokKind::Ident || t.text != kw)
      throw SyntaxError("expected '" + kw + "', found '" + describe(t) + "'",
                        t.pos);
  }
  void expect_punct(const std::string& p) {
    Token t = lex_.next();
    if (t.kind != TokKind::Punct || t.text != p)
      throw SyntaxError("expected '" + p + "', found '" + describe(t) + "'",
                        t.pos);
  }
  bool peek_punct(const std::string& p) {
    return lex_.peek().kind == TokKind::Punct && lex_.peek().text == p;
  }
  bool try_punct(const std::string& p) {
    if (peek_punct(p)) {
      lex_.next();
      return true;
    }
    return false;
  }
  void expect_end() {
    Token t = lex_.peek();
    if (t.kind != TokKind::End)
      throw SyntaxError("trailing input '" + describe(t) + "'", t.pos);
  }
  static std::string describe(const Token& t) {
    switch (t.kind) {
      case TokKind::End:
        return "<end of input>";
      default:
        return t.text;
    }
  }

  detail::Lexer lex_;
};

// forward declaration: full validation happens after expression conversion
// is defined below
inline void validate(const ModelFile& m);

inline ModelFile parse(const std::string& source) {
  Parser p(source);
  ModelFile m = p.parse_model();
  validate(m);
  return m;
}

// ---------------------------------------------------------------------------
// Expression -> MomentumPoly / Scalar conversion
// ---------------------------------------------------------------------------

namespace detail {

struct ExprContext {
  std::vector<std::string> vars;      // chart variables
  std::set<std::string> symbols;      // declared named constants
  bool allow_momenta = false;
};

inline std::optional<Rational> const_eval(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Number:
      return e->number;
    case ExprKind::Neg: {
      auto v = const_eval(e->lhs);
      if (!v) return std::nullopt;
      return -*v;
    }
    case ExprKind::Bin: {
      auto a = const_eval(e->lhs), b = const_eval(e->rhs);
      if (!a || !b) return std::nullopt;
      switch (e->op) {
        case '+': return *a + *b;
        case '-': return *a - *b;
        case '*': return *a * *b;
        case '/':
          if (b->is_zero())
            throw SyntaxError("division by zero in constant expression",
                              e->pos);
          return *a / *b;
        case '^':
          if (!b->is_integer())
            return std::nullopt;
          return a->pow(static_cast<int>(b->num()));
      }
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

inline std::optional<Rational> const_eval_fwd(const ExprPtr& e) {
  try {
    return const_eval(e);
  } catch (const Error&) {
    return std::nullopt;
  }
}

inline MomentumPoly to_poly(const ExprPtr& e, const ExprContext& ctx) {
  int n = static_cast<int>(ctx.vars.size());
  switch (e->kind) {
    case ExprKind::Number:
      return MomentumPoly::constant(n, CRational(e->number));
    case ExprKind::Name: {
      const std::string& name = e->name;
      for (const auto& v : ctx.vars)
        if (v == name)
          return MomentumPoly::from_scalar(n, Scalar::symbol(name));
      if (ctx.symbols.count(name))
        return MomentumPoly::from_scalar(n, Scalar::symbol(name));
      if (name.rfind("p_", 0) == 0) {
        std::string base = name.substr(2);
        for (int i = 0; i < n; ++i)
          if (ctx.vars[i] == base) {
            if (!ctx.allow_momenta)
              throw SyntaxError("momentum variable '" + name +
                                    "' not allowed in this context",
                                e->pos);
            return MomentumPoly::momentum(n, i);
          }
      }
      throw UndeclaredName(name, e->pos);
    }
    case ExprKind::Neg:
      return to_poly(e->lhs, ctx).scaled(Scalar::constant(-1));
    case ExprKind::Call: {
      MomentumPoly arg = to_poly(e->lhs, ctx);
      if (arg.degree() > 0)
        throw SyntaxError("function argument must be momentum-free", e->pos);
      Scalar a = arg.coefficient(MomIdx(n, 0));
      Scalar r;
      if (e->name == "sin") r = Scalar::sin(a);
      else if (e->name == "cos") r = Scalar::cos(a);
      else if (e->name == "tan") r = Scalar::tan(a);
      else if (e->name == "exp") r = Scalar::exp(a);
      else if (e->name == "ln") r = Scalar::ln(a);
      else if (e->name == "sqrt") r = Scalar::sqrt(a);
      else throw UndeclaredName(e->name, e->pos);
      return MomentumPoly::from_scalar(n, r);
    }
    case ExprKind::Bin: {
      switch (e->op) {
        case '+':
          return to_poly(e->lhs, ctx) + to_poly(e->rhs, ctx);
        case '-':
          return to_poly(e->lhs, ctx) - to_poly(e->rhs, ctx);
        case '*':
          return to_poly(e->lhs, ctx) * to_poly(e->rhs, ctx);
        case '/': {
          MomentumPoly num = to_poly(e->lhs, ctx);
          MomentumPoly den = to_poly(e->rhs, ctx);
          if (den.degree() > 0)
            throw SyntaxError("denominator must be momentum-free", e->pos);
          Scalar d = den.coefficient(MomIdx(n, 0));
          if (d.is_zero())
            throw SyntaxError("division by zero", e->pos);
          return num.scaled(Scalar::constant(1) / d);
        }
        case '^': {
          auto expo = const_eval(e->rhs);
          if (!expo)
            throw SyntaxError("exponent must be a constant", e->rhs->pos);
          MomentumPoly base = to_poly(e->lhs, ctx);
          if (base.degree() == 0) {
            Scalar b = base.coefficient(MomIdx(n, 0));
            return MomentumPoly::from_scalar(n, Scalar::pow(b, *expo));
          }
          if (!expo->is_integer() || expo->num() < 0)
            throw SyntaxError(
                "momentum polynomials take nonnegative integer powers",
                e->rhs->pos);
          MomentumPoly r = MomentumPoly::constant(n, CRational(1));
          for (long long k = 0; k < expo->num(); ++k) r = r * base;
          return r;
        }
      }
      throw SyntaxError("unknown operator", e->pos);
    }
  }
  throw SyntaxError("malformed expression", e->pos);
}

inline Scalar to_scalar(const ExprPtr& e, const ExprContext& ctx_in) {
  ExprContext ctx = ctx_in;
  ctx.allow_momenta = false;
  MomentumPoly p = to_poly(e, ctx);
  return p.coefficient(MomIdx(static_cast<int>(ctx.vars.size()), 0));
}

inline SampleDomain domain_of(const Stanza& s) {
  SampleDomain d;
  for (const auto& v : s.vars) d.intervals[v.name] = {v.lo, v.hi};
  return d;
}

inline std::vector<std::string> var_names(const Stanza& s) {
  std::vector<std::string> v;
  for (const auto& d : s.vars) v.push_back(d.name);
  return v;
}

}  // namespace detail

/// Eager validation of every expression in the model, so that undeclared
/// names and momentum misuse are reported at parse time with positions.
inline void validate(const ModelFile& m) {
  for (const auto& s : m.stanzas) {
    detail::ExprContext ctx;
    ctx.vars = detail::var_names(s);
    ctx.symbols = {s.symbols.begin(), s.symbols.end()};
    switch (s.kind) {
      case StanzaKind::Transform:
      case StanzaKind::Metric:
        ctx.allow_momenta = false;
        for (const auto& a : s.assigns) detail::to_poly(a.value, ctx);
        break;
      case StanzaKind::Hamiltonian:
      case StanzaKind::Fields:
        ctx.allow_momenta = true;
        for (const auto& a : s.assigns) detail::to_poly(a.value, ctx);
        break;
      case StanzaKind::Product:
        for (const auto& a : s.assigns)
          if (!detail::const_eval(a.value))
            throw SyntaxError("product parameters must be rational constants",
                              a.pos);
        break;
      case StanzaKind::Quantize:
        break;  // shape-checked during parsing
    }
  }
}

// ---------------------------------------------------------------------------
// Semantic builders
// ---------------------------------------------------------------------------

inline PointTransformation build_transform(const ModelFile& m,
                                           const std::string& name) {
  const Stanza* s = m.find(name, StanzaKind::Transform);
  if (s == nullptr) throw UndeclaredName(name, SourcePos{});
  detail::ExprContext ctx{detail::var_names(*s), {}, false};
  std::vector<Scalar> phi(s->dim);
  for (const auto& a : s->assigns) {
    int i = std::stoi(a.target.substr(1));
    phi[i - 1] = detail::to_scalar(a.value, ctx);
  }
  return PointTransformation(ctx.vars, std::move(phi), detail::domain_of(*s));
}

inline MetricField build_metric(const ModelFile& m, const std::string& name) {
  const Stanza* s = m.find(name, StanzaKind::Metric);
  if (s == nullptr) throw UndeclaredName(name, SourcePos{});
  detail::ExprContext ctx{detail::var_names(*s), {}, false};
  Mat g = zero_matrix(s->dim);
  for (const auto& a : s->assigns) {
    auto [i, j] = Parser::metric_target(a);
    Scalar v = detail::to_scalar(a.value, ctx);
    g[i - 1][j - 1] = v;
    if (i != j) g[j - 1][i - 1] = v;
  }
  return MetricField(s->dim, ctx.vars, std::move(g), detail::domain_of(*s));
}

struct HamiltonianData {
  PhaseFunction h;
  std::vector<std::string> vars;
  SampleDomain domain;
  std::set<std::string> symbols;
  std::string chart;  // name of the transform or metric it lives on
};

inline HamiltonianData build_hamiltonian(const ModelFile& m,
                                         const std::string& name, int trunc) {
  const Stanza* s = m.find(name, StanzaKind::Hamiltonian);
  if (s == nullptr) throw UndeclaredName(name, SourcePos{});
  detail::ExprContext ctx{detail::var_names(*s),
                          {s->symbols.begin(), s->symbols.end()}, true};
  MomentumPoly p(static_cast<int>(ctx.vars.size()));
  for (const auto& a : s->assigns)
    if (a.target == "expr") p = detail::to_poly(a.value, ctx);
  HamiltonianData d{PhaseFunction::from_poly(p, trunc), ctx.vars,
                    detail::domain_of(*s), ctx.symbols, s->on};
  return d;
}

struct FieldsData {
  std::vector<PhaseOp> xs, ys;
  std::vector<std::string> vars;
  SampleDomain domain;
};

inline FieldsData build_fields(const ModelFile& m, const std::string& name) {
  const Stanza* s = m.find(name, StanzaKind::Fields);
  if (s == nullptr) throw UndeclaredName(name, SourcePos{});
  int n = s->dim;
  detail::ExprContext ctx{detail::var_names(*s), {}, true};
  // coefficient tables [pair index][component var]
  std::vector<std::vector<MomentumPoly>> xa(n, std::vector<MomentumPoly>(n, MomentumPoly(n))),
      xb(n, std::vector<MomentumPoly>(n, MomentumPoly(n))),
      ya(n, std::vector<MomentumPoly>(n, MomentumPoly(n))),
      yb(n, std::vector<MomentumPoly>(n, MomentumPoly(n)));
  for (const auto& a : s->assigns) {
    auto ft = Parser::field_target(a, *s);
    MomentumPoly v = detail::to_poly(a.value, ctx);
    auto& table = ft.x_family ? (ft.dx_component ? xa : xb)
                              : (ft.dx_component ? ya : yb);
    table[ft.index - 1][ft.var] = table[ft.index - 1][ft.var] + v;
  }
  FieldsData d;
  d.vars = ctx.vars;
  d.domain = detail::domain_of(*s);
  for (int k = 0; k < n; ++k) {
    d.xs.push_back(PhaseOp::vector_field(n, ctx.vars, xa[k], xb[k]));
    d.ys.push_back(PhaseOp::vector_field(n, ctx.vars, ya[k], yb[k]));
  }
  return d;
}

struct ProductParams {
  Rational sigma, alpha, beta;
};

inline ProductParams build_product(const ModelFile& m,
                                   const std::string& name) {
  const Stanza* s = m.find(name, StanzaKind::Product);
  if (s == nullptr) throw UndeclaredName(name, SourcePos{});
  ProductParams p;
  for (const auto& a : s->assigns) {
    auto v = detail::const_eval(a.value);
    if (!v)
      throw SyntaxError("product parameters must be rational constants",
                        a.pos);
    if (a.target == "sigma") p.sigma = *v;
    if (a.target == "alpha") p.alpha = *v;
    if (a.target == "beta") p.beta = *v;
  }
  return p;
}

enum class QuantizeMethod { Weyl, SOrder, Covariant, Curved, Minimal };

struct QuantizeSpec {
  std::string hamiltonian;
  QuantizeMethod method = QuantizeMethod::SOrder;
  Rational alpha = Rational(1);
  int order = 3;
};

inline std::vector<QuantizeSpec> quantize_specs(const ModelFile& m) {
  std::vector<QuantizeSpec> out;
  for (const auto& s : m.stanzas) {
    if (s.kind != StanzaKind::Quantize) continue;
    QuantizeSpec q;
    for (const auto& a : s.assigns) {
      if (a.target == "hamiltonian") q.hamiltonian = a.value->name;
      if (a.target == "order")
        q.order = static_cast<int>(a.value->number.num());
      if (a.target == "method") {
        const ExprNode& v = *a.value;
        if (v.kind == ExprKind::Call) {
          q.method = QuantizeMethod::Curved;
          auto al = detail::const_eval(v.lhs);
          if (!al)
            throw SyntaxError("curved(alpha) needs a rational alpha", v.pos);
          q.alpha = *al;
        } else if (v.name == "weyl") {
          q.method = QuantizeMethod::Weyl;
        } else if (v.name == "s_order") {
          q.method = QuantizeMethod::SOrder;
        } else if (v.name == "covariant") {
          q.method = QuantizeMethod::Covariant;
        } else {
          q.method = QuantizeMethod::Minimal;
        }
      }
    }
    out.push_back(std::move(q));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pretty printer (canonical form; reparses to an equal AST)
// ---------------------------------------------------------------------------

namespace detail {

inline int precedence(const ExprNode& e) {
  switch (e.kind) {
    case ExprKind::Bin:
      if (e.op == '+' || e.op == '-') return 1;
      if (e.op == '*' || e.op == '/') return 2;
      return 3;  // ^
    case ExprKind::Neg:
      return 1;
    default:
      return 4;
  }
}

inline std::string print_expr(const ExprPtr& e, int parent_prec) {
  std::string r;
  int prec = precedence(*e);
  switch (e->kind) {
    case ExprKind::Number:
      r = e->number.is_integer()
              ? std::to_string(e->number.num())
              : std::to_string(e->number.num()) + "/" +
                    std::to_string(e->number.den());
      // fractions are Bin('/') on reparse; print them as a division
      if (!e->number.is_integer()) prec = 2;
      break;
    case ExprKind::Name:
      r = e->name;
      break;
    case ExprKind::Neg:
      r = "-" + print_expr(e->lhs, 2);
      break;
    case ExprKind::Call:
      r = e->name + "(" + print_expr(e->lhs, 0) + ")";
      break;
    case ExprKind::Bin: {
      // left associative except '^'
      int lp = e->op == '^' ? prec + 1 : prec;
      int rp = e->op == '^' ? prec : prec + 1;
      r = print_expr(e->lhs, lp) + std::string(1, e->op) +
          print_expr(e->rhs, rp);
      break;
    }
  }
  if (prec < parent_prec) return "(" + r + ")";
  return r;
}

inline std::string print_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace detail

inline std::string pretty_print(const ModelFile& m) {
  std::string out;
  for (const auto& s : m.stanzas) {
    switch (s.kind) {
      case StanzaKind::Transform: out += "transform " + s.name; break;
      case StanzaKind::Metric: out += "metric " + s.name; break;
      case StanzaKind::Fields: out += "fields " + s.name; break;
      case StanzaKind::Hamiltonian:
        out += "hamiltonian " + s.name + " on " + s.on;
        break;
      case StanzaKind::Product: out += "product " + s.name; break;
      case StanzaKind::Quantize: out += "quantize"; break;
    }
    if (s.kind == StanzaKind::Transform || s.kind == StanzaKind::Metric ||
        s.kind == StanzaKind::Fields)
      out += " dim " + std::to_string(s.dim);
    out += " {\n";
    // hamiltonian variables are inherited from the chart, not printed
    if (!s.vars.empty() && s.kind != StanzaKind::Hamiltonian) {
      out += "  vars ";
      for (std::size_t j = 0; j < s.vars.size(); ++j) {
        if (j) out += ", ";
        out += s.vars[j].name + " in (" + detail::print_double(s.vars[j].lo) +
               ", " + detail::print_double(s.vars[j].hi) + ")";
      }
      out += ";\n";
    }
    if (!s.symbols.empty()) {
      out += "  symbols ";
      for (std::size_t j = 0; j < s.symbols.size(); ++j) {
        if (j) out += ", ";
        out += s.symbols[j];
      }
      out += ";\n";
    }
    for (const auto& a : s.assigns)
      out += "  " + a.target + " = " + detail::print_expr(a.value, 0) + ";\n";
    out += "}\n\n";
  }
  return out;
}

}  // namespace curviq::dsl
