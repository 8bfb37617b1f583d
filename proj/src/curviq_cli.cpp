// Command-line front end: parse a model file (or the builtin prelude),
// run one of the subcommands, and emit the result as text, LaTeX, or JSON.
//
// Exit codes: 0 success / all checks pass, 1 verification failure,
// 2 usage or parse error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "curviq/dsl.hpp"
#include "curviq/emit.hpp"
#include "curviq/presets.hpp"
#include "curviq/verify_suites.hpp"

namespace {

using namespace curviq;

// Charts, Hamiltonians, and demo objects available without a model file.
const char* kPrelude = R"(
transform polar dim 2 {
  vars r in (0.3, 1.6), theta in (0.3, 1.2);
  x1 = r*cos(theta);
  x2 = r*sin(theta);
}
transform spherical dim 3 {
  vars r in (0.3, 1.6), theta in (0.3, 1.2), phi in (0.3, 6.0);
  x1 = r*sin(theta)*cos(phi);
  x2 = r*sin(theta)*sin(phi);
  x3 = r*cos(theta);
}
transform parabolic dim 2 {
  vars u in (0.35, 1.65), v in (0.35, 1.65);
  x1 = (u^2 - v^2)/2;
  x2 = u*v;
}
transform identity dim 2 {
  vars x1 in (-1.5, 1.5), x2 in (-1.5, 1.5);
  x1 = x1;
  x2 = x2;
}
metric two_sphere dim 2 {
  vars theta in (0.3, 1.2), phi in (0.3, 6.0);
  g_11 = 1;
  g_22 = sin(theta)^2;
}
hamiltonian hydrogen on spherical {
  symbols m, ke;
  expr = (p_r^2 + p_theta^2/r^2 + p_phi^2/(r^2*sin(theta)^2))/(2*m) - ke/r;
}
fields example1 dim 1 {
  vars x in (0.35, 1.65);
  X1.dx = x^2;
  X1.dp = -2*x*p_x;
  Y1.dp = x^(-2);
}
product sigma_demo {
  sigma = 1/3;
  alpha = 1/7;
  beta = 2/5;
}
)";

Rational parse_rational(const std::string& text) {
  dsl::Parser p(text);
  auto v = dsl::detail::const_eval(p.parse_expression());
  if (!v) throw dsl::SyntaxError("expected a rational constant", {});
  return *v;
}

dsl::ModelFile load_model(const std::string& path) {
  if (path.empty()) return dsl::parse(kPrelude);
  std::ifstream in(path);
  if (!in) throw Error("cannot open model file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return dsl::parse(buf.str());
}

// The connection, chart variables, and sampling domain of a chart stanza,
// which may be either a coordinate transformation or a metric.
struct ChartData {
  ChristoffelField gamma;
  MetricField metric;
  std::vector<std::string> vars;
  SampleDomain domain;
  bool from_transform = false;
};

ChartData chart_data(const dsl::ModelFile& m, const std::string& name) {
  if (m.find(name, dsl::StanzaKind::Transform) != nullptr) {
    auto t = dsl::build_transform(m, name);
    ChartData d{christoffel_from_transformation(t), pullback_metric(t),
                t.vars(), t.domain(), true};
    return d;
  }
  if (m.find(name, dsl::StanzaKind::Metric) != nullptr) {
    auto g = dsl::build_metric(m, name);
    return ChartData{christoffel_from_metric(g), g, g.vars, g.domain, false};
  }
  throw dsl::UndeclaredName(name, {});
}

std::string format_operator(const ConfigOperator& op,
                            const std::string& format) {
  if (format == "latex") return emit::latex_config_operator(op) + "\n";
  if (format == "json") return emit::json_config_operator(op).dump(2) + "\n";
  return op.str() + "\n";
}

int cmd_christoffel(const dsl::ModelFile& m, const std::string& name,
                    const std::string& format) {
  auto d = chart_data(m, name);
  if (format == "latex")
    std::cout << emit::latex_christoffel(d.gamma) << "\n";
  else if (format == "json")
    std::cout << emit::json_christoffel(d.gamma).dump(2) << "\n";
  else
    std::cout << emit::text_christoffel(d.gamma);
  return 0;
}

int cmd_star(const dsl::ModelFile& m, const std::string& name, int order,
             const std::string& format) {
  auto t = dsl::build_transform(m, name);
  auto star = transformed_moyal(t, order);
  if (format == "latex")
    std::cout << emit::latex_star(star) << "\n";
  else if (format == "json")
    std::cout << emit::json_star(star).dump(2) << "\n";
  else
    std::cout << emit::text_star(star);
  return 0;
}

int cmd_morphism(const dsl::ModelFile& m, const std::string& name,
                 bool curved, const std::string& alpha, int order,
                 const std::string& format) {
  auto d = chart_data(m, name);
  Morphism s = curved
                   ? build_S_curved(d.gamma,
                                    curvature(d.gamma, d.metric),
                                    parse_rational(alpha), order)
                   : build_S_T(d.gamma, order);
  if (format == "latex")
    std::cout << emit::latex_morphism(s) << "\n";
  else if (format == "json")
    std::cout << emit::json_morphism(s).dump(2) << "\n";
  else
    std::cout << emit::text_morphism(s) << "\n";
  return 0;
}

// Split a purely classical Hamiltonian into K (rank 2 or 3) and V, then
// apply the closed-form quantization schemes.
ConfigOperator closed_form_quantize(const dsl::HamiltonianData& h,
                                    const ChartData& chart,
                                    dsl::QuantizeMethod method,
                                    Rational alpha) {
  const MomentumPoly& p = h.h.at(0);
  int deg = p.degree();
  if (deg > 3)
    throw Error("closed-form schemes support momentum degree <= 3");
  Scalar v;
  for (const auto& [idx, c] : p.terms()) {
    int d = 0;
    for (int e : idx) d += e;
    if (d == 0) v = v + c;
    if (d == 1 || (deg == 3 && d == 2))
      throw Error("closed-form schemes need a pure quadratic-plus-potential "
                  "or pure cubic Hamiltonian");
  }
  if (deg == 3) {
    auto k3 = detail::tensor_from_poly_part(p, 3, chart.vars);
    switch (method) {
      case dsl::QuantizeMethod::Covariant:
        return quantize_cubic_covariant(k3, chart.gamma);
      case dsl::QuantizeMethod::Curved:
        return quantize_cubic_curved(k3, chart.metric, alpha);
      default:
        return minimal_quantize_cubic(k3, chart.gamma);
    }
  }
  // H = (1/2) K^{ij} p_i p_j + V
  auto k2 = detail::tensor_from_poly_part(p, 2, chart.vars);
  k2.enumerate([&](const std::vector<int>& idx) {
    k2.at(idx) = k2.at(idx) * Scalar::constant(2);
  });
  switch (method) {
    case dsl::QuantizeMethod::Covariant:
      return quantize_quadratic_covariant(k2, v, chart.gamma);
    case dsl::QuantizeMethod::Curved:
      return quantize_quadratic_curved(k2, v, chart.metric, alpha);
    default:
      return minimal_quantize_quadratic(k2, v, chart.gamma);
  }
}

int cmd_quantize(const dsl::ModelFile& m, const std::string& name,
                 std::string method_name, const std::string& alpha_text,
                 int order, std::string chart_name,
                 const std::string& format) {
  dsl::QuantizeSpec spec;
  spec.hamiltonian = name;
  // model-file quantize stanzas supply defaults for this Hamiltonian
  for (const auto& q : dsl::quantize_specs(m))
    if (q.hamiltonian == name) spec = q;
  if (order > 0) spec.order = order;
  if (!alpha_text.empty()) spec.alpha = parse_rational(alpha_text);
  if (!method_name.empty()) {
    if (method_name == "weyl") spec.method = dsl::QuantizeMethod::Weyl;
    else if (method_name == "s_order") spec.method = dsl::QuantizeMethod::SOrder;
    else if (method_name == "covariant")
      spec.method = dsl::QuantizeMethod::Covariant;
    else if (method_name == "curved") spec.method = dsl::QuantizeMethod::Curved;
    else if (method_name == "minimal")
      spec.method = dsl::QuantizeMethod::Minimal;
    else
      throw Error("unknown method '" + method_name +
                  "' (expected weyl, s_order, covariant, curved, minimal)");
  }
  auto h = dsl::build_hamiltonian(m, name, spec.order);
  if (chart_name.empty()) chart_name = h.chart;
  auto chart = chart_data(m, chart_name);
  if (chart.vars != h.vars)
    throw DimensionMismatch("chart '" + chart_name +
                            "' does not match the Hamiltonian's variables");

  ConfigOperator op = ConfigOperator::zero(
      static_cast<int>(chart.vars.size()), chart.vars);
  switch (spec.method) {
    case dsl::QuantizeMethod::Weyl:
    case dsl::QuantizeMethod::SOrder: {
      std::vector<ConfigOperator> phat;
      for (size_t j = 0; j < chart.vars.size(); ++j)
        phat.push_back(momentum_operator(chart.gamma, static_cast<int>(j)));
      if (spec.method == dsl::QuantizeMethod::Weyl)
        op = weyl_order(h.h, phat);
      else
        op = s_order(h.h, build_S_T(chart.gamma, spec.order), phat);
      break;
    }
    default:
      op = closed_form_quantize(h, chart, spec.method, spec.alpha);
  }
  std::cout << format_operator(op, format);
  return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed,
               const std::string& format) {
  Report rep;
  if (suite == "intertwining") rep = suites::intertwining(seed);
  else if (suite == "pipeline-vs-covariant")
    rep = suites::pipeline_vs_covariant(seed);
  else if (suite == "involution") rep = suites::involution(seed);
  else if (suite == "hermiticity") rep = suites::hermiticity(seed);
  else if (suite == "paper-examples") rep = suites::paper_examples(seed);
  else
    throw Error("unknown suite '" + suite +
                "' (expected intertwining, pipeline-vs-covariant, "
                "involution, hermiticity, paper-examples)");
  if (format == "latex")
    std::cout << emit::latex_report(rep) << "\n";
  else if (format == "json")
    std::cout << emit::json_report(rep, "verify " + suite, seed).dump(2)
              << "\n";
  else
    std::cout << emit::text_report(rep);
  return rep.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"curviq: invariant quantization in curvilinear coordinates"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string model_path, format = "text";
  std::uint64_t seed = 12345;
  app.add_option("-m,--model", model_path, "model file (builtin if omitted)");
  app.add_option("-f,--format", format, "output format")
      ->check(CLI::IsMember({"text", "latex", "json"}));
  app.add_option("-s,--seed", seed, "seed for numeric sampling")
      ->envname("CURVIQ_SEED");

  std::string chr_name;
  auto* chr = app.add_subcommand("christoffel",
                                 "Christoffel symbols of a chart");
  chr->add_option("name", chr_name, "transform or metric name")->required();

  std::string star_name;
  int star_order = 3;
  auto* star = app.add_subcommand("star",
                                  "star product induced by a transform");
  star->add_option("name", star_name, "transform name")->required();
  star->add_option("--order", star_order, "hbar truncation order");

  std::string mor_name, mor_alpha = "1";
  bool mor_curved = false;
  int mor_order = 3;
  auto* mor = app.add_subcommand("morphism", "equivalence morphism");
  mor->add_option("name", mor_name, "transform or metric name")->required();
  mor->add_flag("--curved", mor_curved, "curved-space morphism");
  mor->add_option("--alpha", mor_alpha, "ordering parameter (rational)");
  mor->add_option("--order", mor_order, "hbar truncation order");

  std::string q_name, q_method, q_alpha, q_chart;
  int q_order = 0;
  auto* qz = app.add_subcommand("quantize", "quantize a Hamiltonian");
  qz->add_option("name", q_name, "hamiltonian name")->required();
  qz->add_option("--with", q_method,
                 "weyl | s_order | covariant | curved | minimal");
  qz->add_option("--alpha", q_alpha, "ordering parameter for curved");
  qz->add_option("--order", q_order, "hbar truncation order");
  qz->add_option("--transform", q_chart, "chart override");

  std::string v_suite;
  auto* vf = app.add_subcommand("verify", "run a verification suite");
  vf->add_option("suite", v_suite,
                 "intertwining | pipeline-vs-covariant | involution | "
                 "hermiticity | paper-examples")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (vf->parsed()) return cmd_verify(v_suite, seed, format);
    auto m = load_model(model_path);
    if (chr->parsed()) return cmd_christoffel(m, chr_name, format);
    if (star->parsed()) return cmd_star(m, star_name, star_order, format);
    if (mor->parsed())
      return cmd_morphism(m, mor_name, mor_curved, mor_alpha, mor_order,
                          format);
    return cmd_quantize(m, q_name, q_method, q_alpha, q_order, q_chart,
                        format);
  } catch (const dsl::SyntaxError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
