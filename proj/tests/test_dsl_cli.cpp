#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "curviq/dsl.hpp"
#include "curviq/emit.hpp"
#include "curviq/presets.hpp"
#include "curviq/verify_suites.hpp"

using namespace curviq;

#ifndef CURVIQ_MODELS_DIR
#define CURVIQ_MODELS_DIR "models"
#endif

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool balanced(const std::string& s) {
  int depth = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '{') ++depth;
    if (s[i] == '}') --depth;
    if (depth < 0) return false;
  }
  return depth == 0;
}

}  // namespace

TEST_CASE("every shipped model round-trips through the pretty printer") {
  for (const auto& entry :
       std::filesystem::directory_iterator(CURVIQ_MODELS_DIR)) {
    if (entry.path().extension() != ".cq") continue;
    INFO(entry.path().string());
    auto m1 = dsl::parse(slurp(entry.path()));
    auto printed = dsl::pretty_print(m1);
    auto m2 = dsl::parse(printed);
    CHECK(dsl::model_equal(m1, m2));
  }
}

TEST_CASE("syntax errors carry line and column") {
  std::string src = "transform t dim 1 {\n  vars x in (0.3, 1.0);\n  x1 = ;\n}\n";
  try {
    dsl::parse(src);
    FAIL("expected a syntax error");
  } catch (const dsl::SyntaxError& e) {
    CHECK(e.pos.line == 3);
    CHECK(std::string(e.what()).find("expected expression") !=
          std::string::npos);
  }
}

TEST_CASE("undeclared names are rejected at parse time") {
  std::string src =
      "transform t dim 1 {\n  vars x in (0.3, 1.0);\n  x1 = x*y;\n}\n";
  CHECK_THROWS_AS(dsl::parse(src), dsl::UndeclaredName);
}

TEST_CASE("momenta are only allowed in hamiltonian and fields stanzas") {
  std::string src =
      "transform t dim 1 {\n  vars x in (0.3, 1.0);\n  x1 = x*p_x;\n}\n";
  CHECK_THROWS(dsl::parse(src));
}

TEST_CASE("dimension errors are rejected") {
  // three components in a dim-2 transform
  std::string src =
      "transform t dim 2 {\n  vars x in (0.3, 1.0), y in (0.3, 1.0);\n"
      "  x1 = x;\n  x2 = y;\n  x3 = x*y;\n}\n";
  CHECK_THROWS(dsl::parse(src));
}

TEST_CASE("parsed polar transform matches the built-in preset") {
  auto m = dsl::parse(slurp(std::filesystem::path(CURVIQ_MODELS_DIR) /
                            "polar.cq"));
  auto t = dsl::build_transform(m, "polar");
  auto tp = presets::polar();
  REQUIRE(t.vars() == tp.vars());
  auto g1 = christoffel_from_transformation(t);
  auto g2 = christoffel_from_transformation(tp);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        CHECK(equals_numeric(g1.at(i, j, k), g2.at(i, j, k), tp.domain()));
}

TEST_CASE("parsed sphere metric matches the built-in preset") {
  auto m = dsl::parse(slurp(std::filesystem::path(CURVIQ_MODELS_DIR) /
                            "two_sphere.cq"));
  auto g = dsl::build_metric(m, "two_sphere");
  auto gp = presets::two_sphere();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(equals_numeric(g.g[i][j], gp.g[i][j], gp.domain));
}

TEST_CASE("parsed hydrogen hamiltonian matches the built-in preset") {
  auto m = dsl::parse(slurp(std::filesystem::path(CURVIQ_MODELS_DIR) /
                            "spherical.cq"));
  auto h = dsl::build_hamiltonian(m, "hydrogen", 3);
  auto hp = presets::hydrogen_hamiltonian(3);
  CHECK(equals_numeric(h.h, hp, presets::spherical_domain()));
  CHECK(h.chart == "spherical");
  auto specs = dsl::quantize_specs(m);
  REQUIRE(specs.size() == 1);
  CHECK(specs[0].hamiltonian == "hydrogen");
  CHECK(specs[0].method == dsl::QuantizeMethod::SOrder);
  CHECK(specs[0].order == 3);
}

TEST_CASE("parsed vector fields match the built-in example") {
  auto m = dsl::parse(slurp(std::filesystem::path(CURVIQ_MODELS_DIR) /
                            "example1.cq"));
  auto d = dsl::build_fields(m, "example1");
  auto [xs, ys] = presets::example1_fields();
  auto corpus = presets::sample_corpus(d.vars, 3);
  for (const auto& f : corpus) {
    CHECK(equals_numeric(d.xs[0].apply(f), xs[0].apply(f), d.domain));
    CHECK(equals_numeric(d.ys[0].apply(f), ys[0].apply(f), d.domain));
  }
}

TEST_CASE("parsed product parameters") {
  auto m = dsl::parse(slurp(std::filesystem::path(CURVIQ_MODELS_DIR) /
                            "sigma_demo.cq"));
  auto p = dsl::build_product(m, "sigma_demo");
  CHECK(p.sigma == Rational(1, 3));
  CHECK(p.alpha == Rational(1, 7));
  CHECK(p.beta == Rational(2, 5));
}

TEST_CASE("latex output is brace-balanced on the preset corpus") {
  auto t = presets::spherical();
  auto gamma = christoffel_from_transformation(t);
  CHECK(balanced(emit::latex_christoffel(gamma)));
  CHECK(balanced(emit::latex_morphism(build_S_T(gamma, 3))));
  CHECK(balanced(emit::latex_star(moyal(2, 3, {"x1", "x2"}))));
  auto h = presets::hydrogen_hamiltonian(3);
  CHECK(balanced(emit::latex_phase_function(h, t.vars())));
  std::vector<ConfigOperator> phat;
  for (int j = 0; j < 3; ++j) phat.push_back(momentum_operator(gamma, j));
  auto op = s_order(h, build_S_T(gamma, 3), phat);
  CHECK(balanced(emit::latex_config_operator(op)));
  // environments open and close
  auto lx = emit::latex_christoffel(gamma);
  CHECK(lx.find("\\begin{aligned}") != std::string::npos);
  CHECK(lx.find("\\end{aligned}") != std::string::npos);
}

TEST_CASE("json report carries the required fields") {
  auto rep = suites::involution(5);
  auto j = emit::json_report(rep, "verify involution", 5);
  CHECK(j.contains("command"));
  CHECK(j.contains("seed"));
  CHECK(j.contains("pass"));
  REQUIRE(j.contains("checks"));
  REQUIRE(!j["checks"].empty());
  for (const auto& c : j["checks"]) {
    CHECK(c.contains("id"));
    CHECK(c.contains("hbar_order"));
    CHECK(c.contains("residual"));
    CHECK(c.contains("tolerance"));
    CHECK(c.contains("pass"));
  }
}

TEST_CASE("reports are byte-identical for the same seed") {
  auto a = emit::json_report(suites::involution(11), "verify involution", 11)
               .dump(2);
  auto b = emit::json_report(suites::involution(11), "verify involution", 11)
               .dump(2);
  CHECK(a == b);
}

TEST_CASE("identity chart prints an empty christoffel table") {
  auto g = christoffel_from_transformation(presets::identity(2));
  CHECK(emit::text_christoffel(g) == "(all components vanish)\n");
}
