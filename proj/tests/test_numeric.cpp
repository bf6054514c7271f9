#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "conslaw/errors.hpp"
#include "conslaw/numeric.hpp"
#include "conslaw/parse.hpp"
#include "test_support.hpp"

using namespace conslaw;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

RationalFunction P(const std::string& text, const SymbolTable& s = {}) { return parse(text, s).canonical(); }

Indeterminate J(int a, int b, const char* p = "u") { return Indeterminate::jet(p, a, b); }

}  // namespace

TEST_CASE("compiled evaluation examples") {
  CHECK(compile(P("u_x^2")).at({{J(0, 1), 3.0}}) == 9.0);

  PDEModel singular(P("u^-2"), P("0"), P("-u^-1"), P("0"));
  RelationSet b = singular.bindings();
  CHECK_THAT(compile(P("Dint"), b).at({{J(0, 0), 2.0}}), WithinAbs(-0.5, 1e-15));

  SymbolTable s;
  s.declare_function("alpha", {"t", "x"}, {"alpha_t + alpha_xx"});
  auto rule = std::make_shared<BindingRule>();
  rule->bind_function("alpha", P("exp(x - t)", s));
  RelationSet fb;
  fb.add(rule);
  Evaluator e = compile(P("exp(v)*alpha", s), fb);
  CHECK_THAT(e.at({{Indeterminate::independent("t"), 0.0}, {Indeterminate::independent("x"), 0.0}, {J(0, 0, "v"), 0.0}}),
             WithinAbs(1.0, 1e-15));

  CHECK_THROWS_AS(compile(P("alpha", s)), UnboundSymbol);
  CHECK_THROWS_AS(compile(P("Dint")), UnboundSymbol);
  CHECK_THROWS_AS(compile(P("1/u")).at({{J(0, 0), 0.0}}), PoleError);
  CHECK_THROWS_AS(compile(P("u")).at({}), UnboundSymbol);
}

TEST_CASE("compiled evaluation matches exact evaluation") {
  SymbolTable s;
  std::vector<Indeterminate> atoms{Indeterminate::independent("t"), Indeterminate::independent("x"), J(0, 0), J(0, 1),
                                   J(0, 2), J(0, 0, "v")};
  test_support::RandomExpressions gen(atoms, 17);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  int checked = 0;
  for (int k = 0; k < 30; ++k) {
    RationalFunction f = gen.polynomial(4) / (gen.polynomial(3) + RationalFunction(5));
    Evaluator e(f);
    for (int i = 0; i < 100; ++i) {
      std::map<Indeterminate, Rational> exact;
      std::map<Indeterminate, double> approx;
      for (const auto& v : atoms) {
        Rational q(num(rng), den(rng));
        q.canonicalize();
        exact[v] = q;
        approx[v] = q.get_d();
      }
      Rational value;
      try {
        value = evaluate_exact(f, exact);
      } catch (const DivisionByZero&) {
        continue;
      }
      double got = e.at(approx);
      INFO(f.str());
      CHECK_THAT(got, WithinRel(value.get_d(), 1e-12) || WithinAbs(value.get_d(), 1e-12));
      ++checked;
    }
  }
  CHECK(checked > 2500);
}

TEST_CASE("numeric instances") {
  const Registry& reg = Registry::builtin();
  auto c1 = numeric_cases(reg, {"1", {}});
  REQUIRE(c1.size() == 2);
  CHECK_FALSE(c1[0].singular);
  auto c14 = numeric_cases(reg, {"1.4", {}});
  REQUIRE(c14.size() == 2);
  CHECK(c14[0].singular);
  CHECK(numeric_cases(reg, {"4.1", {}}).size() == 4);

  Registry broken = reg;
  ModelFile f = *broken.find("4");
  for (auto& [name, body] : f.numeric)
    if (name == "alpha") body = "x^2 + 2*t";
  broken.replace(f);
  CHECK_THROWS_AS(numeric_cases(broken, {"4", {}}), InvalidModel);
}

TEST_CASE("sampling agrees with the symbolic verdict") {
  const Registry& reg = Registry::builtin();
  SampleOptions opts;
  opts.n = 300;
  for (const auto& run : reg.runs()) {
    for (const auto& nc : numeric_cases(reg, run)) {
      INFO(nc.label);
      SampleReport r = sample_on_shell(*nc.loaded->law, nc, opts);
      CHECK(r.max_residual < 1e-9);
      for (const auto& m : coefficient_mutants(*nc.loaded->law, nc.bindings())) {
        SampleReport bad = sample_on_shell(m, nc, opts);
        INFO("mutant G = " << m.G.str());
        CHECK(bad.max_residual > 1e-4);
      }
    }
  }
}

TEST_CASE("non-conserved density on the heat equation") {
  LoadedCase heat = table1_case("4");
  auto cases = numeric_cases(Registry::builtin(), {"4", {}});
  ConservedVector cv{P("u"), P("0"), {}, Level::base};
  SampleReport r = sample_on_shell(cv, cases[0], {});
  CHECK(r.max_residual > 1e-2);
  CHECK(r.samples == 1000);
}

TEST_CASE("sampling is reproducible across job counts") {
  auto cases = numeric_cases(Registry::builtin(), {"1.6", {}});
  ConservedVector bad = *cases[0].loaded->law;
  bad.G += P("u/10");
  SampleOptions one, four;
  four.jobs = 4;
  auto a = sample_on_shell(bad, cases[0], one);
  auto b = sample_on_shell(bad, cases[0], four);
  CHECK(a.max_residual == b.max_residual);
}
