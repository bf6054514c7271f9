#include <catch_amalgamated.hpp>

#include "conslaw/errors.hpp"
#include "conslaw/jet.hpp"
#include "conslaw/parse.hpp"
#include "test_support.hpp"

using namespace conslaw;

namespace {

RationalFunction P(const std::string& text, const SymbolTable& s) { return parse(text, s).canonical(); }

Indeterminate J(int a, int b, const char* p = "u") { return Indeterminate::jet(p, a, b); }

}  // namespace

TEST_CASE("total derivative examples") {
  SymbolTable s;
  s.declare_function("sigma", {"t", "v"}, {"sigma_t + sigma_vv"});
  CHECK(total_derivative(P("u", s), 'x').str() == "u_x");
  CHECK(total_derivative(P("d(u)*u_x", s), 'x') == P("d_u*u_x^2 + d*u_xx", s));
  CHECK(total_derivative(P("sigma(t,v)", s), 't') == P("sigma_t + sigma_v*v_t", s));
  CHECK(total_derivative(P("sigma(t,v)", s), 'x') == P("sigma_v*v_x", s));
  CHECK(total_derivative(P("Dint + exp(x*u)", s), 'x') == P("d*u_x + exp(x*u)*(u + x*u_x)", s));
  CHECK(total_derivative(P("t^2*x", s), 't') == P("2*t*x", s));
}

TEST_CASE("total derivatives commute off shell") {
  SymbolTable s;
  s.declare_function("alpha", {"t", "x"}, {});
  s.declare_function("sigma", {"t", "v"}, {});
  test_support::RandomExpressions gen(s, 7);
  for (int i = 0; i < 60; ++i) {
    RationalFunction e = gen.next();
    RationalFunction a = total_derivative(total_derivative(e, 't'), 'x');
    RationalFunction b = total_derivative(total_derivative(e, 'x'), 't');
    INFO(e.str());
    CHECK((a - b).is_zero());
  }
}

TEST_CASE("total derivative is a derivation over products and quotients") {
  SymbolTable s;
  s.declare_function("alpha", {"t", "x"}, {});
  test_support::RandomExpressions gen(s, 11);
  for (int i = 0; i < 40; ++i) {
    RationalFunction f = gen.next(), g = gen.next();
    for (char w : {'t', 'x'}) {
      CHECK((total_derivative(f * g, w) - total_derivative(f, w) * g - f * total_derivative(g, w)).is_zero());
      if (!g.is_zero())
        CHECK((total_derivative(f / g, w) - (total_derivative(f, w) * g - f * total_derivative(g, w)) / (g * g))
                  .is_zero());
    }
  }
}

TEST_CASE("on-shell reduction of the base equation") {
  DifferentialSystem sys{PDEModel()};
  SymbolTable s;
  CHECK(sys.reduce(P("u_t - d_u*u_x^2 - d*u_xx - k*u_x", s)).is_zero());
  RationalFunction rhs = evolution_rhs();
  // Brute-force prolongation: direct differentiation, one substitution pass.
  RationalFunction utx = total_derivative(rhs, 'x');
  CHECK(*sys.consequence(J(1, 1)) == utx);
  std::map<Indeterminate, RationalFunction> first{
      {J(1, 0), rhs}, {J(1, 1), utx}, {J(1, 2), total_derivative(utx, 'x')}};
  RationalFunction utt = substitute(total_derivative(rhs, 't'), first);
  CHECK(*sys.consequence(J(2, 0)) == utt);
  CHECK(!sys.consequence(J(0, 3)).has_value());
  RationalFunction r = sys.reduce(P("u_tt*u_tx + u_t", s));
  CHECK(sys.reduce(r) == r);
  for (const auto& v : r.indeterminates())
    if (v.is(IndeterminateKind::jet)) CHECK(v.t_order() == 0);
}

TEST_CASE("closure order is enforced") {
  DifferentialSystem sys{PDEModel(), {}, {}, 2};
  CHECK_NOTHROW(sys.consequence(J(2, 0)));
  try {
    sys.consequence(J(2, 1));
    FAIL("expected ClosureOrderError");
  } catch (const ClosureOrderError& e) {
    CHECK(e.needed() == 3);
  }
  auto table = jet_closure(sys, 2);
  CHECK(table.count(J(2, 0)));
  CHECK(table.at(J(2, 0)).mentions(J(0, 4)));
  CHECK(table.size() == 3);  // u_t, u_tt, u_tx
}

TEST_CASE("potential system consequences") {
  SymbolTable s;
  DifferentialSystem sys{PDEModel()};
  sys.add_equation({"v", 'x', P("u", s)});
  sys.add_equation({"v", 't', P("d*u_x + Kint", s)});
  CHECK(sys.reduce(P("v_t", s)) == P("d*u_x + Kint", s));
  CHECK(*sys.consequence(J(1, 1, "v")) == sys.reduce(total_derivative(P("d*u_x + Kint", s), 'x')));
  CHECK(sys.compatibility_residuals().at("v").is_zero());
  auto table = jet_closure(sys, 2);
  CHECK(table.count(J(1, 1, "v")));
  CHECK(table.count(J(0, 2, "v")));

  DifferentialSystem bare{PDEModel()};
  CHECK(jet_closure(bare, 1).size() == 1);

  DifferentialSystem bad{PDEModel()};
  bad.add_equation({"v", 'x', P("u", s)});
  bad.add_equation({"v", 't', P("d*u_x", s)});
  CHECK_FALSE(bad.compatibility_residuals().at("v").is_zero());
  CHECK_THROWS_AS(jet_closure(bad, 2), IncompatibleSystem);
  CHECK_THROWS_AS(bad.add_equation({"v", 'x', P("v_x", s)}), InvalidModel);
}

TEST_CASE("model validation") {
  SymbolTable s;
  CHECK_THROWS_AS(DifferentialSystem(PDEModel(P("0", s), P("k", s))), InvalidModel);
  CHECK_THROWS_AS(DifferentialSystem(PDEModel(P("u^-2", s), P("0", s), P("u^-1", s))), InvalidModel);
  CHECK_NOTHROW(DifferentialSystem(PDEModel(P("u^-2", s), P("0", s), P("-u^-1", s))));
  CHECK_NOTHROW(DifferentialSystem(PDEModel(P("d", s), P("Dint + u*d", s), std::nullopt, P("u*Dint", s))));
  CHECK_THROWS_AS(DifferentialSystem(PDEModel(P("x", s), P("0", s))), InvalidModel);
}
