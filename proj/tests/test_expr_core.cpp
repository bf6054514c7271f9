#include <catch_amalgamated.hpp>

#include "conslaw/errors.hpp"
#include "conslaw/parse.hpp"
#include "conslaw/symbols.hpp"

using namespace conslaw;

namespace {

SymbolTable heat_symbols() {
  SymbolTable s;
  s.declare_function("alpha", {"t", "x"}, {"alpha_t + alpha_xx"});
  s.declare_function("beta", {"t", "x"}, {"beta_t + beta_xx"});
  s.declare_function("sigma", {"t", "v"}, {"sigma_t + sigma_vv"});
  s.declare_parameter("eps");
  return s;
}

std::string canon(const std::string& text, const SymbolTable& s, const RelationSet& rels = {}) {
  return rels.reduce(parse(text, s).canonical()).str();
}

}  // namespace

TEST_CASE("parse resolves jets, functions and antiderivatives") {
  SymbolTable s = heat_symbols();
  Expr e = parse("u_x", s);
  REQUIRE(e.kind() == Expr::Kind::symbol);
  CHECK(e.symbol() == Indeterminate::jet("u", 0, 1));
  CHECK(parse("u_xt", s).symbol() == parse("u_tx", s).symbol());

  Expr g = parse("d(u)*u_x^2 + Dint", s);
  REQUIRE(g.kind() == Expr::Kind::sum);
  CHECK(g.operands()[1].symbol() == Indeterminate::antiderivative("Dint"));

  Expr h = parse("sigma_v(t,v)*u^-1", s);
  auto f = h.canonical();
  CHECK(f.numerator().str() == "sigma_v");
  CHECK(f.denominator().str() == "u");
}

TEST_CASE("parse errors carry positions") {
  SymbolTable s = heat_symbols();
  try {
    parse("u + alpha_q", s);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 10);
  }
  CHECK_THROWS_AS(parse("foo + 1", s), ParseError);
  CHECK_THROWS_AS(parse("u_y", s), ParseError);
  CHECK_THROWS_AS(parse("(u + 1", s), ParseError);
  CHECK_THROWS_AS(parse("u +", s), ParseError);
  CHECK_THROWS_AS(parse("alpha(x,t)", s), ParseError);
  CHECK_THROWS_AS(parse("u^x", s), ParseError);
}

TEST_CASE("normalize examples") {
  SymbolTable s = heat_symbols();
  RelationSet rels = s.relations();
  CHECK(canon("u_x*u - u*u_x", s) == "0");
  CHECK(canon("alpha_t + alpha_xx", s, rels) == "0");
  CHECK(canon("alpha_tt - alpha_xxxx", s, rels) == "0");
  std::string q = "(beta/alpha)";
  std::string qx = "(beta_x*alpha - beta*alpha_x)/alpha^2";
  std::string qt = "(beta_t*alpha - beta*alpha_t)/alpha^2";
  std::string qxx = "((beta_xx*alpha - beta*alpha_xx)*alpha - 2*alpha_x*(beta_x*alpha - beta*alpha_x))/alpha^3";
  CHECK(canon(qt + " + " + qxx + " + 2*(alpha_x/alpha)*" + qx, s, rels) == "0");
  CHECK_THROWS_AS(normalize(parse("u/(u_x - u_x)", s)), DivisionByZero);
  (void)q;
}

TEST_CASE("normalize is idempotent and canonical") {
  SymbolTable s = heat_symbols();
  for (const char* text : {"(u+1)^2/(u^2-1)", "exp(x)*exp(-x) + exp(2*x+v)/exp(v)", "(exp(x)+eps)^2/(exp(2*x) + 2*eps*exp(x) + eps^2)",
                           "u_x/(u*d) - Dint/d_u"}) {
    Expr n = normalize(parse(text, s));
    CHECK(normalize(n) == n);
    CHECK(normalize(parse(n.str(), s)) == n);
  }
  CHECK(canon("(u+1)^2/(u^2-1)", s) == "(u + 1)/(u - 1)");
  CHECK(canon("exp(x)*exp(-x)", s) == "1");
  CHECK(canon("(exp(x)+eps)^2/(exp(2*x) + 2*eps*exp(x) + eps^2)", s) == "1");
}

TEST_CASE("diff examples") {
  SymbolTable s = heat_symbols();
  CHECK(diff(parse("u_x^2", s), Indeterminate::jet("u", 0, 1)).str() == "2*u_x");
  CHECK(diff(parse("Dint", s), Indeterminate::jet("u", 0, 0)).str() == "d");
  CHECK(diff(parse("exp(v)", s), Indeterminate::jet("v", 0, 0)).str() == "exp(v)");
  CHECK(diff(parse("sigma*exp(2*v)", s), Indeterminate::jet("v", 0, 0)).str() == "2*sigma*exp(v)^2 + sigma_v*exp(v)^2");
}

TEST_CASE("substitute examples") {
  SymbolTable s = heat_symbols();
  auto uxx = Indeterminate::jet("u", 0, 2);
  Expr rhs = parse("(u_t - k*u_x - d_u*u_x^2)/d", s);
  CHECK(substitute(parse("u_xx", s), {{uxx, rhs}}) == normalize(rhs));
  CHECK(substitute(parse("x+t", s), {}) == normalize(parse("x+t", s)));
  CHECK(substitute(parse("k(u)", s), {{s.symbol("k"), parse("2*u", s)}}).str() == "2*u");
  CHECK(substitute(parse("k_u*u", s), {{s.symbol("k"), parse("2*u", s)}}).str() == "2*u");
  CHECK_THROWS_AS(substitute(parse("1/u", s), {{Indeterminate::jet("u", 0, 0), Expr(0)}}), DivisionByZero);
}

TEST_CASE("collect examples") {
  SymbolTable s;
  s.declare_function("a", {"x"}, {});
  auto ut = Indeterminate::jet("u", 1, 0);
  auto c = collect(parse("a*u_t^2 + x*u_t + 3", s), {ut});
  REQUIRE(c.size() == 3);
  CHECK(c.at(Monomial(ut, 2)).str() == "a");
  CHECK(c.at(Monomial(ut, 1)).str() == "x");
  CHECK(c.at(Monomial()).str() == "3");
  CHECK_THROWS_AS(collect(parse("u_x/u", s), {Indeterminate::jet("u", 0, 0)}), NotPolynomial);
}

TEST_CASE("relations are validated") {
  SymbolTable s;
  CHECK_THROWS_AS(s.declare_function("gam", {"t", "x"}, {"gam_t^2 + gam_xx"}), InvalidRelation);
  CHECK_THROWS_AS(s.declare_function("gam", {"t", "x"}, {"gam_t + u"}), InvalidRelation);
  CHECK_THROWS_AS(s.declare_function("gam", {"t", "q"}, {}), InvalidRelation);
  CHECK_THROWS_AS(s.declare_function("d", {"u"}, {}), InvalidRelation);
  CHECK_THROWS_AS(s.declare_function("gam", {"t", "x"}, {"gam_t + gam_xx", "gam_tx"}), InvalidRelation);
  CHECK_NOTHROW(s.declare_function("gam", {"t", "x"}, {"gam_t*x + gam_xx"}));
}
