#include <catch_amalgamated.hpp>

#include "conslaw/conservation.hpp"
#include "conslaw/errors.hpp"
#include "conslaw/parse.hpp"
#include "conslaw/potential.hpp"
#include "test_support.hpp"

using namespace conslaw;

namespace {

RationalFunction P(const std::string& text, const SymbolTable& s = {}) { return parse(text, s).canonical(); }

Indeterminate J(int a, int b, const char* p = "u") { return Indeterminate::jet(p, a, b); }

ConservedVector law(const std::string& F, const std::string& G, const SymbolTable& s = {}) {
  ConservedVector cv;
  cv.F = P(F, s);
  cv.G = P(G, s);
  return cv;
}

PDEModel heat() { return PDEModel(RationalFunction(1), RationalFunction(0), P("u"), RationalFunction(0)); }

bool proportional(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  RationalFunction q = a / b;
  return q.is_polynomial() && q.indeterminates().empty();
}

}  // namespace

TEST_CASE("verification examples") {
  DifferentialSystem generic{PDEModel()};
  CHECK(verify_conservation_law(law("u", "-d*u_x - Kint"), generic).zero());

  DifferentialSystem h{heat()};
  auto r = verify_conservation_law(law("u", "0"), h);
  CHECK_FALSE(r.zero());
  CHECK(r.residual == P("u_xx"));

  SymbolTable s;
  PDEModel m13(P("d"), P("Dint + u*d"), std::nullopt, P("u*Dint"));
  DifferentialSystem sys13(m13, s);
  sys13.add_equation({"v", 'x', P("u")});
  sys13.add_equation({"v", 't', P("d*u_x + Kint")});
  auto r13 = verify_conservation_law(law("exp(v)", "-exp(v)*Dint"), sys13);
  CHECK(r13.zero());
  CHECK(std::find(r13.consequences.begin(), r13.consequences.end(), J(1, 0, "v")) != r13.consequences.end());
}

TEST_CASE("Case 4.1 needs both heat relations") {
  LoadedCase lc = table1_case("4.1");
  CHECK(verify_conservation_law(*lc.law, lc.system).zero());

  SymbolTable loose;
  loose.declare_function("alpha", {"t", "x"}, {"alpha_t + alpha_xx"});
  loose.declare_function("beta", {"t", "x"}, {});
  DifferentialSystem sys(lc.model, loose);
  for (const auto& e : lc.system.equations()) sys.add_equation(e);
  CHECK_FALSE(verify_conservation_law(*lc.law, sys).zero());
}

TEST_CASE("undeclared variables and undefined potentials are rejected") {
  DifferentialSystem generic{PDEModel()};
  ConservedVector cv = law("u_xx", "0");
  cv.variables = ConservedVector::base_variables();
  CHECK_THROWS_AS(verify_conservation_law(cv, generic), InvalidModel);
  CHECK_THROWS_AS(verify_conservation_law(law("v", "-Dint"), generic), InvalidModel);
}

TEST_CASE("order of a conserved vector") {
  CHECK(order_of(law("u", "-d*u_x - Kint")) == 1);
  CHECK(order_of(law("v", "-Dint")) == 0);
  CHECK(order_of(law("u", "u_xx")) == 2);
}

TEST_CASE("trivial shift examples") {
  DifferentialSystem generic{PDEModel()};
  ConservedVector c1 = law("u", "-d*u_x - Kint");
  ConservedVector same = apply_trivial_shift(c1, RationalFunction());
  CHECK(same.F == c1.F);
  CHECK(same.G == c1.G);
  ConservedVector shifted = apply_trivial_shift(c1, P("x"));
  CHECK(shifted.F == P("u + 1"));
  CHECK(shifted.G == c1.G);
  CHECK(verify_conservation_law(shifted, generic).zero());

  LoadedCase c4 = table1_case("4");
  ConservedVector s4 = apply_trivial_shift(*c4.law, c4.parse_canonical("alpha*u"));
  CHECK(verify_conservation_law(s4, c4.system).zero());
}

TEST_CASE("trivial shifts never change the verdict") {
  for (const auto& id : Registry::builtin().ids()) {
    auto runs = Registry::builtin().runs();
    auto run = *std::find_if(runs.begin(), runs.end(), [&](const CaseRun& r) { return r.id == id; });
    LoadedCase lc = Registry::builtin().instantiate(id, run.parameters);
    ConservedVector cv = *lc.law;
    ConservedVector broken = cv;
    broken.G += RationalFunction(J(0, 0));
    test_support::RandomExpressions gen(cv.variables, 1000 + std::hash<std::string>{}(id) % 1000);
    for (int i = 0; i < 10; ++i) {
      RationalFunction H = gen.next();
      INFO(id << " H = " << H.str());
      CHECK(verify_conservation_law(apply_trivial_shift(cv, H), lc.system).zero());
      CHECK_FALSE(verify_conservation_law(apply_trivial_shift(broken, H), lc.system).zero());
    }
  }
}

TEST_CASE("conserved vectors from characteristics") {
  PDEModel generic;
  ConservedVector c1 = build_from_characteristic({P("-1"), {}, {}}, generic);
  CHECK(c1.F == P("u"));
  CHECK(c1.G == P("-d*u_x - Kint"));

  PDEModel k0(P("d"), RationalFunction(0), std::nullopt, RationalFunction(0));
  ConservedVector c2 = build_from_characteristic({P("-x"), {}, {}}, k0);
  CHECK(c2.F == P("x*u"));
  CHECK(c2.G == P("Dint - x*d*u_x"));

  ConservedVector trivial = build_from_characteristic({RationalFunction(), P("t*u^2 + x*exp(u)"), {}}, generic);
  CHECK(verify_conservation_law(trivial, DifferentialSystem(generic)).zero());
}

TEST_CASE("classifying equation") {
  PDEModel k0(P("d"), RationalFunction(0), std::nullopt, RationalFunction(0));
  CHECK(check_classifying(P("x"), k0).zero());
  CHECK(check_classifying(P("x^2 - 2*t"), heat()).zero());
  auto r = check_classifying(P("t"), PDEModel());
  CHECK(r.residual == P("1"));
  REQUIRE(r.split);
  auto one = std::find_if(r.conditions.begin(), r.conditions.end(), [](auto& c) { return c.factor == "1"; });
  REQUIRE(one != r.conditions.end());
  CHECK_FALSE(one->holds());

  SymbolTable s;
  s.declare_function("psi", {"t", "x"}, {});
  auto g = check_classifying(P("psi", s), PDEModel());
  REQUIRE(g.split);
  std::map<std::string, RationalFunction> by_factor;
  for (const auto& c : g.conditions) by_factor[c.factor] = c.coefficient;
  CHECK(proportional(by_factor["1"], P("psi_t", s)));
  CHECK(proportional(by_factor["d"], P("psi_xx", s)));
  CHECK(proportional(by_factor["k"], P("psi_x", s)));
}

TEST_CASE("determining system forces F independent of u_t") {
  DeterminingSystem ds = derive_determining_system(PDEModel(), 1, 1);
  RationalFunction F_ut = partial_derivative(ds.F, J(1, 0));
  RationalFunction F_ux = partial_derivative(ds.F, J(0, 1));
  RationalFunction G_ut = partial_derivative(ds.G, J(1, 0));
  const DeterminingEquation* tt = nullptr;
  const DeterminingEquation* tx = nullptr;
  for (const auto& e : ds.equations) {
    if (e.stage == "u_tt/u_tx" && e.label == "u_tt") tt = &e;
    if (e.stage == "u_tt/u_tx" && e.label == "u_tx") tx = &e;
  }
  REQUIRE(tt);
  REQUIRE(tx);
  CHECK(proportional(tt->lhs, F_ut));
  CHECK(proportional(tx->lhs, F_ux + G_ut));
  CHECK(std::any_of(ds.equations.begin(), ds.equations.end(), [](auto& e) { return e.stage == "u_t/u_x"; }));

  DeterminingSystem d0 = derive_determining_system(PDEModel(), 0, 0);
  CHECK(d0.equations.size() < ds.equations.size());
  CHECK_THROWS(derive_determining_system(PDEModel(), -1, 0));
}

TEST_CASE("characteristic laws solve the determining system") {
  auto failures = [](const CharacteristicCheck& c) {
    std::string out;
    for (const auto& f : c.failures) out += f + "\n";
    return out;
  };
  DeterminingSystem generic = derive_determining_system(PDEModel(), 1, 1);
  auto one = check_characteristic_solution(generic, {P("1"), {}, {}});
  INFO(failures(one));
  CHECK(one.annihilated());

  PDEModel k0(P("d"), RationalFunction(0), std::nullopt, RationalFunction(0));
  CHECK(check_characteristic_solution(derive_determining_system(k0, 1, 1), {P("x"), {}, {}}).annihilated());
  CHECK(check_characteristic_solution(derive_determining_system(heat(), 1, 1), {P("x^2 - 2*t"), {}, {}})
            .annihilated());

  SymbolTable s;
  s.declare_function("psi", {"t", "x"}, {});
  auto check = check_characteristic_solution(generic, {P("psi", s), {}, {}});
  INFO(failures(check));
  CHECK(check.annihilated());
  CHECK_FALSE(check.classifying.zero());
}

TEST_CASE("Case 4 satisfies the determining equations") {
  SymbolTable s;
  s.declare_function("alpha", {"t", "x"}, {"alpha_t + alpha_xx"});
  RelationSet rels = DifferentialSystem(heat(), s).relations();
  DeterminingSystem ds = derive_determining_system(heat(), 1, 1, rels);
  for (const auto& e : specialize(ds, P("alpha*u", s), P("alpha_x*u - alpha*u_x", s), rels)) {
    INFO(e.stage << " " << e.label << ": " << e.lhs.str());
    CHECK(e.lhs.is_zero());
  }
  auto wrong = specialize(ds, P("alpha*u", s), P("alpha_x*u - alpha*u_x + u/10", s), rels);
  CHECK(std::any_of(wrong.begin(), wrong.end(), [](auto& e) { return !e.lhs.is_zero(); }));
  CHECK_THROWS_AS(specialize(ds, P("u_t^2", s), P("0", s), rels), NotPolynomial);
}
