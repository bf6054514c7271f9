#include <catch_amalgamated.hpp>

#include <set>

#include "conslaw/errors.hpp"
#include "conslaw/parse.hpp"
#include "conslaw/potential.hpp"

using namespace conslaw;

namespace {

RationalFunction P(const std::string& text, const SymbolTable& s = {}) { return parse(text, s).canonical(); }

std::map<std::string, Rational> eps(int e) { return {{"eps", Rational(e)}}; }

}  // namespace

TEST_CASE("corpus layout") {
  const Registry& reg = Registry::builtin();
  std::vector<std::string> ids = reg.ids();
  std::set<std::string> expected{"1", "1.1", "1.2", "1.3", "1.4", "1.5", "1.6", "2", "2.1", "3", "3.1", "4", "4.1"};
  CHECK(std::set<std::string>(ids.begin(), ids.end()) == expected);
  CHECK(reg.runs().size() == 17);
  auto simple = reg.runs(true);
  CHECK(simple.size() == 6);
  std::set<std::string> simple_ids;
  for (const auto& r : simple) simple_ids.insert(r.id);
  CHECK(simple_ids == std::set<std::string>{"1", "2", "3", "4"});
  CHECK(Registry::from_directory(CONSLAW_SOURCE_DIR "/cases").ids().size() == ids.size());
}

TEST_CASE("case files survive emit and reparse") {
  for (const auto& f : Registry::builtin().files()) {
    ModelFile again = ModelFile::parse(f.emit(), f.source);
    auto runs = Registry::builtin().runs();
    auto run = *std::find_if(runs.begin(), runs.end(), [&](auto& r) { return r.id == f.id; });
    LoadOptions opts;
    opts.parameters = run.parameters;
    if (!f.parent.empty()) opts.parent = Registry::builtin().find(f.parent);
    LoadedCase a = load_case(f, opts), b = load_case(again, opts);
    INFO(f.id);
    CHECK(a.law->F == b.law->F);
    CHECK(a.law->G == b.law->G);
    CHECK(a.model.d() == b.model.d());
    CHECK(a.model.kint() == b.model.kint());
    REQUIRE(a.system.equations().size() == b.system.equations().size());
    for (std::size_t i = 0; i < a.system.equations().size(); ++i)
      CHECK(a.system.equations()[i].rhs == b.system.equations()[i].rhs);
  }
}

TEST_CASE("model file syntax errors") {
  CHECK_THROWS_AS(ModelFile::parse("[model\nd = \"1\"\n"), ParseError);
  CHECK_THROWS_AS(ModelFile::parse("d = \"1\"\n"), ParseError);
  CHECK_THROWS_AS(ModelFile::parse("[model]\nd = \"1\n"), ParseError);
  CHECK_THROWS_AS(ModelFile::parse("[model]\nd = \"1\"\nd = \"2\"\n"), ParseError);
  CHECK_THROWS_AS(ModelFile::parse("[bogus]\n"), InvalidModel);
  CHECK_THROWS_AS(ModelFile::parse("[model]\nq = \"1\"\n"), InvalidModel);
  CHECK_THROWS_AS(ModelFile::parse("[system]\nz_x = \"1\"\n"), InvalidModel);
  CHECK_THROWS_AS(ModelFile::parse("[conserved]\nF = \"u\"\n"), InvalidModel);
  ModelFile bad = ModelFile::parse("[model]\nd = \"1\"\nk = \"0\"\nDint = \"u^2\"\n");
  CHECK_THROWS_AS(load_case(bad), InvalidModel);
  ModelFile unknown = ModelFile::parse("[model]\nd = \"q*u\"\n");
  CHECK_THROWS_AS(load_case(unknown), InvalidModel);
  ModelFile comments = ModelFile::parse("# header\n[model]  # section\nd = 1   # bare\nk = \"0\"\n");
  CHECK(comments.d == "1");
}

TEST_CASE("table1_case examples") {
  LoadedCase c14 = table1_case("1.4");
  CHECK(c14.model.d() == P("u^-2"));
  CHECK(c14.model.k().is_zero());
  CHECK(c14.model.dint() == P("-u^-1"));
  CHECK(c14.law->F == c14.parse_canonical("sigma"));
  CHECK(c14.law->G == c14.parse_canonical("sigma_v*u^-1"));
  CHECK(c14.system.equation("v", 'x')->rhs == P("u"));
  CHECK(c14.system.equation("w", 't')->rhs == c14.parse_canonical("-sigma_v*u^-1"));
  CHECK(c14.reinstated.size() == 2);

  LoadedCase c3 = table1_case("3", eps(0));
  RelationSet rels = c3.relations();
  CHECK(rels.reduce(c3.law->F) == P("exp(x)*u"));
  CHECK(rels.reduce(c3.law->G) == P("-exp(x)*d*u_x"));

  LoadedCase c21 = table1_case("2.1");
  CHECK(c21.law->F == P("x^-2*v"));
  CHECK(c21.law->G == P("-x^-1*Dint"));
  CHECK(c21.system.equation("v", 't')->rhs == P("x*d*u_x - Dint"));

  CHECK_THROWS_AS(table1_case("9"), InvalidModel);
  CHECK_THROWS_AS(table1_case("3"), InvalidModel);
  CHECK_THROWS_AS(table1_case("3", eps(2)), InvalidModel);
}

TEST_CASE("building potential systems") {
  DifferentialSystem generic{PDEModel()};
  ConservedVector c1{P("u"), P("-d*u_x - Kint"), {}, Level::base};
  PotentialSystem ps = build_potential_system(c1, generic);
  CHECK(ps.levels.size() == 1);
  CHECK(ps.system.equation("v", 'x')->rhs == P("u"));
  CHECK(ps.system.equation("v", 't')->rhs == P("d*u_x + Kint"));

  PDEModel k0(P("d"), RationalFunction(0), std::nullopt, RationalFunction(0));
  PotentialSystem base = build_potential_system(c1, DifferentialSystem(k0));
  PotentialSystem two = build_potential_system(ConservedVector{P("v"), P("-Dint"), {}, Level::potential}, base);
  CHECK(two.levels.size() == 2);
  CHECK(two.system.equation("w", 'x')->rhs == P("v"));
  CHECK(two.system.equation("w", 't')->rhs == P("Dint"));
  CHECK(verify_potential_system(two.system).compatible());

  CHECK_THROWS_AS(build_potential_system(ConservedVector{P("u"), P("0"), {}, Level::base}, generic),
                  IncompatibleSystem);
  CHECK_THROWS_AS(build_potential_system(ConservedVector{P("u_xx"), P("0"), {}, Level::base}, generic),
                  InvalidModel);
  CHECK_THROWS_AS(build_potential_system(ConservedVector{P("v_x"), P("0"), {}, Level::potential}, base),
                  InvalidModel);
  CHECK_THROWS_AS(build_potential_system(ConservedVector{P("v"), P("-Dint"), {}, Level::potential}, two),
                  InvalidModel);
}

TEST_CASE("compatibility examples") {
  CHECK(verify_potential_system(table1_case("1").system).compatible());
  CHECK(verify_potential_system(table1_case("3", eps(1)).system).compatible());

  // k raised by one while the potential keeps the old antiderivative.
  PDEModel shifted(P("1 + u^2"), P("u + 1"), P("u + u^3/3"), P("u^2/2 + u"));
  DifferentialSystem sys(shifted);
  sys.add_equation({"v", 'x', P("u")});
  sys.add_equation({"v", 't', P("(1 + u^2)*u_x + u^2/2")});
  CHECK_FALSE(verify_potential_system(sys).compatible());
}

TEST_CASE("every registry run verifies") {
  Table1Summary all = verify_table1_all();
  for (const auto& v : all.verdicts) {
    INFO(v.run.label() << " residual " << v.residual.str() << " " << v.error);
    CHECK(v.passed());
  }
  CHECK(all.verdicts.size() == 17);
  CHECK(all.seconds < 10.0);

  Table1Options parallel;
  parallel.jobs = 4;
  CHECK(verify_table1_all(Registry::builtin(), parallel).all_passed());

  Table1Options simple;
  simple.simple_only = true;
  auto s = verify_table1_all(Registry::builtin(), simple);
  CHECK(s.verdicts.size() == 6);
  CHECK(s.all_passed());
}

TEST_CASE("double-numbered cases need the parent t-rule") {
  Table1Options strip;
  strip.strip_parent_rules = {"v_t"};
  Table1Summary s = verify_table1_all(Registry::builtin(), strip);
  std::set<std::string> failed_ids;
  std::size_t failed_runs = 0;
  for (const auto& v : s.verdicts) {
    INFO(v.run.label());
    if (v.simple) {
      CHECK(v.passed());
    } else {
      CHECK_FALSE(v.passed());
      CHECK(v.error.empty());
      CHECK_FALSE(v.residual.is_zero());
      failed_ids.insert(v.run.id);
      ++failed_runs;
    }
  }
  CHECK(failed_ids.size() == 9);
  CHECK(failed_runs == 11);
}

TEST_CASE("Case 1.5 needs the pinned antiderivative") {
  Registry reg = Registry::builtin();
  ModelFile f = *reg.find("1.5");
  f.dint = "-u^-1 + 1";
  reg.replace(f);
  CaseVerdict v = verify_case(reg, {"1.5", {}});
  CHECK(v.error.empty());
  CHECK_FALSE(v.passed());
  LoadedCase lc = reg.instantiate("1.5");
  INFO(v.residual.str());
  CHECK(v.residual == lc.parse_canonical("exp(x)*sigma_v"));
}

TEST_CASE("a flipped potential rule is reported") {
  Registry reg = Registry::builtin();
  ModelFile f = *reg.find("1.4");
  for (auto& [key, rhs] : f.system)
    if (key == "w_t") rhs = "sigma_v*u^-1";
  reg.replace(f);
  CaseVerdict v = verify_case(reg, {"1.4", {}});
  CHECK_FALSE(v.passed());
  CHECK(v.generator_mismatch == std::vector<std::string>{"w_t"});
}

TEST_CASE("overlapping cases coincide") {
  LoadedCase c1 = table1_case("1");
  LoadedCase c2 = table1_case("2");
  LoadedCase c4 = table1_case("4");
  PDEModel heat = c4.model;
  auto at_heat = [&](const RationalFunction& f) {
    RelationSet rs = heat.bindings();
    return rs.reduce(f);
  };
  auto alpha_is = [&](const std::string& body) {
    auto r = std::make_shared<BindingRule>();
    r->bind_function("alpha", c4.parse_canonical(body));
    RelationSet rs;
    rs.add(r);
    return rs;
  };
  // (d, k) = (1, 0) on Case 1 with Kint = 0.
  PDEModel heat0(RationalFunction(1), RationalFunction(0), P("u"), RationalFunction(0));
  RelationSet h0 = heat0.bindings();
  RelationSet a1 = alpha_is("1");
  CHECK(h0.reduce(c1.law->F) == a1.reduce(c4.law->F));
  CHECK(h0.reduce(c1.law->G) == a1.reduce(c4.law->G));
  RelationSet ax = alpha_is("x");
  CHECK(at_heat(c2.law->F) == ax.reduce(c4.law->F));
  CHECK(at_heat(c2.law->G) == ax.reduce(c4.law->G));
}
