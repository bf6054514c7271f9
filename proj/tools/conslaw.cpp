// Command-line front end: verify, table1, transform, determine, potential,
// sample, simulate. Exit codes: 0 pass, 1 verification failure, 2 input error.
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "conslaw/equivalence.hpp"
#include "conslaw/errors.hpp"
#include "conslaw/numeric.hpp"
#include "conslaw/parse.hpp"
#include "conslaw/simulate.hpp"

using namespace conslaw;
using json = nlohmann::json;

namespace {

constexpr int kPass = 0, kFail = 1, kInputError = 2;

struct Common {
  std::string cases_dir;
  std::vector<std::string> params;  // name=value
  bool json = false;
  unsigned jobs = 1;
};

struct Target {
  Registry registry;
  std::string id;
  std::vector<CaseRun> runs;
};

std::map<std::string, Rational> parse_params(const std::vector<std::string>& items) {
  std::map<std::string, Rational> out;
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidModel("parameter '" + item + "' is not of the form name=value");
    std::string name = item.substr(0, eq);
    name.erase(name.find_last_not_of(" ") + 1);
    try {
      out[name] = parse_rational(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw InvalidModel("parameter value '" + item.substr(eq + 1) + "' is not rational");
    }
  }
  return out;
}

Registry base_registry(const Common& c) {
  return c.cases_dir.empty() ? Registry::builtin() : Registry::from_directory(c.cases_dir);
}

// A model file path or a case id from the registry.
Target resolve(const std::string& what, const Common& c) {
  Target t{base_registry(c), "", {}};
  if (std::filesystem::is_regular_file(what)) {
    ModelFile f = ModelFile::read(what);
    t.id = f.id;
    t.registry.insert(std::move(f));
  } else if (t.registry.find(what)) {
    t.id = what;
  } else {
    throw InvalidModel("'" + what + "' is neither a model file nor a case id");
  }
  auto params = parse_params(c.params);
  if (!params.empty()) {
    t.runs.push_back({t.id, params});
  } else {
    t.runs = t.registry.runs_of(t.id);
  }
  for (const auto& r : t.runs) t.registry.instantiate(r.id, r.parameters);  // input errors surface here
  return t;
}

std::string join(const std::vector<std::string>& v, const std::string& sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(3) << std::scientific << v;
  return s.str();
}

json verdict_json(const CaseVerdict& v) {
  json j{{"case", v.run.label()}, {"pass", v.passed()}, {"residual", v.residual.str()}, {"seconds", v.seconds}};
  json compat = json::object();
  for (const auto& [p, r] : v.compatibility) compat[p] = r.str();
  j["compatibility"] = compat;
  j["generator_mismatch"] = v.generator_mismatch;
  j["consequences"] = v.consequences;
  if (!v.error.empty()) j["error"] = v.error;
  return j;
}

void print_verdict(const CaseVerdict& v) {
  std::cout << (v.passed() ? "PASS " : "FAIL ") << v.run.label();
  if (!v.error.empty()) {
    std::cout << "  error: " << v.error << "\n";
    return;
  }
  std::cout << "  residual = " << v.residual.str();
  for (const auto& [p, r] : v.compatibility) std::cout << "  " << p << "_xt - " << p << "_tx = " << r.str();
  if (!v.generator_mismatch.empty()) std::cout << "  rules differ from (F, -G): " << join(v.generator_mismatch);
  std::cout << "  (" << std::fixed << std::setprecision(3) << v.seconds << " s)\n";
  std::cout.unsetf(std::ios::floatfield);
}

int report_verdicts(const std::vector<CaseVerdict>& verdicts, double seconds, const Common& c) {
  bool ok = std::all_of(verdicts.begin(), verdicts.end(), [](const CaseVerdict& v) { return v.passed(); });
  std::size_t passed = std::count_if(verdicts.begin(), verdicts.end(), [](const CaseVerdict& v) { return v.passed(); });
  if (c.json) {
    json j{{"pass", ok}, {"passed", passed}, {"runs", verdicts.size()}, {"seconds", seconds}};
    j["verdicts"] = json::array();
    for (const auto& v : verdicts) j["verdicts"].push_back(verdict_json(v));
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& v : verdicts) print_verdict(v);
    std::cout << passed << "/" << verdicts.size() << " runs pass\n";
  }
  return ok ? kPass : kFail;
}

int cmd_verify(const std::string& model, const Common& c) {
  Target t = resolve(model, c);
  Table1Summary s;
  for (const auto& r : t.runs) s.verdicts.push_back(verify_case(t.registry, r));
  for (const auto& v : s.verdicts) s.seconds += v.seconds;
  return report_verdicts(s.verdicts, s.seconds, c);
}

int cmd_table1(const std::string& id, bool all, bool simple_only, const std::vector<std::string>& strip,
               const Common& c) {
  Registry reg = base_registry(c);
  Table1Options opt;
  opt.jobs = c.jobs;
  opt.simple_only = simple_only;
  opt.strip_parent_rules = strip;
  if (all == !id.empty()) throw InvalidModel("give exactly one of --case or --all");
  if (all) {
    Table1Summary s = verify_table1_all(reg, opt);
    return report_verdicts(s.verdicts, s.seconds, c);
  }
  Target t = resolve(id, c);
  std::vector<CaseVerdict> v;
  double seconds = 0;
  for (const auto& r : t.runs) {
    v.push_back(verify_case(t.registry, r, opt));
    seconds += v.back().seconds;
  }
  return report_verdicts(v, seconds, c);
}

ModelFile emit_transformed(const LoadedCase& lc, const EquivTransform& T) {
  DifferentialSystem sys = transform_system(T, lc.system);
  SymbolTable sym = transform_symbols(T, lc.symbols);
  ModelFile out;
  out.id = lc.file.id;
  out.title = (lc.file.title.empty() ? "case " + lc.file.id : lc.file.title) + ", transformed by (" + T.str() + ")";
  for (const auto& f : sym.functions()) {
    if (f.name == "d" || f.name == "k") continue;  // built in
    FunctionDecl d{f.name, f.args, {}};
    for (const auto& r : f.relations) d.relations.push_back(r.str());
    out.functions.push_back(std::move(d));
  }
  const PDEModel& m = sys.model();
  out.d = m.d_arbitrary() ? "arbitrary" : m.d().str();
  out.k = m.k_arbitrary() ? "arbitrary" : m.k().str();
  if (m.dint_explicit()) out.dint = m.dint().str();
  if (m.kint_explicit()) out.kint = m.kint().str();
  if (lc.law) {
    ConservedVector cv = transform_conserved_vector(T, *lc.law, lc.system);
    out.F = cv.F.str();
    out.G = cv.G.str();
    std::vector<std::string> vars;
    for (const auto& v : cv.variables) vars.push_back(v.str());
    out.variables = join(vars);
    out.level = to_string(cv.level);
  }
  for (const auto& eq : sys.equations()) out.system.emplace_back(eq.lhs().str(), eq.rhs.str());
  return out;
}

int cmd_transform(const std::string& model, const std::string& eps, const std::string& output, const Common& c) {
  Target t = resolve(model, c);
  if (t.runs.size() != 1)
    throw InvalidModel("case " + t.id + " has several parameter values; pick one with --param");
  EquivTransform T = EquivTransform::parse(eps);
  LoadedCase lc = t.registry.instantiate(t.id, t.runs[0].parameters);
  ModelFile out = emit_transformed(lc, T);
  std::string text = out.emit();

  // Reload what was emitted and verify it on its own.
  ModelFile back = ModelFile::parse(text, "<transformed>");
  Registry solo({back});
  CaseVerdict v = verify_case(solo, {back.id, {}});
  if (!output.empty()) {
    std::ofstream f(output);
    if (!f) throw InvalidModel("cannot write " + output);
    f << text;
  }
  if (c.json) {
    json j{{"transform", T.str()}, {"model", text}, {"verification", verdict_json(v)}, {"pass", v.passed()}};
    std::cout << j.dump(2) << "\n";
  } else {
    if (output.empty()) std::cout << text << "\n";
    print_verdict(v);
  }
  return v.passed() ? kPass : kFail;
}

int cmd_determine(const std::string& model, int deg_ut, int deg_ux, bool check, const Common& c) {
  if (deg_ut < 0 || deg_ux < 0) throw InvalidModel("degrees must be non-negative");
  Target t = resolve(model, c);
  if (t.runs.size() != 1)
    throw InvalidModel("case " + t.id + " has several parameter values; pick one with --param");
  LoadedCase lc = t.registry.instantiate(t.id, t.runs[0].parameters);
  DeterminingSystem ds = derive_determining_system(lc.model, deg_ut, deg_ux, lc.relations());
  json j{{"case", t.runs[0].label()}, {"F", ds.F.str()}, {"G", ds.G.str()}, {"notes", ds.notes}};
  j["equations"] = json::array();
  for (const auto& e : ds.equations) j["equations"].push_back({{"stage", e.stage}, {"label", e.label}, {"lhs", e.lhs.str()}});
  if (!c.json) {
    std::cout << "ansatz F = " << ds.F.str() << "\n       G = " << ds.G.str() << "\n";
    for (const auto& n : ds.notes) std::cout << "note: " << n << "\n";
    for (const auto& e : ds.equations) std::cout << "[" << e.stage << "] " << e.label << ": " << e.lhs.str() << " = 0\n";
  }
  int code = kPass;
  if (check) {
    if (!lc.law) throw InvalidModel("case " + t.id + " has no conserved vector to check");
    auto spec = specialize(ds, lc.law->F, lc.law->G, lc.relations());
    std::size_t nonzero = 0;
    j["check"] = json::array();
    for (const auto& e : spec) {
      if (!e.lhs.is_zero()) ++nonzero;
      j["check"].push_back({{"stage", e.stage}, {"label", e.label}, {"residual", e.lhs.str()}});
      if (!c.json) std::cout << (e.lhs.is_zero() ? "  0  " : "  !  ") << "[" << e.stage << "] " << e.label << ": " << e.lhs.str() << "\n";
    }
    if (!c.json) std::cout << (nonzero ? "FAIL " : "PASS ") << nonzero << " nonzero residuals for the case law\n";
    j["pass"] = nonzero == 0;
    code = nonzero ? kFail : kPass;
  }
  if (c.json) std::cout << j.dump(2) << "\n";
  return code;
}

int cmd_potential(const std::string& model, const Common& c) {
  Target t = resolve(model, c);
  json out = json::array();
  bool ok = true;
  for (const auto& r : t.runs) {
    LoadedCase lc = t.registry.instantiate(r.id, r.parameters);
    CaseVerdict v = verify_case(t.registry, r);
    bool pass = v.error.empty() && v.generator_mismatch.empty() &&
                std::all_of(v.compatibility.begin(), v.compatibility.end(), [](const auto& e) { return e.second.is_zero(); });
    ok = ok && pass;
    json j{{"case", r.label()}, {"pass", pass}, {"reinstated", lc.reinstated}};
    j["equations"] = json::array();
    for (const auto& eq : lc.system.equations()) j["equations"].push_back(eq.lhs().str() + " = " + eq.rhs.str());
    json compat = json::object();
    for (const auto& [p, res] : v.compatibility) compat[p] = res.str();
    j["compatibility"] = compat;
    j["generator_mismatch"] = v.generator_mismatch;
    out.push_back(j);
    if (!c.json) {
      std::cout << (pass ? "PASS " : "FAIL ") << r.label() << "\n";
      for (const auto& eq : lc.system.equations()) {
        std::string lhs = eq.lhs().str();
        bool parent = std::any_of(lc.reinstated.begin(), lc.reinstated.end(),
                                  [&](const std::string& s) { return s.rfind(lhs + " =", 0) == 0; });
        std::cout << "  " << lhs << " = " << eq.rhs.str() << (parent ? "   (parent)" : "") << "\n";
      }
      for (const auto& [p, res] : v.compatibility) std::cout << "  " << p << "_xt - " << p << "_tx = " << res.str() << "\n";
      if (!v.generator_mismatch.empty()) std::cout << "  rules differ from (F, -G): " << join(v.generator_mismatch) << "\n";
      if (!v.error.empty()) std::cout << "  error: " << v.error << "\n";
    }
  }
  if (c.json) std::cout << json{{"pass", ok}, {"runs", out}}.dump(2) << "\n";
  return ok ? kPass : kFail;
}

int cmd_sample(const std::string& model, SampleOptions opt, double tol, bool mutants, const Common& c) {
  Target t = resolve(model, c);
  opt.jobs = c.jobs;
  bool ok = true;
  json out = json::array();
  for (const auto& r : t.runs)
    for (const auto& nc : numeric_cases(t.registry, r)) {
      if (!nc.loaded->law) throw InvalidModel("case " + r.id + " has no conserved vector");
      SampleReport rep = sample_on_shell(*nc.loaded->law, nc, opt);
      bool pass = rep.max_residual < tol;
      json j{{"instance", nc.label}, {"max_residual", rep.max_residual}, {"samples", rep.samples},
             {"resampled", rep.resampled}, {"seconds", rep.seconds}, {"worst_point", rep.worst_point}};
      std::size_t killed = 0, total = 0;
      double weakest = INFINITY;
      if (mutants) {
        for (const auto& m : coefficient_mutants(*nc.loaded->law, nc.bindings())) {
          SampleReport b = sample_on_shell(m, nc, opt);
          ++total;
          weakest = std::min(weakest, b.max_residual);
          if (b.max_residual > 1e-4) ++killed;
        }
        j["mutants"] = {{"total", total}, {"detected", killed}, {"weakest", weakest}};
        pass = pass && killed == total;
      }
      j["pass"] = pass;
      ok = ok && pass;
      out.push_back(j);
      if (!c.json) {
        std::cout << (pass ? "PASS " : "FAIL ") << nc.label << "  max residual " << fmt(rep.max_residual) << " over "
                  << rep.samples << " samples";
        if (rep.resampled) std::cout << " (" << rep.resampled << " resampled near poles)";
        if (mutants) std::cout << "  mutants detected " << killed << "/" << total << ", weakest " << fmt(weakest);
        std::cout << "\n";
      }
    }
  if (c.json) std::cout << json{{"pass", ok}, {"instances", out}}.dump(2) << "\n";
  return ok ? kPass : kFail;
}

std::function<double(double)> initial_profile(const std::string& spec) {
  if (spec == "sine") return [](double x) { return 1 + 0.5 * std::sin(x); };
  if (spec == "bump") return [](double x) { return std::exp(-4 * (x - 0.5) * (x - 0.5)); };
  if (spec == "zero") return [](double) { return 0.0; };
  auto e = std::make_shared<Evaluator>(parse(spec, {}).canonical());
  for (const auto& v : e->variables())
    if (!(v == Indeterminate::independent("x"))) throw InvalidModel("initial profile may only mention x, not " + v.str());
  bool uses_x = !e->variables().empty();
  return [e, uses_x](double x) { return uses_x ? (*e)({x}) : (*e)({}); };
}

struct SimFlags {
  std::string instance;
  std::string initial;
  std::string boundary;
  std::size_t n = 800;
  double t_end = 0.1;
  double x_min = NAN, x_max = NAN, dt = 0, safety = 0.4;
  std::size_t snapshots = 100;
  double tol = 1e-5;
  bool refine = false;
  std::string csv;
};

int cmd_simulate(const std::string& model, const SimFlags& f, const Common& c) {
  Target t = resolve(model, c);
  if (t.runs.size() != 1)
    throw InvalidModel("case " + t.id + " has several parameter values; pick one with --param");
  auto cases = numeric_cases(t.registry, t.runs[0]);
  const NumericCase* nc = nullptr;
  for (const auto& x : cases)
    if (f.instance.empty() || x.label == f.instance || x.label.find(" " + f.instance) != std::string::npos) {
      nc = &x;
      break;
    }
  if (!nc) throw InvalidModel("no numeric instance matches '" + f.instance + "'");
  if (!nc->loaded->law) throw InvalidModel("case " + t.id + " has no conserved vector");

  GridRun run;
  // Periodic by default only when the law has no explicit t, x or potentials.
  auto translation_invariant = [&] {
    RelationSet b = nc->bindings();
    for (const auto* part : {&nc->loaded->law->F, &nc->loaded->law->G})
      for (const auto& v : b.reduce(*part).all_indeterminates())
        if (v.is(IndeterminateKind::independent) || (v.is(IndeterminateKind::jet) && v.name() != "u")) return false;
    return true;
  };
  run.boundary = !f.boundary.empty()       ? boundary_from_string(f.boundary)
                 : translation_invariant() ? Boundary::periodic
                                           : Boundary::dirichlet;
  bool periodic = run.boundary == Boundary::periodic;
  run.x_min = std::isnan(f.x_min) ? (periodic ? 0 : -6) : f.x_min;
  run.x_max = std::isnan(f.x_max) ? (periodic ? 2 * M_PI : 6) : f.x_max;
  run.initial = initial_profile(f.initial.empty() ? (periodic ? "sine" : "bump") : f.initial);
  run.n = f.n;
  run.t_end = f.t_end;
  run.dt = f.dt;
  run.safety = f.safety;
  run.snapshots = f.snapshots;

  auto one = [&](std::size_t n) {
    GridRun r = run;
    r.n = n;
    Trajectory tr = simulate(r, nc->loaded->model);
    return std::make_pair(tr, track_conserved(tr, *nc->loaded->law, *nc));
  };
  auto [tr, rep] = one(run.n);
  bool pass = rep.drift < f.tol;
  json j{{"instance", nc->label}, {"boundary", to_string(run.boundary)}, {"n", run.n},
         {"dx", tr.dx}, {"max_dt", tr.max_dt}, {"steps", tr.steps}, {"t_end", run.t_end},
         {"drift", rep.drift}, {"relative", rep.relative}, {"seconds", tr.seconds}, {"notes", rep.notes}};
  if (run.boundary == Boundary::dirichlet) {
    j["boundary_flux"] = rep.boundary_flux;
    j["flux_transport"] = rep.flux_transport;
  }
  double ratio = NAN;
  if (f.refine) {
    auto fine = one(2 * run.n);
    ratio = rep.drift / fine.second.drift;
    j["refined"] = {{"n", 2 * run.n}, {"drift", fine.second.drift}, {"ratio", ratio}};
  }
  j["pass"] = pass;
  if (!f.csv.empty()) {
    std::ofstream out(f.csv);
    if (!out) throw InvalidModel("cannot write " + f.csv);
    out << "t,integral\n" << std::setprecision(17);
    for (std::size_t i = 0; i < rep.times.size(); ++i) out << rep.times[i] << "," << rep.integrals[i] << "\n";
  }
  if (c.json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (pass ? "PASS " : "FAIL ") << nc->label << "  " << to_string(run.boundary) << " N=" << run.n
              << " dt<=" << fmt(tr.max_dt) << " steps=" << tr.steps << "  drift " << fmt(rep.drift)
              << (rep.relative ? " (relative)" : " (absolute)");
    if (f.refine) std::cout << "  N=" << 2 * run.n << " ratio " << std::setprecision(3) << ratio;
    std::cout << "\n";
    for (const auto& n : rep.notes) std::cout << "  note: " << n << "\n";
  }
  return pass ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conservation laws of nonlinear diffusion-convection equations"};
  app.require_subcommand(1);
  app.fallthrough();
  Common c;
  app.add_option("--cases", c.cases_dir, "Directory of model files used as the case registry");
  app.add_flag("--json", c.json, "Structured output");
  app.add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto add_params = [&](CLI::App* sub) {
    sub->add_option("--param", c.params, "Parameter value, name=value (repeatable)");
  };

  std::string model;
  auto* verify = app.add_subcommand("verify", "Verify a model file or case id");
  verify->add_option("model", model, "Model file or case id")->required();
  add_params(verify);

  std::string case_id;
  bool all = false, simple_only = false;
  std::vector<std::string> strip;
  std::string eps_value;
  auto* table1 = app.add_subcommand("table1", "Verify the case registry");
  table1->add_option("--case", case_id, "Case id");
  table1->add_flag("--all", all, "Every case and parameter value");
  table1->add_option("--eps", eps_value, "Value of eps for cases that take it");
  table1->add_flag("--simple-only", simple_only, "Only cases without a parent");
  table1->add_option("--strip", strip, "Delete these parent rules (e.g. v_t) from double-numbered cases");

  std::string eps, output;
  std::array<std::string, 7> e_single;
  auto* transform = app.add_subcommand("transform", "Apply an equivalence transformation and re-verify");
  transform->add_option("model", model, "Model file or case id")->required();
  transform->add_option("--eps", eps, "e1,...,e7");
  for (int i = 0; i < 7; ++i)
    transform->add_option("--e" + std::to_string(i + 1), e_single[i], "Single transformation parameter");
  transform->add_option("-o,--output", output, "Write the transformed model file here");
  add_params(transform);

  int deg_ut = 1, deg_ux = 1;
  bool check = false;
  auto* determine = app.add_subcommand("determine", "List the determining equations for a polynomial ansatz");
  determine->add_option("model", model, "Model file or case id")->required();
  determine->add_option("--deg-ut", deg_ut, "Degree in u_t");
  determine->add_option("--deg-ux", deg_ux, "Degree in u_x");
  determine->add_flag("--check", check, "Plug in the case law and print what remains");
  add_params(determine);

  auto* potential = app.add_subcommand("potential", "Show a potential system and its compatibility");
  potential->add_option("model", model, "Model file or case id")->required();
  add_params(potential);

  SampleOptions sopt;
  double tol = 1e-9;
  bool mutants = false;
  auto* sample = app.add_subcommand("sample", "Evaluate the law at random on-shell points");
  sample->add_option("model", model, "Model file or case id")->required();
  sample->add_option("-n", sopt.n, "Samples per instance")->check(CLI::PositiveNumber);
  sample->add_option("--seed", sopt.seed, "Random seed");
  sample->add_option("--tol", tol, "Pass threshold on the max residual");
  sample->add_flag("--mutants", mutants, "Also check that perturbed fluxes are detected");
  add_params(sample);

  SimFlags sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Finite-difference run tracking the conserved integral");
  simulate_cmd->add_option("model", model, "Model file or case id")->required();
  simulate_cmd->add_option("--instance", sim.instance, "Numeric instance (name or label)");
  simulate_cmd->add_option("--initial", sim.initial, "sine, bump, zero or an expression in x");
  simulate_cmd->add_option("--boundary", sim.boundary, "periodic or dirichlet");
  simulate_cmd->add_option("-n,--grid", sim.n, "Grid intervals")->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--t-end", sim.t_end, "End time");
  simulate_cmd->add_option("--x-min", sim.x_min, "Left end");
  simulate_cmd->add_option("--x-max", sim.x_max, "Right end");
  simulate_cmd->add_option("--dt", sim.dt, "Fixed time step (default: from the stability bound)");
  simulate_cmd->add_option("--safety", sim.safety, "Safety factor on the stability bound");
  simulate_cmd->add_option("--snapshots", sim.snapshots, "Time levels recorded");
  simulate_cmd->add_option("--tol", sim.tol, "Pass threshold on the drift");
  simulate_cmd->add_flag("--refine", sim.refine, "Also run at 2N and report the drift ratio");
  simulate_cmd->add_option("--csv", sim.csv, "Write the integral time series here");
  add_params(simulate_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*verify) return cmd_verify(model, c);
    if (*table1) {
      if (!eps_value.empty()) c.params.push_back("eps=" + eps_value);
      return cmd_table1(case_id, all, simple_only, strip, c);
    }
    if (*transform) {
      bool singles = std::any_of(e_single.begin(), e_single.end(), [](const std::string& s) { return !s.empty(); });
      if (singles) {
        if (!eps.empty()) throw InvalidTransform("give --eps or --e1..--e7, not both");
        std::array<std::string, 7> def{"0", "0", "0", "1", "1", "1", "0"};
        for (int i = 0; i < 7; ++i)
          if (!e_single[i].empty()) def[i] = e_single[i];
        eps = join({def.begin(), def.end()}, ",");
      }
      if (eps.empty()) eps = "0,0,0,1,1,1,0";
      return cmd_transform(model, eps, output, c);
    }
    if (*determine) return cmd_determine(model, deg_ut, deg_ux, check, c);
    if (*potential) return cmd_potential(model, c);
    if (*sample) return cmd_sample(model, sopt, tol, mutants, c);
    if (*simulate_cmd) return cmd_simulate(model, sim, c);
  } catch (const StabilityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
