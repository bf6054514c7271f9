#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "conslaw/equivalence.hpp"
#include "conslaw/errors.hpp"
#include "conslaw/parse.hpp"
#include "conslaw/simulate.hpp"

namespace py = pybind11;
using namespace conslaw;

namespace {

// Values may be ints, strings like "-1/2" or fractions.Fraction.
std::map<std::string, Rational> to_params(const py::dict& d) {
  std::map<std::string, Rational> out;
  for (const auto& [k, v] : d) out[py::str(k)] = parse_rational(py::str(v));
  return out;
}

py::dict verdict_dict(const CaseVerdict& v) {
  py::dict compat;
  for (const auto& [p, r] : v.compatibility) compat[py::str(p)] = r.str();
  py::dict d;
  d["case"] = v.run.label();
  d["passed"] = v.passed();
  d["residual"] = v.residual.str();
  d["compatibility"] = compat;
  d["generator_mismatch"] = v.generator_mismatch;
  d["error"] = v.error;
  d["seconds"] = v.seconds;
  return d;
}

CaseRun single_run(const std::string& id, const py::dict& params) {
  const Registry& reg = Registry::builtin();
  auto p = to_params(params);
  if (!p.empty()) return {id, p};
  auto runs = reg.runs_of(id);
  if (runs.size() != 1) throw InvalidModel("case " + id + " needs parameter values");
  return runs[0];
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Conservation-law verification for nonlinear diffusion-convection equations";

  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  m.def(
      "canonical", [](const std::string& text) { return parse(text, {}).canonical().str(); }, py::arg("text"),
      "Canonical form of an expression in t, x, u and its jets.");

  m.def("case_ids", [] { return Registry::builtin().ids(); });

  m.def(
      "verify",
      [](const std::string& id, const py::dict& params) {
        py::list out;
        const Registry& reg = Registry::builtin();
        auto p = to_params(params);
        std::vector<CaseRun> runs = p.empty() ? reg.runs_of(id) : std::vector<CaseRun>{{id, p}};
        for (const auto& r : runs) {
          reg.instantiate(r.id, r.parameters);
          out.append(verdict_dict(verify_case(reg, r)));
        }
        return out;
      },
      py::arg("case_id"), py::arg("params") = py::dict());

  m.def(
      "table1",
      [](unsigned jobs, bool simple_only, std::vector<std::string> strip) {
        Table1Options opt;
        opt.jobs = jobs;
        opt.simple_only = simple_only;
        opt.strip_parent_rules = std::move(strip);
        Table1Summary s;
        {
          py::gil_scoped_release release;
          s = verify_table1_all(Registry::builtin(), opt);
        }
        py::list out;
        for (const auto& v : s.verdicts) out.append(verdict_dict(v));
        return out;
      },
      py::arg("jobs") = 1, py::arg("simple_only") = false, py::arg("strip") = std::vector<std::string>{});

  m.def(
      "transform",
      [](const std::string& id, const std::string& eps, const py::dict& params) {
        CaseRun run = single_run(id, params);
        LoadedCase lc = Registry::builtin().instantiate(run.id, run.parameters);
        EquivTransform T = EquivTransform::parse(eps);
        DifferentialSystem sys = transform_system(T, lc.system);
        ConservedVector cv = transform_conserved_vector(T, *lc.law, lc.system);
        py::dict d;
        d["d"] = sys.model().d().str();
        d["k"] = sys.model().k().str();
        d["F"] = cv.F.str();
        d["G"] = cv.G.str();
        d["residual"] = verify_conservation_law(cv, sys).residual.str();
        d["compatible"] = verify_potential_system(sys).compatible();
        return d;
      },
      py::arg("case_id"), py::arg("eps"), py::arg("params") = py::dict());

  m.def(
      "sample",
      [](const std::string& id, std::size_t n, std::uint64_t seed, unsigned jobs, const py::dict& params) {
        CaseRun run = single_run(id, params);
        SampleOptions opt;
        opt.n = n;
        opt.seed = seed;
        opt.jobs = jobs;
        py::list out;
        for (const auto& nc : numeric_cases(Registry::builtin(), run)) {
          SampleReport r = sample_on_shell(*nc.loaded->law, nc, opt);
          py::dict d;
          d["instance"] = nc.label;
          d["max_residual"] = r.max_residual;
          d["samples"] = r.samples;
          d["resampled"] = r.resampled;
          out.append(d);
        }
        return out;
      },
      py::arg("case_id"), py::arg("n") = 1000, py::arg("seed") = 1, py::arg("jobs") = 1,
      py::arg("params") = py::dict());

  m.def(
      "simulate",
      [](const std::string& id, py::object initial, std::size_t n, double t_end, const std::string& boundary,
         std::size_t instance, double x_min, double x_max) {
        CaseRun run = single_run(id, py::dict());
        auto cases = numeric_cases(Registry::builtin(), run);
        if (instance >= cases.size()) throw InvalidModel("case " + id + " has " + std::to_string(cases.size()) + " instances");
        const NumericCase& nc = cases[instance];
        GridRun r;
        r.n = n;
        r.t_end = t_end;
        r.boundary = boundary_from_string(boundary);
        r.x_min = x_min;
        r.x_max = x_max;
        r.initial = [initial](double x) {
          py::gil_scoped_acquire gil;
          return initial(x).cast<double>();
        };
        Trajectory tr = simulate(r, nc.loaded->model);
        DriftReport rep = track_conserved(tr, *nc.loaded->law, nc);
        py::dict d;
        d["instance"] = nc.label;
        d["drift"] = rep.drift;
        d["relative"] = rep.relative;
        d["times"] = rep.times;
        d["integrals"] = rep.integrals;
        d["steps"] = tr.steps;
        d["x"] = tr.x;
        d["u"] = tr.snapshots.back().u;
        d["notes"] = rep.notes;
        return d;
      },
      py::arg("case_id"), py::arg("initial"), py::arg("n") = 800, py::arg("t_end") = 0.1,
      py::arg("boundary") = "periodic", py::arg("instance") = 0, py::arg("x_min") = 0.0,
      py::arg("x_max") = 6.283185307179586);

  m.def("heat_gaussian_error", &heat_gaussian_error, py::arg("n"), py::arg("t_end"), py::arg("s") = 0.25);
}
