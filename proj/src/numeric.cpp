#include "conslaw/numeric.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <set>
#include <thread>

#include "conslaw/errors.hpp"

namespace conslaw {

namespace {

bool is_coordinate(const Indeterminate& v) {
  return v.is(IndeterminateKind::independent) || v.is(IndeterminateKind::jet);
}

void require_bound(const RationalFunction& f) {
  for (const auto& v : f.all_indeterminates())
    if (!is_coordinate(v) && !v.is(IndeterminateKind::exponential))
      throw UnboundSymbol("no numeric value for " + v.str());
}

std::vector<Indeterminate> coordinates(const RationalFunction& f) {
  std::set<Indeterminate> s;
  for (const auto& v : f.all_indeterminates())
    if (is_coordinate(v)) s.insert(v);
  return {s.begin(), s.end()};
}

}  // namespace

Evaluator::Evaluator(const RationalFunction& f) : Evaluator(f, (require_bound(f), coordinates(f))) {}

Evaluator::Evaluator(const RationalFunction& f, const std::vector<Indeterminate>& vars) : vars_(vars) {
  std::map<Indeterminate, int> slots;
  for (std::size_t i = 0; i < vars_.size(); ++i) slots[vars_[i]] = static_cast<int>(i);
  std::vector<Exp> exps;
  num_ = compile_poly(f.numerator(), slots, exps, vars_);
  den_ = compile_poly(f.denominator(), slots, exps, vars_);
  exps_ = std::move(exps);
}

std::vector<Evaluator::Term> Evaluator::compile_poly(const Polynomial& p, std::map<Indeterminate, int>& slots,
                                                     std::vector<Exp>& exps, const std::vector<Indeterminate>& vars) {
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    Term term{t.coeff.get_d(), {}};
    for (const auto& [v, e] : t.monomial.factors()) {
      auto it = slots.find(v);
      if (it == slots.end()) {
        if (!v.is(IndeterminateKind::exponential)) throw UnboundSymbol("no numeric value for " + v.str());
        int slot = static_cast<int>(vars.size() + exps.size());
        exps.push_back({std::make_shared<Evaluator>(Evaluator(v.argument(), vars))});
        it = slots.emplace(v, slot).first;
      }
      term.powers.emplace_back(it->second, e);
    }
    out.push_back(std::move(term));
  }
  return out;
}

void Evaluator::fill(const double* values, std::vector<double>& slots) const {
  slots.assign(values, values + vars_.size());
  std::vector<double> inner;
  for (const auto& e : exps_) slots.push_back(std::exp(e.argument->evaluate(values, inner)));
}

double Evaluator::eval_poly(const std::vector<Term>& p, const std::vector<double>& slots, double* magnitude) const {
  double sum = 0, mag = 0;
  for (const auto& t : p) {
    double v = t.coeff;
    for (const auto& [slot, e] : t.powers) v *= e == 1 ? slots[slot] : std::pow(slots[slot], e);
    sum += v;
    mag += std::abs(v);
  }
  if (magnitude) *magnitude = mag;
  return sum;
}

double Evaluator::operator()(const std::vector<double>& values) const {
  if (values.size() != vars_.size()) throw Error("evaluator expects " + std::to_string(vars_.size()) + " values");
  std::vector<double> slots;
  return evaluate(values.data(), slots);
}

double Evaluator::evaluate(const double* values, std::vector<double>& slots) const {
  fill(values, slots);
  double den = eval_poly(den_, slots, nullptr);
  if (den == 0 || !std::isfinite(den)) throw PoleError("denominator vanishes");
  return eval_poly(num_, slots, nullptr) / den;
}

double Evaluator::at(const std::map<Indeterminate, double>& values) const {
  std::vector<double> v;
  for (const auto& var : vars_) {
    auto it = values.find(var);
    if (it == values.end()) throw UnboundSymbol("no value given for " + var.str());
    v.push_back(it->second);
  }
  return (*this)(v);
}

double Evaluator::pole_distance(const std::vector<double>& values) const {
  if (den_.size() == 1 && den_[0].powers.empty()) return INFINITY;
  if (values.size() != vars_.size()) throw Error("evaluator expects " + std::to_string(vars_.size()) + " values");
  std::vector<double> slots;
  fill(values.data(), slots);
  double mag = 0;
  double den = eval_poly(den_, slots, &mag);
  return mag == 0 ? 0 : std::abs(den) / mag;
}

Evaluator compile(const RationalFunction& f, const RelationSet& bindings) { return Evaluator(bindings.reduce(f)); }

Rational evaluate_exact(const RationalFunction& f, const std::map<Indeterminate, Rational>& point) {
  std::map<Indeterminate, RationalFunction> image;
  for (const auto& [v, q] : point) image.emplace(v, RationalFunction(q));
  RationalFunction r = substitute(f, image);
  if (!r.numerator().is_constant() || !r.denominator().is_constant())
    throw UnboundSymbol("expression does not reduce to a number: " + r.str());
  return r.numerator().constant_value() / r.denominator().constant_value();
}

RelationSet NumericCase::bindings() const {
  RelationSet rs = functions;
  rs.append(loaded->system.relations());
  return rs;
}

std::vector<NumericCase> numeric_cases(const Registry& registry, const CaseRun& run) {
  const ModelFile* file = registry.find(run.id);
  if (!file) throw InvalidModel("unknown case id '" + run.id + "'");
  const ModelFile* parent = file->parent.empty() ? nullptr : registry.find(file->parent);

  std::vector<ModelInstance> instances = file->instances;
  if (instances.empty()) instances.push_back({"", {}});

  std::vector<NumericCase> out;
  for (const auto& inst : instances) {
    ModelFile f = *file;
    for (const auto& [name, body] : inst.bindings) {
      if (name == "d") f.d = body;
      if (name == "k") f.k = body;
      if (name == "Dint") f.dint = body;
      if (name == "Kint") f.kint = body;
    }
    LoadOptions opts;
    opts.parameters = run.parameters;
    opts.require_parameters = true;
    opts.parent = parent;
    auto lc = std::make_shared<LoadedCase>(load_case(f, opts));
    const PDEModel& m = lc->model;
    if (m.d_arbitrary() || m.k_arbitrary() || !m.dint_explicit() || !m.kint_explicit())
      throw InvalidModel("case " + run.id + (inst.name.empty() ? "" : " instance " + inst.name) +
                         " leaves part of the model arbitrary");

    RelationSet model_rules = lc->system.relations();
    bool singular = false;
    for (const auto* part : {&m.d(), &m.k(), &m.dint(), &m.kint()})
      if (!model_rules.reduce(*part).denominator().is_constant()) singular = true;

    // Cartesian product of the listed bodies per function.
    std::vector<std::vector<std::pair<std::string, std::string>>> combos{{}};
    for (const auto& fs : lc->symbols.functions()) {
      if (fs.name == "d" || fs.name == "k") continue;
      const std::string* bodies = nullptr;
      for (const auto& [name, b] : file->numeric)
        if (name == fs.name) bodies = &b;
      if (!bodies && parent)
        for (const auto& [name, b] : parent->numeric)
          if (name == fs.name) bodies = &b;
      if (!bodies) throw InvalidModel("case " + run.id + " gives no numeric body for " + fs.name);
      std::vector<std::vector<std::pair<std::string, std::string>>> next;
      for (const auto& c : combos)
        for (const auto& body : split_list(*bodies, ';')) {
          auto n = c;
          n.emplace_back(fs.name, body);
          next.push_back(std::move(n));
        }
      combos = std::move(next);
    }

    for (const auto& combo : combos) {
      auto rule = std::make_shared<BindingRule>();
      std::string label = CaseRun{run.id, run.parameters}.label();
      if (!inst.name.empty()) label += " " + inst.name;
      for (const auto& [name, body] : combo) {
        rule->bind_function(name, lc->parse_canonical(body));
        label += " " + name + "=" + body;
      }
      RelationSet fr;
      if (!rule->empty()) fr.add(rule);
      for (const auto& [name, body] : combo)
        for (const auto& rel : lc->symbols.function(name)->relations)
          if (!fr.reduce(rel.canonical()).is_zero())
            throw InvalidModel(name + " = " + body + " violates " + rel.str());
      out.push_back({label, lc, fr, singular});
    }
  }
  return out;
}

SampleReport sample_on_shell(const ConservedVector& cv, const NumericCase& nc, const SampleOptions& options) {
  auto start = std::chrono::steady_clock::now();
  const DifferentialSystem& sys = nc.loaded->system;
  RelationSet B = nc.bindings();
  RationalFunction R = B.reduce(total_derivative(cv.F, 't') + total_derivative(cv.G, 'x'));

  // Dependent jets, in an order where each only needs free coordinates.
  std::vector<Indeterminate> dependent;
  std::vector<Evaluator> dep_eval;
  std::set<Indeterminate> free_set;
  for (const auto& v : coordinates(R)) {
    if (v.is(IndeterminateKind::jet))
      if (auto c = sys.consequence(v)) {
        dependent.push_back(v);
        dep_eval.push_back(compile(*c, B));
        for (const auto& w : dep_eval.back().variables()) free_set.insert(w);
        continue;
      }
    free_set.insert(v);
  }
  for (const auto& v : free_set)
    if (v.is(IndeterminateKind::jet) && sys.consequence(v))
      throw Error("consequence of a dependent jet mentions the dependent jet " + v.str());
  std::vector<Indeterminate> free(free_set.begin(), free_set.end());
  Evaluator residual(R);

  double u_min = options.u_min, u_max = options.u_max;
  if (nc.singular) u_min = 0.5, u_max = 2;

  struct Partial {
    double max = 0;
    std::size_t resampled = 0;
    std::map<std::string, double> worst;
  };
  auto run_range = [&](std::size_t begin, std::size_t end, Partial& part) {
    std::map<Indeterminate, double> values;
    for (std::size_t i = begin; i < end; ++i) {
      std::mt19937_64 rng(options.seed * 0x9E3779B97F4A7C15ull + i);
      std::size_t attempts = 0;
      while (true) {
        if (++attempts > 1000) throw PoleError("no admissible sample point away from poles");
        for (const auto& v : free) {
          double lo = -options.jet_range, hi = options.jet_range;
          if (v.is(IndeterminateKind::independent)) lo = -1, hi = 1;
          if (v.is(IndeterminateKind::jet) && v.name() == "u" && v.order() == 0) lo = u_min, hi = u_max;
          values[v] = std::uniform_real_distribution<double>(lo, hi)(rng);
        }
        bool near_pole = false;
        auto point = [&](const Evaluator& e) {
          std::vector<double> p;
          for (const auto& w : e.variables()) p.push_back(values.at(w));
          return p;
        };
        for (std::size_t j = 0; j < dependent.size() && !near_pole; ++j) {
          auto p = point(dep_eval[j]);
          if (dep_eval[j].pole_distance(p) < options.pole_guard) near_pole = true;
          else values[dependent[j]] = dep_eval[j](p);
        }
        std::vector<double> p;
        if (!near_pole) {
          p = point(residual);
          near_pole = residual.pole_distance(p) < options.pole_guard;
        }
        if (near_pole) {
          ++part.resampled;
          continue;
        }
        double r = std::abs(residual(p));
        if (!(r <= part.max)) {
          part.max = r;
          part.worst.clear();
          for (const auto& [v, x] : values) part.worst[v.str()] = x;
        }
        break;
      }
    }
  };

  unsigned jobs = std::max(1u, options.jobs);
  std::vector<Partial> parts(jobs);
  if (jobs == 1) {
    run_range(0, options.n, parts[0]);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(jobs);
    for (unsigned j = 0; j < jobs; ++j)
      pool.emplace_back([&, j] {
        try {
          run_range(options.n * j / jobs, options.n * (j + 1) / jobs, parts[j]);
        } catch (...) {
          errors[j] = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  SampleReport report;
  report.samples = options.n;
  for (const auto& p : parts) {
    report.resampled += p.resampled;
    if (p.max > report.max_residual || report.worst_point.empty()) {
      report.max_residual = p.max;
      report.worst_point = p.worst;
    }
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<ConservedVector> coefficient_mutants(const ConservedVector& cv, const RelationSet& bindings) {
  std::vector<ConservedVector> out;
  RationalFunction G = bindings.reduce(cv.G);
  RationalFunction den(G.denominator());
  for (const auto& t : G.numerator().terms()) {
    ConservedVector m = cv;
    m.F = bindings.reduce(cv.F);
    m.G = G + RationalFunction(Polynomial(t.monomial, t.coeff * Rational(1, 10))) / den;
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace conslaw
