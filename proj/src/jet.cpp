#include "conslaw/jet.hpp"

#include <algorithm>
#include <functional>
#include <mutex>

#include "conslaw/errors.hpp"

namespace conslaw {

namespace {

const Indeterminate& U() {
  static const Indeterminate u = Indeterminate::jet("u", 0, 0);
  return u;
}

Indeterminate d_symbol() { return Indeterminate::function("d", {"u"}, {0}); }
Indeterminate k_symbol() { return Indeterminate::function("k", {"u"}, {0}); }

bool is_symbol(const RationalFunction& f, const Indeterminate& v) { return f == RationalFunction(v); }

}  // namespace

PDEModel::PDEModel()
    : d_(d_symbol()),
      k_(k_symbol()),
      dint_(Indeterminate::antiderivative("Dint")),
      kint_(Indeterminate::antiderivative("Kint")) {}

PDEModel::PDEModel(RationalFunction d, RationalFunction k, std::optional<RationalFunction> dint,
                   std::optional<RationalFunction> kint)
    : d_(std::move(d)),
      k_(std::move(k)),
      dint_(dint ? std::move(*dint) : RationalFunction(Indeterminate::antiderivative("Dint"))),
      kint_(kint ? std::move(*kint) : RationalFunction(Indeterminate::antiderivative("Kint"))) {}

bool PDEModel::d_arbitrary() const { return is_symbol(d_, d_symbol()); }
bool PDEModel::k_arbitrary() const { return is_symbol(k_, k_symbol()); }
bool PDEModel::dint_explicit() const { return !is_symbol(dint_, Indeterminate::antiderivative("Dint")); }
bool PDEModel::kint_explicit() const { return !is_symbol(kint_, Indeterminate::antiderivative("Kint")); }

RelationSet PDEModel::bindings() const {
  auto rule = std::make_shared<BindingRule>();
  if (!d_arbitrary()) rule->bind_function("d", d_);
  if (!k_arbitrary()) rule->bind_function("k", k_);
  if (dint_explicit()) rule->bind(Indeterminate::antiderivative("Dint"), dint_);
  if (kint_explicit()) rule->bind(Indeterminate::antiderivative("Kint"), kint_);
  RelationSet rs;
  if (!rule->empty()) rs.add(rule);
  return rs;
}

void PDEModel::validate(const RelationSet& extra) const {
  auto check_symbols = [](const RationalFunction& f, const char* what) {
    for (const auto& v : f.all_indeterminates()) {
      bool ok = v == U() || v.is(IndeterminateKind::antiderivative) || v.is(IndeterminateKind::parameter) ||
                v.is(IndeterminateKind::exponential) ||
                (v.is(IndeterminateKind::function) && (v.name() == "d" || v.name() == "k"));
      if (!ok) throw InvalidModel(std::string(what) + " may depend on u only, found " + v.str());
    }
  };
  check_symbols(d_, "d");
  check_symbols(k_, "k");
  check_symbols(dint_, "Dint");
  check_symbols(kint_, "Kint");
  RelationSet rels = extra;
  rels.append(bindings());
  try {
    if (rels.reduce(d_).is_zero()) throw InvalidModel("d must not vanish");
    if (dint_explicit() && !rels.reduce(partial_derivative(dint_, U()) - d_).is_zero())
      throw InvalidModel("Dint = " + dint_.str() + " is not an antiderivative of d = " + d_.str());
    if (kint_explicit() && !rels.reduce(partial_derivative(kint_, U()) - k_).is_zero())
      throw InvalidModel("Kint = " + kint_.str() + " is not an antiderivative of k = " + k_.str());
  } catch (const InvalidRelation& e) {
    throw InvalidModel(std::string("model definitions are circular: ") + e.what());
  } catch (const DivisionByZero& e) {
    throw InvalidModel(std::string("model has a vanishing denominator: ") + e.what());
  }
}

RationalFunction total_derivative(const RationalFunction& f, char wrt) {
  if (wrt != 't' && wrt != 'x') throw Error(std::string("total derivative with respect to '") + wrt + "'");
  const int dt = wrt == 't' ? 1 : 0;
  const int dx = 1 - dt;
  std::function<std::optional<RationalFunction>(const Indeterminate&)> rule;
  rule = [&](const Indeterminate& v) -> std::optional<RationalFunction> {
    switch (v.kind()) {
      case IndeterminateKind::independent:
        if (v.name()[0] == wrt) return RationalFunction(1);
        return std::nullopt;
      case IndeterminateKind::jet:
        return RationalFunction(Indeterminate::jet(v.name(), v.t_order() + dt, v.x_order() + dx));
      case IndeterminateKind::function: {
        RationalFunction r;
        const auto& args = v.args();
        for (std::size_t i = 0; i < args.size(); ++i) {
          RationalFunction chain;
          if (args[i] == "t" || args[i] == "x")
            chain = RationalFunction(args[i][0] == wrt ? 1 : 0);
          else
            chain = RationalFunction(Indeterminate::jet(args[i], dt, dx));
          if (chain.is_zero()) continue;
          std::vector<int> idx = v.index();
          ++idx[i];
          r += RationalFunction(v.with_index(std::move(idx))) * chain;
        }
        if (r.is_zero()) return std::nullopt;
        return r;
      }
      case IndeterminateKind::antiderivative:
        return RationalFunction(v.name() == "Dint" ? d_symbol() : k_symbol()) *
               RationalFunction(Indeterminate::jet("u", dt, dx));
      case IndeterminateKind::exponential: {
        RationalFunction da = apply_derivation(v.argument(), rule);
        if (da.is_zero()) return std::nullopt;
        return RationalFunction(v) * da;
      }
      default:
        return std::nullopt;
    }
  };
  return apply_derivation(f, rule);
}

Expr total_derivative(const Expr& e, char wrt) { return Expr::from_canonical(total_derivative(e.canonical(), wrt)); }

RationalFunction evolution_rhs() {
  RationalFunction d(d_symbol()), k(k_symbol());
  RationalFunction du(Indeterminate::function("d", {"u"}, {1}));
  RationalFunction ux(Indeterminate::jet("u", 0, 1)), uxx(Indeterminate::jet("u", 0, 2));
  return d * uxx + du * ux * ux + k * ux;
}

Indeterminate PotentialEquation::lhs() const {
  return Indeterminate::jet(potential, wrt == 't' ? 1 : 0, wrt == 'x' ? 1 : 0);
}

struct DifferentialSystem::Cache {
  std::recursive_mutex mutex;
  std::map<Indeterminate, std::optional<RationalFunction>> entries;
  std::vector<PotentialEquation> equations;
  int max_order = default_max_order;
  int depth = 0;
  RelationSet on_shell;  // base relations + non-owning consequence rule

  const PotentialEquation* find(const std::string& p, char wrt) const {
    for (const auto& e : equations)
      if (e.potential == p && e.wrt == wrt) return &e;
    return nullptr;
  }

  std::optional<RationalFunction> get(const Indeterminate& jet) {
    if (!jet.is(IndeterminateKind::jet)) return std::nullopt;
    std::lock_guard<std::recursive_mutex> lock(mutex);
    // The order bound applies to requests from outside; building an entry may
    // need higher intermediate ones (u_tt goes through u_txx).
    if (depth == 0 && jet.order() > max_order && defined(jet.name(), jet.t_order(), jet.x_order()))
      throw ClosureOrderError(jet.str(), jet.order(), max_order);
    auto it = entries.find(jet);
    if (it != entries.end()) return it->second;
    ++depth;
    std::optional<RationalFunction> r;
    try {
      r = compute(jet);
    } catch (...) {
      --depth;
      throw;
    }
    --depth;
    entries.emplace(jet, r);
    return r;
  }

  bool defined(const std::string& p, int a, int b) const {
    if (a + b == 0) return false;
    if (p == "u") return a >= 1;
    const PotentialEquation* X = find(p, 'x');
    const PotentialEquation* T = find(p, 't');
    if (a == 0) return X != nullptr;
    if (b == 0) return T != nullptr;
    return T != nullptr || X != nullptr;
  }

  RationalFunction step(const std::string& p, int a, int b, char wrt) {
    auto lower = get(Indeterminate::jet(p, a - (wrt == 't'), b - (wrt == 'x')));
    return on_shell.reduce(total_derivative(*lower, wrt));
  }

  std::optional<RationalFunction> compute(const Indeterminate& jet) {
    const std::string& p = jet.name();
    const int a = jet.t_order(), b = jet.x_order();
    if (!defined(p, a, b)) return std::nullopt;
    if (p == "u") {
      if (a == 1 && b == 0) return on_shell.reduce(evolution_rhs());
      return b >= 1 ? step(p, a, b, 'x') : step(p, a, b, 't');
    }
    const PotentialEquation* X = find(p, 'x');
    const PotentialEquation* T = find(p, 't');
    if (a == 0) return b == 1 ? on_shell.reduce(X->rhs) : step(p, a, b, 'x');
    if (b == 0) return a == 1 ? on_shell.reduce(T->rhs) : step(p, a, b, 't');
    // Mixed: through the x-direction when the t-rule makes (a, b-1) reducible.
    return T ? step(p, a, b, 'x') : step(p, a, b, 't');
  }
};

namespace {

class ConsequenceRule : public RewriteRule {
 public:
  explicit ConsequenceRule(std::shared_ptr<DifferentialSystem::Cache> cache) : cache_(std::move(cache)) {}
  std::optional<RationalFunction> rewrite(const Indeterminate& v) const override { return cache_->get(v); }
  std::string describe() const override { return "differential consequences"; }

 private:
  std::shared_ptr<DifferentialSystem::Cache> cache_;
};

}  // namespace

DifferentialSystem::DifferentialSystem(PDEModel model, SymbolTable symbols, std::map<std::string, Rational> parameters,
                                       int max_order)
    : model_(std::move(model)),
      symbols_(std::move(symbols)),
      parameters_(std::move(parameters)),
      max_order_(max_order) {
  if (max_order_ < 1) throw Error("closure order must be at least 1");
  for (const auto& [name, value] : parameters_)
    if (!symbols_.is_parameter(name)) throw InvalidModel("value given for undeclared parameter " + name);
  rebuild();
  model_.validate(relations_);
}

void DifferentialSystem::set_max_order(int n) {
  if (n < 1) throw Error("closure order must be at least 1");
  max_order_ = n;
  rebuild();
}

void DifferentialSystem::rebuild() {
  relations_ = symbols_.relations();
  if (!parameters_.empty()) {
    auto rule = std::make_shared<BindingRule>();
    for (const auto& [name, value] : parameters_) rule->bind(Indeterminate::parameter(name), RationalFunction(value));
    relations_.add(rule);
  }
  relations_.append(model_.bindings());

  cache_ = std::make_shared<Cache>();
  cache_->equations = equations_;
  cache_->max_order = max_order_;
  cache_->on_shell = relations_;
  // The cache's own rule must not own the cache.
  cache_->on_shell.add(std::make_shared<ConsequenceRule>(std::shared_ptr<Cache>(std::shared_ptr<Cache>(), cache_.get())));
  on_shell_ = relations_;
  on_shell_.add(std::make_shared<ConsequenceRule>(cache_));
}

void DifferentialSystem::add_equation(PotentialEquation eq) {
  if (!is_dependent_name(eq.potential) || eq.potential == "u")
    throw InvalidModel("potential equations define v or w, not " + eq.potential);
  if (eq.wrt != 'x' && eq.wrt != 't') throw InvalidModel("potential equations are for _x or _t");
  for (const auto& v : eq.rhs.all_indeterminates())
    if (v.is(IndeterminateKind::jet) && v.name() == eq.potential && v.order() > 0)
      throw InvalidModel("right-hand side of " + eq.lhs().str() + " mentions " + v.str());
  for (auto& e : equations_)
    if (e.potential == eq.potential && e.wrt == eq.wrt) {
      e = std::move(eq);
      rebuild();
      return;
    }
  equations_.push_back(std::move(eq));
  rebuild();
}

bool DifferentialSystem::remove_equation(const std::string& potential, char wrt) {
  for (auto it = equations_.begin(); it != equations_.end(); ++it)
    if (it->potential == potential && it->wrt == wrt) {
      equations_.erase(it);
      rebuild();
      return true;
    }
  return false;
}

const PotentialEquation* DifferentialSystem::equation(const std::string& potential, char wrt) const {
  for (const auto& e : equations_)
    if (e.potential == potential && e.wrt == wrt) return &e;
  return nullptr;
}

RationalFunction DifferentialSystem::reduce(const RationalFunction& f, std::set<Indeterminate>* used) const {
  if (!used) return on_shell_.reduce(f);
  std::set<Indeterminate> all;
  RationalFunction r = on_shell_.reduce(f, &all);
  for (const auto& v : all)
    if (v.is(IndeterminateKind::jet)) used->insert(v);
  return r;
}

Expr DifferentialSystem::reduce(const Expr& e) const { return Expr::from_canonical(reduce(e.canonical())); }

std::optional<RationalFunction> DifferentialSystem::consequence(const Indeterminate& jet) const {
  return cache_->get(jet);
}

std::map<Indeterminate, RationalFunction> DifferentialSystem::closure(int max_order) const {
  DifferentialSystem sys = *this;
  if (max_order > max_order_) sys.set_max_order(max_order);
  for (const auto& [p, r] : sys.compatibility_residuals())
    if (!r.is_zero())
      throw IncompatibleSystem("cross derivatives of " + p + " disagree on shell: " + r.str());
  std::map<Indeterminate, RationalFunction> out;
  std::vector<std::string> names{"u"};
  for (const auto& e : equations_)
    if (std::find(names.begin(), names.end(), e.potential) == names.end()) names.push_back(e.potential);
  for (const auto& p : names)
    for (int n = 1; n <= max_order; ++n)
      for (int a = 0; a <= n; ++a)
        if (auto c = sys.consequence(Indeterminate::jet(p, a, n - a))) out.emplace(Indeterminate::jet(p, a, n - a), *c);
  return out;
}

std::map<std::string, RationalFunction> DifferentialSystem::compatibility_residuals() const {
  std::map<std::string, RationalFunction> out;
  for (const auto& X : equations_) {
    if (X.wrt != 'x') continue;
    const PotentialEquation* T = equation(X.potential, 't');
    if (!T) continue;
    out[X.potential] = reduce(total_derivative(X.rhs, 't') - total_derivative(T->rhs, 'x'));
  }
  return out;
}

RationalFunction on_shell_reduce(const RationalFunction& f, const DifferentialSystem& sys) { return sys.reduce(f); }
Expr on_shell_reduce(const Expr& e, const DifferentialSystem& sys) { return sys.reduce(e); }

std::map<Indeterminate, RationalFunction> jet_closure(const DifferentialSystem& sys, int max_order) {
  return sys.closure(max_order);
}

}  // namespace conslaw
