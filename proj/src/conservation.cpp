#include "conslaw/conservation.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "conslaw/errors.hpp"

namespace conslaw {

namespace {

const Indeterminate& T() {
  static const Indeterminate v = Indeterminate::independent("t");
  return v;
}
const Indeterminate& X() {
  static const Indeterminate v = Indeterminate::independent("x");
  return v;
}

bool is_coordinate(const Indeterminate& v) {
  return v.is(IndeterminateKind::jet) || v.is(IndeterminateKind::independent);
}

std::set<Indeterminate> coordinates_of(const RationalFunction& f) {
  std::set<Indeterminate> out;
  for (const auto& v : f.all_indeterminates())
    if (is_coordinate(v)) out.insert(v);
  return out;
}

}  // namespace

std::string to_string(Level level) { return level == Level::base ? "base" : "potential"; }

Level level_from_string(const std::string& text) {
  if (text == "base") return Level::base;
  if (text == "potential") return Level::potential;
  throw InvalidModel("level must be 'base' or 'potential', got '" + text + "'");
}

std::vector<Indeterminate> ConservedVector::base_variables() {
  return {T(), X(), Indeterminate::jet("u", 0, 0), Indeterminate::jet("u", 1, 0), Indeterminate::jet("u", 0, 1)};
}

std::vector<Indeterminate> ConservedVector::potential_variables() {
  return {T(), X(), Indeterminate::jet("u", 0, 0), Indeterminate::jet("v", 0, 0)};
}

void ConservedVector::check_variables() const {
  if (variables.empty()) return;
  std::set<Indeterminate> allowed(variables.begin(), variables.end());
  for (const auto* part : {&F, &G})
    for (const auto& v : coordinates_of(*part))
      if (!allowed.count(v)) throw InvalidModel("conserved vector mentions undeclared variable " + v.str());
}

int order_of(const ConservedVector& cv) {
  int order = 0;
  for (const auto* part : {&cv.F, &cv.G})
    for (const auto& v : part->all_indeterminates())
      if (v.is(IndeterminateKind::jet)) order = std::max(order, v.order());
  return order;
}

VerificationReport verify_conservation_law(const ConservedVector& cv, const DifferentialSystem& sys) {
  auto start = std::chrono::steady_clock::now();
  cv.check_variables();
  for (const auto* part : {&cv.F, &cv.G})
    for (const auto& v : coordinates_of(*part))
      if (v.is(IndeterminateKind::jet) && v.name() != "u" && !sys.equation(v.name(), 'x'))
        throw InvalidModel("conserved vector uses " + v.name() + " but the system does not define it");
  VerificationReport report;
  std::set<Indeterminate> used;
  report.residual = sys.reduce(total_derivative(cv.F, 't') + total_derivative(cv.G, 'x'), &used);
  report.consequences.assign(used.begin(), used.end());
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

ConservedVector apply_trivial_shift(const ConservedVector& cv, const RationalFunction& H) {
  ConservedVector out = cv;
  out.F = cv.F + total_derivative(H, 'x');
  out.G = cv.G - total_derivative(H, 't');
  if (!out.variables.empty()) {
    std::set<Indeterminate> vars(out.variables.begin(), out.variables.end());
    for (const auto* part : {&out.F, &out.G})
      for (const auto& v : coordinates_of(*part)) vars.insert(v);
    out.variables.assign(vars.begin(), vars.end());
  }
  return out;
}

ConservedVector build_from_characteristic(const Characteristic& ch, const PDEModel& model) {
  RationalFunction u(Indeterminate::jet("u", 0, 0));
  RationalFunction ux(Indeterminate::jet("u", 0, 1));
  RationalFunction psi_x = partial_derivative(ch.psi, X());
  ConservedVector cv;
  cv.F = total_derivative(ch.phi, 'x') - ch.psi * u;
  cv.G = ch.chi - total_derivative(ch.phi, 't') + model.d() * ch.psi * ux + ch.psi * model.kint() -
         psi_x * model.dint();
  cv.variables = ConservedVector::base_variables();
  cv.level = Level::base;
  return cv;
}

ClassifyingResult check_classifying(const RationalFunction& psi, const PDEModel& model, const RelationSet& rels) {
  RelationSet rs = rels;
  rs.append(model.bindings());
  RationalFunction psi_x = partial_derivative(psi, X());
  RationalFunction raw =
      partial_derivative(psi, T()) + model.d() * partial_derivative(psi_x, X()) - model.k() * psi_x;
  ClassifyingResult out;
  out.residual = rs.reduce(raw);
  out.split = model.d_arbitrary() || model.k_arbitrary();
  if (!out.split) return out;
  std::vector<Indeterminate> vars;
  for (const auto& v : out.residual.indeterminates()) {
    bool arbitrary = (v.is(IndeterminateKind::function) && ((v.name() == "d" && model.d_arbitrary()) ||
                                                            (v.name() == "k" && model.k_arbitrary()))) ||
                     (v.is(IndeterminateKind::antiderivative) &&
                      ((v.name() == "Dint" && model.d_arbitrary()) || (v.name() == "Kint" && model.k_arbitrary())));
    if (arbitrary) vars.push_back(v);
  }
  // Coefficients of 1, d, k (and whatever else the model brings in).
  for (const auto& [m, c] : collect(out.residual, vars)) out.conditions.push_back({m.is_one() ? "1" : m.str(), c});
  for (const char* f : {"1", "d", "k"}) {
    bool present = std::any_of(out.conditions.begin(), out.conditions.end(),
                               [&](const ClassifyingCondition& c) { return c.factor == f; });
    bool relevant = std::string(f) == "1" || (std::string(f) == "d" && model.d_arbitrary()) ||
                    (std::string(f) == "k" && model.k_arbitrary());
    if (!present && relevant) out.conditions.push_back({f, RationalFunction()});
  }
  return out;
}

}  // namespace conslaw
