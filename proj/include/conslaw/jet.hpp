#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "conslaw/symbols.hpp"

namespace conslaw {

// u_t = (d(u) u_x)_x + k(u) u_x. Arbitrary parts are kept as the function
// symbols d, k; antiderivatives without an explicit body stay opaque and
// are tied to d and k only through d(Dint)/du = d, d(Kint)/du = k.
class PDEModel {
 public:
  PDEModel();  // d, k arbitrary

  // Bodies are expressions in u, d, k, Dint, Kint and parameters. Passing the
  // symbol itself (d for d, Dint for Dint) leaves that part arbitrary/opaque.
  PDEModel(RationalFunction d, RationalFunction k, std::optional<RationalFunction> dint = std::nullopt,
           std::optional<RationalFunction> kint = std::nullopt);

  const RationalFunction& d() const { return d_; }
  const RationalFunction& k() const { return k_; }
  const RationalFunction& dint() const { return dint_; }
  const RationalFunction& kint() const { return kint_; }
  bool d_arbitrary() const;
  bool k_arbitrary() const;
  bool dint_explicit() const;
  bool kint_explicit() const;

  // Rules replacing d, k (and derivatives), Dint, Kint by their bodies.
  RelationSet bindings() const;

  // Throws InvalidModel: d = 0, wrong antiderivative, foreign symbols, cycles.
  // extra supplies parameter bindings and function relations.
  void validate(const RelationSet& extra = {}) const;

 private:
  RationalFunction d_, k_, dint_, kint_;
};

RationalFunction total_derivative(const RationalFunction& f, char wrt);
Expr total_derivative(const Expr& e, char wrt);

// v_x = rhs or v_t = rhs for a potential v or w.
struct PotentialEquation {
  std::string potential;
  char wrt = 'x';
  RationalFunction rhs;

  Indeterminate lhs() const;
};

// The base equation plus potential equations, with lazily built differential
// consequences. Copies share the consequence cache until modified.
class DifferentialSystem {
 public:
  static constexpr int default_max_order = 4;

  explicit DifferentialSystem(PDEModel model, SymbolTable symbols = {},
                              std::map<std::string, Rational> parameters = {},
                              int max_order = default_max_order);

  const PDEModel& model() const { return model_; }
  const SymbolTable& symbols() const { return symbols_; }
  const std::map<std::string, Rational>& parameters() const { return parameters_; }
  const std::vector<PotentialEquation>& equations() const { return equations_; }
  int max_order() const { return max_order_; }
  void set_max_order(int n);

  // Replaces an existing equation for the same lhs. Throws InvalidModel when
  // rhs mentions a derivative of the potential it defines.
  void add_equation(PotentialEquation eq);
  bool remove_equation(const std::string& potential, char wrt);
  const PotentialEquation* equation(const std::string& potential, char wrt) const;

  // Function relations, parameter values and model bindings (no consequences).
  const RelationSet& relations() const { return relations_; }
  // relations() plus the consequence rule.
  const RelationSet& on_shell() const { return on_shell_; }

  // Canonical on-shell coordinates: x-jet of u, v, w and their free
  // derivatives, function derivatives. Throws ClosureOrderError.
  RationalFunction reduce(const RationalFunction& f, std::set<Indeterminate>* used = nullptr) const;
  Expr reduce(const Expr& e) const;

  // Expression for a jet that is not an on-shell coordinate, nullopt otherwise.
  std::optional<RationalFunction> consequence(const Indeterminate& jet) const;

  // Every consequence up to max_order (t-derivatives of u, defined
  // derivatives of potentials). Throws IncompatibleSystem on a mismatch.
  std::map<Indeterminate, RationalFunction> closure(int max_order) const;

  // D_t(x-rule) - D_x(t-rule), reduced, for every potential having both.
  std::map<std::string, RationalFunction> compatibility_residuals() const;

  struct Cache;  // consequence table, shared by copies

 private:
  void rebuild();

  PDEModel model_;
  SymbolTable symbols_;
  std::map<std::string, Rational> parameters_;
  int max_order_;
  std::vector<PotentialEquation> equations_;
  RelationSet relations_;
  RelationSet on_shell_;
  std::shared_ptr<Cache> cache_;
};

RationalFunction on_shell_reduce(const RationalFunction& f, const DifferentialSystem& sys);
Expr on_shell_reduce(const Expr& e, const DifferentialSystem& sys);
std::map<Indeterminate, RationalFunction> jet_closure(const DifferentialSystem& sys, int max_order);

// Right-hand side d u_xx + d_u u_x^2 + k u_x with d, k as symbols.
RationalFunction evolution_rhs();

}  // namespace conslaw
