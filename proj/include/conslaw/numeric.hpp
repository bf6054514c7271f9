#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "conslaw/potential.hpp"

namespace conslaw {

// Double-precision evaluator for a rational function in t, x and jets.
class Evaluator {
 public:
  Evaluator() = default;
  // Throws UnboundSymbol when f still mentions functions, antiderivatives or
  // parameters.
  explicit Evaluator(const RationalFunction& f);

  const std::vector<Indeterminate>& variables() const { return vars_; }
  // values follow variables(). Throws PoleError on a vanishing denominator.
  double operator()(const std::vector<double>& values) const;
  // Same, reusing scratch between calls.
  double evaluate(const double* values, std::vector<double>& scratch) const;
  double at(const std::map<Indeterminate, double>& values) const;  // throws UnboundSymbol on a missing value

  // Denominator magnitude relative to the sum of its term magnitudes.
  double pole_distance(const std::vector<double>& values) const;

 private:
  struct Term {
    double coeff;
    std::vector<std::pair<int, int>> powers;  // slot, exponent
  };
  struct Exp {
    std::shared_ptr<const Evaluator> argument;
  };
  Evaluator(const RationalFunction& f, const std::vector<Indeterminate>& vars);
  static std::vector<Term> compile_poly(const Polynomial& p, std::map<Indeterminate, int>& slots,
                                        std::vector<Exp>& exps, const std::vector<Indeterminate>& vars);
  double eval_poly(const std::vector<Term>& p, const std::vector<double>& slots, double* magnitude) const;
  void fill(const double* values, std::vector<double>& slots) const;

  std::vector<Indeterminate> vars_;
  std::vector<Exp> exps_;  // slots vars_.size() + i
  std::vector<Term> num_, den_;
};

// Function bodies and model parts substituted, then compiled.
Evaluator compile(const RationalFunction& f, const RelationSet& bindings = {});

// Exact value at a rational point. Throws UnboundSymbol when f does not
// reduce to a constant (missing values, exponentials of nonzero arguments).
Rational evaluate_exact(const RationalFunction& f, const std::map<Indeterminate, Rational>& point);

// A case with concrete d, k and function bodies.
struct NumericCase {
  std::string label;
  std::shared_ptr<const LoadedCase> loaded;  // model without arbitrary parts
  RelationSet functions;                     // bodies of declared functions
  bool singular = false;                     // a model part has a pole in u

  RelationSet bindings() const;  // functions plus system relations
};

// One entry per [instances] model x combination of [numeric] function
// bodies. Throws InvalidModel when an instance leaves d or k arbitrary or a
// body violates its relation.
std::vector<NumericCase> numeric_cases(const Registry& registry, const CaseRun& run);

struct SampleOptions {
  std::size_t n = 1000;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  double u_min = -2, u_max = 2;  // overridden to [1/2, 2] for singular models
  double jet_range = 2;          // x-jet entries and potentials
  double pole_guard = 1e-3;      // resample when a denominator is this close to zero
};

struct SampleReport {
  double max_residual = 0;
  std::size_t samples = 0;
  std::size_t resampled = 0;  // points rejected near a pole
  std::map<std::string, double> worst_point;
  double seconds = 0;
};

// D_t F + D_x G evaluated off shell at random points, every dependent jet
// (t-derivatives, potential derivatives) computed numerically from its
// consequence. Throws PoleError when no admissible point is found.
SampleReport sample_on_shell(const ConservedVector& cv, const NumericCase& nc, const SampleOptions& options = {});

// G, with bindings applied, plus a tenth of one of its numerator terms; one
// mutant per term.
std::vector<ConservedVector> coefficient_mutants(const ConservedVector& cv, const RelationSet& bindings = {});

}  // namespace conslaw
