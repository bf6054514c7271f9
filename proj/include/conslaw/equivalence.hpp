#pragma once

#include <array>
#include <random>
#include <string>

#include "conslaw/conservation.hpp"

namespace conslaw {

// t~ = e4 t + e1, x~ = e5 x + e7 t + e2, u~ = e6 u + e3 with e4 e5 e6 != 0.
// Under it d~ = e5^2/e4 d and k~ = (e5 k - e7)/e4.
class EquivTransform {
 public:
  EquivTransform();  // identity
  // Parameters in order e1..e7. Throws InvalidTransform when e4 e5 e6 = 0.
  explicit EquivTransform(const std::array<Rational, 7>& e);

  // "e1,e2,...,e7"; throws InvalidTransform.
  static EquivTransform parse(const std::string& text);
  // Sign flips: 't' for {t, d, k}, 'x' for {x, k}, 'u' for {u}.
  static EquivTransform involution(char which);
  // Small random rationals, any signs of e4, e5, e6.
  static EquivTransform random(std::mt19937_64& rng);

  const Rational& e(int i) const { return e_.at(i - 1); }
  const std::array<Rational, 7>& params() const { return e_; }
  bool is_identity() const;
  std::string str() const;

  bool operator==(const EquivTransform& o) const { return e_ == o.e_; }

 private:
  std::array<Rational, 7> e_;
};

// a after b.
EquivTransform compose(const EquivTransform& a, const EquivTransform& b);
EquivTransform inverse(const EquivTransform& T);

struct Point {
  Rational t, x, u;
  bool operator==(const Point& o) const { return t == o.t && x == o.x && u == o.u; }
};

Point apply_point(const EquivTransform& T, const Point& p);

// Rewrites an expression in old variables as one in the new (same names).
// Arbitrary d, k and opaque Dint, Kint become the transformed model's symbols;
// a function f of (t, x, ...) becomes f~ with f~(new point) = f(old point).
RationalFunction transform_expression(const EquivTransform& T, const RationalFunction& f);

PDEModel transform_model(const EquivTransform& T, const PDEModel& model);
// Declared functions with relations rewritten for f~.
SymbolTable transform_symbols(const EquivTransform& T, const SymbolTable& symbols);
// Model, functions and potential equations; parameters are kept.
DifferentialSystem transform_system(const EquivTransform& T, const DifferentialSystem& sys);
// F~ = F/e5, G~ = (e7 F + e5 G)/(e4 e5), in new variables. sys supplies the
// bindings applied before the change of variables.
ConservedVector transform_conserved_vector(const EquivTransform& T, const ConservedVector& cv,
                                           const DifferentialSystem& sys);

}  // namespace conslaw
