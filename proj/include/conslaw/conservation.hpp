#pragma once

#include <string>
#include <vector>

#include "conslaw/jet.hpp"

namespace conslaw {

enum class Level { base, potential };

std::string to_string(Level level);
Level level_from_string(const std::string& text);

// Conserved vector (F, G): D_t F + D_x G = 0 on solutions.
struct ConservedVector {
  RationalFunction F;
  RationalFunction G;
  // Allowed jets and independent variables; function symbols, antiderivatives
  // and parameters are always allowed. Empty means "whatever F, G mention".
  std::vector<Indeterminate> variables;
  Level level = Level::base;

  static std::vector<Indeterminate> base_variables();       // t, x, u, u_t, u_x
  static std::vector<Indeterminate> potential_variables();  // t, x, u, v

  // Throws InvalidModel when F or G mention an undeclared jet or variable.
  void check_variables() const;
};

// Highest jet order of u, v, w in F and G.
int order_of(const ConservedVector& cv);

struct VerificationReport {
  RationalFunction residual;
  std::vector<Indeterminate> consequences;  // jets rewritten during reduction
  double seconds = 0;

  bool zero() const { return residual.is_zero(); }
};

// residual = on-shell reduction of D_t F + D_x G.
VerificationReport verify_conservation_law(const ConservedVector& cv, const DifferentialSystem& sys);

// (F + D_x H, G - D_t H); the declared variables grow by what H brings in.
ConservedVector apply_trivial_shift(const ConservedVector& cv, const RationalFunction& H);

struct Characteristic {
  RationalFunction psi;  // in (t, x)
  RationalFunction phi;  // in (t, x, u), default 0
  RationalFunction chi;  // in t, default 0
};

// F = D_x phi - psi u, G = chi - D_t phi + d psi u_x + psi Kint - psi_x Dint.
ConservedVector build_from_characteristic(const Characteristic& ch, const PDEModel& model);

struct ClassifyingCondition {
  std::string factor;       // "1", "d", "k", ... : what the coefficient multiplies
  RationalFunction coefficient;
  bool holds() const { return coefficient.is_zero(); }
};

struct ClassifyingResult {
  RationalFunction residual;  // psi_t + d psi_xx - k psi_x, model applied
  bool split = false;         // d or k arbitrary: residual split over them
  std::vector<ClassifyingCondition> conditions;

  bool zero() const { return residual.is_zero(); }
};

// rels supplies function relations (e.g. a heat relation on psi).
ClassifyingResult check_classifying(const RationalFunction& psi, const PDEModel& model, const RelationSet& rels = {});

struct DeterminingEquation {
  std::string stage;  // "u_tt/u_tx" split or "u_t/u_x" split
  std::string label;  // coefficient of which monomial
  RationalFunction lhs;
};

struct DeterminingSystem {
  PDEModel model;
  int deg_ut = 0;
  int deg_ux = 0;
  SymbolTable symbols;  // declares the ansatz coefficients f_ij, g_ij of (t, x, u)
  RationalFunction F;   // sum f_ij u_t^i u_x^j
  RationalFunction G;
  std::vector<DeterminingEquation> equations;
  std::vector<std::string> notes;

  static std::string coefficient_name(char which, int i, int j);
};

// Substitutes u_xx from the equation into D_t F + D_x G, collects over
// (u_tt, u_tx), then the rest over powers of u_t and u_x. The ansatz
// coefficients may depend on d, k through u, so no split over them here.
DeterminingSystem derive_determining_system(const PDEModel& model, int deg_ut, int deg_ux,
                                            const RelationSet& rels = {});

// Binds f_ij, g_ij from a concrete (F, G) and reduces every equation; when d
// or k is arbitrary the result is split over d, k, their derivatives and the
// opaque antiderivatives.
// Throws NotPolynomial when (F, G) is outside the ansatz.
std::vector<DeterminingEquation> specialize(const DeterminingSystem& ds, const RationalFunction& F,
                                            const RationalFunction& G, const RelationSet& rels = {});

struct CharacteristicCheck {
  ClassifyingResult classifying;
  std::vector<DeterminingEquation> equations;  // specialized and split
  std::vector<std::string> failures;            // equations not in the ideal of the classifying conditions

  bool annihilated() const { return failures.empty(); }
};

// Plugs the characteristic-form law into the determining system and checks
// that what remains vanishes modulo the classifying equation.
CharacteristicCheck check_characteristic_solution(const DeterminingSystem& ds, const Characteristic& ch,
                                                  const RelationSet& rels = {});

}  // namespace conslaw
