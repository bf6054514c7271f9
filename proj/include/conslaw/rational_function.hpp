#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "conslaw/polynomial.hpp"

namespace conslaw {

// Canonical quotient num/den: gcd(num, den) = 1, den monic, den = 1 when num = 0.
class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(const Rational& c) : num_(c), den_(1) {}  // NOLINT
  RationalFunction(long c) : RationalFunction(Rational(c)) {}  // NOLINT
  RationalFunction(Polynomial p) : num_(std::move(p)), den_(1) {}  // NOLINT
  explicit RationalFunction(const Indeterminate& v) : num_(v), den_(1) {}

  // Throws DivisionByZero when den is the zero polynomial.
  static RationalFunction quotient(const Polynomial& num, const Polynomial& den);

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rational constant_value() const;

  RationalFunction operator-() const;
  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const;
  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction operator/(const RationalFunction& o) const;
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  RationalFunction pow(int e) const;

  friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

  // Indeterminates of numerator and denominator (not inside exponential arguments).
  std::vector<Indeterminate> indeterminates() const;
  // Same, but also descending into exponential arguments.
  std::vector<Indeterminate> all_indeterminates() const;
  bool mentions(const Indeterminate& v) const;

  std::string str() const;

 private:
  Polynomial num_;
  Polynomial den_;
};

// exp(arg) in canonical form: a polynomial argument sum c_i m_i becomes the
// product of exp(m_i)^c_i for integer c_i; other parts stay opaque.
RationalFunction exponential(const RationalFunction& arg);

using IndeterminateMap =
    std::function<std::optional<RationalFunction>(const Indeterminate&)>;

// Simultaneous substitution. Indeterminates without an image are kept, except
// exponentials whose argument changes under the substitution.
RationalFunction substitute(const RationalFunction& f, const IndeterminateMap& image);
RationalFunction substitute(const RationalFunction& f,
                            const std::map<Indeterminate, RationalFunction>& bindings);

// The derivation with the given values on indeterminates (Leibniz + quotient rule).
// on_variable returns nullopt for indeterminates the derivation annihilates.
RationalFunction apply_derivation(const RationalFunction& f, const IndeterminateMap& on_variable);

// Partial derivative with every indeterminate independent, except for the
// structural rules: function derivatives depend on their formal arguments,
// dDint/du = d(u), dKint/du = k(u), exponentials by the chain rule.
RationalFunction partial_derivative(const RationalFunction& f, const Indeterminate& v);

// Coefficients of f as a polynomial in vars. Throws NotPolynomial when a var
// occurs in the denominator or inside an exponential argument.
std::map<Monomial, RationalFunction, MonomialLess> collect(const RationalFunction& f,
                                                          const std::vector<Indeterminate>& vars);

}  // namespace conslaw
