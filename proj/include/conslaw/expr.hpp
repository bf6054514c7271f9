#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "conslaw/rational_function.hpp"

namespace conslaw {

// Immutable expression tree. Quotients stay unexpanded until canonical() or
// normalize(); trees are shared, so copies are cheap and thread-safe.
class Expr {
 public:
  enum class Kind : unsigned char { constant, symbol, sum, product, power, quotient, exponential };

  Expr();  // zero
  Expr(const Rational& c);  // NOLINT(google-explicit-constructor)
  Expr(long c) : Expr(Rational(c)) {}  // NOLINT
  Expr(int c) : Expr(Rational(c)) {}  // NOLINT
  explicit Expr(const Indeterminate& v);

  static Expr sum(std::vector<Expr> terms);
  static Expr product(std::vector<Expr> factors);
  static Expr power(Expr base, int exponent);
  static Expr quotient(Expr num, Expr den);
  static Expr exp(Expr argument);

  Kind kind() const;
  const Rational& value() const;            // constant
  const Indeterminate& symbol() const;      // symbol
  const std::vector<Expr>& operands() const;  // sum, product, power base, quotient, exponential
  int exponent() const;                     // power

  bool is_zero_constant() const { return kind() == Kind::constant && value() == 0; }

  // Canonical quotient form; no relations applied. Throws DivisionByZero.
  RationalFunction canonical() const;
  static Expr from_canonical(const RationalFunction& f);

  std::string str() const;

  friend bool operator==(const Expr& a, const Expr& b);

  friend Expr operator+(const Expr& a, const Expr& b) { return sum({a, b}); }
  friend Expr operator-(const Expr& a, const Expr& b) { return sum({a, product({Expr(-1), b})}); }
  friend Expr operator*(const Expr& a, const Expr& b) { return product({a, b}); }
  friend Expr operator/(const Expr& a, const Expr& b) { return quotient(a, b); }
  Expr operator-() const { return product({Expr(-1), *this}); }

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

Expr pow(const Expr& base, int exponent);
Expr exp(const Expr& argument);

}  // namespace conslaw
