#pragma once

#include <gmpxx.h>

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conslaw/indeterminate.hpp"

namespace conslaw {

using Rational = mpq_class;

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

// Power product of indeterminates; factors sorted by indeterminate, exponents > 0.
class Monomial {
 public:
  using Factor = std::pair<Indeterminate, int>;

  Monomial() = default;
  explicit Monomial(const Indeterminate& v, int exponent = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  int degree(const Indeterminate& v) const;
  int total_degree() const;

  Monomial operator*(const Monomial& other) const;
  bool divides(const Monomial& other) const;
  // Requires divisor.divides(*this).
  Monomial operator/(const Monomial& divisor) const;
  Monomial pow(int e) const;

  // Componentwise minimum.
  static Monomial gcd(const Monomial& a, const Monomial& b);

  friend bool operator==(const Monomial&, const Monomial&) = default;

  std::string str() const;

 private:
  static Monomial from_sorted(std::vector<Factor> f) {
    Monomial m;
    m.factors_ = std::move(f);
    return m;
  }
  std::vector<Factor> factors_;
};

// Pure lexicographic order, smaller indeterminate keys most significant.
// Returns >0 when a ranks above b.
int lex_compare(const Monomial& a, const Monomial& b);

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return lex_compare(a, b) < 0; }
};

// Sparse multivariate polynomial over the rationals; terms sorted by
// descending lexicographic order, no zero coefficients.
class Polynomial {
 public:
  struct Term {
    Monomial monomial;
    Rational coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };

  Polynomial() = default;
  Polynomial(const Rational& c);  // NOLINT(google-explicit-constructor)
  Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT
  explicit Polynomial(const Indeterminate& v, int exponent = 1);
  Polynomial(Monomial m, Rational c);

  static Polynomial from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  Rational constant_value() const;  // requires is_constant()
  const Term& leading_term() const { return terms_.front(); }

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rational& c) const;
  Polynomial mul_term(const Monomial& m, const Rational& c) const;
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  Polynomial pow(unsigned e) const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  std::vector<Indeterminate> indeterminates() const;
  bool mentions(const Indeterminate& v) const;
  int degree(const Indeterminate& v) const;

  // Formal partial derivative with respect to v as an independent variable.
  Polynomial partial(const Indeterminate& v) const;

  // Univariate view: exponent of v -> coefficient.
  std::map<int, Polynomial> coefficients_in(const Indeterminate& v) const;

  // Coefficient decomposition: monomials in the selected indeterminates
  // mapped to polynomial coefficients in the rest.
  std::map<Monomial, Polynomial, MonomialLess> split(
      const std::function<bool(const Indeterminate&)>& selected) const;

  Monomial monomial_content() const;
  Polynomial divide_monomial(const Monomial& m) const;

  // Scale so the leading coefficient is 1.
  Polynomial monic() const;

  std::string str() const;

 private:
  std::vector<Term> terms_;
};

int compare(const Polynomial& a, const Polynomial& b);

struct PolynomialLess {
  bool operator()(const Polynomial& a, const Polynomial& b) const { return compare(a, b) < 0; }
};

// Exact quotient a / b, or nullopt when b does not divide a.
std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b);

// Monic greatest common divisor over Q; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

}  // namespace conslaw
