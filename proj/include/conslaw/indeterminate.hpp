#pragma once

#include <compare>
#include <memory>
#include <string>
#include <vector>

namespace conslaw {

class RationalFunction;

enum class IndeterminateKind : unsigned char {
  independent,     // t or x
  jet,             // partial derivative of a dependent variable u, v or w
  function,        // partial derivative of a declared function symbol
  antiderivative,  // Dint or Kint
  parameter,       // named constant such as eps
  exponential,     // exp(argument), argument in canonical form
};

// A polynomial variable of the canonical form. Values are immutable and cheap
// to copy; identity and ordering are given by a precomputed key.
class Indeterminate {
 public:
  static Indeterminate independent(const std::string& name);
  static Indeterminate jet(const std::string& dependent, int t_order, int x_order);
  static Indeterminate function(const std::string& name, std::vector<std::string> args,
                                std::vector<int> index);
  static Indeterminate antiderivative(const std::string& name);
  static Indeterminate parameter(const std::string& name);
  static Indeterminate exponential(const RationalFunction& argument);

  IndeterminateKind kind() const;
  bool is(IndeterminateKind k) const { return kind() == k; }

  // Base name: "t", "u", "alpha", "Dint", "eps"; "exp" for exponentials.
  const std::string& name() const;
  // Formal arguments of a function symbol.
  const std::vector<std::string>& args() const;
  // Jets: {t_order, x_order}. Functions: one entry per formal argument.
  const std::vector<int>& index() const;
  int t_order() const;
  int x_order() const;
  int order() const;
  const RationalFunction& argument() const;

  // Same symbol with another derivative multi-index (jets and functions).
  Indeterminate with_index(std::vector<int> index) const;

  const std::string& key() const;
  // Printable form in the expression grammar, e.g. "u_tx", "alpha_xx", "exp(x)".
  const std::string& str() const;

  friend bool operator==(const Indeterminate& a, const Indeterminate& b) {
    return a.data_ == b.data_ || a.key() == b.key();
  }
  friend std::strong_ordering operator<=>(const Indeterminate& a, const Indeterminate& b) {
    if (a.data_ == b.data_) return std::strong_ordering::equal;
    int c = a.key().compare(b.key());
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  struct Data;
  explicit Indeterminate(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  std::shared_ptr<const Data> data_;
};

// Indeterminate for a plain variable name used as a formal argument:
// t and x are independent variables, u, v, w are zeroth-order jets.
Indeterminate argument_variable(const std::string& name);

bool is_dependent_name(const std::string& name);

}  // namespace conslaw
