#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "conslaw/expr.hpp"

namespace conslaw {

// A declared function symbol with formal arguments from {t, x, u, v, w}
// and defining relations that must vanish identically.
struct FuncSym {
  std::string name;
  std::vector<std::string> args;
  std::vector<Expr> relations;
};

// One oriented rewrite rule. rewrite() returns the image of an indeterminate
// or nullopt when the rule does not apply. Images need not be reduced.
class RewriteRule {
 public:
  virtual ~RewriteRule() = default;
  virtual std::optional<RationalFunction> rewrite(const Indeterminate& v) const = 0;
  virtual std::string describe() const = 0;
};

// f_(m) -> d^(m - lead) rhs for every derivative m at or above the lead
// derivative (componentwise). Built from a relation linear in its lead.
class DerivativeRule : public RewriteRule {
 public:
  // relation = 0 is solved for its lexicographically highest derivative of f.
  static std::shared_ptr<const DerivativeRule> orient(const FuncSym& f, const RationalFunction& relation);

  std::optional<RationalFunction> rewrite(const Indeterminate& v) const override;
  std::string describe() const override;
  const Indeterminate& lead() const { return lead_; }
  const RationalFunction& rhs() const { return rhs_; }

 private:
  DerivativeRule(Indeterminate lead, RationalFunction rhs) : lead_(std::move(lead)), rhs_(std::move(rhs)) {}
  Indeterminate lead_;
  RationalFunction rhs_;
};

// Replaces function symbols (with all their derivatives), antiderivatives and
// parameters by explicit bodies.
class BindingRule : public RewriteRule {
 public:
  void bind_function(const std::string& name, RationalFunction body);
  void bind(const Indeterminate& v, RationalFunction body);
  bool empty() const { return functions_.empty() && exact_.empty(); }

  std::optional<RationalFunction> rewrite(const Indeterminate& v) const override;
  std::string describe() const override;

 private:
  std::map<std::string, RationalFunction> functions_;
  std::map<Indeterminate, RationalFunction> exact_;
};

class RelationSet {
 public:
  RelationSet() = default;

  void add(std::shared_ptr<const RewriteRule> rule);
  void append(const RelationSet& other);
  const std::vector<std::shared_ptr<const RewriteRule>>& rules() const { return rules_; }
  bool empty() const { return rules_.empty(); }

  // Rewrites to the fixpoint and returns the canonical result. When rewritten
  // is given, every indeterminate that some rule fired on is recorded.
  // Throws InvalidRelation on a rewrite cycle.
  RationalFunction reduce(const RationalFunction& f, std::set<Indeterminate>* rewritten = nullptr) const;

 private:
  std::vector<std::shared_ptr<const RewriteRule>> rules_;
};

class SymbolTable {
 public:
  // d(u) and k(u) are always declared and carry no relations.
  SymbolTable();

  // Validates the declaration and orients its relations. Throws InvalidRelation.
  void declare_function(FuncSym f);
  // Declares a function with relations given as text (parsed against this table
  // plus the new symbol).
  void declare_function(const std::string& name, std::vector<std::string> args,
                        const std::vector<std::string>& relations);
  void declare_parameter(const std::string& name);

  const FuncSym* function(const std::string& name) const;
  bool is_parameter(const std::string& name) const;
  bool is_reserved(const std::string& name) const;
  const std::vector<FuncSym>& functions() const { return functions_; }
  const std::vector<std::string>& parameters() const { return parameters_; }

  // Oriented rules of all defining relations, in declaration order.
  RelationSet relations() const;

  // Indeterminate of f with the zero multi-index.
  Indeterminate symbol(const std::string& name) const;

 private:
  std::vector<FuncSym> functions_;
  std::vector<std::shared_ptr<const DerivativeRule>> rules_;
  std::vector<std::string> parameters_;
};

// Expression-level operations. All results are in canonical form.
Expr normalize(const Expr& e, const RelationSet& rels = {});
Expr diff(const Expr& e, const Indeterminate& v);
// Simultaneous substitution. A key that is a function symbol with zero index
// binds the function: its derivatives follow the body.
Expr substitute(const Expr& e, const std::map<Indeterminate, Expr>& bindings);
std::map<Monomial, Expr, MonomialLess> collect(const Expr& e, const std::vector<Indeterminate>& vars,
                                               const RelationSet& rels = {});

// n-fold partial derivative of body along the formal arguments of a symbol.
RationalFunction partial_along(const RationalFunction& body, const std::vector<std::string>& args,
                               const std::vector<int>& index);

}  // namespace conslaw
