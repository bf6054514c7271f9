#include "conslaw/symbols.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "conslaw/errors.hpp"
#include "conslaw/parse.hpp"

namespace conslaw {

RationalFunction partial_along(const RationalFunction& body, const std::vector<std::string>& args,
                               const std::vector<int>& index) {
  RationalFunction r = body;
  for (std::size_t i = 0; i < index.size() && i < args.size(); ++i) {
    if (index[i] == 0) continue;
    Indeterminate var = argument_variable(args[i]);
    for (int j = 0; j < index[i]; ++j) r = partial_derivative(r, var);
  }
  return r;
}

namespace {

bool dominates(const std::vector<int>& m, const std::vector<int>& lead) {
  if (m.size() != lead.size()) return false;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] < lead[i]) return false;
  return true;
}

bool is_derivative_of(const Indeterminate& v, const std::string& name) {
  return v.is(IndeterminateKind::function) && v.name() == name;
}

}  // namespace

std::shared_ptr<const DerivativeRule> DerivativeRule::orient(const FuncSym& f, const RationalFunction& relation) {
  const Polynomial& n = relation.numerator();
  std::optional<Indeterminate> lead;
  for (const auto& v : relation.all_indeterminates()) {
    if (!is_derivative_of(v, f.name)) continue;
    if (!lead || v.index() > lead->index()) lead = v;
  }
  if (!lead) throw InvalidRelation("relation of " + f.name + " does not mention " + f.name);
  for (const auto& v : relation.all_indeterminates())
    if (v.is(IndeterminateKind::exponential) && v.argument().mentions(*lead))
      throw InvalidRelation("relation of " + f.name + " is not linear in " + lead->str());
  if (relation.denominator().mentions(*lead))
    throw InvalidRelation("relation of " + f.name + " has " + lead->str() + " in a denominator");
  auto parts = n.coefficients_in(*lead);
  if (parts.size() > 2 || !parts.count(1) || parts.rbegin()->first != 1)
    throw InvalidRelation("relation of " + f.name + " is not linear in " + lead->str());
  const Polynomial& c = parts.at(1);
  for (const auto& v : c.indeterminates())
    if (is_derivative_of(v, f.name))
      throw InvalidRelation("coefficient of " + lead->str() + " depends on " + v.str());
  Polynomial rest = parts.count(0) ? parts.at(0) : Polynomial();
  RationalFunction rhs = RationalFunction::quotient(-rest, c);
  return std::shared_ptr<const DerivativeRule>(new DerivativeRule(*lead, rhs));
}

std::optional<RationalFunction> DerivativeRule::rewrite(const Indeterminate& v) const {
  if (!is_derivative_of(v, lead_.name()) || !dominates(v.index(), lead_.index())) return std::nullopt;
  std::vector<int> extra(v.index().size());
  for (std::size_t i = 0; i < extra.size(); ++i) extra[i] = v.index()[i] - lead_.index()[i];
  return partial_along(rhs_, lead_.args(), extra);
}

std::string DerivativeRule::describe() const { return lead_.str() + " -> " + rhs_.str(); }

void BindingRule::bind_function(const std::string& name, RationalFunction body) {
  functions_[name] = std::move(body);
}

void BindingRule::bind(const Indeterminate& v, RationalFunction body) { exact_[v] = std::move(body); }

std::optional<RationalFunction> BindingRule::rewrite(const Indeterminate& v) const {
  if (v.is(IndeterminateKind::function)) {
    auto it = functions_.find(v.name());
    if (it != functions_.end()) return partial_along(it->second, v.args(), v.index());
  }
  auto it = exact_.find(v);
  if (it != exact_.end()) return it->second;
  return std::nullopt;
}

std::string BindingRule::describe() const {
  std::string s;
  for (const auto& [name, body] : functions_) s += (s.empty() ? "" : ", ") + name + " := " + body.str();
  for (const auto& [v, body] : exact_) s += (s.empty() ? "" : ", ") + v.str() + " := " + body.str();
  return s;
}

void RelationSet::add(std::shared_ptr<const RewriteRule> rule) { rules_.push_back(std::move(rule)); }

void RelationSet::append(const RelationSet& other) {
  rules_.insert(rules_.end(), other.rules_.begin(), other.rules_.end());
}

RationalFunction RelationSet::reduce(const RationalFunction& f, std::set<Indeterminate>* rewritten) const {
  if (rules_.empty()) return f;
  std::map<Indeterminate, std::optional<RationalFunction>> memo;
  std::set<Indeterminate> active;
  std::function<std::optional<RationalFunction>(const Indeterminate&)> image;
  image = [&](const Indeterminate& v) -> std::optional<RationalFunction> {
    if (v.is(IndeterminateKind::exponential) || v.is(IndeterminateKind::independent)) return std::nullopt;
    auto it = memo.find(v);
    if (it != memo.end()) return it->second;
    for (const auto& rule : rules_) {
      auto img = rule->rewrite(v);
      if (!img) continue;
      if (!active.insert(v).second) throw InvalidRelation("rewrite cycle through " + v.str());
      RationalFunction reduced = substitute(*img, image);
      active.erase(v);
      if (rewritten) rewritten->insert(v);
      memo.emplace(v, reduced);
      return reduced;
    }
    memo.emplace(v, std::nullopt);
    return std::nullopt;
  };
  return substitute(f, image);
}

SymbolTable::SymbolTable() {
  functions_.push_back(FuncSym{"d", {"u"}, {}});
  functions_.push_back(FuncSym{"k", {"u"}, {}});
}

bool SymbolTable::is_reserved(const std::string& name) const {
  static const std::set<std::string> reserved{"t", "x", "u", "v", "w", "Dint", "Kint", "exp"};
  return reserved.count(name) > 0;
}

const FuncSym* SymbolTable::function(const std::string& name) const {
  for (const auto& f : functions_)
    if (f.name == name) return &f;
  return nullptr;
}

bool SymbolTable::is_parameter(const std::string& name) const {
  return std::find(parameters_.begin(), parameters_.end(), name) != parameters_.end();
}

Indeterminate SymbolTable::symbol(const std::string& name) const {
  const FuncSym* f = function(name);
  if (!f) throw UnboundSymbol("unknown function symbol " + name);
  return Indeterminate::function(f->name, f->args, {});
}

namespace {

void check_identifier(const std::string& name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0])))
    throw InvalidRelation("invalid symbol name '" + name + "'");
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)))
      throw InvalidRelation("invalid symbol name '" + name + "'");
}

}  // namespace

void SymbolTable::declare_function(FuncSym f) {
  check_identifier(f.name);
  if (is_reserved(f.name) || function(f.name) || is_parameter(f.name))
    throw InvalidRelation("symbol '" + f.name + "' is already defined");
  if (f.args.empty()) throw InvalidRelation("function " + f.name + " needs at least one argument");
  std::set<std::string> seen;
  for (const auto& a : f.args) {
    if (a != "t" && a != "x" && !is_dependent_name(a))
      throw InvalidRelation("argument '" + a + "' of " + f.name + " must be one of t, x, u, v, w");
    if (!seen.insert(a).second) throw InvalidRelation("repeated argument '" + a + "' in " + f.name);
  }
  std::vector<std::shared_ptr<const DerivativeRule>> rules;
  for (const auto& rel : f.relations) {
    RationalFunction r = rel.canonical();
    for (const auto& v : r.all_indeterminates()) {
      switch (v.kind()) {
        case IndeterminateKind::independent:
          if (!seen.count(v.name()))
            throw InvalidRelation("relation of " + f.name + " mentions " + v.name() + ", not an argument");
          break;
        case IndeterminateKind::jet:
          if (v.order() != 0 || !seen.count(v.name()))
            throw InvalidRelation("relation of " + f.name + " mentions " + v.str());
          break;
        case IndeterminateKind::function:
          if (v.name() != f.name && !function(v.name()))
            throw InvalidRelation("relation of " + f.name + " mentions undeclared " + v.name());
          break;
        case IndeterminateKind::antiderivative:
          throw InvalidRelation("relation of " + f.name + " mentions " + v.str());
        default:
          break;
      }
    }
    auto rule = DerivativeRule::orient(f, r);
    for (const auto& other : rules)
      if (dominates(rule->lead().index(), other->lead().index()) ||
          dominates(other->lead().index(), rule->lead().index()))
        throw InvalidRelation("relations of " + f.name + " overlap at " + rule->lead().str() + " and " +
                              other->lead().str());
    rules.push_back(rule);
  }
  rules_.insert(rules_.end(), rules.begin(), rules.end());
  functions_.push_back(std::move(f));
}

void SymbolTable::declare_function(const std::string& name, std::vector<std::string> args,
                                   const std::vector<std::string>& relations) {
  SymbolTable scope = *this;
  scope.functions_.push_back(FuncSym{name, args, {}});
  FuncSym f{name, std::move(args), {}};
  for (const auto& text : relations) f.relations.push_back(parse(text, scope));
  declare_function(std::move(f));
}

void SymbolTable::declare_parameter(const std::string& name) {
  check_identifier(name);
  if (is_reserved(name) || function(name) || is_parameter(name))
    throw InvalidRelation("symbol '" + name + "' is already defined");
  parameters_.push_back(name);
}

RelationSet SymbolTable::relations() const {
  RelationSet rs;
  for (const auto& r : rules_) rs.add(r);
  return rs;
}

Expr normalize(const Expr& e, const RelationSet& rels) {
  return Expr::from_canonical(rels.reduce(e.canonical()));
}

Expr diff(const Expr& e, const Indeterminate& v) {
  return Expr::from_canonical(partial_derivative(e.canonical(), v));
}

Expr substitute(const Expr& e, const std::map<Indeterminate, Expr>& bindings) {
  auto rule = std::make_shared<BindingRule>();
  std::map<Indeterminate, RationalFunction> exact;
  for (const auto& [v, body] : bindings) {
    bool whole_function = v.is(IndeterminateKind::function) &&
                          std::all_of(v.index().begin(), v.index().end(), [](int i) { return i == 0; });
    if (whole_function)
      rule->bind_function(v.name(), body.canonical());
    else
      exact.emplace(v, body.canonical());
  }
  // Simultaneous: images are not rewritten again.
  RationalFunction f = e.canonical();
  RationalFunction r = substitute(f, [&](const Indeterminate& v) -> std::optional<RationalFunction> {
    auto it = exact.find(v);
    if (it != exact.end()) return it->second;
    return rule->rewrite(v);
  });
  return Expr::from_canonical(r);
}

std::map<Monomial, Expr, MonomialLess> collect(const Expr& e, const std::vector<Indeterminate>& vars,
                                               const RelationSet& rels) {
  std::map<Monomial, Expr, MonomialLess> out;
  for (const auto& [m, c] : collect(rels.reduce(e.canonical()), vars)) out.emplace(m, Expr::from_canonical(c));
  return out;
}

}  // namespace conslaw
