#include "conslaw/expr.hpp"

#include "conslaw/errors.hpp"

namespace conslaw {

struct Expr::Node {
  Kind kind = Kind::constant;
  Rational value;
  std::optional<Indeterminate> symbol;
  std::vector<Expr> ops;
  int exponent = 0;
};

Expr::Expr() : node_(std::make_shared<Node>()) {}

Expr::Expr(const Rational& c) {
  auto n = std::make_shared<Node>();
  n->value = c;
  node_ = std::move(n);
}

Expr::Expr(const Indeterminate& v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::symbol;
  n->symbol = v;
  node_ = std::move(n);
}

Expr Expr::sum(std::vector<Expr> terms) {
  if (terms.empty()) return Expr();
  if (terms.size() == 1) return terms[0];
  auto n = std::make_shared<Node>();
  n->kind = Kind::sum;
  n->ops = std::move(terms);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::product(std::vector<Expr> factors) {
  if (factors.empty()) return Expr(1);
  if (factors.size() == 1) return factors[0];
  auto n = std::make_shared<Node>();
  n->kind = Kind::product;
  n->ops = std::move(factors);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::power(Expr base, int exponent) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::power;
  n->ops = {std::move(base)};
  n->exponent = exponent;
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::quotient(Expr num, Expr den) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::quotient;
  n->ops = {std::move(num), std::move(den)};
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::exp(Expr argument) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::exponential;
  n->ops = {std::move(argument)};
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr pow(const Expr& base, int exponent) { return Expr::power(base, exponent); }
Expr exp(const Expr& argument) { return Expr::exp(argument); }

Expr::Kind Expr::kind() const { return node_->kind; }
const Rational& Expr::value() const { return node_->value; }

const Indeterminate& Expr::symbol() const {
  if (!node_->symbol) throw Error("expression is not a symbol");
  return *node_->symbol;
}

const std::vector<Expr>& Expr::operands() const { return node_->ops; }
int Expr::exponent() const { return node_->exponent; }

RationalFunction Expr::canonical() const {
  switch (kind()) {
    case Kind::constant:
      return RationalFunction(value());
    case Kind::symbol:
      return RationalFunction(symbol());
    case Kind::sum: {
      RationalFunction r;
      for (const auto& op : operands()) r += op.canonical();
      return r;
    }
    case Kind::product: {
      RationalFunction r(1);
      for (const auto& op : operands()) {
        r *= op.canonical();
        if (r.is_zero()) {
          // Later factors may still be ill-defined (zero denominators).
          for (const auto& rest : operands()) rest.canonical();
          return r;
        }
      }
      return r;
    }
    case Kind::power:
      return operands()[0].canonical().pow(exponent());
    case Kind::quotient:
      return operands()[0].canonical() / operands()[1].canonical();
    case Kind::exponential:
      return exponential(operands()[0].canonical());
  }
  return {};
}

namespace {

Expr polynomial_to_expr(const Polynomial& p) {
  std::vector<Expr> terms;
  for (const auto& t : p.terms()) {
    std::vector<Expr> factors;
    if (t.coeff != 1 || t.monomial.is_one()) factors.emplace_back(t.coeff);
    for (const auto& [v, e] : t.monomial.factors()) {
      Expr base = v.is(IndeterminateKind::exponential) ? Expr::exp(Expr::from_canonical(v.argument())) : Expr(v);
      factors.push_back(e == 1 ? base : Expr::power(base, e));
    }
    terms.push_back(Expr::product(std::move(factors)));
  }
  return Expr::sum(std::move(terms));
}

int precedence(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::sum:
      return 1;
    case Expr::Kind::product:
    case Expr::Kind::quotient:
      return 2;
    case Expr::Kind::power:
      return 3;
    case Expr::Kind::constant:
      return (e.value() < 0 || e.value().get_den() != 1) ? 2 : 4;
    default:
      return 4;
  }
}

std::string print(const Expr& e);

std::string wrap(const Expr& e, int min_prec) {
  std::string s = print(e);
  return precedence(e) < min_prec ? "(" + s + ")" : s;
}

std::string print(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::constant:
      return e.value().get_str();
    case Expr::Kind::symbol:
      return e.symbol().str();
    case Expr::Kind::sum: {
      std::string s;
      for (std::size_t i = 0; i < e.operands().size(); ++i) {
        std::string t = wrap(e.operands()[i], 2);
        if (i == 0)
          s = t;
        else if (!t.empty() && t[0] == '-')
          s += " - " + t.substr(1);
        else
          s += " + " + t;
      }
      return s;
    }
    case Expr::Kind::product: {
      std::string s;
      const auto& ops = e.operands();
      for (std::size_t i = 0; i < ops.size(); ++i) {
        const Expr& f = ops[i];
        if (i == 0 && f.kind() == Expr::Kind::constant && ops.size() > 1) {
          if (f.value() == -1) {
            s = "-";
            continue;
          }
          s = f.value().get_str();
          continue;
        }
        std::string t = f.kind() == Expr::Kind::quotient ? "(" + print(f) + ")" : wrap(f, 3);
        if (!s.empty() && s != "-") s += "*";
        s += t;
      }
      return s;
    }
    case Expr::Kind::power: {
      std::string base = wrap(e.operands()[0], 4);
      return base + "^" + std::to_string(e.exponent());
    }
    case Expr::Kind::quotient:
      return wrap(e.operands()[0], 3) + "/" + wrap(e.operands()[1], 4);
    case Expr::Kind::exponential:
      return "exp(" + print(e.operands()[0]) + ")";
  }
  return {};
}

}  // namespace

Expr Expr::from_canonical(const RationalFunction& f) {
  Expr num = polynomial_to_expr(f.numerator());
  if (f.is_polynomial()) return num;
  return Expr::quotient(num, polynomial_to_expr(f.denominator()));
}

std::string Expr::str() const { return print(*this); }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Expr::Kind::constant:
      return a.value() == b.value();
    case Expr::Kind::symbol:
      return a.symbol() == b.symbol();
    case Expr::Kind::power:
      if (a.exponent() != b.exponent()) return false;
      break;
    default:
      break;
  }
  return a.operands() == b.operands();
}

}  // namespace conslaw
