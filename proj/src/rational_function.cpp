#include "conslaw/rational_function.hpp"

#include <set>

#include "conslaw/errors.hpp"

namespace conslaw {

RationalFunction RationalFunction::quotient(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw DivisionByZero("division by an expression that normalizes to zero");
  RationalFunction r;
  if (num.is_zero()) return r;
  if (den.is_constant()) {
    r.num_ = num * (1 / den.constant_value());
    return r;
  }
  Polynomial g = gcd(num, den);
  Polynomial n = num;
  Polynomial d = den;
  if (!g.is_constant()) {
    n = *divide_exact(num, g);
    d = *divide_exact(den, g);
  }
  Rational lc = d.leading_term().coeff;
  if (lc != 1) {
    Rational inv = 1 / lc;
    n = n * inv;
    d = d * inv;
  }
  r.num_ = std::move(n);
  r.den_ = std::move(d);
  return r;
}

Rational RationalFunction::constant_value() const {
  if (!is_constant()) throw Error("expression is not constant: " + str());
  return num_.constant_value();
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  RationalFunction r;
  if (den_.is_constant() && o.den_.is_constant()) {
    r.num_ = num_ + o.num_;
    return r;
  }
  if (den_ == o.den_) return quotient(num_ + o.num_, den_);
  // Only one side has a denominator: the sum is already reduced.
  if (o.den_.is_constant()) {
    r.num_ = num_ + o.num_ * den_;
    r.den_ = den_;
    return r;
  }
  if (den_.is_constant()) {
    r.num_ = num_ * o.den_ + o.num_;
    r.den_ = o.den_;
    return r;
  }
  Polynomial g = gcd(den_, o.den_);
  if (g.is_constant()) {
    r.num_ = num_ * o.den_ + o.num_ * den_;
    r.den_ = den_ * o.den_;
    return r;
  }
  Polynomial d1 = *divide_exact(den_, g);
  Polynomial d2 = *divide_exact(o.den_, g);
  Polynomial t = num_ * d2 + o.num_ * d1;
  if (t.is_zero()) return r;
  Polynomial g2 = gcd(t, g);
  if (!g2.is_constant()) {
    t = *divide_exact(t, g2);
    g = *divide_exact(g, g2);
  }
  // denominators are monic, so the product is monic too
  r.num_ = std::move(t);
  r.den_ = d1 * d2 * g;
  return r;
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const { return *this + (-o); }

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  if (is_zero() || o.is_zero()) return {};
  RationalFunction r;
  if (den_.is_constant() && o.den_.is_constant()) {
    r.num_ = num_ * o.num_;
    return r;
  }
  Polynomial n1 = num_;
  Polynomial d2 = o.den_;
  Polynomial n2 = o.num_;
  Polynomial d1 = den_;
  if (!d2.is_constant()) {
    Polynomial g = gcd(n1, d2);
    if (!g.is_constant()) {
      n1 = *divide_exact(n1, g);
      d2 = *divide_exact(d2, g);
    }
  }
  if (!d1.is_constant()) {
    Polynomial g = gcd(n2, d1);
    if (!g.is_constant()) {
      n2 = *divide_exact(n2, g);
      d1 = *divide_exact(d1, g);
    }
  }
  Polynomial d = d1 * d2;
  Rational lc = d.leading_term().coeff;
  r.num_ = n1 * n2;
  r.den_ = std::move(d);
  if (lc != 1) {
    Rational inv = 1 / lc;
    r.num_ = r.num_ * inv;
    r.den_ = r.den_ * inv;
  }
  return r;
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
  if (o.is_zero()) throw DivisionByZero("division by an expression that normalizes to zero");
  RationalFunction inv;
  inv.num_ = o.den_;
  inv.den_ = o.num_;
  Rational lc = inv.den_.leading_term().coeff;
  if (lc != 1) {
    Rational s = 1 / lc;
    inv.num_ = inv.num_ * s;
    inv.den_ = inv.den_ * s;
  }
  return *this * inv;
}

RationalFunction RationalFunction::pow(int e) const {
  if (e == 0) return RationalFunction(1);
  if (e < 0) return RationalFunction(1) / pow(-e);
  RationalFunction r;
  r.num_ = num_.pow(static_cast<unsigned>(e));
  r.den_ = den_.pow(static_cast<unsigned>(e));
  return r;
}

std::vector<Indeterminate> RationalFunction::indeterminates() const {
  std::set<Indeterminate> s;
  for (const auto& v : num_.indeterminates()) s.insert(v);
  for (const auto& v : den_.indeterminates()) s.insert(v);
  return {s.begin(), s.end()};
}

std::vector<Indeterminate> RationalFunction::all_indeterminates() const {
  std::set<Indeterminate> s;
  for (const auto& v : indeterminates()) {
    s.insert(v);
    if (v.is(IndeterminateKind::exponential))
      for (const auto& w : v.argument().all_indeterminates()) s.insert(w);
  }
  return {s.begin(), s.end()};
}

bool RationalFunction::mentions(const Indeterminate& v) const {
  for (const auto& w : all_indeterminates())
    if (w == v) return true;
  return false;
}

std::string RationalFunction::str() const {
  if (den_.is_constant()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

RationalFunction exponential(const RationalFunction& arg) {
  if (arg.is_zero()) return RationalFunction(1);
  if (!arg.is_polynomial()) return RationalFunction(Indeterminate::exponential(arg));
  RationalFunction result(1);
  for (const auto& t : arg.numerator().terms()) {
    if (t.coeff.get_den() == 1 && t.coeff.get_num().fits_sint_p()) {
      int c = static_cast<int>(t.coeff.get_num().get_si());
      RationalFunction base(Indeterminate::exponential(RationalFunction(Polynomial(t.monomial, 1))));
      result = result * base.pow(c);
    } else {
      result = result * RationalFunction(Indeterminate::exponential(RationalFunction(Polynomial(t.monomial, t.coeff))));
    }
  }
  return result;
}

namespace {

struct PowerCache {
  std::map<std::pair<Indeterminate, int>, RationalFunction> powers;
  const RationalFunction& get(const Indeterminate& v, int e, const RationalFunction& base) {
    auto key = std::make_pair(v, e);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    return powers.emplace(key, base.pow(e)).first->second;
  }
};

// Sums num_i/den_i, grouping equal denominators before any gcd work.
class QuotientAccumulator {
 public:
  void add(const Polynomial& num, const Polynomial& den) {
    if (num.is_zero()) return;
    auto it = groups_.find(den);
    if (it == groups_.end())
      groups_.emplace(den, num);
    else
      it->second += num;
  }
  RationalFunction result() const {
    RationalFunction r;
    for (const auto& [den, num] : groups_) r += RationalFunction::quotient(num, den);
    return r;
  }

 private:
  std::map<Polynomial, Polynomial, PolynomialLess> groups_;
};

}  // namespace

RationalFunction substitute(const RationalFunction& f, const IndeterminateMap& image) {
  std::map<Indeterminate, std::optional<RationalFunction>> cache;
  auto lookup = [&](const Indeterminate& v) -> const std::optional<RationalFunction>& {
    auto it = cache.find(v);
    if (it != cache.end()) return it->second;
    std::optional<RationalFunction> img = image(v);
    if (!img && v.is(IndeterminateKind::exponential)) {
      RationalFunction arg = substitute(v.argument(), image);
      if (!(arg == v.argument())) img = exponential(arg);
    }
    return cache.emplace(v, std::move(img)).first->second;
  };
  PowerCache powers;
  auto eval = [&](const Polynomial& p) -> RationalFunction {
    std::map<Monomial, std::vector<Polynomial::Term>, MonomialLess> groups;
    bool changed = false;
    for (const auto& t : p.terms()) {
      Monomial kept;
      Monomial moved;
      for (const auto& [v, e] : t.monomial.factors()) {
        if (lookup(v)) {
          moved = moved * Monomial(v, e);
          changed = true;
        } else {
          kept = kept * Monomial(v, e);
        }
      }
      groups[moved].push_back({std::move(kept), t.coeff});
    }
    if (!changed) return RationalFunction(p);
    QuotientAccumulator acc;
    for (auto& [moved, terms] : groups) {
      Polynomial kept = Polynomial::from_terms(std::move(terms));
      RationalFunction prod(1);
      for (const auto& [v, e] : moved.factors()) prod = prod * powers.get(v, e, *lookup(v));
      acc.add(kept * prod.numerator(), prod.denominator());
    }
    return acc.result();
  };
  RationalFunction num = eval(f.numerator());
  if (f.is_polynomial()) return num;
  return num / eval(f.denominator());
}

RationalFunction substitute(const RationalFunction& f,
                            const std::map<Indeterminate, RationalFunction>& bindings) {
  return substitute(f, [&](const Indeterminate& v) -> std::optional<RationalFunction> {
    auto it = bindings.find(v);
    if (it == bindings.end()) return std::nullopt;
    return it->second;
  });
}

namespace {

RationalFunction derive_polynomial(const Polynomial& p, const IndeterminateMap& on_variable,
                                   std::map<Indeterminate, std::optional<RationalFunction>>& cache) {
  QuotientAccumulator acc;
  for (const auto& v : p.indeterminates()) {
    auto it = cache.find(v);
    if (it == cache.end()) it = cache.emplace(v, on_variable(v)).first;
    if (!it->second || it->second->is_zero()) continue;
    const RationalFunction& dv = *it->second;
    acc.add(p.partial(v) * dv.numerator(), dv.denominator());
  }
  return acc.result();
}

}  // namespace

RationalFunction apply_derivation(const RationalFunction& f, const IndeterminateMap& on_variable) {
  std::map<Indeterminate, std::optional<RationalFunction>> cache;
  RationalFunction dn = derive_polynomial(f.numerator(), on_variable, cache);
  if (f.is_polynomial()) return dn;
  RationalFunction dd = derive_polynomial(f.denominator(), on_variable, cache);
  RationalFunction num(f.numerator());
  RationalFunction den(f.denominator());
  return (dn * den - num * dd) / (den * den);
}

RationalFunction partial_derivative(const RationalFunction& f, const Indeterminate& v) {
  IndeterminateMap rule = [&](const Indeterminate& z) -> std::optional<RationalFunction> {
    if (z == v) return RationalFunction(1);
    switch (z.kind()) {
      case IndeterminateKind::function: {
        const auto& args = z.args();
        for (std::size_t i = 0; i < args.size(); ++i) {
          if (argument_variable(args[i]) == v) {
            std::vector<int> idx = z.index();
            ++idx[i];
            return RationalFunction(z.with_index(std::move(idx)));
          }
        }
        return std::nullopt;
      }
      case IndeterminateKind::antiderivative:
        if (v == Indeterminate::jet("u", 0, 0))
          return RationalFunction(Indeterminate::function(z.name() == "Dint" ? "d" : "k", {"u"}, {0}));
        return std::nullopt;
      case IndeterminateKind::exponential: {
        RationalFunction da = partial_derivative(z.argument(), v);
        if (da.is_zero()) return std::nullopt;
        return RationalFunction(z) * da;
      }
      default:
        return std::nullopt;
    }
  };
  return apply_derivation(f, rule);
}

std::map<Monomial, RationalFunction, MonomialLess> collect(const RationalFunction& f,
                                                          const std::vector<Indeterminate>& vars) {
  std::set<Indeterminate> vs(vars.begin(), vars.end());
  for (const auto& v : f.denominator().indeterminates())
    if (vs.count(v)) throw NotPolynomial(v.str() + " occurs in a denominator of " + f.str());
  for (const auto& v : f.indeterminates()) {
    if (!v.is(IndeterminateKind::exponential)) continue;
    for (const auto& w : v.argument().all_indeterminates())
      if (vs.count(w)) throw NotPolynomial(w.str() + " occurs inside " + v.str());
  }
  std::map<Monomial, RationalFunction, MonomialLess> out;
  for (const auto& [m, c] : f.numerator().split([&](const Indeterminate& v) { return vs.count(v) > 0; }))
    out.emplace(m, RationalFunction::quotient(c, f.denominator()));
  return out;
}

}  // namespace conslaw
