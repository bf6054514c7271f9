#include "conslaw/polynomial.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "conslaw/errors.hpp"

namespace conslaw {

Rational parse_rational(const std::string& text) {
  Rational q;
  auto dot = text.find('.');
  if (dot == std::string::npos) {
    if (q.set_str(text, 10) != 0) throw Error("malformed rational '" + text + "'");
    q.canonicalize();
    if (q.get_den() == 0) throw DivisionByZero("zero denominator in '" + text + "'");
    return q;
  }
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  std::size_t decimals = text.size() - dot - 1;
  mpz_class num;
  if (digits.empty() || num.set_str(digits, 10) != 0) throw Error("malformed number '" + text + "'");
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, decimals);
  q = Rational(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(const Indeterminate& v, int exponent) {
  if (exponent < 0) throw Error("negative exponent in monomial");
  if (exponent > 0) factors_.emplace_back(v, exponent);
}

int Monomial::degree(const Indeterminate& v) const {
  for (const auto& [w, e] : factors_)
    if (w == v) return e;
  return 0;
}

int Monomial::total_degree() const {
  int s = 0;
  for (const auto& f : factors_) s += f.second;
  return s;
}

Monomial Monomial::operator*(const Monomial& other) const {
  if (other.factors_.empty()) return *this;
  if (factors_.empty()) return other;
  std::vector<Factor> out;
  out.reserve(factors_.size() + other.factors_.size());
  auto i = factors_.begin();
  auto j = other.factors_.begin();
  while (i != factors_.end() && j != other.factors_.end()) {
    auto c = i->first <=> j->first;
    if (c == 0) {
      out.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    } else if (c < 0) {
      out.push_back(*i++);
    } else {
      out.push_back(*j++);
    }
  }
  out.insert(out.end(), i, factors_.end());
  out.insert(out.end(), j, other.factors_.end());
  return from_sorted(std::move(out));
}

bool Monomial::divides(const Monomial& other) const {
  auto j = other.factors_.begin();
  for (const auto& [v, e] : factors_) {
    while (j != other.factors_.end() && j->first < v) ++j;
    if (j == other.factors_.end() || !(j->first == v) || j->second < e) return false;
  }
  return true;
}

Monomial Monomial::operator/(const Monomial& divisor) const {
  std::vector<Factor> out;
  auto j = divisor.factors_.begin();
  for (const auto& [v, e] : factors_) {
    int r = e;
    if (j != divisor.factors_.end() && j->first == v) {
      r -= j->second;
      ++j;
    }
    if (r < 0) throw Error("monomial division is not exact");
    if (r > 0) out.emplace_back(v, r);
  }
  if (j != divisor.factors_.end()) throw Error("monomial division is not exact");
  return from_sorted(std::move(out));
}

Monomial Monomial::pow(int e) const {
  if (e < 0) throw Error("negative monomial power");
  if (e == 0) return {};
  std::vector<Factor> out = factors_;
  for (auto& f : out) f.second *= e;
  return from_sorted(std::move(out));
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  std::vector<Factor> out;
  auto j = b.factors_.begin();
  for (const auto& [v, e] : a.factors_) {
    while (j != b.factors_.end() && j->first < v) ++j;
    if (j != b.factors_.end() && j->first == v) out.emplace_back(v, std::min(e, j->second));
  }
  return from_sorted(std::move(out));
}

std::string Monomial::str() const {
  if (factors_.empty()) return "1";
  std::string s;
  for (const auto& [v, e] : factors_) {
    if (!s.empty()) s += "*";
    s += v.str();
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

int lex_compare(const Monomial& a, const Monomial& b) {
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < fa.size() && j < fb.size()) {
    auto c = fa[i].first <=> fb[j].first;
    if (c == 0) {
      if (fa[i].second != fb[j].second) return fa[i].second > fb[j].second ? 1 : -1;
      ++i;
      ++j;
    } else {
      return c < 0 ? 1 : -1;
    }
  }
  if (i < fa.size()) return 1;
  if (j < fb.size()) return -1;
  return 0;
}

// -------------------------------------------------------------- Polynomial

namespace {

using Term = Polynomial::Term;

bool term_greater(const Term& a, const Term& b) { return lex_compare(a.monomial, b.monomial) > 0; }

// Combines like terms of a vector sorted by descending monomial order.
std::vector<Term> combine_sorted(std::vector<Term> v) {
  std::vector<Term> out;
  out.reserve(v.size());
  for (auto& t : v) {
    if (!out.empty() && out.back().monomial == t.monomial) {
      out.back().coeff += t.coeff;
      if (out.back().coeff == 0) out.pop_back();
    } else if (t.coeff != 0) {
      out.push_back(std::move(t));
    }
  }
  return out;
}

}  // namespace

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) terms_.push_back({Monomial{}, c});
}

Polynomial::Polynomial(const Indeterminate& v, int exponent) {
  terms_.push_back({Monomial(v, exponent), Rational(1)});
}

Polynomial::Polynomial(Monomial m, Rational c) {
  if (c != 0) terms_.push_back({std::move(m), std::move(c)});
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_greater);
  Polynomial p;
  p.terms_ = combine_sorted(std::move(terms));
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one());
}

Rational Polynomial::constant_value() const {
  if (terms_.empty()) return 0;
  if (!is_constant()) throw Error("polynomial is not constant");
  return terms_[0].coeff;
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return o;
  Polynomial r;
  r.terms_.reserve(terms_.size() + o.terms_.size());
  auto i = terms_.begin();
  auto j = o.terms_.begin();
  while (i != terms_.end() && j != o.terms_.end()) {
    int c = lex_compare(i->monomial, j->monomial);
    if (c > 0) {
      r.terms_.push_back(*i++);
    } else if (c < 0) {
      r.terms_.push_back(*j++);
    } else {
      Rational s = i->coeff + j->coeff;
      if (s != 0) r.terms_.push_back({i->monomial, std::move(s)});
      ++i;
      ++j;
    }
  }
  r.terms_.insert(r.terms_.end(), i, terms_.end());
  r.terms_.insert(r.terms_.end(), j, o.terms_.end());
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::mul_term(const Monomial& m, const Rational& c) const {
  if (c == 0) return {};
  Polynomial r;
  r.terms_.reserve(terms_.size());
  // Multiplying by a monomial preserves a monomial order.
  for (const auto& t : terms_) r.terms_.push_back({t.monomial * m, t.coeff * c});
  return r;
}

Polynomial Polynomial::operator*(const Rational& c) const { return mul_term(Monomial{}, c); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (terms_.empty() || o.terms_.empty()) return {};
  if (o.terms_.size() == 1) return mul_term(o.terms_[0].monomial, o.terms_[0].coeff);
  if (terms_.size() == 1) return o.mul_term(terms_[0].monomial, terms_[0].coeff);
  std::vector<Term> prod;
  prod.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) prod.push_back({a.monomial * b.monomial, a.coeff * b.coeff});
  return from_terms(std::move(prod));
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result(1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

std::vector<Indeterminate> Polynomial::indeterminates() const {
  std::set<Indeterminate> s;
  for (const auto& t : terms_)
    for (const auto& f : t.monomial.factors()) s.insert(f.first);
  return {s.begin(), s.end()};
}

bool Polynomial::mentions(const Indeterminate& v) const {
  for (const auto& t : terms_)
    if (t.monomial.degree(v) > 0) return true;
  return false;
}

int Polynomial::degree(const Indeterminate& v) const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial.degree(v));
  return d;
}

Polynomial Polynomial::partial(const Indeterminate& v) const {
  std::vector<Term> out;
  Monomial vm(v);
  for (const auto& t : terms_) {
    int e = t.monomial.degree(v);
    if (e == 0) continue;
    out.push_back({t.monomial / vm, t.coeff * e});
  }
  return from_terms(std::move(out));
}

std::map<int, Polynomial> Polynomial::coefficients_in(const Indeterminate& v) const {
  std::map<int, std::vector<Term>> buckets;
  for (const auto& t : terms_) {
    int e = t.monomial.degree(v);
    Monomial rest = e > 0 ? t.monomial / Monomial(v, e) : t.monomial;
    buckets[e].push_back({std::move(rest), t.coeff});
  }
  std::map<int, Polynomial> out;
  for (auto& [e, ts] : buckets) out.emplace(e, from_terms(std::move(ts)));
  return out;
}

std::map<Monomial, Polynomial, MonomialLess> Polynomial::split(
    const std::function<bool(const Indeterminate&)>& selected) const {
  std::map<Monomial, std::vector<Term>, MonomialLess> buckets;
  for (const auto& t : terms_) {
    std::vector<Monomial::Factor> sel;
    std::vector<Monomial::Factor> rest;
    for (const auto& f : t.monomial.factors()) (selected(f.first) ? sel : rest).push_back(f);
    Monomial ms;
    for (const auto& f : sel) ms = ms * Monomial(f.first, f.second);
    Monomial mr;
    for (const auto& f : rest) mr = mr * Monomial(f.first, f.second);
    buckets[ms].push_back({std::move(mr), t.coeff});
  }
  std::map<Monomial, Polynomial, MonomialLess> out;
  for (auto& [m, ts] : buckets) out.emplace(m, from_terms(std::move(ts)));
  return out;
}

Monomial Polynomial::monomial_content() const {
  if (terms_.empty()) return {};
  Monomial g = terms_[0].monomial;
  for (std::size_t i = 1; i < terms_.size() && !g.is_one(); ++i) g = Monomial::gcd(g, terms_[i].monomial);
  return g;
}

Polynomial Polynomial::divide_monomial(const Monomial& m) const {
  if (m.is_one()) return *this;
  Polynomial r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.monomial / m, t.coeff});
  return r;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return *this;
  const Rational& lc = terms_[0].coeff;
  if (lc == 1) return *this;
  Rational inv = 1 / lc;
  return *this * inv;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (t.monomial.is_one()) {
      os << c.get_str();
    } else {
      if (c != 1) os << c.get_str() << "*";
      os << t.monomial.str();
    }
  }
  return os.str();
}

int compare(const Polynomial& a, const Polynomial& b) {
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  for (std::size_t i = 0; i < ta.size() && i < tb.size(); ++i) {
    int c = lex_compare(ta[i].monomial, tb[i].monomial);
    if (c != 0) return c;
    if (ta[i].coeff != tb[i].coeff) return ta[i].coeff < tb[i].coeff ? -1 : 1;
  }
  if (ta.size() != tb.size()) return ta.size() < tb.size() ? -1 : 1;
  return 0;
}

std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (a.is_zero()) return Polynomial{};
  const auto& lt = b.leading_term();
  if (b.size() == 1) {
    std::vector<Term> out;
    out.reserve(a.size());
    for (const auto& t : a.terms()) {
      if (!lt.monomial.divides(t.monomial)) return std::nullopt;
      out.push_back({t.monomial / lt.monomial, t.coeff / lt.coeff});
    }
    return Polynomial::from_terms(std::move(out));
  }
  Polynomial rem = a;
  std::vector<Term> quotient;
  Polynomial tail = b - Polynomial(lt.monomial, lt.coeff);
  while (!rem.is_zero()) {
    const auto& r = rem.leading_term();
    if (!lt.monomial.divides(r.monomial)) return std::nullopt;
    Monomial qm = r.monomial / lt.monomial;
    Rational qc = r.coeff / lt.coeff;
    // rem - q*b: the leading terms cancel by construction.
    Polynomial lead(r.monomial, r.coeff);
    rem = rem - lead - tail.mul_term(qm, qc);
    quotient.push_back({std::move(qm), std::move(qc)});
  }
  return Polynomial::from_terms(std::move(quotient));
}

// ---------------------------------------------------------------------- gcd

namespace {

Polynomial gcd_primitive(const Polynomial& a, const Polynomial& b);

Polynomial exact(const Polynomial& a, const Polynomial& b) {
  auto q = divide_exact(a, b);
  if (!q) throw Error("internal: expected exact polynomial division");
  return *q;
}

std::set<Indeterminate> variable_set(const Polynomial& p) {
  auto v = p.indeterminates();
  return {v.begin(), v.end()};
}

// Univariate Euclid over Q.
Polynomial gcd_univariate(const Polynomial& a, const Polynomial& b, const Indeterminate& x) {
  auto dense = [&](const Polynomial& p) {
    std::vector<Rational> c(static_cast<std::size_t>(p.degree(x)) + 1);
    for (const auto& [e, coeff] : p.coefficients_in(x)) c[static_cast<std::size_t>(e)] = coeff.constant_value();
    return c;
  };
  auto trim = [](std::vector<Rational>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
  };
  std::vector<Rational> p = dense(a);
  std::vector<Rational> q = dense(b);
  trim(p);
  trim(q);
  while (!q.empty()) {
    // p mod q
    while (p.size() >= q.size() && !p.empty()) {
      Rational f = p.back() / q.back();
      std::size_t shift = p.size() - q.size();
      for (std::size_t i = 0; i < q.size(); ++i) p[i + shift] -= f * q[i];
      p.pop_back();
      trim(p);
    }
    std::swap(p, q);
  }
  std::vector<Term> terms;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != 0) terms.push_back({Monomial(x, static_cast<int>(i)), p[i]});
  return Polynomial::from_terms(std::move(terms)).monic();
}

Polynomial content_in(const Polynomial& p, const Indeterminate& x) {
  Polynomial g;
  for (const auto& [e, c] : p.coefficients_in(x)) {
    g = gcd(g, c);
    if (g.is_constant()) return Polynomial(1);
  }
  return g;
}

Polynomial primitive_part_in(const Polynomial& p, const Indeterminate& x) {
  Polynomial c = content_in(p, x);
  if (c.is_constant()) return p.monic();
  return exact(p, c).monic();
}

// Pseudo-remainder of p by q as polynomials in x.
Polynomial pseudo_remainder(Polynomial p, const Polynomial& q, const Indeterminate& x) {
  int dq = q.degree(x);
  auto qc = q.coefficients_in(x);
  Polynomial lc = qc.rbegin()->second;
  while (!p.is_zero() && p.degree(x) >= dq) {
    int dp = p.degree(x);
    Polynomial lp = p.coefficients_in(x).rbegin()->second;
    p = lc * p - lp * Polynomial(Monomial(x, dp - dq), 1) * q;
  }
  return p;
}

Polynomial gcd_multivariate(const Polynomial& a, const Polynomial& b, const std::set<Indeterminate>& vars) {
  // Main variable: smallest combined degree keeps the PRS short.
  Indeterminate x = *vars.begin();
  int best = a.degree(x) + b.degree(x);
  for (const auto& v : vars) {
    int d = a.degree(v) + b.degree(v);
    if (d < best) {
      best = d;
      x = v;
    }
  }
  Polynomial ca = content_in(a, x);
  Polynomial cb = content_in(b, x);
  Polynomial g_content = gcd(ca, cb);
  Polynomial p = ca.is_constant() ? a : exact(a, ca);
  Polynomial q = cb.is_constant() ? b : exact(b, cb);
  if (p.degree(x) < q.degree(x)) std::swap(p, q);
  Polynomial g;
  while (true) {
    if (q.degree(x) == 0) {
      g = Polynomial(1);
      break;
    }
    Polynomial r = pseudo_remainder(p, q, x);
    if (r.is_zero()) {
      g = primitive_part_in(q, x);
      break;
    }
    if (r.degree(x) == 0) {
      g = Polynomial(1);
      break;
    }
    p = std::move(q);
    q = primitive_part_in(r, x);
  }
  return (g_content * g).monic();
}

// gcd of polynomials without monomial content.
Polynomial gcd_primitive(const Polynomial& a, const Polynomial& b) {
  if (a.size() == 1 || b.size() == 1) return Polynomial(1);
  if (a.monic() == b.monic()) return a.monic();
  auto va = variable_set(a);
  auto vb = variable_set(b);
  auto extra = [](const std::set<Indeterminate>& s, const std::set<Indeterminate>& t) {
    for (const auto& v : s)
      if (!t.count(v)) return true;
    return false;
  };
  // A common divisor cannot involve variables missing from either side, so
  // it divides every coefficient with respect to those variables.
  if (extra(va, vb)) {
    Polynomial g = b;
    for (const auto& [m, c] : a.split([&](const Indeterminate& v) { return !vb.count(v); })) {
      g = gcd(g, c);
      if (g.is_constant()) return Polynomial(1);
    }
    return g.monic();
  }
  if (extra(vb, va)) return gcd_primitive(b, a);
  if (va.size() == 1) return gcd_univariate(a, b, *va.begin());
  return gcd_multivariate(a, b, va);
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Polynomial(1);
  Monomial ma = a.monomial_content();
  Monomial mb = b.monomial_content();
  Monomial mg = Monomial::gcd(ma, mb);
  Polynomial g = gcd_primitive(a.divide_monomial(ma), b.divide_monomial(mb));
  return g.mul_term(mg, 1).monic();
}

}  // namespace conslaw
