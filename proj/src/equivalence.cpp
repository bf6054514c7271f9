#include "conslaw/equivalence.hpp"

#include <algorithm>

#include "conslaw/errors.hpp"
#include "conslaw/model_file.hpp"

namespace conslaw {

namespace {

using Index = std::vector<int>;

// Old partial derivative along arg = combination of new ones.
std::vector<std::pair<int, Rational>> derivative_image(const EquivTransform& T, const std::vector<std::string>& args,
                                                       std::size_t i) {
  auto pos = [&](const char* name) -> int {
    auto it = std::find(args.begin(), args.end(), name);
    return it == args.end() ? -1 : static_cast<int>(it - args.begin());
  };
  const std::string& a = args[i];
  std::vector<std::pair<int, Rational>> out;
  if (a == "t") {
    out.emplace_back(static_cast<int>(i), T.e(4));
    if (int x = pos("x"); x >= 0 && T.e(7) != 0) out.emplace_back(x, T.e(7));
  } else if (a == "x") {
    out.emplace_back(static_cast<int>(i), T.e(5));
  } else if (a == "u") {
    out.emplace_back(static_cast<int>(i), T.e(6));
  } else {
    out.emplace_back(static_cast<int>(i), Rational(1));
  }
  return out;
}

std::map<Index, Rational> expand(const EquivTransform& T, const std::vector<std::string>& args, const Index& index) {
  std::map<Index, Rational> terms{{Index(args.size(), 0), Rational(1)}};
  for (std::size_t i = 0; i < index.size(); ++i)
    for (int n = 0; n < index[i]; ++n) {
      std::map<Index, Rational> next;
      auto image = derivative_image(T, args, i);
      for (const auto& [idx, c] : terms)
        for (const auto& [j, coef] : image) {
          Index k = idx;
          ++k[j];
          next[k] += c * coef;
        }
      terms = std::move(next);
    }
  return terms;
}

RationalFunction C(const Rational& q) { return RationalFunction(q); }

}  // namespace

EquivTransform::EquivTransform() : e_{0, 0, 0, 1, 1, 1, 0} {}

EquivTransform::EquivTransform(const std::array<Rational, 7>& e) : e_(e) {
  if (e_[3] == 0 || e_[4] == 0 || e_[5] == 0) throw InvalidTransform("e4*e5*e6 must not vanish");
}

EquivTransform EquivTransform::parse(const std::string& text) {
  auto items = split_list(text);
  if (items.size() != 7) throw InvalidTransform("a transform needs seven comma-separated rationals e1..e7");
  std::array<Rational, 7> e;
  for (int i = 0; i < 7; ++i) {
    try {
      e[i] = parse_rational(items[i]);
    } catch (const std::exception&) {
      throw InvalidTransform("e" + std::to_string(i + 1) + " = '" + items[i] + "' is not a rational number");
    }
  }
  return EquivTransform(e);
}

EquivTransform EquivTransform::involution(char which) {
  std::array<Rational, 7> e{0, 0, 0, 1, 1, 1, 0};
  switch (which) {
    case 't': e[3] = -1; break;
    case 'x': e[4] = -1; break;
    case 'u': e[5] = -1; break;
    default: throw InvalidTransform(std::string("no involution named '") + which + "'");
  }
  return EquivTransform(e);
}

EquivTransform EquivTransform::random(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-3, 3), den(1, 3), sign(0, 1), mag(1, 3);
  std::array<Rational, 7> e;
  for (int i = 0; i < 7; ++i) {
    if (i >= 3 && i <= 5) {
      e[i] = Rational(mag(rng), den(rng));
      if (sign(rng)) e[i] = -e[i];
    } else {
      e[i] = Rational(num(rng), den(rng));
    }
    e[i].canonicalize();
  }
  return EquivTransform(e);
}

bool EquivTransform::is_identity() const { return *this == EquivTransform(); }

std::string EquivTransform::str() const {
  std::string out;
  for (int i = 0; i < 7; ++i) out += (i ? "," : "") + e_[i].get_str();
  return out;
}

EquivTransform compose(const EquivTransform& a, const EquivTransform& b) {
  std::array<Rational, 7> e;
  e[3] = a.e(4) * b.e(4);
  e[0] = a.e(4) * b.e(1) + a.e(1);
  e[4] = a.e(5) * b.e(5);
  e[6] = a.e(5) * b.e(7) + a.e(7) * b.e(4);
  e[1] = a.e(5) * b.e(2) + a.e(7) * b.e(1) + a.e(2);
  e[5] = a.e(6) * b.e(6);
  e[2] = a.e(6) * b.e(3) + a.e(3);
  return EquivTransform(e);
}

EquivTransform inverse(const EquivTransform& T) {
  std::array<Rational, 7> e;
  e[3] = 1 / T.e(4);
  e[0] = -T.e(1) / T.e(4);
  e[4] = 1 / T.e(5);
  e[6] = -T.e(7) / (T.e(4) * T.e(5));
  e[1] = (T.e(7) * T.e(1) / T.e(4) - T.e(2)) / T.e(5);
  e[5] = 1 / T.e(6);
  e[2] = -T.e(3) / T.e(6);
  return EquivTransform(e);
}

Point apply_point(const EquivTransform& T, const Point& p) {
  return {T.e(4) * p.t + T.e(1), T.e(5) * p.x + T.e(7) * p.t + T.e(2), T.e(6) * p.u + T.e(3)};
}

RationalFunction transform_expression(const EquivTransform& T, const RationalFunction& f) {
  const Rational &e1 = T.e(1), &e2 = T.e(2), &e3 = T.e(3), &e4 = T.e(4), &e5 = T.e(5), &e6 = T.e(6), &e7 = T.e(7);
  RationalFunction t(Indeterminate::independent("t")), x(Indeterminate::independent("x"));
  RationalFunction u(Indeterminate::jet("u", 0, 0));
  RationalFunction old_t = (t - C(e1)) / C(e4);
  RationalFunction old_x = (x - C(e7) * old_t - C(e2)) / C(e5);
  static const std::vector<std::string> tx{"t", "x"};

  auto image = [&](const Indeterminate& v) -> std::optional<RationalFunction> {
    switch (v.kind()) {
      case IndeterminateKind::independent:
        return v.name() == "t" ? old_t : old_x;
      case IndeterminateKind::jet: {
        if (v.order() == 0) {
          if (v.name() == "u") return (u - C(e3)) / C(e6);
          return std::nullopt;
        }
        RationalFunction sum;
        for (const auto& [idx, c] : expand(T, tx, {v.t_order(), v.x_order()}))
          sum += C(c) * RationalFunction(Indeterminate::jet(v.name(), idx[0], idx[1]));
        return v.name() == "u" ? sum / C(e6) : sum;
      }
      case IndeterminateKind::function: {
        int n = v.index().empty() ? 0 : v.index()[0];
        if (v.name() == "d" || v.name() == "k") {
          Rational scale = e4 / (v.name() == "d" ? e5 * e5 : e5);
          Rational p = 1;
          for (int i = 0; i < n; ++i) p *= e6;
          RationalFunction img = C(scale * p) * RationalFunction(v);
          if (v.name() == "k" && n == 0) img += C(e7 / e5);
          return img;
        }
        RationalFunction sum;
        for (const auto& [idx, c] : expand(T, v.args(), v.index()))
          sum += C(c) * RationalFunction(Indeterminate::function(v.name(), v.args(), idx));
        return sum;
      }
      case IndeterminateKind::antiderivative:
        if (v.name() == "Dint") return C(e4 / (e5 * e5 * e6)) * RationalFunction(v);
        return (C(e4) * RationalFunction(v) + C(e7) * u) / C(e5 * e6);
      default:
        return std::nullopt;
    }
  };
  return substitute(f, image);
}

PDEModel transform_model(const EquivTransform& T, const PDEModel& model) {
  RelationSet rs = model.bindings();
  auto phi = [&](const RationalFunction& f) { return transform_expression(T, rs.reduce(f)); };
  const Rational &e4 = T.e(4), &e5 = T.e(5), &e6 = T.e(6), &e7 = T.e(7);
  RationalFunction u(Indeterminate::jet("u", 0, 0));
  RationalFunction d = C(e5 * e5 / e4) * phi(model.d());
  RationalFunction k = (C(e5) * phi(model.k()) - C(e7)) / C(e4);
  RationalFunction dint = C(e5 * e5 * e6 / e4) * phi(model.dint());
  RationalFunction kint = (C(e5 * e6) * phi(model.kint()) - C(e7) * u) / C(e4);
  return PDEModel(d, k, dint, kint);
}

SymbolTable transform_symbols(const EquivTransform& T, const SymbolTable& symbols) {
  SymbolTable out;
  for (const auto& p : symbols.parameters()) out.declare_parameter(p);
  for (const auto& f : symbols.functions()) {
    if (f.name == "d" || f.name == "k") continue;
    FuncSym g{f.name, f.args, {}};
    for (const auto& r : f.relations) g.relations.push_back(Expr::from_canonical(transform_expression(T, r.canonical())));
    out.declare_function(std::move(g));
  }
  return out;
}

DifferentialSystem transform_system(const EquivTransform& T, const DifferentialSystem& sys) {
  DifferentialSystem out(transform_model(T, sys.model()), transform_symbols(T, sys.symbols()), sys.parameters(),
                         sys.max_order());
  const RelationSet& rs = sys.relations();
  auto phi = [&](const RationalFunction& f) { return transform_expression(T, rs.reduce(f)); };
  const Rational &e4 = T.e(4), &e5 = T.e(5), &e7 = T.e(7);
  for (const auto& eq : sys.equations()) {
    const PotentialEquation* X = sys.equation(eq.potential, 'x');
    if (eq.wrt == 'x') {
      out.add_equation({eq.potential, 'x', phi(eq.rhs) / C(e5)});
    } else if (X) {
      out.add_equation({eq.potential, 't', (C(e5) * phi(eq.rhs) - C(e7) * phi(X->rhs)) / C(e4 * e5)});
    } else if (e7 == 0) {
      out.add_equation({eq.potential, 't', phi(eq.rhs) / C(e4)});
    } else {
      throw InvalidTransform("a shear needs the x-rule of " + eq.potential + " to transform its t-rule");
    }
  }
  return out;
}

ConservedVector transform_conserved_vector(const EquivTransform& T, const ConservedVector& cv,
                                           const DifferentialSystem& sys) {
  const RelationSet& rs = sys.relations();
  RationalFunction F = transform_expression(T, rs.reduce(cv.F));
  RationalFunction G = transform_expression(T, rs.reduce(cv.G));
  const Rational &e4 = T.e(4), &e5 = T.e(5), &e7 = T.e(7);
  ConservedVector out = cv;
  out.F = F / C(e5);
  out.G = (C(e7) * F + C(e5) * G) / C(e4 * e5);
  return out;
}

}  // namespace conslaw
