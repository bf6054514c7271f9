#include <algorithm>

#include "conslaw/conservation.hpp"
#include "conslaw/errors.hpp"

namespace conslaw {

namespace {

Indeterminate J(int a, int b) { return Indeterminate::jet("u", a, b); }

const std::vector<std::string>& ansatz_args() {
  static const std::vector<std::string> args{"t", "x", "u"};
  return args;
}

// d, k, their derivatives and opaque antiderivatives, when arbitrary.
std::vector<Indeterminate> arbitrary_symbols(const RationalFunction& f, const PDEModel& model) {
  std::vector<Indeterminate> out;
  for (const auto& v : f.indeterminates()) {
    bool d_part = (v.is(IndeterminateKind::function) && v.name() == "d") ||
                  (v.is(IndeterminateKind::antiderivative) && v.name() == "Dint");
    bool k_part = (v.is(IndeterminateKind::function) && v.name() == "k") ||
                  (v.is(IndeterminateKind::antiderivative) && v.name() == "Kint");
    if ((d_part && model.d_arbitrary()) || (k_part && model.k_arbitrary())) out.push_back(v);
  }
  return out;
}

void split_and_add(std::vector<DeterminingEquation>& out, const std::string& stage, const std::string& label,
                   const RationalFunction& coefficient, const PDEModel& model, bool keep_zero) {
  Polynomial n = coefficient.numerator();
  bool arbitrary = model.d_arbitrary() || model.k_arbitrary();
  auto vars = arbitrary ? arbitrary_symbols(RationalFunction(n), model) : std::vector<Indeterminate>{};
  if (vars.empty()) {
    if (keep_zero || !n.is_zero()) out.push_back({stage, label, RationalFunction(n)});
    return;
  }
  for (const auto& [m, c] : collect(RationalFunction(n), vars))
    if (keep_zero || !c.is_zero())
      out.push_back({stage, m.is_one() ? label : label + " | " + m.str(), RationalFunction(c.numerator())});
}

std::string monomial_label(const Monomial& m) { return m.is_one() ? "1" : m.str(); }

}  // namespace

std::string DeterminingSystem::coefficient_name(char which, int i, int j) {
  return std::string(1, which) + std::to_string(i) + std::to_string(j);
}

DeterminingSystem derive_determining_system(const PDEModel& model, int deg_ut, int deg_ux, const RelationSet& rels) {
  if (deg_ut < 0 || deg_ux < 0 || deg_ut > 9 || deg_ux > 9) throw Error("ansatz degrees must be between 0 and 9");
  DeterminingSystem ds;
  ds.model = model;
  ds.deg_ut = deg_ut;
  ds.deg_ux = deg_ux;
  RationalFunction ut(J(1, 0)), ux(J(0, 1));
  for (char which : {'f', 'g'}) {
    RationalFunction sum;
    for (int i = 0; i <= deg_ut; ++i)
      for (int j = 0; j <= deg_ux; ++j) {
        std::string name = DeterminingSystem::coefficient_name(which, i, j);
        ds.symbols.declare_function(FuncSym{name, ansatz_args(), {}});
        sum += RationalFunction(ds.symbols.symbol(name)) * ut.pow(i) * ux.pow(j);
      }
    (which == 'f' ? ds.F : ds.G) = sum;
  }

  RationalFunction div = total_derivative(ds.F, 't') + total_derivative(ds.G, 'x');
  RationalFunction d(Indeterminate::function("d", {"u"}, {0})), du(Indeterminate::function("d", {"u"}, {1})),
      k(Indeterminate::function("k", {"u"}, {0}));
  RationalFunction uxx = (ut - du * ux * ux - k * ux) / d;
  div = substitute(div, std::map<Indeterminate, RationalFunction>{{J(0, 2), uxx}});
  RelationSet rs = rels;
  rs.append(model.bindings());
  div = rs.reduce(div);

  RationalFunction rest;
  for (const auto& [m, c] : collect(div, {J(2, 0), J(1, 1)})) {
    if (m.is_one()) {
      rest = c;
      continue;
    }
    if (!c.is_zero()) ds.equations.push_back({"u_tt/u_tx", monomial_label(m), RationalFunction(c.numerator())});
  }
  for (const auto& [m, c] : collect(rest, {J(1, 0), J(0, 1)}))
    if (!c.is_zero()) ds.equations.push_back({"u_t/u_x", monomial_label(m), RationalFunction(c.numerator())});

  ds.notes.push_back("u_x powers are split because the ansatz is polynomial in u_x (degree " +
                     std::to_string(deg_ux) + ")");
  if (model.d_arbitrary() || model.k_arbitrary())
    ds.notes.push_back("after specialization, arbitrary d, k, their derivatives and opaque antiderivatives are "
                       "split as independent");
  return ds;
}

std::vector<DeterminingEquation> specialize(const DeterminingSystem& ds, const RationalFunction& F,
                                            const RationalFunction& G, const RelationSet& rels) {
  auto binding = std::make_shared<BindingRule>();
  for (char which : {'f', 'g'}) {
    for (int i = 0; i <= ds.deg_ut; ++i)
      for (int j = 0; j <= ds.deg_ux; ++j) binding->bind_function(DeterminingSystem::coefficient_name(which, i, j), {});
    for (const auto& [m, c] : collect(which == 'f' ? F : G, {J(1, 0), J(0, 1)})) {
      int i = m.degree(J(1, 0)), j = m.degree(J(0, 1));
      if (i > ds.deg_ut || j > ds.deg_ux)
        throw NotPolynomial(std::string(1, which == 'f' ? 'F' : 'G') + " has a term " + m.str() +
                            " outside the ansatz");
      for (const auto& v : c.all_indeterminates())
        if (v.is(IndeterminateKind::jet) && !(v.name() == "u" && v.order() == 0))
          throw NotPolynomial("ansatz coefficients depend on (t, x, u) only, found " + v.str());
      binding->bind_function(DeterminingSystem::coefficient_name(which, i, j), c);
    }
  }
  RelationSet rs;
  rs.add(binding);
  rs.append(rels);
  rs.append(ds.model.bindings());
  std::vector<DeterminingEquation> out;
  for (const auto& eq : ds.equations)
    split_and_add(out, eq.stage, eq.label, rs.reduce(eq.lhs), ds.model, true);
  return out;
}

CharacteristicCheck check_characteristic_solution(const DeterminingSystem& ds, const Characteristic& ch,
                                                  const RelationSet& rels) {
  CharacteristicCheck out;
  ConservedVector cv = build_from_characteristic(ch, ds.model);
  out.equations = specialize(ds, cv.F, cv.G, rels);
  out.classifying = check_classifying(ch.psi, ds.model, rels);

  std::vector<RationalFunction> components;
  if (out.classifying.split)
    for (const auto& c : out.classifying.conditions) components.push_back(c.coefficient);
  else
    components.push_back(out.classifying.residual);

  // Components that solve for a derivative of psi become rewrite rules;
  // the others are used as divisors.
  RelationSet modulo = rels;
  modulo.append(ds.model.bindings());
  std::vector<Polynomial> divisors;
  for (const auto& c : components) {
    if (c.is_zero()) continue;
    std::optional<Indeterminate> f;
    for (const auto& v : c.all_indeterminates())
      if (v.is(IndeterminateKind::function) && v.name() != "d" && v.name() != "k") f = v;
    if (f) {
      try {
        modulo.add(DerivativeRule::orient(FuncSym{f->name(), f->args(), {}}, c));
        continue;
      } catch (const InvalidRelation&) {
      }
    }
    divisors.push_back(c.numerator());
  }
  for (const auto& eq : out.equations) {
    RationalFunction r = modulo.reduce(eq.lhs);
    if (r.is_zero()) continue;
    bool divisible = std::any_of(divisors.begin(), divisors.end(), [&](const Polynomial& p) {
      return p.is_constant() || divide_exact(r.numerator(), p).has_value();
    });
    if (!divisible) out.failures.push_back(eq.stage + " [" + eq.label + "]: " + r.str());
  }
  return out;
}

}  // namespace conslaw
