#include "conslaw/simulate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "conslaw/errors.hpp"

namespace conslaw {

namespace {

const Indeterminate& u_jet() {
  static const Indeterminate u = Indeterminate::jet("u", 0, 0);
  return u;
}

// f(u) compiled; constants need no value.
class UFunction {
 public:
  explicit UFunction(const RationalFunction& f) : eval_(f) {
    for (const auto& v : eval_.variables())
      if (!(v == u_jet())) throw InvalidModel("model part depends on " + v.str() + ", not only on u");
  }
  double operator()(double u) const { return eval_.evaluate(&u, scratch_); }

 private:
  Evaluator eval_;
  mutable std::vector<double> scratch_;
};

// Grid jet u, u_x, u_xx at every node.
struct GridJets {
  std::vector<double> u, ux, uxx;
};

GridJets grid_jets(const std::vector<double>& u, double dx, Boundary b) {
  std::size_t n = u.size();
  GridJets j{u, std::vector<double>(n), std::vector<double>(n)};
  if (b == Boundary::periodic) {
    for (std::size_t i = 0; i < n; ++i) {
      double um = u[(i + n - 1) % n], up = u[(i + 1) % n];
      j.ux[i] = (up - um) / (2 * dx);
      j.uxx[i] = (up - 2 * u[i] + um) / (dx * dx);
    }
    return j;
  }
  if (n < 4) throw InvalidModel("a Dirichlet grid needs at least 4 nodes");
  for (std::size_t i = 1; i + 1 < n; ++i) {
    j.ux[i] = (u[i + 1] - u[i - 1]) / (2 * dx);
    j.uxx[i] = (u[i + 1] - 2 * u[i] + u[i - 1]) / (dx * dx);
  }
  std::size_t e = n - 1;
  j.ux[0] = (-3 * u[0] + 4 * u[1] - u[2]) / (2 * dx);
  j.ux[e] = (3 * u[e] - 4 * u[e - 1] + u[e - 2]) / (2 * dx);
  j.uxx[0] = (2 * u[0] - 5 * u[1] + 4 * u[2] - u[3]) / (dx * dx);
  j.uxx[e] = (2 * u[e] - 5 * u[e - 1] + 4 * u[e - 2] - u[e - 3]) / (dx * dx);
  return j;
}

// Grid values of t, x, u, u_x, u_xx, v, w feeding one evaluator.
class GridExpression {
 public:
  GridExpression(const RationalFunction& f, const std::string& what) : eval_(f) {
    for (const auto& v : eval_.variables()) {
      Source s;
      if (v.is(IndeterminateKind::independent)) {
        s.kind = v.name() == "t" ? Source::t : Source::x;
      } else if (v.name() == "u" && v.t_order() == 0 && v.x_order() <= 2) {
        s.kind = Source::u;
        s.order = v.x_order();
      } else if ((v.name() == "v" || v.name() == "w") && v.order() == 0) {
        s.kind = Source::pot;
        s.potential = v.name();
      } else {
        throw InvalidModel(what + " needs " + v.str() + ", which the grid does not provide");
      }
      sources_.push_back(s);
    }
  }

  bool needs(const std::string& potential) const {
    return std::any_of(sources_.begin(), sources_.end(),
                       [&](const Source& s) { return s.kind == Source::pot && s.potential == potential; });
  }

  double at(std::size_t i, double t, double x, const GridJets& j, const std::map<std::string, std::vector<double>>& pot,
            const std::map<std::string, double>* override_left = nullptr) const {
    values_.clear();
    for (const auto& s : sources_) {
      switch (s.kind) {
        case Source::t: values_.push_back(t); break;
        case Source::x: values_.push_back(x); break;
        case Source::u: values_.push_back(s.order == 0 ? j.u[i] : s.order == 1 ? j.ux[i] : j.uxx[i]); break;
        case Source::pot: {
          if (override_left) {
            auto it = override_left->find(s.potential);
            if (it != override_left->end()) {
              values_.push_back(it->second);
              break;
            }
          }
          auto it = pot.find(s.potential);
          if (it == pot.end()) throw InvalidModel("potential " + s.potential + " has no x-rule");
          values_.push_back(it->second[i]);
          break;
        }
      }
    }
    return eval_.evaluate(values_.data(), scratch_);
  }

 private:
  struct Source {
    enum Kind { t, x, u, pot } kind = t;
    int order = 0;
    std::string potential;
  };
  Evaluator eval_;
  std::vector<Source> sources_;
  mutable std::vector<double> values_, scratch_;
};

double trapezoid(const std::vector<double>& f, double dx, Boundary b) {
  double s = 0;
  for (double v : f) s += v;
  if (b == Boundary::dirichlet) s -= (f.front() + f.back()) / 2;
  return s * dx;
}

}  // namespace

std::string to_string(Boundary b) { return b == Boundary::periodic ? "periodic" : "dirichlet"; }

Boundary boundary_from_string(const std::string& text) {
  if (text == "periodic") return Boundary::periodic;
  if (text == "dirichlet") return Boundary::dirichlet;
  throw InvalidModel("unknown boundary condition '" + text + "' (periodic or dirichlet)");
}

Trajectory simulate(const GridRun& run, const PDEModel& model) {
  auto start = std::chrono::steady_clock::now();
  if (model.d_arbitrary() || model.k_arbitrary()) throw InvalidModel("simulation needs concrete d and k");
  if (!run.initial) throw InvalidModel("no initial profile");
  if (run.n < 4 || !(run.x_max > run.x_min) || !(run.t_end >= 0) || !(run.safety > 0))
    throw InvalidModel("grid needs n >= 4, x_max > x_min, t_end >= 0 and a positive safety factor");

  RelationSet rules = model.bindings();
  RationalFunction d = rules.reduce(model.d());
  UFunction D(d), Du(rules.reduce(partial_derivative(d, u_jet()))), K(rules.reduce(model.k()));

  Trajectory tr;
  tr.boundary = run.boundary;
  bool periodic = run.boundary == Boundary::periodic;
  std::size_t nodes = periodic ? run.n : run.n + 1;
  tr.dx = (run.x_max - run.x_min) / static_cast<double>(run.n);
  const double dx = tr.dx;
  for (std::size_t i = 0; i < nodes; ++i) tr.x.push_back(run.x_min + dx * static_cast<double>(i));

  std::vector<double> u(nodes);
  double u0_max = 0;
  for (std::size_t i = 0; i < nodes; ++i) {
    u[i] = run.initial(tr.x[i]);
    if (!std::isfinite(u[i])) throw InvalidModel("initial profile is not finite at x = " + std::to_string(tr.x[i]));
    u0_max = std::max(u0_max, std::abs(u[i]));
  }
  tr.snapshots.push_back({0, u});

  std::vector<double> k1(nodes, 0), k2(nodes, 0), mid(nodes);
  auto rhs = [&](const std::vector<double>& w, std::vector<double>& out) {
    std::size_t lo = periodic ? 0 : 1, hi = periodic ? nodes : nodes - 1;
    for (std::size_t i = lo; i < hi; ++i) {
      double wm = w[(i + nodes - 1) % nodes], wp = w[(i + 1) % nodes];
      double wx = (wp - wm) / (2 * dx), wxx = (wp - 2 * w[i] + wm) / (dx * dx);
      out[i] = D(w[i]) * wxx + Du(w[i]) * wx * wx + K(w[i]) * wx;
    }
  };
  auto stable_dt = [&](const std::vector<double>& w) {
    double dmax = 0;
    for (double v : w) {
      double dv = D(v);
      if (!(dv > 0)) throw StabilityError("d(u) = " + std::to_string(dv) + " is not positive: backward diffusion");
      dmax = std::max(dmax, dv);
    }
    return run.safety * dx * dx / dmax;
  };

  double t = 0;
  double blowup = 1e6 * (1 + u0_max);
  std::size_t snaps = std::max<std::size_t>(1, run.snapshots);
  for (std::size_t s = 1; s <= snaps; ++s) {
    double target = run.t_end * static_cast<double>(s) / static_cast<double>(snaps);
    while (t < target) {
      double bound = stable_dt(u);
      double dt = bound;
      if (run.dt > 0) {
        if (run.dt > bound * (1 + 1e-12))
          throw StabilityError("dt = " + std::to_string(run.dt) + " exceeds the bound " + std::to_string(bound));
        dt = run.dt;
      }
      dt = std::min(dt, target - t);
      rhs(u, k1);
      for (std::size_t i = 0; i < nodes; ++i) mid[i] = u[i] + dt * k1[i];
      rhs(mid, k2);
      double umax = 0;
      for (std::size_t i = 0; i < nodes; ++i) {
        u[i] += dt / 2 * (k1[i] + k2[i]);
        umax = std::max(umax, std::abs(u[i]));
      }
      if (!(umax < blowup)) throw StabilityError("solution blew up at t = " + std::to_string(t));
      tr.max_dt = std::max(tr.max_dt, dt);
      t = target - t <= dt ? target : t + dt;
      ++tr.steps;
    }
    tr.snapshots.push_back({t, u});
  }
  tr.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return tr;
}

DriftReport track_conserved(const Trajectory& trajectory, const ConservedVector& cv, const NumericCase& nc) {
  const DifferentialSystem& sys = nc.loaded->system;
  RelationSet B = nc.bindings();
  auto prepare = [&](const RationalFunction& f) { return B.reduce(sys.reduce(B.reduce(f))); };

  GridExpression F(prepare(cv.F), "the density");
  GridExpression G(prepare(cv.G), "the flux");

  struct Pot {
    std::string name;
    std::optional<GridExpression> x_rule, t_rule;
    double left = 0;
  };
  std::vector<Pot> pots;
  for (const char* name : {"v", "w"}) {
    const PotentialEquation* X = sys.equation(name, 'x');
    if (!X) continue;
    Pot p{name, std::nullopt, std::nullopt, 0};
    p.x_rule.emplace(prepare(X->rhs), std::string(name) + "_x");
    if (const PotentialEquation* T = sys.equation(name, 't')) p.t_rule.emplace(prepare(T->rhs), std::string(name) + "_t");
    pots.push_back(std::move(p));
  }

  DriftReport rep;
  const double dx = trajectory.dx;
  const Boundary b = trajectory.boundary;
  bool flux_needed = b == Boundary::dirichlet;
  for (const auto& p : pots)
    if (!p.t_rule && (F.needs(p.name) || (flux_needed && G.needs(p.name))))
      rep.notes.push_back(p.name + " has no t-rule; its left-end value is held at 0");

  std::vector<double> prev_t_rate(pots.size(), 0), flux_diff;
  for (std::size_t s = 0; s < trajectory.snapshots.size(); ++s) {
    const Snapshot& snap = trajectory.snapshots[s];
    GridJets j = grid_jets(snap.u, dx, b);
    std::size_t n = snap.u.size();
    std::map<std::string, std::vector<double>> pot;
    for (std::size_t q = 0; q < pots.size(); ++q) {
      Pot& p = pots[q];
      // Left-end value: trapezoid in time of the t-rule, explicit in the potential itself.
      double rate = 0;
      if (p.t_rule) {
        std::map<std::string, double> left{{p.name, p.left}};
        rate = p.t_rule->at(0, snap.t, trajectory.x[0], j, pot, &left);
        if (s > 0) p.left += (snap.t - trajectory.snapshots[s - 1].t) / 2 * (prev_t_rate[q] + rate);
      }
      prev_t_rate[q] = rate;
      std::vector<double> rhs(n), val(n);
      for (std::size_t i = 0; i < n; ++i) rhs[i] = p.x_rule->at(i, snap.t, trajectory.x[i], j, pot);
      val[0] = p.left;
      for (std::size_t i = 1; i < n; ++i) val[i] = val[i - 1] + dx / 2 * (rhs[i - 1] + rhs[i]);
      pot[p.name] = std::move(val);
    }
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = F.at(i, snap.t, trajectory.x[i], j, pot);
    rep.times.push_back(snap.t);
    rep.integrals.push_back(trapezoid(f, dx, b));
    if (flux_needed) {
      double ga = G.at(0, snap.t, trajectory.x.front(), j, pot), gb = G.at(n - 1, snap.t, trajectory.x.back(), j, pot);
      rep.boundary_flux = std::max({rep.boundary_flux, std::abs(ga), std::abs(gb)});
      flux_diff.push_back(gb - ga);
      if (s > 0) rep.flux_transport += (rep.times[s] - rep.times[s - 1]) / 2 * (flux_diff[s - 1] + flux_diff[s]);
    }
  }

  double i0 = rep.integrals.front();
  rep.relative = std::abs(i0) > 1e-12;
  for (double v : rep.integrals) rep.drift = std::max(rep.drift, std::abs(v - i0));
  if (rep.relative) rep.drift /= std::abs(i0);
  if (!rep.relative) rep.notes.push_back("initial integral is zero; drift is absolute");
  if (flux_needed && std::abs(rep.flux_transport) > 1e-10 * std::max(1.0, std::abs(i0)))
    rep.notes.push_back("boundary flux is not negligible: " + std::to_string(rep.flux_transport) +
                        " left through the ends");
  return rep;
}

double heat_gaussian_error(std::size_t n, double t_end, double s) {
  GridRun run;
  run.x_min = -10;
  run.x_max = 10;
  run.n = n;
  run.t_end = t_end;
  run.snapshots = 1;
  run.initial = [s](double x) { return std::exp(-x * x / (4 * s)); };
  Trajectory tr = simulate(run, PDEModel(RationalFunction(1), RationalFunction(0), RationalFunction(u_jet()),
                                         RationalFunction(0)));
  const auto& u = tr.snapshots.back().u;
  double T = tr.snapshots.back().t, err = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    double x = tr.x[i];
    double exact = std::sqrt(s / (s + T)) * std::exp(-x * x / (4 * (s + T)));
    err += (u[i] - exact) * (u[i] - exact);
  }
  return std::sqrt(err * tr.dx);
}

}  // namespace conslaw
