#include "whittaker/ldp.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "whittaker/sim.hpp"

namespace whittaker {

namespace {

struct Layout {
  CellSet lam_cells;
  CellSet skew_cells;
  std::vector<int> mu_ordinals;          // lambda-ordinals of mu cells
  std::vector<int> var_of_ordinal;       // lambda-ordinal -> variable index or -1
};

Layout make_layout(const LimitShapeProblem& p) {
  Layout L;
  L.lam_cells = CellSet::from_shape(p.lambda);
  L.skew_cells = CellSet::skew(p.lambda, p.mu);
  if (static_cast<int>(p.boundary.size()) != L.skew_cells.num_cells())
    throw std::invalid_argument("LimitShapeProblem: boundary size mismatch");
  for (double a : p.boundary)
    if (!(a > 0.0))
      throw std::invalid_argument("LimitShapeProblem: boundary must be positive");
  if (!p.lambda.interior().contains(p.mu))
    throw std::invalid_argument("LimitShapeProblem: mu must lie inside interior(lambda)");
  L.var_of_ordinal.assign(L.lam_cells.num_cells(), -1);
  for (int o = 0; o < L.lam_cells.num_cells(); ++o) {
    Cell c = L.lam_cells.cell(o);
    if (p.mu.contains(c)) {
      L.var_of_ordinal[o] = static_cast<int>(L.mu_ordinals.size());
      L.mu_ordinals.push_back(o);
    }
  }
  return L;
}

std::vector<double> full_from_boundary(const Layout& L,
                                       const LimitShapeProblem& p) {
  std::vector<double> x(L.lam_cells.num_cells(), 0.0);
  for (int o = 0; o < L.skew_cells.num_cells(); ++o)
    x[L.lam_cells.ordinal_of(L.skew_cells.cell(o))] = p.boundary[o];
  return x;
}

double entropy_h(double p) {
  double s = 0.0;
  if (p > 0.0) s += p * std::log(p);
  if (p < 1.0) s += (1.0 - p) * std::log(1.0 - p);
  return s;
}

double value_at(const Layout& L, const std::vector<double>& x, Cell c) {
  int o = L.lam_cells.ordinal_of(c);
  return o >= 0 ? x[o] : 0.0;
}

}  // namespace

double ldp_objective(const LimitShapeProblem& p, const std::vector<double>& x) {
  Layout L = make_layout(p);
  double F = 0.0;
  for (int o : L.mu_ordinals) {
    Cell u = L.lam_cells.cell(o);
    double xu = x[o];
    for (Cell v : {Cell{u.i + 1, u.j}, Cell{u.i, u.j + 1}}) {
      double xv = value_at(L, x, v);
      F += xv * entropy_h(xu / xv);
    }
  }
  return F;
}

std::vector<double> ldp_gradient(const LimitShapeProblem& p,
                                 const std::vector<double>& x) {
  Layout L = make_layout(p);
  std::vector<double> g(L.mu_ordinals.size(), 0.0);
  for (size_t v = 0; v < L.mu_ordinals.size(); ++v) {
    Cell u = L.lam_cells.cell(L.mu_ordinals[v]);
    double xu = x[L.mu_ordinals[v]];
    double gv = 0.0;
    for (Cell tc : {Cell{u.i - 1, u.j}, Cell{u.i, u.j - 1}}) {
      double xt = value_at(L, x, tc);
      gv += std::log(1.0 - xt / xu);
    }
    for (Cell vc : {Cell{u.i + 1, u.j}, Cell{u.i, u.j + 1}}) {
      double xv = value_at(L, x, vc);
      gv -= std::log(xv / xu - 1.0);
    }
    g[v] = gv;
  }
  return g;
}

LimitShapeSolution solve_limit_shape(const LimitShapeProblem& p) {
  Layout L = make_layout(p);
  int nv = static_cast<int>(L.mu_ordinals.size());
  std::vector<double> x = full_from_boundary(L, p);

  // Strictly feasible start: half the minimum of the already-assigned outer
  // neighbours, swept in reverse row-major order.
  for (int idx = L.lam_cells.num_cells() - 1; idx >= 0; --idx) {
    if (L.var_of_ordinal[idx] < 0) continue;
    Cell u = L.lam_cells.cell(idx);
    double ub = std::min(value_at(L, x, {u.i + 1, u.j}),
                         value_at(L, x, {u.i, u.j + 1}));
    x[idx] = ub / 2.0;
  }

  auto feasible = [&](const std::vector<double>& xx) {
    for (int o : L.mu_ordinals) {
      Cell u = L.lam_cells.cell(o);
      double lo = std::max(value_at(L, xx, {u.i - 1, u.j}),
                           value_at(L, xx, {u.i, u.j - 1}));
      double hi = std::min(value_at(L, xx, {u.i + 1, u.j}),
                           value_at(L, xx, {u.i, u.j + 1}));
      if (!(xx[o] > lo && xx[o] < hi)) return false;
    }
    return true;
  };

  LimitShapeSolution sol;
  const int max_iter = 100;
  const double gtol = 1e-13;
  bool newton_ok = true;
  for (sol.iterations = 0; sol.iterations < max_iter; ++sol.iterations) {
    std::vector<double> g = ldp_gradient(p, x);
    double gn = 0.0;
    for (double gv : g) gn = std::max(gn, std::abs(gv));
    sol.grad_norm = gn;
    if (gn < gtol) {
      sol.converged = true;
      break;
    }
    // Hessian over the mu variables.
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(nv, nv);
    for (int v = 0; v < nv; ++v) {
      Cell u = L.lam_cells.cell(L.mu_ordinals[v]);
      double xu = x[L.mu_ordinals[v]];
      double d = 0.0;
      for (Cell tc : {Cell{u.i - 1, u.j}, Cell{u.i, u.j - 1}}) {
        double xt = value_at(L, x, tc);
        if (xt > 0.0) d += (xt / xu) / (xu - xt);
        int ot = L.lam_cells.ordinal_of(tc);
        if (ot >= 0 && L.var_of_ordinal[ot] >= 0)
          H(v, L.var_of_ordinal[ot]) -= 1.0 / (xu - xt);
      }
      for (Cell vc : {Cell{u.i + 1, u.j}, Cell{u.i, u.j + 1}}) {
        double xv = value_at(L, x, vc);
        d += (xv / xu) / (xv - xu);
        int ov = L.lam_cells.ordinal_of(vc);
        if (ov >= 0 && L.var_of_ordinal[ov] >= 0)
          H(v, L.var_of_ordinal[ov]) -= 1.0 / (xv - xu);
      }
      H(v, v) += d;
    }
    Eigen::LLT<Eigen::MatrixXd> llt(H);
    if (llt.info() != Eigen::Success) {
      newton_ok = false;
      break;
    }
    Eigen::VectorXd gv(nv);
    for (int v = 0; v < nv; ++v) gv(v) = g[v];
    Eigen::VectorXd step = llt.solve(-gv);

    double F0 = ldp_objective(p, x);
    double tau = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      std::vector<double> xn = x;
      for (int v = 0; v < nv; ++v) xn[L.mu_ordinals[v]] += tau * step(v);
      if (feasible(xn) && ldp_objective(p, xn) <= F0) {
        x = xn;
        accepted = true;
        break;
      }
      tau /= 2.0;
    }
    if (!accepted) {
      newton_ok = false;
      break;
    }
  }

  if (!newton_ok || !sol.converged) {
    // Coordinate bisection on the strictly convex 1d sections.
    sol.used_fallback = true;
    for (int sweep = 0; sweep < 400; ++sweep) {
      for (int v = 0; v < nv; ++v) {
        Cell u = L.lam_cells.cell(L.mu_ordinals[v]);
        double lo = std::max(value_at(L, x, {u.i - 1, u.j}),
                             value_at(L, x, {u.i, u.j - 1}));
        double hi = std::min(value_at(L, x, {u.i + 1, u.j}),
                             value_at(L, x, {u.i, u.j + 1}));
        double a = lo + 1e-15 * (hi - lo), b = hi - 1e-15 * (hi - lo);
        for (int it = 0; it < 200; ++it) {
          double mid = (a + b) / 2.0;
          x[L.mu_ordinals[v]] = mid;
          double gv = ldp_gradient(p, x)[v];
          if (gv > 0.0)
            b = mid;
          else
            a = mid;
        }
        x[L.mu_ordinals[v]] = (a + b) / 2.0;
      }
      std::vector<double> g = ldp_gradient(p, x);
      double gn = 0.0;
      for (double gv : g) gn = std::max(gn, std::abs(gv));
      sol.grad_norm = gn;
      if (gn < gtol) {
        sol.converged = true;
        break;
      }
    }
  }

  // Certificates at the solution.
  {
    std::vector<double> g = ldp_gradient(p, x);
    double gn = 0.0;
    for (double gv : g) gn = std::max(gv > 0 ? gv : -gv, gn);
    sol.grad_norm = gn;
    double res = 0.0;
    for (int o : L.mu_ordinals) {
      Cell u = L.lam_cells.cell(o);
      double xu = x[o];
      double up = value_at(L, x, {u.i - 1, u.j});
      double left = value_at(L, x, {u.i, u.j - 1});
      double down = value_at(L, x, {u.i + 1, u.j});
      double right = value_at(L, x, {u.i, u.j + 1});
      res = std::max(res, std::abs((down - xu) * (right - xu) -
                                   (xu - up) * (xu - left)));
    }
    sol.cp_residual = res;

    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(nv, nv);
    for (int v = 0; v < nv; ++v) {
      Cell u = L.lam_cells.cell(L.mu_ordinals[v]);
      double xu = x[L.mu_ordinals[v]];
      double d = 0.0;
      for (Cell tc : {Cell{u.i - 1, u.j}, Cell{u.i, u.j - 1}}) {
        double xt = value_at(L, x, tc);
        if (xt > 0.0) d += (xt / xu) / (xu - xt);
        int ot = L.lam_cells.ordinal_of(tc);
        if (ot >= 0 && L.var_of_ordinal[ot] >= 0)
          H(v, L.var_of_ordinal[ot]) -= 1.0 / (xu - xt);
      }
      for (Cell vc : {Cell{u.i + 1, u.j}, Cell{u.i, u.j + 1}}) {
        double xv = value_at(L, x, vc);
        d += (xv / xu) / (xv - xu);
        int ov = L.lam_cells.ordinal_of(vc);
        if (ov >= 0 && L.var_of_ordinal[ov] >= 0)
          H(v, L.var_of_ordinal[ov]) -= 1.0 / (xv - xu);
      }
      H(v, v) += d;
    }
    Eigen::LLT<Eigen::MatrixXd> llt(H);
    sol.hessian_pd = llt.info() == Eigen::Success;
    sol.objective = ldp_objective(p, x);
  }
  sol.x = x;
  return sol;
}

ConcentrationReport concentration_experiment(const LimitShapeProblem& p, long N,
                                             long reps, std::uint64_t seed) {
  Layout L = make_layout(p);
  LimitShapeSolution sol = solve_limit_shape(p);
  std::vector<long> sigma(L.skew_cells.num_cells());
  for (int o = 0; o < L.skew_cells.num_cells(); ++o)
    sigma[o] = std::llround(p.boundary[o] * static_cast<double>(N));

  ConcentrationReport rep;
  rep.N = N;
  rep.reps = reps;
  rep.mean_dev.assign(L.mu_ordinals.size(), 0.0);
  rep.mean_abs_dev.assign(L.mu_ordinals.size(), 0.0);
  std::vector<double> max_devs(reps, 0.0);
  for (long rep_i = 0; rep_i < reps; ++rep_i) {
    PlaneArray pi = sample_K(p.lambda, p.mu, AlphaSpec(), sigma, seed, rep_i);
    double mx = 0.0;
    for (size_t v = 0; v < L.mu_ordinals.size(); ++v) {
      Cell u = L.lam_cells.cell(L.mu_ordinals[v]);
      double dev = static_cast<double>(pi.at(u).value()) / N -
                   sol.x[L.mu_ordinals[v]];
      rep.mean_dev[v] += dev;
      rep.mean_abs_dev[v] += std::abs(dev);
      mx = std::max(mx, std::abs(dev));
    }
    max_devs[rep_i] = mx;
  }
  for (auto& d : rep.mean_dev) d /= static_cast<double>(reps);
  for (auto& d : rep.mean_abs_dev) d /= static_cast<double>(reps);
  rep.max_abs_bias = 0.0;
  rep.max_mean_abs_dev = 0.0;
  for (double d : rep.mean_dev)
    rep.max_abs_bias = std::max(rep.max_abs_bias, std::abs(d));
  for (double d : rep.mean_abs_dev)
    rep.max_mean_abs_dev = std::max(rep.max_mean_abs_dev, d);
  std::sort(max_devs.begin(), max_devs.end());
  auto q = [&](double f) {
    return max_devs[static_cast<size_t>(f * (reps - 1))];
  };
  rep.dev_q50 = q(0.5);
  rep.dev_q90 = q(0.9);
  rep.dev_q99 = q(0.99);
  return rep;
}

}  // namespace whittaker
