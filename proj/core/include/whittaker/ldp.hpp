#pragma once

#include <cstdint>
#include <vector>

#include "whittaker/shape.hpp"

namespace whittaker {

/// Limit-shape variational problem: boundary data a > 0 on lambda/mu,
/// unknowns on mu, feasible region 0 <= x_u <= min of the outer neighbours.
struct LimitShapeProblem {
  Shape lambda;
  Shape mu;
  std::vector<double> boundary;  // row-major over lambda/mu cells
};

struct LimitShapeSolution {
  std::vector<double> x;       // row-major over all lambda cells
  double objective = 0.0;      // F(x)
  double grad_norm = 0.0;      // sup-norm of the gradient at x
  double cp_residual = 0.0;    // sup-norm of the critical-point equations
  int iterations = 0;
  bool converged = false;
  bool hessian_pd = false;     // Cholesky succeeded at the solution
  bool used_fallback = false;  // coordinate bisection engaged
};

/// Entropy objective F(x) (0 log 0 = 0 convention).
double ldp_objective(const LimitShapeProblem& p, const std::vector<double>& x_full);
/// Gradient over the mu cells.
std::vector<double> ldp_gradient(const LimitShapeProblem& p,
                                 const std::vector<double>& x_full);

/// Damped Newton minimization of the strictly convex F with a coordinate
/// bisection fallback; the solution satisfies the critical-point equations
/// (x_{i+1,j}-x_{ij})(x_{i,j+1}-x_{ij}) = (x_{ij}-x_{i-1,j})(x_{ij}-x_{i,j-1}).
LimitShapeSolution solve_limit_shape(const LimitShapeProblem& p);

struct ConcentrationReport {
  long N = 0;
  long reps = 0;
  std::vector<double> mean_dev;      // per mu cell, signed mean of pi/N - x^a
  std::vector<double> mean_abs_dev;  // per mu cell
  double max_abs_bias = 0.0;         // sup over cells of |mean_dev|
  double max_mean_abs_dev = 0.0;
  double dev_q50 = 0.0, dev_q90 = 0.0, dev_q99 = 0.0;  // max-cell deviation
};

/// Samples pi from K_{round(N a)} and compares pi/N with the limit shape.
ConcentrationReport concentration_experiment(const LimitShapeProblem& p, long N,
                                             long reps, std::uint64_t seed);

}  // namespace whittaker
