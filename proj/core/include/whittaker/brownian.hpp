#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "whittaker/coeff.hpp"
#include "whittaker/operators.hpp"

namespace whittaker {

using Complex = std::complex<double>;

/// Monte Carlo mean with componentwise standard errors and seed provenance.
struct Estimate {
  Complex mean{0.0, 0.0};
  double stderr_re = 0.0;
  double stderr_im = 0.0;
  long samples = 0;
  std::uint64_t seed = 0;
};

/// Functionals of one Brownian path on [0, t]:
///   Y_k(t) = e^{i(B_k - B_{k+1}) + alpha_k t},  Z_k(t) = int_0^t Y_k,
///   U^j(t) the iterated integrals, U = U^r.
/// Y is evaluated exactly at grid points from Gaussian increments; only the
/// quadrature of Z and U carries discretization error.
struct PathFunctionals {
  std::vector<Complex> Y;
  std::vector<Complex> Z;
  std::vector<Complex> U_levels;  // U^1..U^r
};

PathFunctionals simulate_brownian_path(int r, double t, double dt,
                                       const std::vector<double>& drift_alpha,
                                       std::mt19937_64& rng);

/// Parallel MC mean of f over independent paths; per-path streams derive
/// from (seed, path index), so results do not depend on the thread count.
Estimate mc_mean(int r, double t, double dt, long paths, std::uint64_t seed,
                 int threads,
                 const std::function<Complex(const PathFunctionals&)>& f,
                 const std::vector<double>& drift_alpha = {});

struct DualityReport {
  Estimate mc;
  double oracle = 0.0;
  double z_re = 0.0;  // (Re mc - oracle) / stderr
  double z_im = 0.0;  // Im mc / stderr
  bool pass_3sigma = false;
};

/// p_t(n,m) = (a_r(m)/a_r(n)) E[Y^{-n} Z^{n-m}]/(n-m)!  against the
/// uniformization of the Doob chain L^r.
DualityReport duality_check_L(int r, const std::vector<long>& n,
                              const std::vector<long>& m, double t, long paths,
                              double dt, std::uint64_t seed, int threads = 0);

/// q_t(p^r, 0) = E[U^r(t)^p] / p!^r against the uniformization of M^r.
DualityReport duality_check_M(int r, long p, double t, long paths, double dt,
                              std::uint64_t seed, int threads = 0);

/// E exp(sum y_k Z_k(t)) against the series Phi_r(y) = sum a_r(n) y^n.
DualityReport phi_check(int r, const std::vector<double>& y, double t,
                        long paths, double dt, std::uint64_t seed,
                        int threads = 0);

/// Truncated series Phi_r(y) = sum_n a_r(n) y^n (factorial-squared decay).
double phi_series(int r, const std::vector<double>& y, double tol = 1e-14);

/// Raw moment E[Y(t)^{-n} Z(t)^l]; zero whenever l is not below n.
Estimate moment_YZ(int r, const std::vector<long>& n, const std::vector<long>& l,
                   double t, long paths, double dt, std::uint64_t seed,
                   int threads = 0);

/// Mean |Z(t_{j+1}) - Z(t_j)| across checkpoints, for the drifted variant;
/// a Cauchy stabilization diagnostic for Z^{(-alpha)}(infinity).
std::vector<double> z_stabilization(int r, const std::vector<double>& drift_alpha,
                                    const std::vector<double>& checkpoints,
                                    long paths, double dt, std::uint64_t seed);

/// Uniformization oracle p_t(n, m) for the Doob chain L^{r,alpha}.
double doob_transition_prob(int r, const AlphaSpec& alpha,
                            const std::vector<long>& n,
                            const std::vector<long>& m, double t);
/// Uniformization oracle q_t(n, m) for M^r.
double m_transition_prob(int r, const std::vector<long>& n,
                         const std::vector<long>& m, double t);

}  // namespace whittaker
