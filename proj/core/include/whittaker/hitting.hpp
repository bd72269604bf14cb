#pragma once

#include <vector>

#include "whittaker/rational.hpp"

namespace whittaker {

/// Laplace transform E_k e^{-s T_n} for the 1d chain n(n+a) D_n:
/// product over j = n+1..k of j(j+a) / (j(j+a) + s).  Exact for rational s.
Rat laplace_hit_1d(long k, long n, long a, const Rat& s);

/// Heat kernel p~_t(k,n) of h^1 by the spectral sum with exact rational
/// prefactors; k >= n.
double kernel_1d(long k, long n, long a, double t);
/// Transition kernel p_t(k,n) = a_1(n)/a_1(k) p~_t(k,n).
double transition_1d(long k, long n, long a, double t);

/// sum_a prod_{b != a} 1/(lambda_a - lambda_b); exactly zero for N >= 2.
Rat gibbs_identity_residual(const std::vector<Rat>& lambdas);

/// E e^{-s tau} for the r=2 chain with offset a >= 0 absorbed at (0,a):
/// exact forward solve of (L^2 - s) H = 0 with H(0,a) = 1.
Rat absorption_laplace_exact(long n, long m, long a, const Rat& s);
/// Product form: tau ~ tau_n + tau'_{m-a} for independent 1d times.
Rat absorption_laplace_product(long n, long m, long a, const Rat& s);

/// Exact hitting probability P_{(k,l)}(T_{(n,m)} < infinity) for the r=2
/// chain (alpha = 0), via the cube-root-of-unity product formulas collapsed
/// to integer products.
Rat hitting_prob_finite(long k, long l, long n, long m);
/// Independent oracle: triangular first-step recursion.
Rat hitting_prob_absorbing_solve(long k, long l, long n, long m);

struct SeriesValue {
  double value = 0.0;
  double tail_bound = 0.0;
  long terms = 0;
};

/// S_k = sum_{j>=1} 6 pi^2 j^{2+3k} / sin^2(pi omega j), omega the primitive
/// cube root of unity; evaluated in extended precision with a reported
/// geometric tail bound.  S_0 = 1, S_k = 0 for positive even k.
SeriesValue S_series(int k, double tol = 1e-14, long jmax = 200);

/// T_r = -sum_{n>=1} n^r q^n/(1-q^n)^2 at q = -e^{-pi sqrt(3)};
/// S_k = 24 pi^2 T_{2+3k}.
SeriesValue T_series(int r, double tol = 1e-16, long jmax = 400);

/// Entrance-law hitting probability h_{nm} = P(T_{(n,m)} < infinity) from
/// the spectral series.
SeriesValue hitting_prob_entrance(long n, long m, double tol = 1e-12);

struct Zeta2Report {
  long max_level = 0;
  double sum_occupation_raw = 0.0;       // sum a_2 a_2*         -> 2 zeta(2)
  double sum_occupation_extrap = 0.0;    // with tail extrapolation
  double sum_normalized_raw = 0.0;       // sum a_2*/ (n!m!)^2   -> zeta(2)
  double fc_k1 = 0.0;                    // (1k2) partial sum at k=1 -> 1
  double fc_k2 = 0.0;                    // (1k2) partial sum at k=2 -> 1/4
};

/// Truncated evaluation of the two occupation-time identities and of the
/// restriction identity at k = 1, 2.  The occupation sum converges only
/// like 1/level, so a two-parameter tail extrapolation is reported next to
/// the raw partial sum.
Zeta2Report zeta2_identities(long max_level, double series_tol = 1e-12);

}  // namespace whittaker
