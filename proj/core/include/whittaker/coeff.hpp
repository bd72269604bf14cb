#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "whittaker/rational.hpp"
#include "whittaker/shape.hpp"

namespace whittaker {

/// P_r(n) = sum n_i^2 - sum n_i n_{i+1} + sum alpha_i n_i,
/// the total exit rate of the boundary chain at n.
long toda_P(const AlphaSpec& alpha, const std::vector<long>& n);

/// One-step kernel q_r(n,k) = prod_i 1/[(n_i-k_i)! (n_i-k_{i-1}+alpha_{i..r})!]
/// with k_0 = k_r = 0; zero whenever a factorial argument is negative.
Rat q_kernel(int r, const AlphaSpec& alpha, const std::vector<long>& n,
             const std::vector<long>& k);

/// Memoized series coefficients a_r(n) for a fixed integer offset sequence.
/// Thread-safe: concurrent lookups are serialized internally and the result
/// is deterministic.
class CoeffEngine {
 public:
  explicit CoeffEngine(AlphaSpec alpha = AlphaSpec());

  const AlphaSpec& alpha() const { return alpha_; }

  /// a_r(n); zero outside the admissible cone (including negative entries).
  Rat a(int r, const std::vector<long>& n);

  /// A_r(n) = (prod n_i!^2) a_r(n); requires alpha == 0.
  Int a_normalized(int r, const std::vector<long>& n);

 private:
  Rat a_unlocked(int r, const std::vector<long>& n);
  AlphaSpec alpha_;
  std::map<std::pair<int, std::vector<long>>, Rat> memo_;
  std::mutex mutex_;
};

/// Staircase weight w_r(pi) = prod 1/[(pi_{ij}-pi_{i,j-1})! (pi_{ij}-pi_{i-1,j}+beta_{ij})!].
Rat weight_staircase(const AlphaSpec& alpha, const PlaneArray& pi);

/// Normalized staircase weight W_r(pi) =
/// prod_{(i,j) in delta_r} C(pi_{i,j+1}, pi_{ij}) C(pi_{i+1,j}, pi_{ij}).
Int weight_staircase_normalized(int r, const PlaneArray& pi);

/// General-shape weight W_{lambda,mu}(pi); requires non-negative alpha.
Rat weight_general(const Shape& lambda, const Shape& mu,
                   const AlphaSpec& alpha, const PlaneArray& pi);

/// All pi on lambda with pi restricted to lambda/mu equal to sigma
/// (row-major values over the skew cells).  Non-negative alpha only.
std::vector<PlaneArray> enumerate_fiber(const Shape& lambda, const Shape& mu,
                                        const AlphaSpec& alpha,
                                        const std::vector<long>& sigma);

/// A_{lambda,mu}(sigma) = sum of W_{lambda,mu} over the fiber.
Rat coeff_general_shape(const Shape& lambda, const Shape& mu,
                        const AlphaSpec& alpha,
                        const std::vector<long>& sigma);

/// Shifted-coordinate coefficients.  nu has r+1 exact rational entries with
/// zero sum, equal fractional parts and integer successive differences;
/// n_prime lies in the shifted cone S^{r,nu}.
Rat tilde_a(int r, const std::vector<Rat>& nu,
            const std::vector<Rat>& n_prime);

/// Recomputes tilde_a with the parameters nu permuted and compares.
bool permutation_invariance_check(int r, const std::vector<Rat>& nu,
                                  const std::vector<Rat>& n_prime,
                                  const std::vector<int>& permutation);

/// Type B_r coefficients as a weighted sum over reverse plane partitions of
/// the shifted staircase with boundary n.
Int b_coeff(int r, const std::vector<long>& n);
/// Shifted-staircase weight W_{B_r}.
Int weight_B(int r, const PlaneArray& pi);
/// All reverse plane partitions of the shifted staircase delta'_r with
/// boundary pi_{i,2r-i} = n_i.
std::vector<PlaneArray> enumerate_b_fiber(int r, const std::vector<long>& n);
/// Forward solve of H^{B_r} B = 0 with B(0) = 1 (independent route).
Rat b_coeff_via_recursion(int r, const std::vector<long>& n);

/// Delannoy numbers BC_2(n,m) = sum_k C(n,k) C(m,k) 2^k.
Int bc2_coeff(long n, long m);
/// Forward solve of H^{BC_2} f = 0 (tilde = false) or of the second
/// Hamiltonian H~^{BC_2} f = 0 (tilde = true), f(0,0) = 1.
Rat bc2_coeff_via_recursion(long n, long m, bool tilde);

/// G_2 coefficients from the binomial sum.
Int g2_coeff(long n, long m);
/// Forward solve of H^{G_2} f = 0 with f(0,0) = 1 (independent route).
Rat g2_coeff_via_recursion(long n, long m);
/// 6-index G_2 weight W(n,m,i,j,k,l).
Int weight_G2(long n, long m, long i, long j, long k, long l);

/// Apery numbers a_n = A_3(n,n,n); the returned sequence is verified against
/// the three-term recurrence n^3 a_n = (34n^3-51n^2+27n-5) a_{n-1} -
/// (n-1)^3 a_{n-2} at every step (throws on mismatch).
std::vector<Int> apery_diagonal(long n_max);
/// Independent evaluation: sum_k C(n,k)^2 C(n+k,k)^2.
Int apery_binomial(long n);

/// Residual of the defining difference equation at n:
/// [P_r(n)] a_r(n) - sum_i a_r(n - e_i).  Exactly zero for valid tables.
Rat difference_equation_residual(CoeffEngine& eng, int r,
                                 const std::vector<long>& n);

}  // namespace whittaker
