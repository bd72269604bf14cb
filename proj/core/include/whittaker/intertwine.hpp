#pragma once

#include <string>

#include "whittaker/operators.hpp"

namespace whittaker {

struct VerifyReport {
  bool pass = false;
  long rows_checked = 0;
  std::string detail;  // first witness on failure, summary on success
};

/// Exact entrywise check of h^r q_r = q_r h^{r-1} for all (n,k) with
/// entries <= maxN.  With `perturb`, one kernel offset is shifted to prove
/// the check can fail.
VerifyReport verify_prop_iq(int r, const AlphaSpec& alpha, long maxN,
                            bool perturb = false);

/// Exact operator identity H^{lambda,mu} Lambda = Lambda G^lambda on the
/// truncation below roof_sigma, plus H A_{lambda,mu} = 0 row-wise.
VerifyReport verify_mf_rpp(const Shape& lambda, const Shape& mu,
                           const AlphaSpec& alpha, const State& roof_sigma,
                           bool perturb = false);

/// For staircase pairs (delta_{r+1}, delta_r): the Doob transform of
/// H^{lambda,mu} by A equals the Doob transform of h^r by a_r, entrywise.
VerifyReport verify_doob_consistency(int r, const State& roof_n);

enum class RootSystem { B2, B3, BC1, BC2, G2 };
RootSystem root_system_from_string(const std::string& s);

/// Exact intertwining checks per root system (BC2 covers both Hamiltonians).
VerifyReport verify_root_system(RootSystem which, long bound,
                                bool perturb = false);

/// Markov projection via matrix exponentials: the lambda/mu marginal of the
/// full chain started from K_{sigma0} against the Doob chain started at
/// sigma0; sup-norm tolerance `tol`.
VerifyReport verify_projection_exact(const Shape& lambda, const Shape& mu,
                                     const AlphaSpec& alpha,
                                     const State& sigma0, double t,
                                     double tol = 1e-10);

/// The first-row location multiset of the G^lambda chain against the
/// rank-driven Poisson system R, as generators, exactly.
VerifyReport verify_first_row_bose(const Shape& lambda, int N);

/// Dense matrix exponential exp(tA) (scaling and squaring), desk scale.
std::vector<std::vector<double>> expm(const std::vector<std::vector<double>>& A,
                                      double t);

}  // namespace whittaker
