#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "whittaker/coeff.hpp"
#include "whittaker/operators.hpp"
#include "whittaker/shape.hpp"

namespace whittaker {

/// splitmix64 step; used to derive independent deterministic streams.
std::uint64_t splitmix64(std::uint64_t x);
/// Stream seeded from (seed, ids...) by splitmix64 mixing.
std::mt19937_64 make_stream(std::uint64_t seed,
                            std::initializer_list<std::uint64_t> ids);

struct StopRule {
  enum class Kind { Time, Absorption, CellZero };
  Kind kind = Kind::Absorption;
  double time = 0.0;
  Cell cell{0, 0};

  static StopRule time_limit(double t) { return {Kind::Time, t, {0, 0}}; }
  static StopRule absorption() { return {Kind::Absorption, 0.0, {0, 0}}; }
  static StopRule cell_zero(Cell c) { return {Kind::CellZero, 0.0, c}; }
};

struct PathEvent {
  double time;
  Cell cell;
  long new_value;
};

struct PathRecord {
  std::vector<PathEvent> events;
  std::vector<long> final_values;  // row-major over the chain's cells
  double final_time = 0.0;
  bool absorbed = false;
};

struct SimConfig {
  Shape lambda;
  Shape mu;  // empty: full shape
  AlphaSpec alpha;
  // Exactly one of the three initial conditions:
  std::optional<std::vector<long>> init_values;   // explicit row-major state
  std::optional<long> init_all;                   // omega + N at every cell
  std::optional<std::vector<long>> init_k_sigma;  // sample from K_sigma
  StopRule stop = StopRule::absorption();
  std::uint64_t seed = 0;
};

/// One path of the growth chain G^{lambda/mu, alpha} via the next-reaction
/// method.  Per-cell exponential streams are keyed by (seed, replica, i, j),
/// so restrictions of the same seed to sub-shapes reproduce the same event
/// sequence on the shared cells.
PathRecord simulate(const SimConfig& config, long replica = 0);

/// Boundary chain with caller-supplied per-coordinate jump rates
/// (rate(i, state) for the move state -> state - e_i).
PathRecord simulate_boundary(
    int r, const std::vector<long>& start,
    const std::function<double(int, const std::vector<long>&)>& rate,
    const StopRule& stop, std::uint64_t seed, long replica = 0);

/// M^r chain on the ordered cone.
PathRecord simulate_M(int r, const std::vector<long>& start, const StopRule& stop,
                      std::uint64_t seed, long replica = 0);
/// Rank-driven Poisson system R (N particles, weakly increasing state).
PathRecord simulate_R(int N, const std::vector<long>& start, const StopRule& stop,
                      std::uint64_t seed, long replica = 0);

/// Corner-growth representation of the alpha = 0 chain: same per-cell
/// streams, state kept as nested partitions.  Event sequences coincide with
/// simulate() exactly (same seed, same replica).
PathRecord simulate_corner_growth(const Shape& lambda, long init_height,
                                  const StopRule& stop, std::uint64_t seed,
                                  long replica = 0);

/// Exact sample from K^{lambda,mu}_sigma.  Staircase pairs use the
/// anti-diagonal conditional kernels; general pairs enumerate the fiber
/// (refused above `max_fiber` states).
PlaneArray sample_K(const Shape& lambda, const Shape& mu,
                    const AlphaSpec& alpha, const std::vector<long>& sigma,
                    std::uint64_t seed, long replica = 0,
                    long max_fiber = 1000000);

/// State at time t of the chain started from omega + N everywhere.
PlaneArray entrance_surrogate(const Shape& lambda, const AlphaSpec& alpha,
                              long N, double t, std::uint64_t seed,
                              long replica = 0);

/// Monotone coupling: two chains from omega + N1 and omega + N2 (N1 <= N2)
/// driven by shared event randomness; the first component stays cellwise
/// below the second at all times (checked).
std::pair<PlaneArray, PlaneArray> entrance_coupled_pair(
    const Shape& lambda, const AlphaSpec& alpha, long N1, long N2, double t,
    std::uint64_t seed, long replica = 0);

/// Transient distribution row of exp(tL) by uniformization with rigorous
/// Poisson tail truncation (total-variation defect below tv_tol).
std::vector<double> transient_probs(const SparseOperator& L, int start,
                                    double t, double tv_tol = 1e-12);

/// P2 (ASCII) PGM heightmap; value = pi_{ij}, maxval as given.  Cells
/// outside the shape render as 0.  Deterministic byte-for-byte output.
void write_pgm(const PlaneArray& pi, long maxval, const std::string& path);
std::string pgm_string(const PlaneArray& pi, long maxval);
/// Simple grayscale SVG rendering of the same heightmap.
void write_svg(const PlaneArray& pi, long maxval, const std::string& path);

/// Upper tail of the chi-square distribution (regularized incomplete gamma).
double chi2_survival(double stat, double dof);
/// Two-sample Kolmogorov-Smirnov distance for integer samples.
double ks_distance(std::vector<long> a, std::vector<long> b);

}  // namespace whittaker
