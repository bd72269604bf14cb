#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "whittaker/coeff.hpp"
#include "whittaker/rational.hpp"
#include "whittaker/shape.hpp"

namespace whittaker {

using State = std::vector<long>;

/// An explicitly enumerated finite state space with index lookup.
class StateSpace {
 public:
  StateSpace() = default;
  explicit StateSpace(std::vector<State> states);
  int size() const { return static_cast<int>(states_.size()); }
  const State& state(int idx) const { return states_[idx]; }
  const std::vector<State>& states() const { return states_; }
  int index_of(const State& s) const;  // -1 if absent

 private:
  std::vector<State> states_;
  std::map<State, int> index_;
};

/// Sparse rational matrix, row-major; used for operators and kernels alike.
class RatMatrix {
 public:
  RatMatrix() : rows_(0), cols_(0) {}
  RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {}
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  void add(int i, int j, const Rat& v);
  void set(int i, int j, const Rat& v);
  Rat at(int i, int j) const;
  const std::map<int, Rat>& row(int i) const { return data_[i]; }
  RatMatrix multiply(const RatMatrix& o) const;
  /// First entry where the two matrices differ, if any.
  std::optional<std::pair<int, int>> first_difference(const RatMatrix& o) const;
  std::vector<Rat> apply(const std::vector<Rat>& f) const;
  std::vector<std::vector<double>> to_dense_double() const;

 private:
  int rows_, cols_;
  std::vector<std::map<int, Rat>> data_;
  void prune(int i, int j);
};

/// A finite-state difference operator: off-diagonal coefficients plus an
/// explicit diagonal (which may include a potential).  Convention:
/// (O f)(x) = sum_y off(x,y) f(y) + diag(x) f(x).
struct SparseOperator {
  int dim = 0;
  std::vector<std::vector<std::pair<int, Rat>>> off;
  std::vector<Rat> diag;

  explicit SparseOperator(int d = 0) : dim(d), off(d), diag(d, Rat(0)) {}
  void add_off(int from, int to, const Rat& rate);
  std::vector<Rat> apply(const std::vector<Rat>& f) const;
  RatMatrix to_matrix() const;
  /// Off-diagonals non-negative and row sums exactly zero.
  bool is_markov_generator(std::string* why = nullptr) const;
  /// Exact row sums (off-diagonal + diagonal).
  std::vector<Rat> row_sums() const;
};

struct BuiltOperator {
  StateSpace space;
  SparseOperator op;
};

/// All valid arrays on the skew diagram lambda/mu below the given roof
/// (cellwise), as a state space in row-major value order.
StateSpace array_space(const Shape& lambda, const Shape& mu,
                       const AlphaSpec& alpha, const State& roof);

/// All valid arrays on lambda whose restriction to lambda/mu is capped by
/// roof_sigma; the union of the K-fibers over all sigma below the roof.
StateSpace fiber_union_space(const Shape& lambda, const Shape& mu,
                             const AlphaSpec& alpha, const State& roof_sigma);

/// The growth generator G^{lambda,mu} (mu may be empty): subtract one from
/// sigma_{ij} at rate (sigma_{ij}-sigma_{i,j-1})(sigma_{ij}-sigma_{i-1,j}+beta_{ij}).
BuiltOperator build_G(const Shape& lambda, const Shape& mu,
                      const AlphaSpec& alpha, const State& roof);
/// Same generator on a caller-supplied space (must be closed under moves).
SparseOperator generator_on(const StateSpace& space, const CellSet& cells,
                            const AlphaSpec& alpha);

/// The corner potential V_{lambda,mu}(sigma).
Rat corner_potential(const Shape& lambda, const Shape& mu,
                     const AlphaSpec& alpha, const CellSet& skew_cells,
                     const State& sigma);
/// External corners of mu.
std::vector<Cell> external_corners(const Shape& mu);

/// H^{lambda,mu} = G^{lambda,mu} + V_{lambda,mu} as a diagonal potential.
BuiltOperator build_H(const Shape& lambda, const Shape& mu,
                      const AlphaSpec& alpha, const State& roof);

/// h^r = sum_i L_{n_i} - P_r(n) on the cone Z_+^{r,alpha} below roof.
BuiltOperator build_h_toda(int r, const AlphaSpec& alpha, const State& roof);

/// H^r = sum n_i^2 D_{n_i} + sum n_i n_{i+1} (normalized, alpha = 0).
BuiltOperator build_H_normalized(int r, const State& roof);

/// Doob transform L = h^{-1} (H) h.  Requires H h = 0 exactly on every
/// state (throws with the offending state otherwise) and h > 0; the result
/// is checked to be a Markov generator.
SparseOperator doob_transform(const SparseOperator& H,
                              const std::vector<Rat>& h,
                              const StateSpace* space_for_errors = nullptr);

/// M^r = sum_{i<r} n_i (n_i - n_{i+1}) D_{n_i} + n_r^2 D_{n_r} on the
/// ordered cone E_r = {n_1 >= ... >= n_r >= 0} below roof.
BuiltOperator build_M(int r, const State& roof);

/// Rank-driven Poisson system R = sum_i r_i(x) B_{x_i} on multisets of N
/// sites in {0..cap}, stored weakly increasing.  Moves beyond the cap are
/// dropped (the finite-shape first-row marginal blocks there too).
BuiltOperator build_R_bose(int N, long cap);

/// Delta-Bose-gas Hamiltonian H = sum_i B_{x_i} - #{coincident pairs},
/// acting on symmetric functions represented on sorted states; entries with
/// x_i = cap couple to states above the cap, so callers should evaluate on
/// interior rows only.  Exposed mainly for the eigenfunction check.
Rat bose_hamiltonian_apply(const State& x_sorted,
                           const std::function<Rat(const State&)>& f);
/// The positive eigenfunction phi(x) = prod_i i^{x_(i)}.
Rat bose_eigenfunction(const State& x_sorted);

/// Type-A staircase symmetry pi_hat_{ij} = pi_{ji} - gamma_{ji} with
/// gamma_{ij} = -(beta_{1j} + ... + beta_{ij}); maps Pi^{r,alpha} to
/// Pi^{r,-alpha} (membership validated).
PlaneArray hat_transform(const PlaneArray& pi, const AlphaSpec& alpha);

/// Shifted-staircase (type B) growth generator G^{B_r}; diagonal cells jump
/// at half rate against the previous diagonal cell.
BuiltOperator build_G_B(int r, const State& roof_n);
/// H^{B_r} on Z_+^r below roof: rates n_i^2 (half for the last), potential
/// sum n_i n_{i+1}.
BuiltOperator build_H_B(int r, const State& roof_n);

/// The three commuting operators annihilating A_3 (alpha = 0), on the box
/// [0, maxN]^3.  The middle one is as printed up to overall sign with the
/// first term's sign flipped, which is the variant that annihilates A_3.
std::vector<SparseOperator> build_A3_operators(long maxN, StateSpace* space_out);

struct A3CheckReport {
  bool annihilate = false;
  bool commute = false;
  std::string detail;
};
A3CheckReport commuting_A3_check(long maxN);

}  // namespace whittaker
