#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "whittaker/rational.hpp"

namespace whittaker {

/// 1-based matrix coordinates: row i (from top), column j (from left).
struct Cell {
  int i = 0;
  int j = 0;
  auto operator<=>(const Cell&) const = default;
};

/// An integer partition; parts weakly decreasing, trailing zeros dropped.
/// Validated at construction, so downstream code may assume validity.
class Shape {
 public:
  Shape() = default;
  explicit Shape(std::vector<long> parts);

  const std::vector<long>& rows() const { return rows_; }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  long row(int i) const;  // lambda_i, zero beyond the last part
  long size() const;      // number of cells
  bool empty() const { return rows_.empty(); }
  bool contains(Cell c) const;
  bool contains(const Shape& mu) const;  // mu subset of *this, cellwise

  /// lambda-circle: cells whose right and down neighbours are both in lambda.
  Shape interior() const;

  Shape transpose() const;

  bool operator==(const Shape&) const = default;
  std::string to_string() const;  // "3,2,1"; empty shape prints "0"

 private:
  std::vector<long> rows_;
};

Shape staircase(int r);              // delta_{r+1} = (r, r-1, ..., 1)
Shape rectangle(int rows, long cols);

/// A finite cell set given as row intervals [begin_j, end_j], one per row.
/// Covers partition diagrams, skew diagrams and shifted staircases.
class CellSet {
 public:
  CellSet() = default;
  static CellSet from_shape(const Shape& s);
  static CellSet skew(const Shape& outer, const Shape& inner);
  static CellSet shifted_staircase(int r);  // {(i,j): 1 <= i <= j <= 2r-i}

  int num_cells() const { return static_cast<int>(cells_.size()); }
  const std::vector<Cell>& cells() const { return cells_; }  // row-major
  Cell cell(int ordinal) const { return cells_[ordinal]; }
  bool contains(Cell c) const { return ordinal_of(c) >= 0; }
  /// Row-major ordinal of a cell, or -1 if absent.
  int ordinal_of(Cell c) const;

  bool operator==(const CellSet&) const = default;

 private:
  struct RowSpan {
    int i;
    int j_begin;
    int j_end;  // inclusive
    bool operator==(const RowSpan&) const = default;
  };
  std::vector<RowSpan> spans_;
  std::vector<Cell> cells_;
  void rebuild_cells();
};

/// Skew diagram lambda/mu with mu possibly empty.
class SkewShape {
 public:
  SkewShape() = default;
  explicit SkewShape(Shape outer, Shape inner = Shape());
  const Shape& outer() const { return outer_; }
  const Shape& inner() const { return inner_; }
  const CellSet& cells() const { return cells_; }
  bool operator==(const SkewShape&) const = default;

 private:
  Shape outer_, inner_;
  CellSet cells_;
};

/// Non-negative integer, or +infinity.  Infinity is a real variant, not a
/// large sentinel value; arithmetic involving it must be explicit.
class ExtNat {
 public:
  ExtNat() : v_(0), inf_(false) {}
  ExtNat(long v) : v_(v), inf_(false) {
    if (v < 0) throw std::invalid_argument("ExtNat: negative value");
  }
  static ExtNat infinity() {
    ExtNat e;
    e.inf_ = true;
    return e;
  }
  bool is_inf() const { return inf_; }
  long value() const {
    if (inf_) throw std::logic_error("ExtNat: value() on +infinity");
    return v_;
  }
  friend bool operator==(const ExtNat& a, const ExtNat& b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
  }
  friend bool operator<(const ExtNat& a, const ExtNat& b) {
    if (a.inf_) return false;
    if (b.inf_) return true;
    return a.v_ < b.v_;
  }
  friend bool operator<=(const ExtNat& a, const ExtNat& b) {
    return a == b || a < b;
  }

 private:
  long v_;
  bool inf_;
};

/// Integer offsets alpha_1, alpha_2, ... (implicitly zero beyond the given
/// prefix), with the derived partial sums beta_{ij} = alpha_i + ... +
/// alpha_{i+j-1} and the zero-sum vector nu.
class AlphaSpec {
 public:
  AlphaSpec() = default;
  explicit AlphaSpec(std::vector<long> alpha);

  long alpha(int i) const;          // 1-based; zero beyond prefix
  long alpha_range(int i, int j) const;  // alpha_i + ... + alpha_j, j >= i-1
  long beta(int i, int j) const;    // alpha_{i, i+j-1}; beta_{i,1} = alpha_i
  int prefix_len() const { return static_cast<int>(alpha_.size()); }
  bool all_zero() const;
  bool all_nonnegative() const;
  AlphaSpec negated() const;

  /// nu in Q^{r+1} with sum 0 and alpha_i = nu_i - nu_{i+1}; entries have
  /// common denominator r+1 and are kept exact.
  std::vector<Rat> nu(int r) const;

 private:
  std::vector<long> alpha_;
};

/// A cell-indexed array of extended non-negative integers over a CellSet.
class PlaneArray {
 public:
  PlaneArray() = default;
  PlaneArray(CellSet cells, ExtNat fill = ExtNat(0));
  PlaneArray(CellSet cells, std::vector<long> row_major_values);

  const CellSet& cells() const { return cells_; }
  int num_cells() const { return cells_.num_cells(); }
  ExtNat at(Cell c) const;           // throws if cell absent
  ExtNat at_or_zero(Cell c) const;   // 0 for out-of-set cells (boundary rule)
  void set(Cell c, ExtNat v);
  bool all_finite() const;
  /// Finite values in row-major cell order; throws if any entry is infinite.
  std::vector<long> finite_values() const;
  long max_finite() const;

  bool operator==(const PlaneArray&) const = default;

 private:
  CellSet cells_;
  std::vector<ExtNat> values_;
};

/// The minimal array omega on the given cells: omega_{ij} =
/// omega_{i,j-1} v (omega_{i-1,j} - beta_{ij}), zero boundary.  For
/// non-negative alpha this is identically zero.
PlaneArray omega_array(const AlphaSpec& alpha, const CellSet& cells);
PlaneArray omega_array(const AlphaSpec& alpha, int r);  // staircase cells

/// Closed form for the staircase omega via decreasing rearrangements of the
/// level-k zero-sum vectors; used as an independent cross-check.
PlaneArray omega_array_closed_form(const AlphaSpec& alpha, int r);

/// True iff pi_{ij} >= omega_{ij} v pi_{i,j-1} v (pi_{i-1,j} - beta_{ij})
/// holds at every cell (out-of-set neighbours read as 0).
bool validate_state(const PlaneArray& pi, const AlphaSpec& alpha);

/// Extension of mu inside lambda/mu by the cells whose left or up neighbour
/// lies in mu.  Requires mu inside the interior of lambda.
Shape extend_mu(const Shape& lambda, const Shape& mu);

/// A reverse plane partition as the nested partitions
/// mu^k = {(i,j) : pi_{ij} <= k}, k = 0..N-1 with N = max entry.
class NestedPartitions {
 public:
  NestedPartitions() = default;
  NestedPartitions(Shape lambda, std::vector<Shape> levels);
  const Shape& lambda() const { return lambda_; }
  const std::vector<Shape>& levels() const { return levels_; }
  int num_levels() const { return static_cast<int>(levels_.size()); }

  bool operator==(const NestedPartitions&) const = default;

 private:
  Shape lambda_;
  std::vector<Shape> levels_;  // mu^0 subset mu^1 subset ... subset lambda
};

/// Conversions between reverse plane partitions (alpha = 0 only) and their
/// nested-partition representation.  Round trip is the identity.
NestedPartitions to_nested(const PlaneArray& pi, const Shape& lambda);
PlaneArray from_nested(const NestedPartitions& np);

/// All valid arrays on `cells` under the lattice constraints
///   v_c >= omega_c v v_left v (v_up - beta_c),
/// with per-cell pins (`fixed`) and upper caps (`cap`).  Cells without an
/// in-set right or down neighbour must be pinned or capped, otherwise the
/// set is infinite and this throws.  Row-major values, deterministic order.
std::vector<std::vector<long>> enumerate_arrays(
    const CellSet& cells, const AlphaSpec& alpha,
    const std::vector<std::optional<long>>& fixed,
    const std::vector<std::optional<long>>& cap);

}  // namespace whittaker
