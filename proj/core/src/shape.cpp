#include "whittaker/shape.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

namespace whittaker {

Shape::Shape(std::vector<long> parts) : rows_(std::move(parts)) {
  while (!rows_.empty() && rows_.back() == 0) rows_.pop_back();
  for (size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i] < 0) throw std::invalid_argument("Shape: negative part");
    if (i + 1 < rows_.size() && rows_[i] < rows_[i + 1])
      throw std::invalid_argument("Shape: parts must be weakly decreasing");
  }
}

long Shape::row(int i) const {
  if (i < 1) throw std::out_of_range("Shape::row: 1-based index");
  return i <= num_rows() ? rows_[i - 1] : 0;
}

long Shape::size() const {
  return std::accumulate(rows_.begin(), rows_.end(), 0L);
}

bool Shape::contains(Cell c) const {
  return c.i >= 1 && c.j >= 1 && c.i <= num_rows() && c.j <= row(c.i);
}

bool Shape::contains(const Shape& mu) const {
  for (int i = 1; i <= mu.num_rows(); ++i)
    if (mu.row(i) > row(i)) return false;
  return true;
}

Shape Shape::interior() const {
  std::vector<long> rows;
  for (int i = 1; i <= num_rows(); ++i)
    rows.push_back(std::max(0L, std::min(row(i) - 1, row(i + 1))));
  return Shape(rows);
}

Shape Shape::transpose() const {
  std::vector<long> cols;
  for (long j = 1; j <= (rows_.empty() ? 0 : rows_[0]); ++j) {
    long len = 0;
    while (len < num_rows() && rows_[len] >= j) ++len;
    cols.push_back(len);
  }
  return Shape(cols);
}

std::string Shape::to_string() const {
  if (rows_.empty()) return "0";
  std::ostringstream os;
  for (size_t i = 0; i < rows_.size(); ++i) {
    if (i) os << ",";
    os << rows_[i];
  }
  return os.str();
}

Shape staircase(int r) {
  if (r < 1) throw std::invalid_argument("staircase: r >= 1 required");
  std::vector<long> rows;
  for (int k = r; k >= 1; --k) rows.push_back(k);
  return Shape(rows);
}

Shape rectangle(int rows, long cols) {
  return Shape(std::vector<long>(rows, cols));
}

void CellSet::rebuild_cells() {
  cells_.clear();
  for (const auto& s : spans_)
    for (int j = s.j_begin; j <= s.j_end; ++j) cells_.push_back({s.i, j});
}

CellSet CellSet::from_shape(const Shape& s) {
  CellSet cs;
  for (int i = 1; i <= s.num_rows(); ++i)
    if (s.row(i) >= 1)
      cs.spans_.push_back({i, 1, static_cast<int>(s.row(i))});
  cs.rebuild_cells();
  return cs;
}

CellSet CellSet::skew(const Shape& outer, const Shape& inner) {
  if (!outer.contains(inner))
    throw std::invalid_argument("CellSet::skew: inner not inside outer");
  CellSet cs;
  for (int i = 1; i <= outer.num_rows(); ++i)
    if (outer.row(i) > inner.row(i))
      cs.spans_.push_back({i, static_cast<int>(inner.row(i)) + 1,
                           static_cast<int>(outer.row(i))});
  cs.rebuild_cells();
  return cs;
}

CellSet CellSet::shifted_staircase(int r) {
  if (r < 1) throw std::invalid_argument("shifted_staircase: r >= 1 required");
  CellSet cs;
  for (int i = 1; i <= r; ++i) cs.spans_.push_back({i, i, 2 * r - i});
  cs.rebuild_cells();
  return cs;
}

int CellSet::ordinal_of(Cell c) const {
  int base = 0;
  for (const auto& s : spans_) {
    if (s.i == c.i) {
      if (c.j >= s.j_begin && c.j <= s.j_end) return base + (c.j - s.j_begin);
      return -1;
    }
    base += s.j_end - s.j_begin + 1;
  }
  return -1;
}

SkewShape::SkewShape(Shape outer, Shape inner)
    : outer_(std::move(outer)), inner_(std::move(inner)) {
  cells_ = CellSet::skew(outer_, inner_);
}

AlphaSpec::AlphaSpec(std::vector<long> alpha) : alpha_(std::move(alpha)) {}

long AlphaSpec::alpha(int i) const {
  if (i < 1) throw std::out_of_range("AlphaSpec::alpha: 1-based index");
  return i <= prefix_len() ? alpha_[i - 1] : 0;
}

long AlphaSpec::alpha_range(int i, int j) const {
  long s = 0;
  for (int k = i; k <= j; ++k) s += alpha(k);
  return s;
}

long AlphaSpec::beta(int i, int j) const { return alpha_range(i, i + j - 1); }

bool AlphaSpec::all_zero() const {
  return std::all_of(alpha_.begin(), alpha_.end(),
                     [](long a) { return a == 0; });
}

bool AlphaSpec::all_nonnegative() const {
  return std::all_of(alpha_.begin(), alpha_.end(),
                     [](long a) { return a >= 0; });
}

AlphaSpec AlphaSpec::negated() const {
  std::vector<long> neg(alpha_);
  for (auto& a : neg) a = -a;
  return AlphaSpec(neg);
}

std::vector<Rat> AlphaSpec::nu(int r) const {
  // nu_j = c - (alpha_1 + ... + alpha_{j-1}), with c fixed by sum(nu) = 0.
  std::vector<long> prefix(r + 2, 0);
  for (int j = 1; j <= r + 1; ++j) prefix[j] = prefix[j - 1] + alpha(j);
  long total = 0;
  for (int j = 1; j <= r + 1; ++j) total += prefix[j - 1];
  Rat c(total, r + 1);
  c.canonicalize();
  std::vector<Rat> nu;
  for (int j = 1; j <= r + 1; ++j) nu.push_back(c - Rat(prefix[j - 1]));
  return nu;
}

PlaneArray::PlaneArray(CellSet cells, ExtNat fill)
    : cells_(std::move(cells)),
      values_(static_cast<size_t>(cells_.num_cells()), fill) {}

PlaneArray::PlaneArray(CellSet cells, std::vector<long> row_major_values)
    : cells_(std::move(cells)) {
  if (static_cast<int>(row_major_values.size()) != cells_.num_cells())
    throw std::invalid_argument("PlaneArray: value count != cell count");
  values_.reserve(row_major_values.size());
  for (long v : row_major_values) values_.emplace_back(v);
}

ExtNat PlaneArray::at(Cell c) const {
  int o = cells_.ordinal_of(c);
  if (o < 0) throw std::out_of_range("PlaneArray::at: cell not in set");
  return values_[o];
}

ExtNat PlaneArray::at_or_zero(Cell c) const {
  int o = cells_.ordinal_of(c);
  return o < 0 ? ExtNat(0) : values_[o];
}

void PlaneArray::set(Cell c, ExtNat v) {
  int o = cells_.ordinal_of(c);
  if (o < 0) throw std::out_of_range("PlaneArray::set: cell not in set");
  values_[o] = v;
}

bool PlaneArray::all_finite() const {
  return std::none_of(values_.begin(), values_.end(),
                      [](const ExtNat& v) { return v.is_inf(); });
}

std::vector<long> PlaneArray::finite_values() const {
  std::vector<long> out;
  out.reserve(values_.size());
  for (const auto& v : values_) out.push_back(v.value());
  return out;
}

long PlaneArray::max_finite() const {
  long m = 0;
  for (const auto& v : values_) m = std::max(m, v.value());
  return m;
}

PlaneArray omega_array(const AlphaSpec& alpha, const CellSet& cells) {
  PlaneArray omega(cells, ExtNat(0));
  for (Cell c : cells.cells()) {
    long left = omega.at_or_zero({c.i, c.j - 1}).value();
    long up = omega.at_or_zero({c.i - 1, c.j}).value();
    long v = std::max({0L, left, up - alpha.beta(c.i, c.j)});
    omega.set(c, ExtNat(v));
  }
  return omega;
}

PlaneArray omega_array(const AlphaSpec& alpha, int r) {
  return omega_array(alpha, CellSet::from_shape(staircase(r)));
}

PlaneArray omega_array_closed_form(const AlphaSpec& alpha, int r) {
  CellSet cells = CellSet::from_shape(staircase(r));
  PlaneArray omega(cells, ExtNat(0));
  // Level k holds the cells with i + j = k; nu^k is the zero-sum vector of
  // length k built from alpha_1..alpha_{k-1}.
  for (int k = 2; k <= r + 1; ++k) {
    std::vector<Rat> nu;
    {
      std::vector<long> prefix(k + 1, 0);
      for (int j = 1; j <= k; ++j) prefix[j] = prefix[j - 1] + alpha.alpha(j);
      long total = 0;
      for (int j = 1; j <= k; ++j) total += prefix[j - 1];
      Rat c(total, k);
      c.canonicalize();
      for (int j = 1; j <= k; ++j) nu.push_back(c - Rat(prefix[j - 1]));
    }
    std::vector<Rat> sorted = nu;
    std::sort(sorted.begin(), sorted.end(), std::greater<Rat>());
    Rat acc(0);
    for (int i = 1; i <= k - 1; ++i) {
      acc += sorted[i - 1] - nu[i - 1];
      if (acc.get_den() != 1)
        throw std::logic_error("omega closed form: non-integer value");
      omega.set({i, k - i}, ExtNat(acc.get_num().get_si()));
    }
  }
  return omega;
}

bool validate_state(const PlaneArray& pi, const AlphaSpec& alpha) {
  PlaneArray omega = omega_array(alpha, pi.cells());
  for (Cell c : pi.cells().cells()) {
    ExtNat v = pi.at(c);
    if (v.is_inf()) continue;
    long left = 0, up_req = 0;
    {
      ExtNat l = pi.at_or_zero({c.i, c.j - 1});
      if (l.is_inf()) return false;  // finite cell below an infinite one
      left = l.value();
    }
    {
      ExtNat u = pi.at_or_zero({c.i - 1, c.j});
      if (u.is_inf()) return false;
      up_req = u.value() - alpha.beta(c.i, c.j);
    }
    long lower = std::max({omega.at(c).value(), left, up_req});
    if (v.value() < lower) return false;
  }
  return true;
}

Shape extend_mu(const Shape& lambda, const Shape& mu) {
  if (!lambda.interior().contains(mu))
    throw std::invalid_argument("extend_mu: mu must lie inside interior(lambda)");
  std::vector<long> rows;
  int nrows = std::max(mu.num_rows() + 1, 1);
  for (int i = 1; i <= nrows; ++i) {
    long from_left = mu.row(i) >= 1 ? mu.row(i) + 1 : 0;
    long from_up = i >= 2 ? mu.row(i - 1) : 0;
    rows.push_back(std::max(from_left, from_up));
  }
  Shape tilde(rows);
  if (!lambda.contains(tilde))
    throw std::logic_error("extend_mu: extension escapes lambda");
  return tilde;
}

NestedPartitions::NestedPartitions(Shape lambda, std::vector<Shape> levels)
    : lambda_(std::move(lambda)), levels_(std::move(levels)) {
  const Shape* prev = nullptr;
  for (const auto& l : levels_) {
    if (prev && !l.contains(*prev))
      throw std::invalid_argument("NestedPartitions: levels not nested");
    if (!lambda_.contains(l))
      throw std::invalid_argument("NestedPartitions: level escapes lambda");
    prev = &l;
  }
}

NestedPartitions to_nested(const PlaneArray& pi, const Shape& lambda) {
  if (pi.cells() != CellSet::from_shape(lambda))
    throw std::invalid_argument("to_nested: array not on the given shape");
  if (!validate_state(pi, AlphaSpec()))
    throw std::invalid_argument("to_nested: not a reverse plane partition");
  long n_levels = 0;
  for (Cell c : pi.cells().cells()) n_levels = std::max(n_levels, pi.at(c).value());
  std::vector<Shape> levels;
  for (long k = 0; k < n_levels; ++k) {
    std::vector<long> rows;
    for (int i = 1; i <= lambda.num_rows(); ++i) {
      long len = 0;
      while (len < lambda.row(i) &&
             pi.at({i, static_cast<int>(len) + 1}).value() <= k)
        ++len;
      // Weak row increase makes the predicate prefix-closed.
      rows.push_back(len);
    }
    levels.emplace_back(rows);
  }
  return NestedPartitions(lambda, std::move(levels));
}

std::vector<std::vector<long>> enumerate_arrays(
    const CellSet& cells, const AlphaSpec& alpha,
    const std::vector<std::optional<long>>& fixed,
    const std::vector<std::optional<long>>& cap) {
  int nc = cells.num_cells();
  if (static_cast<int>(fixed.size()) != nc || static_cast<int>(cap.size()) != nc)
    throw std::invalid_argument("enumerate_arrays: fixed/cap size mismatch");
  PlaneArray omega = omega_array(alpha, cells);
  std::vector<std::vector<long>> out;
  std::vector<long> vals(nc, 0);
  constexpr long kUnbounded = std::numeric_limits<long>::max();

  // Reverse row-major: a cell's right and down neighbours are assigned
  // before the cell itself, so its upper bound is already fixed.
  std::function<void(int)> rec = [&](int idx) {
    if (idx < 0) {
      out.push_back(vals);
      return;
    }
    Cell c = cells.cell(idx);
    long ub = kUnbounded;
    int o_right = cells.ordinal_of({c.i, c.j + 1});
    if (o_right >= 0) ub = std::min(ub, vals[o_right]);
    int o_down = cells.ordinal_of({c.i + 1, c.j});
    if (o_down >= 0)
      ub = std::min(ub, vals[o_down] + alpha.beta(c.i + 1, c.j));
    if (cap[idx]) ub = std::min(ub, *cap[idx]);
    long lb = omega.at(c).value();
    if (fixed[idx]) {
      if (*fixed[idx] < lb || *fixed[idx] > ub) return;
      vals[idx] = *fixed[idx];
      rec(idx - 1);
      return;
    }
    if (ub == kUnbounded)
      throw std::invalid_argument("enumerate_arrays: unbounded cell");
    for (long v = lb; v <= ub; ++v) {
      vals[idx] = v;
      rec(idx - 1);
    }
  };
  rec(nc - 1);
  return out;
}

PlaneArray from_nested(const NestedPartitions& np) {
  const Shape& lambda = np.lambda();
  PlaneArray pi(CellSet::from_shape(lambda), ExtNat(0));
  long n_levels = np.num_levels();
  for (Cell c : pi.cells().cells()) {
    long v = n_levels;
    for (long k = 0; k < n_levels; ++k) {
      if (np.levels()[k].contains(c)) {
        v = k;
        break;
      }
    }
    pi.set(c, ExtNat(v));
  }
  return pi;
}

}  // namespace whittaker
