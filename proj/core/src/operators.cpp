#include "whittaker/operators.hpp"

#include <algorithm>
#include <sstream>

namespace whittaker {

StateSpace::StateSpace(std::vector<State> states) : states_(std::move(states)) {
  for (int i = 0; i < static_cast<int>(states_.size()); ++i) {
    if (!index_.emplace(states_[i], i).second)
      throw std::invalid_argument("StateSpace: duplicate state");
  }
}

int StateSpace::index_of(const State& s) const {
  auto it = index_.find(s);
  return it == index_.end() ? -1 : it->second;
}

void RatMatrix::prune(int i, int j) {
  auto it = data_[i].find(j);
  if (it != data_[i].end() && it->second == 0) data_[i].erase(it);
}

void RatMatrix::add(int i, int j, const Rat& v) {
  if (v == 0) return;
  data_[i][j] += v;
  prune(i, j);
}

void RatMatrix::set(int i, int j, const Rat& v) {
  if (v == 0)
    data_[i].erase(j);
  else
    data_[i][j] = v;
}

Rat RatMatrix::at(int i, int j) const {
  auto it = data_[i].find(j);
  return it == data_[i].end() ? Rat(0) : it->second;
}

RatMatrix RatMatrix::multiply(const RatMatrix& o) const {
  if (cols_ != o.rows_)
    throw std::invalid_argument("RatMatrix::multiply: shape mismatch");
  RatMatrix out(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (const auto& [k, v] : data_[i])
      for (const auto& [j, w] : o.data_[k]) out.add(i, j, v * w);
  return out;
}

std::optional<std::pair<int, int>> RatMatrix::first_difference(
    const RatMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    return std::make_pair(-1, -1);
  for (int i = 0; i < rows_; ++i) {
    for (const auto& [j, v] : data_[i])
      if (o.at(i, j) != v) return std::make_pair(i, j);
    for (const auto& [j, v] : o.data_[i])
      if (at(i, j) != v) return std::make_pair(i, j);
  }
  return std::nullopt;
}

std::vector<Rat> RatMatrix::apply(const std::vector<Rat>& f) const {
  if (static_cast<int>(f.size()) != cols_)
    throw std::invalid_argument("RatMatrix::apply: size mismatch");
  std::vector<Rat> out(rows_, Rat(0));
  for (int i = 0; i < rows_; ++i)
    for (const auto& [j, v] : data_[i]) out[i] += v * f[j];
  return out;
}

std::vector<std::vector<double>> RatMatrix::to_dense_double() const {
  std::vector<std::vector<double>> m(rows_, std::vector<double>(cols_, 0.0));
  for (int i = 0; i < rows_; ++i)
    for (const auto& [j, v] : data_[i]) m[i][j] = to_double(v);
  return m;
}

void SparseOperator::add_off(int from, int to, const Rat& rate) {
  if (rate == 0) return;
  off[from].emplace_back(to, rate);
}

std::vector<Rat> SparseOperator::apply(const std::vector<Rat>& f) const {
  if (static_cast<int>(f.size()) != dim)
    throw std::invalid_argument("SparseOperator::apply: size mismatch");
  std::vector<Rat> out(dim, Rat(0));
  for (int i = 0; i < dim; ++i) {
    out[i] = diag[i] * f[i];
    for (const auto& [j, r] : off[i]) out[i] += r * f[j];
  }
  return out;
}

RatMatrix SparseOperator::to_matrix() const {
  RatMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    if (diag[i] != 0) m.add(i, i, diag[i]);
    for (const auto& [j, r] : off[i]) m.add(i, j, r);
  }
  return m;
}

bool SparseOperator::is_markov_generator(std::string* why) const {
  for (int i = 0; i < dim; ++i) {
    Rat sum = diag[i];
    for (const auto& [j, r] : off[i]) {
      if (r < 0) {
        if (why) *why = "negative off-diagonal rate at row " + std::to_string(i);
        return false;
      }
      sum += r;
    }
    if (sum != 0) {
      if (why) *why = "row " + std::to_string(i) + " sums to " + rat_to_string(sum);
      return false;
    }
  }
  return true;
}

std::vector<Rat> SparseOperator::row_sums() const {
  std::vector<Rat> sums(dim, Rat(0));
  for (int i = 0; i < dim; ++i) {
    sums[i] = diag[i];
    for (const auto& [j, r] : off[i]) sums[i] += r;
  }
  return sums;
}

namespace {

std::vector<std::optional<long>> no_constraints(int n) {
  return std::vector<std::optional<long>>(n);
}

}  // namespace

StateSpace array_space(const Shape& lambda, const Shape& mu,
                       const AlphaSpec& alpha, const State& roof) {
  CellSet cells = mu.empty() ? CellSet::from_shape(lambda)
                             : CellSet::skew(lambda, mu);
  if (static_cast<int>(roof.size()) != cells.num_cells())
    throw std::invalid_argument("array_space: roof size mismatch");
  std::vector<std::optional<long>> cap(roof.begin(), roof.end());
  auto states = enumerate_arrays(cells, alpha, no_constraints(cells.num_cells()), cap);
  if (states.empty()) throw std::invalid_argument("array_space: invalid roof");
  return StateSpace(std::move(states));
}

StateSpace fiber_union_space(const Shape& lambda, const Shape& mu,
                             const AlphaSpec& alpha, const State& roof_sigma) {
  CellSet lam_cells = CellSet::from_shape(lambda);
  CellSet skew = CellSet::skew(lambda, mu);
  if (static_cast<int>(roof_sigma.size()) != skew.num_cells())
    throw std::invalid_argument("fiber_union_space: roof size mismatch");
  std::vector<std::optional<long>> cap(lam_cells.num_cells());
  for (int o = 0; o < skew.num_cells(); ++o)
    cap[lam_cells.ordinal_of(skew.cell(o))] = roof_sigma[o];
  auto states =
      enumerate_arrays(lam_cells, alpha, no_constraints(lam_cells.num_cells()), cap);
  return StateSpace(std::move(states));
}

SparseOperator generator_on(const StateSpace& space, const CellSet& cells,
                            const AlphaSpec& alpha) {
  SparseOperator op(space.size());
  int nc = cells.num_cells();
  for (int s = 0; s < space.size(); ++s) {
    const State& v = space.state(s);
    Rat total(0);
    for (int o = 0; o < nc; ++o) {
      Cell c = cells.cell(o);
      int ol = cells.ordinal_of({c.i, c.j - 1});
      int ou = cells.ordinal_of({c.i - 1, c.j});
      long left = ol >= 0 ? v[ol] : 0;
      long up = ou >= 0 ? v[ou] : 0;
      long rate = (v[o] - left) * (v[o] - up + alpha.beta(c.i, c.j));
      if (rate == 0) continue;
      if (rate < 0)
        throw std::logic_error("generator_on: negative rate (invalid state)");
      State w = v;
      --w[o];
      int t = space.index_of(w);
      if (t < 0) throw std::logic_error("generator_on: move leaves the space");
      op.add_off(s, t, Rat(rate));
      total += rate;
    }
    op.diag[s] = -total;
  }
  return op;
}

BuiltOperator build_G(const Shape& lambda, const Shape& mu,
                      const AlphaSpec& alpha, const State& roof) {
  StateSpace space = array_space(lambda, mu, alpha, roof);
  CellSet cells = mu.empty() ? CellSet::from_shape(lambda)
                             : CellSet::skew(lambda, mu);
  return {space, generator_on(space, cells, alpha)};
}

std::vector<Cell> external_corners(const Shape& mu) {
  std::vector<Cell> out;
  for (int i = 1; i <= mu.num_rows(); ++i) {
    long len = mu.row(i);
    if (len >= 1 && mu.row(i + 1) < len) out.push_back({i, static_cast<int>(len)});
  }
  return out;
}

Rat corner_potential(const Shape& lambda, const Shape& mu,
                     const AlphaSpec& alpha, const CellSet& skew_cells,
                     const State& sigma) {
  (void)lambda;
  auto value = [&](Cell c) -> long {
    int o = skew_cells.ordinal_of(c);
    return o >= 0 ? sigma[o] : 0;
  };
  Rat v(0);
  for (Cell c : external_corners(mu))
    v += Rat(value({c.i + 1, c.j}) * value({c.i, c.j + 1}));
  for (int i = 1; i <= mu.num_rows(); ++i) {
    long mi = mu.row(i);
    if (mi >= 1)
      v += Rat(alpha.beta(i + 1, static_cast<int>(mi)) *
               value({i, static_cast<int>(mi) + 1}));
  }
  return v;
}

BuiltOperator build_H(const Shape& lambda, const Shape& mu,
                      const AlphaSpec& alpha, const State& roof) {
  if (!lambda.interior().contains(mu))
    throw std::invalid_argument("build_H: mu must lie inside interior(lambda)");
  BuiltOperator b = build_G(lambda, mu, alpha, roof);
  CellSet skew = mu.empty() ? CellSet::from_shape(lambda)
                            : CellSet::skew(lambda, mu);
  for (int s = 0; s < b.space.size(); ++s)
    b.op.diag[s] += corner_potential(lambda, mu, alpha, skew, b.space.state(s));
  return b;
}

namespace {

StateSpace cone_space(int r, const AlphaSpec& alpha, const State& roof) {
  if (static_cast<int>(roof.size()) != r)
    throw std::invalid_argument("cone_space: roof size mismatch");
  PlaneArray omega = omega_array(alpha, r);
  std::vector<long> lower(r);
  for (int i = 1; i <= r; ++i) lower[i - 1] = omega.at({i, r - i + 1}).value();
  std::vector<State> states;
  State cur(lower);
  // Odometer over the box [lower, roof].
  for (int i = 0; i < r; ++i)
    if (roof[i] < lower[i])
      throw std::invalid_argument("cone_space: roof below the omega cone");
  while (true) {
    states.push_back(cur);
    int pos = 0;
    while (pos < r) {
      if (cur[pos] < roof[pos]) {
        ++cur[pos];
        break;
      }
      cur[pos] = lower[pos];
      ++pos;
    }
    if (pos == r) break;
  }
  return StateSpace(std::move(states));
}

}  // namespace

BuiltOperator build_h_toda(int r, const AlphaSpec& alpha, const State& roof) {
  StateSpace space = cone_space(r, alpha, roof);
  SparseOperator op(space.size());
  for (int s = 0; s < space.size(); ++s) {
    const State& n = space.state(s);
    for (int i = 0; i < r; ++i) {
      if (n[i] == 0) continue;
      State m = n;
      --m[i];
      int t = space.index_of(m);
      if (t >= 0) op.add_off(s, t, Rat(1));
      // Below the cone a_r vanishes; dropping the edge is the same as
      // keeping it against a zero value.
    }
    op.diag[s] = Rat(-toda_P(alpha, n));
  }
  return {space, op};
}

BuiltOperator build_H_normalized(int r, const State& roof) {
  StateSpace space = cone_space(r, AlphaSpec(), roof);
  SparseOperator op(space.size());
  for (int s = 0; s < space.size(); ++s) {
    const State& n = space.state(s);
    Rat diag(0);
    for (int i = 0; i < r; ++i) {
      if (n[i] > 0) {
        State m = n;
        --m[i];
        op.add_off(s, space.index_of(m), Rat(n[i] * n[i]));
      }
      diag -= Rat(n[i] * n[i]);
    }
    for (int i = 0; i + 1 < r; ++i) diag += Rat(n[i] * n[i + 1]);
    op.diag[s] = diag;
  }
  return {space, op};
}

SparseOperator doob_transform(const SparseOperator& H, const std::vector<Rat>& h,
                              const StateSpace* space_for_errors) {
  if (static_cast<int>(h.size()) != H.dim)
    throw std::invalid_argument("doob_transform: h size mismatch");
  std::vector<Rat> Hh = H.apply(h);
  for (int i = 0; i < H.dim; ++i) {
    if (h[i] <= 0)
      throw std::invalid_argument("doob_transform: h must be positive, row " +
                                  std::to_string(i));
    if (Hh[i] != 0) {
      std::ostringstream os;
      os << "doob_transform: H h != 0 at state ";
      if (space_for_errors) {
        os << "(";
        const State& s = space_for_errors->state(i);
        for (size_t k = 0; k < s.size(); ++k) os << (k ? "," : "") << s[k];
        os << ")";
      } else {
        os << i;
      }
      os << ", residual " << rat_to_string(Hh[i]);
      throw std::invalid_argument(os.str());
    }
  }
  SparseOperator L(H.dim);
  for (int i = 0; i < H.dim; ++i) {
    L.diag[i] = H.diag[i];
    for (const auto& [j, r] : H.off[i]) L.add_off(i, j, r * h[j] / h[i]);
  }
  std::string why;
  if (!L.is_markov_generator(&why))
    throw std::logic_error("doob_transform: result is not Markov: " + why);
  return L;
}

BuiltOperator build_M(int r, const State& roof) {
  if (static_cast<int>(roof.size()) != r)
    throw std::invalid_argument("build_M: roof size mismatch");
  std::vector<State> states;
  State cur(r, 0);
  while (true) {
    bool ordered = true;
    for (int i = 0; i + 1 < r; ++i)
      if (cur[i] < cur[i + 1]) ordered = false;
    if (ordered) states.push_back(cur);
    int pos = r - 1;
    while (pos >= 0) {
      if (cur[pos] < roof[pos]) {
        ++cur[pos];
        break;
      }
      cur[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  StateSpace space(std::move(states));
  SparseOperator op(space.size());
  for (int s = 0; s < space.size(); ++s) {
    const State& n = space.state(s);
    Rat total(0);
    for (int i = 0; i < r; ++i) {
      long rate = (i + 1 < r) ? n[i] * (n[i] - n[i + 1]) : n[i] * n[i];
      if (rate == 0) continue;
      State m = n;
      --m[i];
      int t = space.index_of(m);
      if (t < 0) throw std::logic_error("build_M: move leaves E_r");
      op.add_off(s, t, Rat(rate));
      total += rate;
    }
    op.diag[s] = -total;
  }
  return {space, op};
}

BuiltOperator build_R_bose(int N, long cap) {
  // States are weakly increasing tuples in {0..cap}^N (multisets).
  std::vector<State> states;
  State cur(N, 0);
  std::function<void(int, long)> gen = [&](int pos, long low) {
    if (pos == N) {
      states.push_back(cur);
      return;
    }
    for (long v = low; v <= cap; ++v) {
      cur[pos] = v;
      gen(pos + 1, v);
    }
  };
  gen(0, 0);
  StateSpace space(std::move(states));
  SparseOperator op(space.size());
  for (int s = 0; s < space.size(); ++s) {
    const State& x = space.state(s);
    Rat total(0);
    int i = 0;
    while (i < N) {
      int j = i;
      while (j + 1 < N && x[j + 1] == x[i]) ++j;
      // Block of equal positions x[i..j]; cumulative count j+1, size j-i+1.
      long rate = static_cast<long>(j - i + 1) * (j + 1);
      if (x[i] + 1 <= cap) {
        State y = x;
        y[j] = x[i] + 1;  // move the top element of the block; stays sorted
        int t = space.index_of(y);
        if (t < 0) throw std::logic_error("build_R_bose: target missing");
        op.add_off(s, t, Rat(rate));
        total += rate;
      }
      i = j + 1;
    }
    op.diag[s] = -total;
  }
  return {space, op};
}

Rat bose_eigenfunction(const State& x_sorted) {
  Rat phi(1);
  for (size_t i = 0; i < x_sorted.size(); ++i) {
    Rat base(static_cast<long>(i + 1));
    for (long k = 0; k < x_sorted[i]; ++k) phi *= base;
  }
  return phi;
}

Rat bose_hamiltonian_apply(const State& x_sorted,
                           const std::function<Rat(const State&)>& f) {
  int N = static_cast<int>(x_sorted.size());
  Rat out(0);
  for (int i = 0; i < N; ++i) {
    State y = x_sorted;
    ++y[i];
    std::sort(y.begin(), y.end());
    out += f(y) - f(x_sorted);
  }
  long coincident = 0;
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j)
      if (x_sorted[i] == x_sorted[j]) ++coincident;
  out -= Rat(coincident) * f(x_sorted);
  return out;
}

PlaneArray hat_transform(const PlaneArray& pi, const AlphaSpec& alpha) {
  const CellSet& cells = pi.cells();
  auto gamma = [&](int i, int j) {
    long g = 0;
    for (int k = 1; k <= i; ++k) g -= alpha.beta(k, j);
    return g;
  };
  PlaneArray hat(cells, ExtNat(0));
  for (Cell c : cells.cells()) {
    Cell t{c.j, c.i};
    if (!cells.contains(t))
      throw std::invalid_argument("hat_transform: cell set not transpose-symmetric");
    long v = pi.at(t).value() - gamma(t.i, t.j);
    if (v < 0) throw std::logic_error("hat_transform: negative image value");
    hat.set(c, ExtNat(v));
  }
  if (!validate_state(hat, alpha.negated()))
    throw std::logic_error("hat_transform: image not in the mirrored constraint set");
  return hat;
}

BuiltOperator build_G_B(int r, const State& roof_n) {
  CellSet cells = CellSet::shifted_staircase(r);
  if (static_cast<int>(roof_n.size()) != r)
    throw std::invalid_argument("build_G_B: roof size mismatch");
  std::vector<std::optional<long>> fixed(cells.num_cells());
  std::vector<std::optional<long>> cap(cells.num_cells());
  for (int i = 1; i <= r; ++i)
    cap[cells.ordinal_of({i, 2 * r - i})] = roof_n[i - 1];
  StateSpace space(enumerate_arrays(cells, AlphaSpec(), fixed, cap));
  SparseOperator op(space.size());
  for (int s = 0; s < space.size(); ++s) {
    const State& v = space.state(s);
    Rat total(0);
    for (int o = 0; o < cells.num_cells(); ++o) {
      Cell c = cells.cell(o);
      auto val = [&](Cell q) -> long {
        int oq = cells.ordinal_of(q);
        return oq >= 0 ? v[oq] : 0;
      };
      Rat rate;
      if (c.i == c.j) {
        rate = ratio((v[o] - val({c.i - 1, c.i})) * (v[o] - val({c.i - 1, c.i - 1})), 2);
      } else {
        rate = Rat((v[o] - val({c.i - 1, c.j})) * (v[o] - val({c.i, c.j - 1})));
      }
      if (rate == 0) continue;
      if (rate < 0) throw std::logic_error("build_G_B: negative rate");
      State w = v;
      --w[o];
      int t = space.index_of(w);
      if (t < 0) throw std::logic_error("build_G_B: move leaves the space");
      op.add_off(s, t, rate);
      total += rate;
    }
    op.diag[s] = -total;
  }
  return {space, op};
}

BuiltOperator build_H_B(int r, const State& roof_n) {
  if (static_cast<int>(roof_n.size()) != r)
    throw std::invalid_argument("build_H_B: roof size mismatch");
  std::vector<State> states;
  State cur(r, 0);
  while (true) {
    states.push_back(cur);
    int pos = 0;
    while (pos < r) {
      if (cur[pos] < roof_n[pos]) {
        ++cur[pos];
        break;
      }
      cur[pos] = 0;
      ++pos;
    }
    if (pos == r) break;
  }
  StateSpace space(std::move(states));
  SparseOperator op(space.size());
  for (int s = 0; s < space.size(); ++s) {
    const State& n = space.state(s);
    Rat diag(0);
    for (int i = 0; i < r; ++i) {
      Rat ci = (i + 1 < r) ? Rat(n[i] * n[i]) : ratio(n[i] * n[i], 2);
      diag -= ci;
      if (n[i] > 0) {
        State m = n;
        --m[i];
        op.add_off(s, space.index_of(m), ci);
      }
    }
    for (int i = 0; i + 1 < r; ++i) diag += Rat(n[i] * n[i + 1]);
    op.diag[s] = diag;
  }
  return {space, op};
}

std::vector<SparseOperator> build_A3_operators(long maxN, StateSpace* space_out) {
  std::vector<State> states;
  for (long n = 0; n <= maxN; ++n)
    for (long m = 0; m <= maxN; ++m)
      for (long l = 0; l <= maxN; ++l) states.push_back({n, m, l});
  StateSpace space(std::move(states));

  auto idx = [&](long n, long m, long l) { return space.index_of({n, m, l}); };

  SparseOperator O1(space.size()), O2(space.size()), O3(space.size());
  for (int s = 0; s < space.size(); ++s) {
    long n = space.state(s)[0], m = space.state(s)[1], l = space.state(s)[2];
    // O1 = n^2 D_n + m^2 D_m + l^2 D_l + nm + ml (the Toda operator H^3).
    if (n > 0) O1.add_off(s, idx(n - 1, m, l), Rat(n * n));
    if (m > 0) O1.add_off(s, idx(n, m - 1, l), Rat(m * m));
    if (l > 0) O1.add_off(s, idx(n, m, l - 1), Rat(l * l));
    O1.diag[s] = Rat(-(n * n) - m * m - l * l + n * m + m * l);

    // O2 = m n^2 D_n + (l - n) m^2 D_m - m l^2 D_l.  The printed middle
    // operator annihilates A_3 only after this sign adjustment.
    Rat d2(0);
    if (n > 0) O2.add_off(s, idx(n - 1, m, l), Rat(m * n * n));
    d2 -= Rat(m * n * n);
    if (m > 0) O2.add_off(s, idx(n, m - 1, l), Rat((l - n) * m * m));
    d2 -= Rat((l - n) * m * m);
    if (l > 0) O2.add_off(s, idx(n, m, l - 1), Rat(-(m * l * l)));
    d2 -= Rat(-(m * l * l));
    O2.diag[s] = d2;

    // O3 = n^2 l^2 D_{n,l} - l(l-m) n^2 D_n - n m^2 l D_m + n(m-n) l^2 D_l.
    Rat d3(0);
    if (n > 0 && l > 0) O3.add_off(s, idx(n - 1, m, l - 1), Rat(n * n * l * l));
    d3 -= Rat(n * n * l * l);
    if (n > 0) O3.add_off(s, idx(n - 1, m, l), Rat(-(l * (l - m) * n * n)));
    d3 -= Rat(-(l * (l - m) * n * n));
    if (m > 0) O3.add_off(s, idx(n, m - 1, l), Rat(-(n * m * m * l)));
    d3 -= Rat(-(n * m * m * l));
    if (l > 0) O3.add_off(s, idx(n, m, l - 1), Rat(n * (m - n) * l * l));
    d3 -= Rat(n * (m - n) * l * l);
    O3.diag[s] = d3;
  }
  if (space_out) *space_out = space;
  return {O1, O2, O3};
}

A3CheckReport commuting_A3_check(long maxN) {
  A3CheckReport rep;
  StateSpace space;
  auto ops = build_A3_operators(maxN, &space);

  CoeffEngine eng;
  std::vector<Rat> A(space.size());
  for (int s = 0; s < space.size(); ++s)
    A[s] = Rat(eng.a_normalized(3, space.state(s)));

  rep.annihilate = true;
  for (size_t k = 0; k < ops.size(); ++k) {
    auto res = ops[k].apply(A);
    for (int s = 0; s < space.size(); ++s) {
      if (res[s] != 0) {
        rep.annihilate = false;
        std::ostringstream os;
        os << "operator " << k + 1 << " fails at ("
           << space.state(s)[0] << "," << space.state(s)[1] << ","
           << space.state(s)[2] << ") with residual " << rat_to_string(res[s]);
        rep.detail = os.str();
        return rep;
      }
    }
  }

  // Every operator only moves indices downward, so products (hence
  // commutators) are exact on the whole box.
  rep.commute = true;
  std::vector<RatMatrix> mats;
  for (const auto& o : ops) mats.push_back(o.to_matrix());
  for (size_t a = 0; a < mats.size() && rep.commute; ++a)
    for (size_t b = a + 1; b < mats.size() && rep.commute; ++b) {
      RatMatrix ab = mats[a].multiply(mats[b]);
      RatMatrix ba = mats[b].multiply(mats[a]);
      if (auto diff = ab.first_difference(ba)) {
        rep.commute = false;
        std::ostringstream os;
        os << "commutator [" << a + 1 << "," << b + 1 << "] nonzero at entry ("
           << diff->first << "," << diff->second << ")";
        rep.detail = os.str();
      }
    }
  return rep;
}

}  // namespace whittaker
