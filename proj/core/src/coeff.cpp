#include "whittaker/coeff.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <numeric>

namespace whittaker {

long toda_P(const AlphaSpec& alpha, const std::vector<long>& n) {
  long r = static_cast<long>(n.size());
  long p = 0;
  for (long i = 0; i < r; ++i) p += n[i] * n[i] + alpha.alpha(static_cast<int>(i) + 1) * n[i];
  for (long i = 0; i + 1 < r; ++i) p -= n[i] * n[i + 1];
  return p;
}

Rat q_kernel(int r, const AlphaSpec& alpha, const std::vector<long>& n,
             const std::vector<long>& k) {
  if (static_cast<int>(n.size()) != r || static_cast<int>(k.size()) != r - 1)
    throw std::invalid_argument("q_kernel: dimension mismatch");
  Rat q(1);
  for (int i = 1; i <= r; ++i) {
    long ki = i <= r - 1 ? k[i - 1] : 0;       // k_r = 0
    long kim1 = i >= 2 ? k[i - 2] : 0;          // k_0 = 0
    Rat f1 = inv_factorial(n[i - 1] - ki);
    if (f1 == 0) return Rat(0);
    Rat f2 = inv_factorial(n[i - 1] - kim1 + alpha.alpha_range(i, r));
    if (f2 == 0) return Rat(0);
    q *= f1 * f2;
  }
  return q;
}

CoeffEngine::CoeffEngine(AlphaSpec alpha) : alpha_(std::move(alpha)) {}

Rat CoeffEngine::a(int r, const std::vector<long>& n) {
  std::lock_guard<std::mutex> lock(mutex_);
  return a_unlocked(r, n);
}

Rat CoeffEngine::a_unlocked(int r, const std::vector<long>& n) {
  if (r < 1 || static_cast<int>(n.size()) != r)
    throw std::invalid_argument("CoeffEngine::a: dimension mismatch");
  for (long ni : n)
    if (ni < 0) return Rat(0);
  if (r == 1) return inv_factorial(n[0]) * inv_factorial(n[0] + alpha_.alpha(1));
  auto key = std::make_pair(r, n);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;

  Rat total(0);
  std::vector<long> k(r - 1, 0);
  while (true) {
    Rat q = q_kernel(r, alpha_, n, k);
    if (q != 0) total += q * a_unlocked(r - 1, k);
    int pos = 0;
    while (pos < r - 1) {
      if (k[pos] < n[pos]) {
        ++k[pos];
        break;
      }
      k[pos] = 0;
      ++pos;
    }
    if (pos == r - 1) break;
  }
#ifndef NDEBUG
  // Spot-check the difference equation when the down-shifted values are
  // already known; keeps table corruption loud in debug builds.
  if (total != 0) {
    bool have_all = true;
    Rat rhs(0);
    for (int i = 0; i < r && have_all; ++i) {
      if (n[i] == 0) continue;
      std::vector<long> m = n;
      --m[i];
      auto jt = memo_.find(std::make_pair(r, m));
      if (jt == memo_.end())
        have_all = false;
      else
        rhs += jt->second;
    }
    if (have_all) assert(Rat(toda_P(alpha_, n)) * total == rhs);
  }
#endif
  memo_.emplace(std::move(key), total);
  return total;
}

Int CoeffEngine::a_normalized(int r, const std::vector<long>& n) {
  if (!alpha_.all_zero())
    throw std::invalid_argument("a_normalized: requires alpha == 0");
  Rat v = a(r, n);
  for (long ni : n) {
    Int f = factorial(ni);
    v *= Rat(f * f);
  }
  if (v.get_den() != 1)
    throw std::logic_error("a_normalized: value is not an integer");
  return v.get_num();
}

Rat weight_staircase(const AlphaSpec& alpha, const PlaneArray& pi) {
  Rat w(1);
  for (Cell c : pi.cells().cells()) {
    long v = pi.at(c).value();
    long left = pi.at_or_zero({c.i, c.j - 1}).value();
    long up = pi.at_or_zero({c.i - 1, c.j}).value();
    Rat f = inv_factorial(v - left) *
            inv_factorial(v - up + alpha.beta(c.i, c.j));
    if (f == 0) return Rat(0);
    w *= f;
  }
  return w;
}

Int weight_staircase_normalized(int r, const PlaneArray& pi) {
  // Product over the interior staircase delta_r of binomials against the
  // right and down neighbours.
  Int w(1);
  for (Cell c : pi.cells().cells()) {
    if (c.i + c.j > r) continue;  // interior cells only
    long v = pi.at(c).value();
    long right = pi.at({c.i, c.j + 1}).value();
    long down = pi.at({c.i + 1, c.j}).value();
    w *= binomial(right, v) * binomial(down, v);
    if (w == 0) return Int(0);
  }
  return w;
}

Rat weight_general(const Shape& lambda, const Shape& mu,
                   const AlphaSpec& alpha, const PlaneArray& pi) {
  if (!alpha.all_nonnegative())
    throw std::invalid_argument("weight_general: alpha must be non-negative");
  (void)lambda;
  // Each cell is paired with the neighbours that lie inside mu; values of
  // lambda/mu neighbours read as zero, so cells outside the extension of mu
  // contribute trivial factors.
  Rat w(1);
  for (Cell c : pi.cells().cells()) {
    long v = pi.at(c).value();
    Cell lc{c.i, c.j - 1}, uc{c.i - 1, c.j};
    long left = mu.contains(lc) ? pi.at(lc).value() : 0;
    long up = mu.contains(uc) ? pi.at(uc).value() : 0;
    long b = alpha.beta(c.i, c.j);
    Int f = binomial(v, left) * binomial(v + b, up);
    if (f == 0) return Rat(0);
    w *= Rat(f);
  }
  for (Cell c : pi.cells().cells()) {
    if (!mu.contains(c)) continue;
    long v = pi.at(c).value();
    long b = alpha.beta(c.i, c.j);
    w *= ratio(factorial(v), factorial(v + b));
  }
  return w;
}

std::vector<PlaneArray> enumerate_fiber(const Shape& lambda, const Shape& mu,
                                        const AlphaSpec& alpha,
                                        const std::vector<long>& sigma) {
  if (!alpha.all_nonnegative())
    throw std::invalid_argument("enumerate_fiber: alpha must be non-negative");
  if (!lambda.interior().contains(mu))
    throw std::invalid_argument("enumerate_fiber: mu must lie inside interior(lambda)");
  CellSet lam_cells = CellSet::from_shape(lambda);
  CellSet skew = CellSet::skew(lambda, mu);
  if (static_cast<int>(sigma.size()) != skew.num_cells())
    throw std::invalid_argument("enumerate_fiber: sigma size mismatch");
  std::vector<std::optional<long>> fixed(lam_cells.num_cells());
  std::vector<std::optional<long>> cap(lam_cells.num_cells());
  for (int o = 0; o < skew.num_cells(); ++o)
    fixed[lam_cells.ordinal_of(skew.cell(o))] = sigma[o];
  std::vector<PlaneArray> out;
  for (auto& vals : enumerate_arrays(lam_cells, alpha, fixed, cap))
    out.emplace_back(lam_cells, std::move(vals));
  return out;
}

Rat coeff_general_shape(const Shape& lambda, const Shape& mu,
                        const AlphaSpec& alpha,
                        const std::vector<long>& sigma) {
  Rat total(0);
  for (const PlaneArray& pi : enumerate_fiber(lambda, mu, alpha, sigma))
    total += weight_general(lambda, mu, alpha, pi);
  return total;
}

Rat tilde_a(int r, const std::vector<Rat>& nu,
            const std::vector<Rat>& n_prime) {
  if (static_cast<int>(nu.size()) != r + 1)
    throw std::invalid_argument("tilde_a: nu must have r+1 entries");
  if (static_cast<int>(n_prime.size()) != r)
    throw std::invalid_argument("tilde_a: n' must have r entries");
  if (rat_sum(nu) != 0)
    throw std::invalid_argument("tilde_a: nu must sum to zero");
  std::vector<long> alpha_vals;
  for (int i = 0; i < r; ++i) {
    Rat d = nu[i] - nu[i + 1];
    if (d.get_den() != 1)
      throw std::invalid_argument("tilde_a: nu differences must be integers");
    alpha_vals.push_back(d.get_num().get_si());
  }
  AlphaSpec alpha(alpha_vals);
  std::vector<long> n;
  Rat shift(0);
  for (int i = 0; i < r; ++i) {
    shift += nu[i];
    Rat ni = n_prime[i] - shift;
    if (ni.get_den() != 1)
      throw std::invalid_argument("tilde_a: n' - partial sums of nu must be integers");
    n.push_back(ni.get_num().get_si());
  }
  CoeffEngine eng(alpha);
  return eng.a(r, n);
}

bool permutation_invariance_check(int r, const std::vector<Rat>& nu,
                                  const std::vector<Rat>& n_prime,
                                  const std::vector<int>& permutation) {
  if (static_cast<int>(permutation.size()) != r + 1)
    throw std::invalid_argument("permutation_invariance_check: permutation size");
  std::vector<Rat> permuted(r + 1);
  for (int i = 0; i <= r; ++i) permuted[i] = nu[permutation[i]];
  return tilde_a(r, nu, n_prime) == tilde_a(r, permuted, n_prime);
}

Int weight_B(int r, const PlaneArray& pi) {
  Int w(1);
  for (int i = 1; i + 1 <= r; ++i) {
    w *= binomial(pi.at({i + 1, i + 1}).value(), pi.at({i, i}).value());
    if (w == 0) return Int(0);
  }
  for (Cell c : pi.cells().cells()) {
    long v = pi.at(c).value();
    long left = pi.at_or_zero({c.i, c.j - 1}).value();
    long up = pi.at_or_zero({c.i - 1, c.j}).value();
    w *= binomial(v, left) * binomial(v, up);
    if (w == 0) return Int(0);
  }
  return w;
}

std::vector<PlaneArray> enumerate_b_fiber(int r, const std::vector<long>& n) {
  if (static_cast<int>(n.size()) != r)
    throw std::invalid_argument("enumerate_b_fiber: boundary size mismatch");
  CellSet cells = CellSet::shifted_staircase(r);
  std::vector<std::optional<long>> fixed(cells.num_cells());
  std::vector<std::optional<long>> cap(cells.num_cells());
  for (int i = 1; i <= r; ++i) {
    int o = cells.ordinal_of({i, 2 * r - i});
    if (n[i - 1] < 0) return {};
    fixed[o] = n[i - 1];
  }
  std::vector<PlaneArray> out;
  for (auto& vals : enumerate_arrays(cells, AlphaSpec(), fixed, cap))
    out.emplace_back(cells, std::move(vals));
  return out;
}

Int b_coeff(int r, const std::vector<long>& n) {
  Int total(0);
  for (const PlaneArray& pi : enumerate_b_fiber(r, n)) total += weight_B(r, pi);
  return total;
}

Rat b_coeff_via_recursion(int r, const std::vector<long>& n) {
  // H^{B_r} = sum_{i<r} n_i^2 D_{n_i} + (1/2) n_r^2 D_{n_r} + sum n_i n_{i+1};
  // forward-solve from B(0) = 1.
  std::map<std::vector<long>, Rat> memo;
  std::function<Rat(const std::vector<long>&)> solve =
      [&](const std::vector<long>& m) -> Rat {
    for (long mi : m)
      if (mi < 0) return Rat(0);
    if (std::all_of(m.begin(), m.end(), [](long x) { return x == 0; }))
      return Rat(1);
    auto it = memo.find(m);
    if (it != memo.end()) return it->second;
    Rat num(0);
    Rat denom(0);
    for (int i = 0; i < r; ++i) {
      Rat ci = (i + 1 < r) ? Rat(m[i] * m[i]) : ratio(m[i] * m[i], 2);
      denom += ci;
      if (m[i] > 0) {
        std::vector<long> down = m;
        --down[i];
        num += ci * solve(down);
      }
    }
    for (int i = 0; i + 1 < r; ++i) denom -= Rat(m[i] * m[i + 1]);
    Rat v = num / denom;
    memo.emplace(m, v);
    return v;
  };
  return solve(n);
}

Int bc2_coeff(long n, long m) {
  if (n < 0 || m < 0) return Int(0);
  Int total(0);
  Int p2(1);
  for (long k = 0; k <= std::min(n, m); ++k) {
    total += binomial(n, k) * binomial(m, k) * p2;
    p2 *= 2;
  }
  return total;
}

Rat bc2_coeff_via_recursion(long n, long m, bool tilde) {
  std::map<std::pair<long, long>, Rat> memo;
  std::function<Rat(long, long)> solve = [&](long a, long b) -> Rat {
    if (a < 0 || b < 0) return Rat(0);
    if (a == 0 && b == 0) return Rat(1);
    auto it = memo.find({a, b});
    if (it != memo.end()) return it->second;
    Rat v;
    if (!tilde) {
      // H^{BC_2} = n^2 D_n + (1/2) m D_m + (1/2) m(m-1) D^(2)_m + nm.
      Rat denom = Rat(a * a) + ratio(b, 2) + ratio(b * (b - 1), 2) - Rat(a * b);
      Rat num = Rat(a * a) * solve(a - 1, b) + ratio(b, 2) * solve(a, b - 1) +
                ratio(b * (b - 1), 2) * solve(a, b - 2);
      v = num / denom;
    } else {
      // H~^{BC_2} = (1/2) n^2 D_n + (1/2) m^2 D_m + (1/2) nm D_{n,m} + nm.
      Rat denom = ratio(a * a, 2) + ratio(b * b, 2) + ratio(a * b, 2) - Rat(a * b);
      Rat num = ratio(a * a, 2) * solve(a - 1, b) +
                ratio(b * b, 2) * solve(a, b - 1) +
                ratio(a * b, 2) * solve(a - 1, b - 1);
      v = num / denom;
    }
    memo.emplace(std::make_pair(a, b), v);
    return v;
  };
  return solve(n, m);
}

Int g2_coeff(long n, long m) {
  if (n < 0 || m < 0) return Int(0);
  Int total(0);
  for (long i = 0; i <= n; ++i)
    for (long j = 0; j <= n - i; ++j) {
      Int t = binomial(n, i) * binomial(n, j) * binomial(m, i) *
              binomial(m, j) * binomial(n + m - i - j, m) * binomial(i + j, j);
      total += t;
    }
  return total;
}

Rat g2_coeff_via_recursion(long n, long m) {
  // H^{G_2} = n^2 D_n + 3 m^2 D_m + 3nm.
  std::map<std::pair<long, long>, Rat> memo;
  std::function<Rat(long, long)> solve = [&](long a, long b) -> Rat {
    if (a < 0 || b < 0) return Rat(0);
    if (a == 0 && b == 0) return Rat(1);
    auto it = memo.find({a, b});
    if (it != memo.end()) return it->second;
    Rat denom = Rat(a * a + 3 * b * b - 3 * a * b);
    Rat num = Rat(a * a) * solve(a - 1, b) + Rat(3 * b * b) * solve(a, b - 1);
    Rat v = num / denom;
    memo.emplace(std::make_pair(a, b), v);
    return v;
  };
  return solve(n, m);
}

Int weight_G2(long n, long m, long i, long j, long k, long l) {
  return trinomial(n, i, j) * binomial(n, l) * binomial(m, l) *
         binomial(l, i) * binomial(l, j) * binomial(i, k) * binomial(j, k);
}

std::vector<Int> apery_diagonal(long n_max) {
  CoeffEngine eng;
  std::vector<Int> seq;
  for (long n = 0; n <= n_max; ++n) {
    seq.push_back(eng.a_normalized(3, {n, n, n}));
    if (n >= 2) {
      Int lhs = Int(n) * n * n * seq[n];
      Int rhs = Int(34 * n * n * n - 51 * n * n + 27 * n - 5) * seq[n - 1] -
                Int(n - 1) * (n - 1) * (n - 1) * seq[n - 2];
      if (lhs != rhs)
        throw std::logic_error("apery_diagonal: three-term recurrence failed");
    }
  }
  return seq;
}

Int apery_binomial(long n) {
  Int total(0);
  for (long k = 0; k <= n; ++k) {
    Int b1 = binomial(n, k);
    Int b2 = binomial(n + k, k);
    total += b1 * b1 * b2 * b2;
  }
  return total;
}

Rat difference_equation_residual(CoeffEngine& eng, int r,
                                 const std::vector<long>& n) {
  Rat lhs = Rat(toda_P(eng.alpha(), n)) * eng.a(r, n);
  Rat rhs(0);
  for (int i = 0; i < r; ++i) {
    std::vector<long> m = n;
    --m[i];
    rhs += eng.a(r, m);
  }
  return lhs - rhs;
}

}  // namespace whittaker
