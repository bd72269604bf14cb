#include "whittaker/hitting.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace whittaker {

Rat laplace_hit_1d(long k, long n, long a, const Rat& s) {
  if (k < n || n < 0) throw std::invalid_argument("laplace_hit_1d: need k >= n >= 0");
  Rat p(1);
  for (long j = n + 1; j <= k; ++j) {
    Rat rate(j * (j + a));
    p *= rate / (rate + s);
  }
  return p;
}

double kernel_1d(long k, long n, long a, double t) {
  if (k < n) return 0.0;
  double sum = 0.0;
  for (long j = n; j <= k; ++j) {
    Rat c(1);
    for (long l = n; l <= k; ++l) {
      if (l == j) continue;
      c /= Rat((l - j) * (l + j + a));
    }
    sum += to_double(c) * std::exp(-static_cast<double>(j * (j + a)) * t);
  }
  return sum;
}

double transition_1d(long k, long n, long a, double t) {
  // a_1(n)/a_1(k) = k!(k+a)! / (n!(n+a)!).
  Rat pref = ratio(factorial(k) * factorial(k + a),
                   factorial(n) * factorial(n + a));
  return to_double(pref) * kernel_1d(k, n, a, t);
}

Rat gibbs_identity_residual(const std::vector<Rat>& lambdas) {
  Rat sum(0);
  for (size_t i = 0; i < lambdas.size(); ++i) {
    Rat p(1);
    for (size_t j = 0; j < lambdas.size(); ++j) {
      if (i == j) continue;
      Rat d = lambdas[i] - lambdas[j];
      if (d == 0) throw std::invalid_argument("gibbs_identity_residual: repeated value");
      p /= d;
    }
    sum += p;
  }
  return sum;
}

Rat absorption_laplace_exact(long n, long m, long a, const Rat& s) {
  if (a < 0 || m < a || n < 0)
    throw std::invalid_argument("absorption_laplace_exact: need n >= 0, m >= a >= 0");
  // H on the grid [0..n] x [a..m], absorbed at (0,a); forward recursion in
  // (i + j) since the chain is strictly decreasing.
  std::map<std::pair<long, long>, Rat> H;
  H[{0, a}] = Rat(1);
  for (long i = 0; i <= n; ++i)
    for (long j = a; j <= m; ++j) {
      if (i == 0 && j == a) continue;
      Rat rn(i * i * (i + a));
      Rat rm(j * j * (j - a));
      Rat num(0);
      if (i > 0) num += rn * H[{i - 1, j}];
      if (j > a) num += rm * H[{i, j - 1}];
      H[{i, j}] = num / (rn + rm + s * Rat(i + j));
    }
  return H[{n, m}];
}

Rat absorption_laplace_product(long n, long m, long a, const Rat& s) {
  return laplace_hit_1d(n, 0, a, s) * laplace_hit_1d(m - a, 0, a, s);
}

namespace {

Int cube(long x) { return Int(x) * x * x; }

}  // namespace

Rat hitting_prob_finite(long k, long l, long n, long m) {
  if (k < 0 || l < 0 || n < 0 || m < 0)
    throw std::invalid_argument("hitting_prob_finite: negative index");
  if (n > k || m > l) return Rat(0);  // the chain only moves down
  if (n == 0 && m == 0) return Rat(1);
  if (n == 0) return hitting_prob_finite(l, k, m, n);  // symmetric chain
  Rat sum(0);
  if (m >= 1) {
    for (long j = n; j <= k; ++j) {
      Rat term(cube(j));
      for (long a = n; a <= k; ++a) {
        if (a == j) continue;
        term *= ratio(cube(a), cube(a) - cube(j));
      }
      for (long b = m; b <= l; ++b) term *= ratio(cube(b), cube(b) + cube(j));
      sum += term;
    }
    return ratio(cube(n) + cube(m), cube(n) * cube(m)) * sum;
  }
  // m = 0, n >= 1.
  for (long j = n; j <= k; ++j) {
    Rat term(1);
    for (long a = n; a <= k; ++a) {
      if (a == j) continue;
      term *= ratio(cube(a), cube(a) - cube(j));
    }
    for (long b = 1; b <= l; ++b) term *= ratio(cube(b), cube(b) + cube(j));
    sum += term;
  }
  return sum;
}

Rat hitting_prob_absorbing_solve(long k, long l, long n, long m) {
  if (n > k || m > l) return Rat(0);
  std::map<std::pair<long, long>, Rat> u;
  auto get = [&](long i, long j) -> Rat {
    if (i < n || j < m) return Rat(0);
    auto it = u.find({i, j});
    return it == u.end() ? Rat(0) : it->second;
  };
  u[{n, m}] = Rat(1);
  for (long i = n; i <= k; ++i)
    for (long j = m; j <= l; ++j) {
      if (i == n && j == m) continue;
      Rat wn(cube(i)), wm(cube(j));
      u[{i, j}] = (wn * get(i - 1, j) + wm * get(i, j - 1)) / (wn + wm);
    }
  return u[{k, l}];
}

namespace {

// sin^2(pi omega j) = (1 - (-1)^j cosh(pi j sqrt(3))) / 2, real for all j.
long double sin_sq_pi_omega(long j) {
  const long double pi_sqrt3 = 5.441398092702653060L;
  long double ch = coshl(pi_sqrt3 * static_cast<long double>(j));
  long double sgn = (j % 2 == 0) ? 1.0L : -1.0L;
  return (1.0L - sgn * ch) / 2.0L;
}

const long double kPiL = 3.141592653589793238462643383279502884L;

}  // namespace

SeriesValue S_series(int k, double tol, long jmax) {
  if (k < 0) throw std::invalid_argument("S_series: k >= 0 required");
  long double sum = 0.0L;
  long double last = 0.0L;
  long p = 2 + 3 * k;
  long j = 1;
  for (; j <= jmax; ++j) {
    long double jp = powl(static_cast<long double>(j), static_cast<long double>(p));
    long double term = 6.0L * kPiL * kPiL * jp / sin_sq_pi_omega(j);
    sum += term;
    last = fabsl(term);
    // Terms decay like j^p e^{-pi sqrt(3) j}; once the polynomial growth is
    // dominated, two consecutive small terms certify the tail.
    if (j > p && last < tol * std::max(fabsl(sum), 1.0L)) break;
  }
  SeriesValue out;
  out.value = static_cast<double>(sum);
  out.tail_bound = static_cast<double>(last) * 1.2;
  out.terms = std::min(j, jmax);
  return out;
}

SeriesValue T_series(int r, double tol, long jmax) {
  // q = -e^{-pi sqrt(3)}; T_r = -sum n^r q^n/(1-q^n)^2.
  const long double pi_sqrt3 = 5.441398092702653060L;
  long double sum = 0.0L, last = 0.0L;
  long n = 1;
  for (; n <= jmax; ++n) {
    long double qn = expl(-pi_sqrt3 * n);
    if (n % 2 == 1) qn = -qn;
    long double nr = powl(static_cast<long double>(n), static_cast<long double>(r));
    long double term = -nr * qn / ((1.0L - qn) * (1.0L - qn));
    sum += term;
    last = fabsl(term);
    if (n > r && last < tol * std::max(fabsl(sum), 1.0L)) break;
  }
  SeriesValue out;
  out.value = static_cast<double>(sum);
  out.tail_bound = static_cast<double>(last) * 1.2;
  out.terms = std::min(n, jmax);
  return out;
}

SeriesValue hitting_prob_entrance(long n, long m, double tol) {
  if (n < 0 || m < 0) throw std::invalid_argument("hitting_prob_entrance: negative index");
  if (n == 0 && m == 0) return {1.0, 0.0, 0};
  if (n == 0) std::swap(n, m);  // h_{0m} = h_{m0}
  SeriesValue out;
  long double sum = 0.0L, last = 0.0L;
  const long jmax = 200;
  long j = n;
  long p = (m >= 1) ? 5 + 3 * (n - 1) + 3 * (m - 1) : 2 + 3 * (n - 1);
  for (; j <= jmax; ++j) {
    // R_{n-1}(-j) R_{m-1}(j) as extended-precision products of integers.
    long double prod = 1.0L;
    for (long a = 1; a <= n - 1; ++a)
      prod *= static_cast<long double>(a) * a * a -
              static_cast<long double>(j) * j * j;
    if (m >= 1) {
      for (long b = 1; b <= m - 1; ++b)
        prod *= static_cast<long double>(b) * b * b +
                static_cast<long double>(j) * j * j;
    }
    long double jj = static_cast<long double>(j);
    long double term;
    if (m >= 1)
      term = prod * 3.0L * kPiL * kPiL * jj * jj * jj * jj * jj /
             sin_sq_pi_omega(j);
    else
      term = prod * 3.0L * kPiL * kPiL * jj * jj / sin_sq_pi_omega(j);
    sum += term;
    last = fabsl(term);
    if (j > n + p && last < tol * std::max(fabsl(sum), 1e-30L) * 0.01L) break;
  }
  long double front;
  if (m >= 1) {
    long double nf = 1.0L, mf = 1.0L;
    for (long a = 1; a <= n; ++a) nf *= a;
    for (long b = 1; b <= m; ++b) mf *= b;
    front = (static_cast<long double>(n) * n * n +
             static_cast<long double>(m) * m * m) /
            (nf * nf * nf * mf * mf * mf);
  } else {
    long double g = 1.0L;  // Gamma(n) = (n-1)!
    for (long a = 1; a <= n - 1; ++a) g *= a;
    front = 1.0L / (g * g * g);
  }
  out.value = static_cast<double>(front * sum);
  out.tail_bound = static_cast<double>(front * last) * 1.2;
  out.terms = std::min(j, jmax);
  return out;
}

Zeta2Report zeta2_identities(long max_level, double series_tol) {
  Zeta2Report rep;
  rep.max_level = max_level;
  std::vector<double> level_occ(max_level + 1, 0.0);
  for (long s = 1; s <= max_level; ++s) {
    for (long n = 0; n <= s; ++n) {
      long m = s - n;
      double h = hitting_prob_entrance(n, m, series_tol).value;
      long P2 = n * n + m * m - n * m;
      level_occ[s] += h / static_cast<double>(P2);
      // Normalized identity term: a_2*(n,m) / (n! m!)^2 = h / (P2 C(n+m,n)).
      Rat c(Int(P2) * binomial(n + m, n));
      rep.sum_normalized_raw += h / to_double(c);
      // Restriction identity terms at k = 1, 2:
      // q_2((n,m),k) a_1(k) a_2*(n,m) with a_2* = h n!^3 m!^3 / (P2 (n+m)!).
      for (long k = 1; k <= 2; ++k) {
        if (n < k || m < k) continue;
        Rat q = inv_factorial(n - k) * inv_factorial(n) * inv_factorial(m) *
                inv_factorial(m - k);
        Rat a1k = inv_factorial(k) * inv_factorial(k);
        Rat astar_comb = ratio(factorial(n) * factorial(n) * factorial(n) *
                                   factorial(m) * factorial(m) * factorial(m),
                               Int(P2) * factorial(n + m));
        double term = to_double(q * a1k * astar_comb) * h;
        if (k == 1)
          rep.fc_k1 += term;
        else
          rep.fc_k2 += term;
      }
    }
    rep.sum_occupation_raw += level_occ[s];
  }
  // Tail extrapolation: level occupation behaves like (c - g/s)/s^2; fit on
  // the last two levels and sum the model far out.
  if (max_level >= 4) {
    double cL = level_occ[max_level] * max_level * max_level;
    double cL1 = level_occ[max_level - 1] * (max_level - 1) * (max_level - 1);
    double g = (cL - cL1) * max_level * (max_level - 1);
    double c = cL + g / max_level;
    double tail = 0.0;
    for (long s = max_level + 1; s <= 2000000; ++s)
      tail += (c - g / s) / (static_cast<double>(s) * s);
    rep.sum_occupation_extrap = rep.sum_occupation_raw + tail;
  } else {
    rep.sum_occupation_extrap = rep.sum_occupation_raw;
  }
  return rep;
}

}  // namespace whittaker
