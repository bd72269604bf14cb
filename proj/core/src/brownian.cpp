#include "whittaker/brownian.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "whittaker/sim.hpp"

namespace whittaker {

PathFunctionals simulate_brownian_path(int r, double t, double dt,
                                       const std::vector<double>& drift_alpha,
                                       std::mt19937_64& rng) {
  long steps = std::max(1L, static_cast<long>(std::llround(t / dt)));
  double h = t / static_cast<double>(steps);
  double sqrt_h = std::sqrt(h);
  std::normal_distribution<double> gauss(0.0, 1.0);

  auto alpha_at = [&](int k) {
    return k < static_cast<int>(drift_alpha.size()) ? drift_alpha[k] : 0.0;
  };

  std::vector<double> phase(r, 0.0);  // B_k - B_{k+1}
  std::vector<Complex> Y(r), Y_prev(r);
  std::vector<Complex> Z(r, Complex(0.0, 0.0));
  std::vector<Complex> U(r, Complex(0.0, 0.0)), U_prev(r);
  for (int k = 0; k < r; ++k) Y[k] = Complex(1.0, 0.0);

  std::vector<double> g(r + 1);
  for (long s = 1; s <= steps; ++s) {
    double time = h * static_cast<double>(s);
    for (int k = 0; k <= r; ++k) g[k] = gauss(rng);
    Y_prev = Y;
    U_prev = U;
    for (int k = 0; k < r; ++k) {
      phase[k] += (g[k] - g[k + 1]) * sqrt_h;
      Y[k] = std::polar(std::exp(alpha_at(k) * time), phase[k]);
      Z[k] += (h / 2.0) * (Y_prev[k] + Y[k]);
    }
    // Iterated integrals U^j(t) = int U^{j-1} Y_j; U^0 = 1.
    for (int j = 0; j < r; ++j) {
      Complex lower_prev = (j == 0) ? Complex(1.0, 0.0) : U_prev[j - 1];
      Complex lower_cur = (j == 0) ? Complex(1.0, 0.0) : U[j - 1];
      U[j] = U_prev[j] + (h / 2.0) * (lower_prev * Y_prev[j] + lower_cur * Y[j]);
    }
  }
  PathFunctionals out;
  out.Y = std::move(Y);
  out.Z = std::move(Z);
  out.U_levels = std::move(U);
  return out;
}

Estimate mc_mean(int r, double t, double dt, long paths, std::uint64_t seed,
                 int threads,
                 const std::function<Complex(const PathFunctionals&)>& f,
                 const std::vector<double>& drift_alpha) {
  if (threads <= 0)
    threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = static_cast<int>(std::min<long>(threads, paths));

  struct Acc {
    double sum_re = 0.0, sum_im = 0.0;
    double sq_re = 0.0, sq_im = 0.0;
  };
  std::vector<Acc> accs(threads);
  auto worker = [&](int w) {
    Acc a;
    for (long p = w; p < paths; p += threads) {
      std::mt19937_64 rng =
          make_stream(seed, {static_cast<std::uint64_t>(p), 0xB20ULL});
      PathFunctionals pf = simulate_brownian_path(r, t, dt, drift_alpha, rng);
      Complex v = f(pf);
      a.sum_re += v.real();
      a.sum_im += v.imag();
      a.sq_re += v.real() * v.real();
      a.sq_im += v.imag() * v.imag();
    }
    accs[w] = a;
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < threads; ++w) pool.emplace_back(worker, w);
  worker(0);
  for (auto& th : pool) th.join();

  Acc total;
  for (const auto& a : accs) {
    total.sum_re += a.sum_re;
    total.sum_im += a.sum_im;
    total.sq_re += a.sq_re;
    total.sq_im += a.sq_im;
  }
  Estimate e;
  e.samples = paths;
  e.seed = seed;
  double n = static_cast<double>(paths);
  double mean_re = total.sum_re / n, mean_im = total.sum_im / n;
  e.mean = Complex(mean_re, mean_im);
  double var_re = std::max(0.0, total.sq_re / n - mean_re * mean_re);
  double var_im = std::max(0.0, total.sq_im / n - mean_im * mean_im);
  e.stderr_re = std::sqrt(var_re / n);
  e.stderr_im = std::sqrt(var_im / n);
  return e;
}

namespace {

Complex ipow(Complex z, long p) {
  Complex acc(1.0, 0.0);
  for (long i = 0; i < p; ++i) acc *= z;
  return acc;
}

DualityReport make_report(const Estimate& mc, double oracle) {
  DualityReport rep;
  rep.mc = mc;
  rep.oracle = oracle;
  double se_re = std::max(mc.stderr_re, 1e-300);
  double se_im = std::max(mc.stderr_im, 1e-300);
  rep.z_re = (mc.mean.real() - oracle) / se_re;
  rep.z_im = mc.mean.imag() / se_im;
  rep.pass_3sigma = std::abs(rep.z_re) < 3.0 && std::abs(rep.z_im) < 3.0;
  return rep;
}

}  // namespace

double doob_transition_prob(int r, const AlphaSpec& alpha,
                            const std::vector<long>& n,
                            const std::vector<long>& m, double t) {
  BuiltOperator hb = build_h_toda(r, alpha, n);
  CoeffEngine eng(alpha);
  std::vector<Rat> a(hb.space.size());
  for (int s = 0; s < hb.space.size(); ++s) a[s] = eng.a(r, hb.space.state(s));
  SparseOperator L = doob_transform(hb.op, a, &hb.space);
  auto p = transient_probs(L, hb.space.index_of(n), t);
  int idx = hb.space.index_of(m);
  return idx >= 0 ? p[idx] : 0.0;
}

double m_transition_prob(int r, const std::vector<long>& n,
                         const std::vector<long>& m, double t) {
  BuiltOperator mb = build_M(r, n);
  auto p = transient_probs(mb.op, mb.space.index_of(n), t);
  int idx = mb.space.index_of(m);
  return idx >= 0 ? p[idx] : 0.0;
}

DualityReport duality_check_L(int r, const std::vector<long>& n,
                              const std::vector<long>& m, double t, long paths,
                              double dt, std::uint64_t seed, int threads) {
  for (int i = 0; i < r; ++i)
    if (m[i] > n[i])
      throw std::invalid_argument("duality_check_L: need m <= n componentwise");
  CoeffEngine eng;
  Rat ratio = eng.a(r, m) / eng.a(r, n);
  Rat invfac(1);
  for (int i = 0; i < r; ++i) invfac *= inv_factorial(n[i] - m[i]);
  double prefactor = to_double(ratio * invfac);

  Estimate mc = mc_mean(r, t, dt, paths, seed, threads,
                        [&](const PathFunctionals& pf) {
                          Complex v(prefactor, 0.0);
                          for (int k = 0; k < r; ++k) {
                            v *= ipow(std::conj(pf.Y[k]), n[k]);
                            v *= ipow(pf.Z[k], n[k] - m[k]);
                          }
                          return v;
                        });
  double oracle = doob_transition_prob(r, AlphaSpec(), n, m, t);
  return make_report(mc, oracle);
}

DualityReport duality_check_M(int r, long p, double t, long paths, double dt,
                              std::uint64_t seed, int threads) {
  Rat invfac = inv_factorial(p);
  Rat scale(1);
  for (int i = 0; i < r; ++i) scale *= invfac;
  double pref = to_double(scale);
  Estimate mc = mc_mean(r, t, dt, paths, seed, threads,
                        [&](const PathFunctionals& pf) {
                          return pref * ipow(pf.U_levels[r - 1], p);
                        });
  std::vector<long> start(r, p), zero(r, 0);
  double oracle = m_transition_prob(r, start, zero, t);
  return make_report(mc, oracle);
}

DualityReport phi_check(int r, const std::vector<double>& y, double t,
                        long paths, double dt, std::uint64_t seed, int threads) {
  Estimate mc = mc_mean(r, t, dt, paths, seed, threads,
                        [&](const PathFunctionals& pf) {
                          Complex ex(0.0, 0.0);
                          for (int k = 0; k < r; ++k) ex += y[k] * pf.Z[k];
                          return std::exp(ex);
                        });
  return make_report(mc, phi_series(r, y));
}

double phi_series(int r, const std::vector<double>& y, double tol) {
  CoeffEngine eng;
  double total = 0.0;
  // Shells of fixed |n|; coefficients decay like products of 1/n!^2.
  for (long shell = 0;; ++shell) {
    double shell_sum = 0.0;
    std::vector<long> n(r, 0);
    std::function<void(int, long)> rec = [&](int pos, long rest) {
      if (pos == r - 1) {
        n[pos] = rest;
        double term = to_double(eng.a(r, n));
        for (int i = 0; i < r; ++i) term *= std::pow(y[i], static_cast<double>(n[i]));
        shell_sum += term;
        return;
      }
      for (long v = 0; v <= rest; ++v) {
        n[pos] = v;
        rec(pos + 1, rest - v);
      }
    };
    rec(0, shell);
    total += shell_sum;
    if (shell > 4 && std::abs(shell_sum) < tol * std::max(1.0, std::abs(total)))
      break;
    if (shell > 200) break;
  }
  return total;
}

Estimate moment_YZ(int r, const std::vector<long>& n, const std::vector<long>& l,
                   double t, long paths, double dt, std::uint64_t seed,
                   int threads) {
  return mc_mean(r, t, dt, paths, seed, threads,
                 [&](const PathFunctionals& pf) {
                   Complex v(1.0, 0.0);
                   for (int k = 0; k < r; ++k) {
                     v *= ipow(std::conj(pf.Y[k]), n[k]);
                     v *= ipow(pf.Z[k], l[k]);
                   }
                   return v;
                 });
}

std::vector<double> z_stabilization(int r, const std::vector<double>& drift_alpha,
                                    const std::vector<double>& checkpoints,
                                    long paths, double dt, std::uint64_t seed) {
  // Simulate each path once to the last checkpoint, recording Z at each one.
  std::vector<double> mean_diff(checkpoints.size() > 0 ? checkpoints.size() - 1 : 0,
                                0.0);
  for (long p = 0; p < paths; ++p) {
    std::mt19937_64 rng = make_stream(seed, {static_cast<std::uint64_t>(p), 0x57ULL});
    std::vector<std::vector<Complex>> z_at;
    double t_prev = 0.0;
    std::vector<Complex> Z(r, Complex(0, 0));
    std::vector<double> phase(r, 0.0);
    std::vector<Complex> Y(r, Complex(1.0, 0.0));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> g(r + 1);
    for (double cp : checkpoints) {
      long steps = std::max(1L, static_cast<long>(std::llround((cp - t_prev) / dt)));
      double h = (cp - t_prev) / static_cast<double>(steps);
      double sqrt_h = std::sqrt(h);
      for (long s = 1; s <= steps; ++s) {
        double time = t_prev + h * static_cast<double>(s);
        for (int k = 0; k <= r; ++k) g[k] = gauss(rng);
        for (int k = 0; k < r; ++k) {
          double a = k < static_cast<int>(drift_alpha.size()) ? drift_alpha[k] : 0.0;
          Complex y_prev = Y[k];
          phase[k] += (g[k] - g[k + 1]) * sqrt_h;
          Y[k] = std::polar(std::exp(a * time), phase[k]);
          Z[k] += (h / 2.0) * (y_prev + Y[k]);
        }
      }
      z_at.push_back(Z);
      t_prev = cp;
    }
    for (size_t j = 0; j + 1 < checkpoints.size(); ++j) {
      double d = 0.0;
      for (int k = 0; k < r; ++k) d += std::abs(z_at[j + 1][k] - z_at[j][k]);
      mean_diff[j] += d;
    }
  }
  for (auto& d : mean_diff) d /= static_cast<double>(paths);
  return mean_diff;
}

}  // namespace whittaker
