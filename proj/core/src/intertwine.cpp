#include "whittaker/intertwine.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <sstream>

namespace whittaker {

namespace {

std::string state_str(const State& s) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << ")";
  return os.str();
}

VerifyReport pass_report(long rows, const std::string& what) {
  VerifyReport r;
  r.pass = true;
  r.rows_checked = rows;
  r.detail = what;
  return r;
}

VerifyReport fail_report(const std::string& witness) {
  VerifyReport r;
  r.pass = false;
  r.detail = witness;
  return r;
}

}  // namespace

VerifyReport verify_prop_iq(int r, const AlphaSpec& alpha, long maxN,
                            bool perturb) {
  if (r < 2) throw std::invalid_argument("verify_prop_iq: r >= 2 required");
  AlphaSpec alpha_kernel = alpha;
  if (perturb) {
    // Off-by-one in the alpha_{ir} column of the kernel; a negative control.
    std::vector<long> a;
    for (int i = 1; i <= std::max(alpha.prefix_len(), r); ++i)
      a.push_back(alpha.alpha(i));
    a[r - 1] += 1;
    alpha_kernel = AlphaSpec(a);
  }

  auto q = [&](const std::vector<long>& n, const std::vector<long>& k) {
    for (long v : n)
      if (v < 0) return Rat(0);
    for (long v : k)
      if (v < 0) return Rat(0);
    return q_kernel(r, alpha_kernel, n, k);
  };

  long rows = 0;
  std::vector<long> n(r, 0), k(r - 1, 0);
  auto advance = [](std::vector<long>& v, long cap) {
    size_t pos = 0;
    while (pos < v.size()) {
      if (v[pos] < cap) {
        ++v[pos];
        return true;
      }
      v[pos] = 0;
      ++pos;
    }
    return false;
  };
  do {
    std::fill(k.begin(), k.end(), 0L);
    do {
      // LHS: h^r acting on the n-slot of q_r(n,k).
      Rat lhs = Rat(-toda_P(alpha, n)) * q(n, k);
      for (int i = 0; i < r; ++i) {
        if (n[i] == 0) continue;
        std::vector<long> m = n;
        --m[i];
        lhs += q(m, k);
      }
      // RHS: q_r h^{r-1} as a matrix product in the k-slot.
      Rat rhs = Rat(-toda_P(alpha, k)) * q(n, k);
      for (int j = 0; j + 1 < r; ++j) {
        std::vector<long> kk = k;
        ++kk[j];
        rhs += q(n, kk);
      }
      ++rows;
      if (lhs != rhs)
        return fail_report("h^r q_r != q_r h^{r-1} at n=" + state_str(n) +
                           ", k=" + state_str(k) + ": lhs=" +
                           rat_to_string(lhs) + " rhs=" + rat_to_string(rhs));
    } while (advance(k, maxN));
  } while (advance(n, maxN));
  return pass_report(rows, "h^r q_r = q_r h^{r-1} exactly on the box");
}

VerifyReport verify_mf_rpp(const Shape& lambda, const Shape& mu,
                           const AlphaSpec& alpha, const State& roof_sigma,
                           bool perturb) {
  if (!lambda.interior().contains(mu))
    throw std::invalid_argument("verify_mf_rpp: mu must lie inside interior(lambda)");
  BuiltOperator Hb = build_H(lambda, mu, alpha, roof_sigma);
  if (perturb) Hb.op.diag[Hb.space.size() - 1] += 1;
  StateSpace& S = Hb.space;

  StateSpace P = fiber_union_space(lambda, mu, alpha, roof_sigma);
  CellSet lam_cells = CellSet::from_shape(lambda);
  SparseOperator G = generator_on(P, lam_cells, alpha);

  RatMatrix Lam(S.size(), P.size());
  for (int s = 0; s < S.size(); ++s) {
    for (const PlaneArray& pi :
         enumerate_fiber(lambda, mu, alpha, S.state(s))) {
      int p = P.index_of(pi.finite_values());
      if (p < 0) throw std::logic_error("verify_mf_rpp: fiber escapes space");
      Lam.add(s, p, weight_general(lambda, mu, alpha, pi));
    }
  }

  RatMatrix lhs = Hb.op.to_matrix().multiply(Lam);
  RatMatrix rhs = Lam.multiply(G.to_matrix());
  if (auto d = lhs.first_difference(rhs)) {
    return fail_report("H Lambda != Lambda G at sigma=" +
                       state_str(S.state(d->first)) + ", pi=" +
                       state_str(P.state(d->second)) + ": " +
                       rat_to_string(lhs.at(d->first, d->second)) + " vs " +
                       rat_to_string(rhs.at(d->first, d->second)));
  }

  // H A = 0 with A(sigma) the fiber weight sum.
  std::vector<Rat> ones(P.size(), Rat(1));
  std::vector<Rat> A = Lam.apply(ones);
  std::vector<Rat> HA = Hb.op.apply(A);
  for (int s = 0; s < S.size(); ++s)
    if (HA[s] != 0)
      return fail_report("H A != 0 at sigma=" + state_str(S.state(s)) +
                         ", residual " + rat_to_string(HA[s]));
  return pass_report(S.size(), "H Lambda = Lambda G and H A = 0 exactly");
}

VerifyReport verify_doob_consistency(int r, const State& roof_n) {
  if (r < 1) throw std::invalid_argument("verify_doob_consistency: r >= 1");
  Shape lambda = staircase(r);  // delta_{r+1} has top row r
  Shape mu = r >= 2 ? staircase(r - 1) : Shape();
  AlphaSpec alpha;
  BuiltOperator Hb = build_H(lambda, mu, alpha, roof_n);
  CoeffEngine eng;
  std::vector<Rat> A(Hb.space.size());
  for (int s = 0; s < Hb.space.size(); ++s)
    A[s] = Rat(eng.a_normalized(r, Hb.space.state(s)));
  SparseOperator L1 = doob_transform(Hb.op, A, &Hb.space);

  BuiltOperator hb = build_h_toda(r, alpha, roof_n);
  std::vector<Rat> a(hb.space.size());
  for (int s = 0; s < hb.space.size(); ++s) a[s] = eng.a(r, hb.space.state(s));
  SparseOperator L2 = doob_transform(hb.op, a, &hb.space);

  // Match rows by state value.
  for (int s = 0; s < Hb.space.size(); ++s) {
    int t = hb.space.index_of(Hb.space.state(s));
    if (t < 0) return fail_report("state mismatch between the two spaces");
    if (L1.diag[s] != L2.diag[t])
      return fail_report("Doob diagonals differ at " + state_str(Hb.space.state(s)));
    std::map<State, Rat> m1, m2;
    for (const auto& [j, rate] : L1.off[s]) m1[Hb.space.state(j)] = rate;
    for (const auto& [j, rate] : L2.off[t]) m2[hb.space.state(j)] = rate;
    if (m1 != m2)
      return fail_report("Doob rates differ at " + state_str(Hb.space.state(s)));
  }
  return pass_report(Hb.space.size(),
                     "Doob(H^{lambda,mu}, A) = Doob(h^r, a_r) entrywise");
}

RootSystem root_system_from_string(const std::string& s) {
  if (s == "B2" || s == "b2") return RootSystem::B2;
  if (s == "B3" || s == "b3") return RootSystem::B3;
  if (s == "BC1" || s == "bc1") return RootSystem::BC1;
  if (s == "BC2" || s == "bc2") return RootSystem::BC2;
  if (s == "G2" || s == "g2") return RootSystem::G2;
  throw std::invalid_argument("unknown root system: " + s);
}

namespace {

VerifyReport verify_B(int r, long bound, bool perturb) {
  State roof(r, bound);
  BuiltOperator Hb = build_H_B(r, roof);
  BuiltOperator Gb = build_G_B(r, roof);
  CellSet cells = CellSet::shifted_staircase(r);

  RatMatrix Lam(Hb.space.size(), Gb.space.size());
  for (int p = 0; p < Gb.space.size(); ++p) {
    const State& vals = Gb.space.state(p);
    State n(r);
    for (int i = 1; i <= r; ++i) n[i - 1] = vals[cells.ordinal_of({i, 2 * r - i})];
    int s = Hb.space.index_of(n);
    if (s < 0) throw std::logic_error("verify_B: boundary escapes box");
    PlaneArray pi(cells, vals);
    Int w = weight_B(r, pi);
    if (perturb && p == 0) w += 1;
    Lam.add(s, p, Rat(w));
  }

  RatMatrix lhs = Hb.op.to_matrix().multiply(Lam);
  RatMatrix rhs = Lam.multiply(Gb.op.to_matrix());
  if (auto d = lhs.first_difference(rhs))
    return fail_report("H^{B_r} Lambda != Lambda G^{B_r} at row n=" +
                       state_str(Hb.space.state(d->first)));
  // B_r(n) from the same kernel annihilates H^{B_r}.
  std::vector<Rat> ones(Gb.space.size(), Rat(1));
  std::vector<Rat> B = Lam.apply(ones);
  auto HB = Hb.op.apply(B);
  for (int s = 0; s < Hb.space.size(); ++s)
    if (HB[s] != 0) return fail_report("H^{B_r} B_r != 0 at " + state_str(Hb.space.state(s)));
  return pass_report(Hb.space.size(), "type B intertwining exact");
}

VerifyReport verify_BC1(long bound, bool perturb) {
  auto Q = [&](long n, long k) -> Rat {
    if (n < 0 || k < 0 || k > n) return Rat(0);
    Rat q(binomial(n, k), Int(1) << static_cast<unsigned>(n));
    q.canonicalize();
    if (perturb && n == 1 && k == 0) q += 1;
    return q;
  };
  long rows = 0;
  for (long n = 0; n <= bound; ++n)
    for (long k = 0; k <= n + 2; ++k) {
      Rat lhs = ratio(n * n, 2) * (Q(n - 1, k) - Q(n, k));
      Rat rhs = ratio((k + 1), 2) * Q(n, k + 1) +
                ratio((k + 2) * (k + 1), 2) * Q(n, k + 2) -
                ratio(k * k, 2) * Q(n, k);
      ++rows;
      if (lhs != rhs)
        return fail_report("BC1 intertwining fails at n=" + std::to_string(n) +
                           ", k=" + std::to_string(k));
    }
  return pass_report(rows, "H^{B_1} Q = Q H^{BC_1} exact");
}

VerifyReport verify_BC2(long bound, bool perturb) {
  auto Q = [&](long n, long m, long k) -> Rat {
    if (n < 0 || m < 0 || k < 0 || k > n || k > m) return Rat(0);
    Rat q(binomial(n, k) * binomial(m, k) * (Int(1) << static_cast<unsigned>(k)));
    if (perturb && n == 1 && m == 1 && k == 1) q += 1;
    return q;
  };
  long rows = 0;
  for (long n = 0; n <= bound; ++n)
    for (long m = 0; m <= bound; ++m)
      for (long k = 0; k <= std::min(n, m) + 2; ++k) {
        Rat rhs = ratio((k + 1) * (k + 1), 2) * Q(n, m, k + 1) -
                  ratio(k * k, 2) * Q(n, m, k);
        // H^{BC_2} = n^2 D_n + m/2 D_m + m(m-1)/2 D^(2)_m + nm.
        Rat lhs1 = Rat(n * n) * (Q(n - 1, m, k) - Q(n, m, k)) +
                   ratio(m, 2) * (Q(n, m - 1, k) - Q(n, m, k)) +
                   ratio(m * (m - 1), 2) * (Q(n, m - 2, k) - Q(n, m, k)) +
                   Rat(n * m) * Q(n, m, k);
        // H~^{BC_2} = n^2/2 D_n + m^2/2 D_m + nm/2 D_{n,m} + nm.
        Rat lhs2 = ratio(n * n, 2) * (Q(n - 1, m, k) - Q(n, m, k)) +
                   ratio(m * m, 2) * (Q(n, m - 1, k) - Q(n, m, k)) +
                   ratio(n * m, 2) * (Q(n - 1, m - 1, k) - Q(n, m, k)) +
                   Rat(n * m) * Q(n, m, k);
        ++rows;
        if (lhs1 != rhs)
          return fail_report("BC2 intertwining (H) fails at n=" +
                             std::to_string(n) + ", m=" + std::to_string(m) +
                             ", k=" + std::to_string(k));
        if (lhs2 != rhs)
          return fail_report("BC2 intertwining (H~) fails at n=" +
                             std::to_string(n) + ", m=" + std::to_string(m) +
                             ", k=" + std::to_string(k));
      }
  return pass_report(rows, "both BC2 Hamiltonians intertwine with Q exactly");
}

VerifyReport verify_G2(long bound, bool perturb) {
  // 6-tuple states (n,m,i,j,k,l) with k <= i ^ j, i v j <= l, l <= n ^ m,
  // i + j <= n.
  std::vector<State> pis;
  for (long n = 0; n <= bound; ++n)
    for (long m = 0; m <= bound; ++m)
      for (long l = 0; l <= std::min(n, m); ++l)
        for (long i = 0; i <= l; ++i)
          for (long j = 0; j <= l; ++j) {
            if (i + j > n) continue;
            for (long k = 0; k <= std::min(i, j); ++k)
              pis.push_back({n, m, i, j, k, l});
          }
  StateSpace P(std::move(pis));

  std::vector<State> nms;
  for (long n = 0; n <= bound; ++n)
    for (long m = 0; m <= bound; ++m) nms.push_back({n, m});
  StateSpace S(std::move(nms));

  SparseOperator H(S.size());
  for (int s = 0; s < S.size(); ++s) {
    long n = S.state(s)[0], m = S.state(s)[1];
    if (n > 0) H.add_off(s, S.index_of({n - 1, m}), Rat(n * n));
    if (m > 0) H.add_off(s, S.index_of({n, m - 1}), Rat(3 * m * m));
    H.diag[s] = Rat(-(n * n) - 3 * m * m + 3 * n * m);
  }

  SparseOperator G(P.size());
  for (int p = 0; p < P.size(); ++p) {
    auto v = P.state(p);
    long n = v[0], m = v[1], i = v[2], j = v[3], k = v[4], l = v[5];
    struct Move {
      int coord;
      long rate;
    };
    Move moves[] = {{0, (n - l) * (n - i - j)}, {1, 3 * m * (m - l)},
                    {5, 3 * (l - i) * (l - j)}, {2, i * (i - k)},
                    {3, j * (j - k)},           {4, k * k}};
    Rat total(0);
    for (const auto& mv : moves) {
      if (mv.rate == 0) continue;
      if (mv.rate < 0) throw std::logic_error("verify_G2: negative rate");
      State w = v;
      --w[mv.coord];
      int t = P.index_of(w);
      if (t < 0) throw std::logic_error("verify_G2: move leaves the space");
      G.add_off(p, t, Rat(mv.rate));
      total += mv.rate;
    }
    G.diag[p] = -total;
  }

  RatMatrix Lam(S.size(), P.size());
  for (int p = 0; p < P.size(); ++p) {
    auto v = P.state(p);
    Int w = weight_G2(v[0], v[1], v[2], v[3], v[4], v[5]);
    if (perturb && p == 0) w += 1;
    if (w != 0) Lam.add(S.index_of({v[0], v[1]}), p, Rat(w));
  }

  RatMatrix lhs = H.to_matrix().multiply(Lam);
  RatMatrix rhs = Lam.multiply(G.to_matrix());
  if (auto d = lhs.first_difference(rhs))
    return fail_report("H^{G_2} Lambda != Lambda G at row (n,m)=" +
                       state_str(S.state(d->first)));
  // The row sums reproduce G_2(n,m).
  std::vector<Rat> ones(P.size(), Rat(1));
  auto G2v = Lam.apply(ones);
  for (int s = 0; s < S.size(); ++s)
    if (G2v[s] != Rat(g2_coeff(S.state(s)[0], S.state(s)[1])))
      return fail_report("Lambda row sum != G_2 at " + state_str(S.state(s)));
  return pass_report(S.size(), "G_2 intertwining exact");
}

}  // namespace

VerifyReport verify_root_system(RootSystem which, long bound, bool perturb) {
  switch (which) {
    case RootSystem::B2:
      return verify_B(2, bound, perturb);
    case RootSystem::B3:
      return verify_B(3, bound, perturb);
    case RootSystem::BC1:
      return verify_BC1(std::max(bound, 8L), perturb);
    case RootSystem::BC2:
      return verify_BC2(bound, perturb);
    case RootSystem::G2:
      return verify_G2(bound, perturb);
  }
  throw std::logic_error("verify_root_system: unreachable");
}

std::vector<std::vector<double>> expm(const std::vector<std::vector<double>>& A,
                                      double t) {
  int n = static_cast<int>(A.size());
  Eigen::MatrixXd M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = A[i][j] * t;
  Eigen::MatrixXd E = M.exp();
  std::vector<std::vector<double>> out(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i][j] = E(i, j);
  return out;
}

VerifyReport verify_projection_exact(const Shape& lambda, const Shape& mu,
                                     const AlphaSpec& alpha,
                                     const State& sigma0, double t,
                                     double tol) {
  // Full chain on the union of fibers below sigma0.
  StateSpace P = fiber_union_space(lambda, mu, alpha, sigma0);
  CellSet lam_cells = CellSet::from_shape(lambda);
  SparseOperator G = generator_on(P, lam_cells, alpha);

  BuiltOperator Hb = build_H(lambda, mu, alpha, sigma0);
  CoeffEngine eng(alpha);
  std::vector<Rat> A(Hb.space.size());
  for (int s = 0; s < Hb.space.size(); ++s)
    A[s] = coeff_general_shape(lambda, mu, alpha, Hb.space.state(s));
  SparseOperator L = doob_transform(Hb.op, A, &Hb.space);

  // Initial law K_{sigma0} on the fiber.
  std::vector<double> init(P.size(), 0.0);
  {
    Rat Asum = A[Hb.space.index_of(sigma0)];
    for (const PlaneArray& pi : enumerate_fiber(lambda, mu, alpha, sigma0)) {
      Rat w = weight_general(lambda, mu, alpha, pi) / Asum;
      init[P.index_of(pi.finite_values())] = to_double(w);
    }
  }

  CellSet skew = CellSet::skew(lambda, mu);
  std::vector<int> restrict_idx(P.size());
  for (int p = 0; p < P.size(); ++p) {
    State sig(skew.num_cells());
    for (int o = 0; o < skew.num_cells(); ++o)
      sig[o] = P.state(p)[lam_cells.ordinal_of(skew.cell(o))];
    restrict_idx[p] = Hb.space.index_of(sig);
    if (restrict_idx[p] < 0)
      return fail_report("restriction escapes the sigma space");
  }

  auto Gexp = expm(G.to_matrix().to_dense_double(), t);
  std::vector<double> marginal(Hb.space.size(), 0.0);
  for (int p = 0; p < P.size(); ++p) {
    if (init[p] == 0.0) continue;
    for (int q = 0; q < P.size(); ++q)
      marginal[restrict_idx[q]] += init[p] * Gexp[p][q];
  }

  auto Lexp = expm(L.to_matrix().to_dense_double(), t);
  int s0 = Hb.space.index_of(sigma0);
  double sup = 0.0;
  for (int s = 0; s < Hb.space.size(); ++s)
    sup = std::max(sup, std::abs(marginal[s] - Lexp[s0][s]));
  std::ostringstream os;
  os << "sup |marginal - Doob| = " << sup << " over " << Hb.space.size()
     << " boundary states (" << P.size() << " full states)";
  VerifyReport rep;
  rep.pass = sup <= tol;
  rep.rows_checked = Hb.space.size();
  rep.detail = os.str();
  return rep;
}

VerifyReport verify_first_row_bose(const Shape& lambda, int N) {
  long width = lambda.row(1);
  Shape row_shape({width});
  State roof(static_cast<size_t>(width), N);
  BuiltOperator Gr = build_G(row_shape, Shape(), AlphaSpec(), roof);
  BuiltOperator R = build_R_bose(N, width);

  auto to_multiset = [&](const State& row) {
    State x(N);
    for (int k = 0; k < N; ++k) {
      long cnt = 0;
      for (long v : row)
        if (v <= k) ++cnt;
      x[k] = cnt;
    }
    return x;
  };

  for (int s = 0; s < Gr.space.size(); ++s) {
    State x = to_multiset(Gr.space.state(s));
    int xr = R.space.index_of(x);
    if (xr < 0) return fail_report("multiset image missing in R space");
    std::map<State, Rat> gm, rm;
    for (const auto& [j, rate] : Gr.op.off[s]) {
      State y = to_multiset(Gr.space.state(j));
      gm[y] += rate;
    }
    for (const auto& [j, rate] : R.op.off[xr]) rm[R.space.state(j)] += rate;
    if (gm != rm)
      return fail_report("first-row marginal rates differ from R at x=" +
                         state_str(x));
    if (Gr.op.diag[s] != R.op.diag[xr])
      return fail_report("first-row marginal diagonal differs at x=" +
                         state_str(x));
  }
  return pass_report(Gr.space.size(),
                     "first-row multiset marginal equals the rank chain R");
}

}  // namespace whittaker
