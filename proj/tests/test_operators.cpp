#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "whittaker/coeff.hpp"
#include "whittaker/operators.hpp"

using namespace whittaker;

namespace {

std::map<State, Rat> out_rates(const BuiltOperator& b, const State& s) {
  std::map<State, Rat> m;
  int idx = b.space.index_of(s);
  REQUIRE(idx >= 0);
  for (const auto& [j, r] : b.op.off[idx]) m[b.space.state(j)] = r;
  return m;
}

}  // namespace

TEST_CASE("growth generator rates") {
  SUBCASE("worked (2,1) example") {
    BuiltOperator g = build_G(Shape({2, 1}), Shape(), AlphaSpec(), {2, 4, 3});
    auto rates = out_rates(g, {2, 4, 3});
    CHECK(rates.at({1, 4, 3}) == 4);
    CHECK(rates.at({2, 3, 3}) == 8);
    CHECK(rates.at({2, 4, 2}) == 3);
    CHECK(g.op.is_markov_generator());
  }
  SUBCASE("zero state is absorbing") {
    BuiltOperator g = build_G(Shape({2, 1}), Shape(), AlphaSpec(), {2, 4, 3});
    int z = g.space.index_of({0, 0, 0});
    CHECK(g.op.off[z].empty());
    CHECK(g.op.diag[z] == 0);
  }
  SUBCASE("printed G^2 with offsets") {
    // G^2 = k(k+a) D_k + n(n-k+a+b) D_n + m(m-k+b) D_m at a = b = 1.
    BuiltOperator g =
        build_G(Shape({2, 1}), Shape(), AlphaSpec({1, 1}), {2, 2, 2});
    long k = 1, n = 2, m = 2;
    auto rates = out_rates(g, {k, n, m});
    CHECK(rates.at({0, 2, 2}) == Rat(k * (k + 1)));
    CHECK(rates.at({1, 1, 2}) == Rat(n * (n - k + 2)));
    CHECK(rates.at({1, 2, 1}) == Rat(m * (m - k + 1)));
  }
  SUBCASE("restriction to a sub-shape matches the smaller generator") {
    BuiltOperator big = build_G(Shape({3, 2}), Shape(), AlphaSpec(), {3, 3, 3, 3, 3});
    CellSet mu_cells = CellSet::from_shape(Shape({2, 1}));
    CellSet big_cells = CellSet::from_shape(Shape({3, 2}));
    BuiltOperator small = build_G(Shape({2, 1}), Shape(), AlphaSpec(), {3, 3, 3});
    for (int s = 0; s < big.space.size(); ++s) {
      State restricted;
      for (Cell c : mu_cells.cells())
        restricted.push_back(big.space.state(s)[big_cells.ordinal_of(c)]);
      int t = small.space.index_of(restricted);
      REQUIRE(t >= 0);
      // Rates of moves at mu cells agree entrywise.
      for (const auto& [j, rate] : big.op.off[s]) {
        State target = big.space.state(j);
        for (Cell c : mu_cells.cells()) {
          int o = big_cells.ordinal_of(c);
          if (target[o] != big.space.state(s)[o]) {
            State small_target = restricted;
            small_target[mu_cells.ordinal_of(c)] = target[o];
            auto small_rates = out_rates(small, restricted);
            CHECK(small_rates.at(small_target) == rate);
          }
        }
      }
    }
  }
}

TEST_CASE("corner potential") {
  CHECK(external_corners(Shape({1})) == std::vector<Cell>{{1, 1}});
  CHECK(external_corners(Shape({2, 2})) == std::vector<Cell>{{2, 2}});
  CHECK(external_corners(Shape({3, 1})) ==
        std::vector<Cell>{{1, 3}, {2, 1}});
  SUBCASE("V(sigma) = nm for the Vandermonde pair") {
    CellSet skew = CellSet::skew(Shape({2, 1}), Shape({1}));
    CHECK(corner_potential(Shape({2, 1}), Shape({1}), AlphaSpec(), skew,
                           {4, 3}) == Rat(12));
  }
  SUBCASE("empty mu gives V = 0 and H = G") {
    BuiltOperator h = build_H(Shape({2, 2}), Shape(), AlphaSpec(), {2, 2, 2, 2});
    BuiltOperator g = build_G(Shape({2, 2}), Shape(), AlphaSpec(), {2, 2, 2, 2});
    for (int s = 0; s < h.space.size(); ++s) CHECK(h.op.diag[s] == g.op.diag[s]);
  }
}

TEST_CASE("Doob transform") {
  SUBCASE("r = 2 rates n^3/(n+m)") {
    BuiltOperator h = build_h_toda(2, AlphaSpec(), {3, 3});
    CoeffEngine eng;
    std::vector<Rat> a(h.space.size());
    for (int s = 0; s < h.space.size(); ++s) a[s] = eng.a(2, h.space.state(s));
    SparseOperator L = doob_transform(h.op, a, &h.space);
    CHECK(L.is_markov_generator());
    for (long n = 1; n <= 3; ++n)
      for (long m = 0; m <= 3; ++m) {
        int s = h.space.index_of({n, m});
        for (const auto& [j, rate] : L.off[s]) {
          State t = h.space.state(j);
          if (t[0] == n - 1) CHECK(rate == ratio(n * n * n, n + m));
          if (t[1] == m - 1) CHECK(rate == ratio(m * m * m, n + m));
        }
      }
  }
  SUBCASE("r = 2 with offsets (a,b)") {
    long a = 1, b = 2;
    AlphaSpec alpha({a, b});
    BuiltOperator h = build_h_toda(2, alpha, {3, 3});
    CoeffEngine eng(alpha);
    std::vector<Rat> av(h.space.size());
    for (int s = 0; s < h.space.size(); ++s) av[s] = eng.a(2, h.space.state(s));
    SparseOperator L = doob_transform(h.op, av, &h.space);
    long n = 2, m = 3;
    auto idx = h.space.index_of({n, m});
    for (const auto& [j, rate] : L.off[idx]) {
      State t = h.space.state(j);
      if (t[0] == n - 1)
        CHECK(rate == ratio(n * (n + a) * (n + a + b), n + m + a + b));
      if (t[1] == m - 1)
        CHECK(rate == ratio(m * (m + b) * (m + a + b), n + m + a + b));
    }
  }
  SUBCASE("r = 1 gives n(n+a) D_n") {
    AlphaSpec alpha({2});
    BuiltOperator h = build_h_toda(1, alpha, {4});
    CoeffEngine eng(alpha);
    std::vector<Rat> a(h.space.size());
    for (int s = 0; s < h.space.size(); ++s) a[s] = eng.a(1, h.space.state(s));
    SparseOperator L = doob_transform(h.op, a, &h.space);
    for (long n = 1; n <= 4; ++n) {
      auto idx = h.space.index_of({n});
      CHECK(L.off[idx].at(0).second == Rat(n * (n + 2)));
    }
  }
  SUBCASE("rejects a non-harmonic function with a witness") {
    BuiltOperator h = build_h_toda(1, AlphaSpec(), {3});
    std::vector<Rat> bad(h.space.size(), Rat(1));
    CHECK_THROWS_WITH_AS(doob_transform(h.op, bad, &h.space),
                         doctest::Contains("H h != 0 at state"),
                         std::invalid_argument);
  }
}

TEST_CASE("M^r generator") {
  BuiltOperator m = build_M(2, {3, 3});
  auto rates = out_rates(m, {2, 1});
  CHECK(rates.at({1, 1}) == 2);  // n1 (n1 - n2) = 2
  CHECK(rates.at({2, 0}) == 1);  // n2^2 = 1
  CHECK(m.op.is_markov_generator());
  // Ties freeze the upper coordinate, keeping E_r invariant.
  auto tied = out_rates(m, {2, 2});
  CHECK(tied.count({1, 2}) == 0);
  CHECK(tied.at({2, 1}) == 4);
}

TEST_CASE("rank-driven Poisson system") {
  BuiltOperator r = build_R_bose(2, 4);
  SUBCASE("coincident particles move together at the block rate") {
    // x = (0,0): both ranks are 2; the multiset move has total rate 4.
    auto rates = out_rates(r, {0, 0});
    CHECK(rates.size() == 1);
    CHECK(rates.at({0, 1}) == 4);
  }
  SUBCASE("distinct particles move at ranks 1 and 2") {
    auto rates = out_rates(r, {1, 3});
    CHECK(rates.at({2, 3}) == 1);
    CHECK(rates.at({1, 4}) == 2);
  }
  SUBCASE("delta-Bose eigenfunction with eigenvalue N(N-1)/2") {
    int N = 3;
    for (long x1 = 0; x1 <= 2; ++x1)
      for (long x2 = x1; x2 <= 2; ++x2)
        for (long x3 = x2; x3 <= 2; ++x3) {
          State x{x1, x2, x3};
          Rat lhs = bose_hamiltonian_apply(
              x, [](const State& y) { return bose_eigenfunction(y); });
          CHECK(lhs == Rat(N * (N - 1) / 2) * bose_eigenfunction(x));
        }
  }
  SUBCASE("Doob transform of the Bose Hamiltonian reproduces the rank rates") {
    // Check R(x, x+move) = phi(x+move)/phi(x) * H(x, x+move) on interior states.
    int N = 2;
    BuiltOperator rr = build_R_bose(N, 6);
    for (int s = 0; s < rr.space.size(); ++s) {
      const State& x = rr.space.state(s);
      if (x[N - 1] >= 6) continue;  // keep targets inside the cap
      for (const auto& [j, rate] : rr.op.off[s]) {
        const State& y = rr.space.state(j);
        // Multiplicity of unsorted moves x -> y.
        long mult = 0;
        for (int i = 0; i < N; ++i) {
          State z = x;
          ++z[i];
          std::sort(z.begin(), z.end());
          if (z == y) ++mult;
        }
        CHECK(rate == Rat(mult) * bose_eigenfunction(y) / bose_eigenfunction(x));
      }
    }
  }
}

TEST_CASE("hat transform") {
  SUBCASE("alpha = 0 is the transpose") {
    CellSet cells = CellSet::from_shape(staircase(2));
    PlaneArray pi(cells, {1, 3, 2});
    PlaneArray hat = hat_transform(pi, AlphaSpec());
    CHECK(hat.at({1, 2}).value() == 2);
    CHECK(hat.at({2, 1}).value() == 3);
    CHECK(hat.at({1, 1}).value() == 1);
  }
  SUBCASE("negative alpha lands in the omega = 0 regime") {
    AlphaSpec alpha({-1, -1});
    PlaneArray omega = omega_array(alpha, 2);
    PlaneArray hat = hat_transform(omega, alpha);
    // The absorbing array maps to the zero array of the mirrored chain.
    for (Cell c : hat.cells().cells()) CHECK(hat.at(c).value() == 0);
  }
  SUBCASE("rate equivariance under the mirror, exhaustively") {
    AlphaSpec alpha({1, 0});
    AlphaSpec neg = alpha.negated();
    BuiltOperator g = build_G(staircase(2), Shape(), alpha, {3, 3, 3});
    CellSet cells = CellSet::from_shape(staircase(2));
    for (int s = 0; s < g.space.size(); ++s) {
      PlaneArray pi(cells, g.space.state(s));
      PlaneArray hat = hat_transform(pi, alpha);
      for (const auto& [j, rate] : g.op.off[s]) {
        PlaneArray hat_target =
            hat_transform(PlaneArray(cells, g.space.state(j)), alpha);
        for (Cell c : cells.cells()) {
          if (hat.at(c).value() == hat_target.at(c).value()) continue;
          long v = hat.at(c).value();
          long left = hat.at_or_zero({c.i, c.j - 1}).value();
          long up = hat.at_or_zero({c.i - 1, c.j}).value();
          CHECK(Rat((v - left) * (v - up + neg.beta(c.i, c.j))) == rate);
        }
      }
    }
  }
}

TEST_CASE("commuting A3 operators") {
  auto rep = commuting_A3_check(4);
  CHECK(rep.annihilate);
  CHECK(rep.commute);
  SUBCASE("first operator residual at (1,1,1)") {
    StateSpace space;
    auto ops = build_A3_operators(2, &space);
    CoeffEngine eng;
    std::vector<Rat> A(space.size());
    for (int s = 0; s < space.size(); ++s)
      A[s] = Rat(eng.a_normalized(3, space.state(s)));
    auto res = ops[0].apply(A);
    CHECK(res[space.index_of({1, 1, 1})] == 0);
  }
}

TEST_CASE("type B operators") {
  BuiltOperator g = build_G_B(2, {2, 2});
  CHECK(g.op.is_markov_generator());
  // Diagonal cells jump at half rate.
  CellSet cells = CellSet::shifted_staircase(2);
  int s = g.space.index_of({1, 1, 1, 1});  // pi = 1 everywhere
  bool found_half = false;
  for (const auto& [j, rate] : g.op.off[s]) {
    State t = g.space.state(j);
    if (t[cells.ordinal_of({2, 2})] == 0) {
      CHECK(rate == ratio(1, 2));  // (pi22-pi12)(pi22-pi11)/2 = 0... adjusted below
      found_half = true;
    }
  }
  // pi = (1,1,1,1): b_22 = (1-1)(1-1)/2 = 0, so no such move exists.
  CHECK(!found_half);
  int s2 = g.space.index_of({0, 0, 1, 1});
  auto rates = out_rates(g, {0, 0, 1, 1});
  CHECK(rates.at({0, 0, 0, 1}) == 1);           // cell (1,3): (1-0)(1-0)
  CHECK(rates.at({0, 0, 1, 0}) == ratio(1, 2)); // cell (2,2): (1-0)(1-0)/2
  (void)s2;
}
