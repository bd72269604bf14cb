#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "whittaker/coeff.hpp"
#include "whittaker/hitting.hpp"
#include "whittaker/operators.hpp"
#include "whittaker/sim.hpp"

using namespace whittaker;

TEST_CASE("single-cell chain absorbs like Exp(1)") {
  double sum = 0.0;
  const long reps = 100000;
  for (long rep = 0; rep < reps; ++rep) {
    SimConfig cfg;
    cfg.lambda = Shape({1});
    cfg.init_all = 1;
    cfg.seed = 21;
    PathRecord rec = simulate(cfg, rep);
    CHECK(rec.absorbed);
    sum += rec.final_time;
  }
  CHECK(std::abs(sum / reps - 1.0) < 0.01);
}

TEST_CASE("first-event law matches the printed rates") {
  const long reps = 100000;
  std::map<std::pair<int, int>, long> counts;
  for (long rep = 0; rep < reps; ++rep) {
    SimConfig cfg;
    cfg.lambda = Shape({2, 1});
    cfg.init_values = std::vector<long>{2, 4, 3};
    cfg.seed = 31;
    PathRecord rec = simulate(cfg, rep);
    REQUIRE(!rec.events.empty());
    counts[{rec.events[0].cell.i, rec.events[0].cell.j}]++;
  }
  double stat = 0.0;
  auto add = [&](int i, int j, double expected) {
    double o = static_cast<double>(counts[{i, j}]);
    stat += (o - expected) * (o - expected) / expected;
  };
  add(1, 1, reps * 4.0 / 15.0);
  add(1, 2, reps * 8.0 / 15.0);
  add(2, 1, reps * 3.0 / 15.0);
  CHECK(chi2_survival(stat, 2) > 0.001);
}

TEST_CASE("restriction shares the event stream exactly") {
  SimConfig big;
  big.lambda = Shape({3, 2});
  big.init_all = 4;
  big.seed = 7;
  PathRecord rb = simulate(big);
  SimConfig small = big;
  small.lambda = Shape({2, 1});
  PathRecord rs = simulate(small);
  Shape mu({2, 1});
  std::vector<PathEvent> filtered;
  for (const auto& e : rb.events)
    if (mu.contains(e.cell)) filtered.push_back(e);
  REQUIRE(filtered.size() == rs.events.size());
  for (size_t i = 0; i < filtered.size(); ++i) {
    CHECK(filtered[i].time == rs.events[i].time);
    CHECK(filtered[i].cell == rs.events[i].cell);
    CHECK(filtered[i].new_value == rs.events[i].new_value);
  }
}

TEST_CASE("corner-growth representation replays the same events") {
  for (std::uint64_t seed : {99ULL, 100ULL, 101ULL}) {
    SimConfig cfg;
    cfg.lambda = Shape({3, 3, 2});
    cfg.init_all = 3;
    cfg.seed = seed;
    PathRecord cellwise = simulate(cfg);
    PathRecord nested =
        simulate_corner_growth(Shape({3, 3, 2}), 3, StopRule::absorption(), seed);
    REQUIRE(cellwise.events.size() == nested.events.size());
    for (size_t i = 0; i < cellwise.events.size(); ++i) {
      CHECK(cellwise.events[i].time == nested.events[i].time);
      CHECK(cellwise.events[i].cell == nested.events[i].cell);
    }
    CHECK(cellwise.final_values == nested.final_values);
  }
}

TEST_CASE("exact K sampling") {
  SUBCASE("sigma = (1,1) on the Vandermonde pair is a fair coin") {
    long c0 = 0;
    const long reps = 20000;
    for (long rep = 0; rep < reps; ++rep) {
      PlaneArray pi = sample_K(Shape({2, 1}), Shape({1}), AlphaSpec(), {1, 1}, 5, rep);
      if (pi.at({1, 1}).value() == 0) ++c0;
    }
    double p = static_cast<double>(c0) / reps;
    CHECK(std::abs(p - 0.5) < 3.0 * std::sqrt(0.25 / reps));
  }
  SUBCASE("sigma = 0 is deterministic") {
    PlaneArray pi = sample_K(staircase(3), staircase(2), AlphaSpec(), {0, 0, 0}, 1, 0);
    for (Cell c : pi.cells().cells()) CHECK(pi.at(c).value() == 0);
  }
  SUBCASE("empirical fiber frequencies match the exact weights (3 sigma)") {
    Shape lam = staircase(3), mu = staircase(2);
    std::vector<long> sigma{2, 2, 2};
    AlphaSpec zero;
    auto fiber = enumerate_fiber(lam, mu, zero, sigma);
    Rat A = coeff_general_shape(lam, mu, zero, sigma);
    std::map<std::vector<long>, long> counts;
    const long reps = 100000;
    for (long rep = 0; rep < reps; ++rep)
      counts[sample_K(lam, mu, zero, sigma, 77, rep).finite_values()]++;
    for (const auto& pi : fiber) {
      double p = to_double(weight_general(lam, mu, zero, pi) / A);
      double se = std::sqrt(p * (1 - p) / reps);
      double freq = static_cast<double>(counts[pi.finite_values()]) / reps;
      CHECK(std::abs(freq - p) < 3.5 * se + 1e-12);
    }
  }
  SUBCASE("general-shape sampler refuses huge fibers") {
    CHECK_THROWS(sample_K(Shape({4, 4, 4, 4}), Shape({3, 3, 3}), AlphaSpec(),
                          {9, 9, 9, 9, 9, 9, 9}, 1, 0, 10));
  }
}

TEST_CASE("conditional law of the interior given the boundary") {
  // Simulate the full staircase chain from K_{(2,2)} and check the interior
  // frequency against K at a fixed later time, conditionally on the most
  // frequent boundary value.
  Shape lam({2, 1}), mu({1});
  AlphaSpec zero;
  const long reps = 100000;
  const double t = 0.25;
  std::map<std::pair<std::vector<long>, long>, long> joint;
  std::map<std::vector<long>, long> marg;
  for (long rep = 0; rep < reps; ++rep) {
    SimConfig cfg;
    cfg.lambda = lam;
    cfg.init_k_sigma = std::vector<long>{2, 2};
    cfg.stop = StopRule::time_limit(t);
    cfg.seed = 51;
    PathRecord rec = simulate(cfg, rep);
    std::vector<long> boundary{rec.final_values[1], rec.final_values[2]};
    joint[{boundary, rec.final_values[0]}]++;
    marg[boundary]++;
  }
  std::vector<long> top;
  long best = -1;
  for (const auto& [b, c] : marg)
    if (c > best) {
      best = c;
      top = b;
    }
  Rat A = coeff_general_shape(lam, mu, zero, top);
  for (const auto& pi : enumerate_fiber(lam, mu, zero, top)) {
    long k = pi.at({1, 1}).value();
    double p = to_double(weight_general(lam, mu, zero, pi) / A);
    double freq = static_cast<double>(joint[{top, k}]) / best;
    double se = std::sqrt(p * (1 - p) / best);
    CHECK(std::abs(freq - p) < 3.5 * se + 1e-12);
  }
}

TEST_CASE("entrance surrogate") {
  SUBCASE("t = 0 returns the all-N state") {
    PlaneArray pi = entrance_surrogate(Shape({2, 2}), AlphaSpec(), 7, 0.0, 3, 0);
    for (Cell c : pi.cells().cells()) CHECK(pi.at(c).value() == 7);
  }
  SUBCASE("negative alpha starts from omega + N") {
    AlphaSpec alpha({-1, -1});
    PlaneArray pi = entrance_surrogate(staircase(2), alpha, 5, 0.0, 3, 0);
    PlaneArray omega = omega_array(alpha, 2);
    for (Cell c : pi.cells().cells())
      CHECK(pi.at(c).value() == omega.at(c).value() + 5);
  }
  SUBCASE("coupled pair is pointwise dominated") {
    for (long rep = 0; rep < 500; ++rep) {
      auto [lo, hi] =
          entrance_coupled_pair(Shape({2, 2}), AlphaSpec(), 10, 20, 1.0, 11, rep);
      for (Cell c : lo.cells().cells())
        CHECK(lo.at(c).value() <= hi.at(c).value());
    }
  }
  SUBCASE("boundary distribution stabilizes in N (KS diagnostic)") {
    const long reps = 20000;
    std::vector<long> b30, b60;
    for (long rep = 0; rep < reps; ++rep) {
      auto [lo, hi] =
          entrance_coupled_pair(Shape({2, 1}), AlphaSpec(), 30, 60, 2.0, 13, rep);
      b30.push_back(lo.at({1, 2}).value());
      b60.push_back(hi.at({1, 2}).value());
    }
    CHECK(ks_distance(b30, b60) < 0.01);
  }
}

TEST_CASE("uniformization") {
  BuiltOperator h = build_h_toda(1, AlphaSpec(), {5});
  CoeffEngine eng;
  std::vector<Rat> a(h.space.size());
  for (int s = 0; s < h.space.size(); ++s) a[s] = eng.a(1, h.space.state(s));
  SparseOperator L = doob_transform(h.op, a, &h.space);
  SUBCASE("p_t(1,0) = 1 - e^{-t}") {
    auto p = transient_probs(L, h.space.index_of({1}), 0.7);
    CHECK(std::abs(p[h.space.index_of({0})] - (1 - std::exp(-0.7))) < 1e-12);
  }
  SUBCASE("rows are probability vectors") {
    auto p = transient_probs(L, h.space.index_of({5}), 1.3);
    double sum = 0.0;
    for (double v : p) {
      CHECK(v >= -1e-15);
      sum += v;
    }
    CHECK(std::abs(sum - 1.0) < 1e-12);
  }
  SUBCASE("matches the spectral formula") {
    for (double t : {0.1, 1.0})
      for (long n = 0; n <= 5; ++n) {
        auto p = transient_probs(L, h.space.index_of({5}), t);
        CHECK(std::abs(p[h.space.index_of({n})] - transition_1d(5, n, 0, t)) <
              1e-10);
      }
  }
}

TEST_CASE("heightmap rendering") {
  SUBCASE("all-zero array renders black") {
    PlaneArray pi(CellSet::from_shape(rectangle(2, 3)), ExtNat(0));
    std::string pgm = pgm_string(pi, 50);
    CHECK(pgm == "P2\n3 2\n50\n0 0 0\n0 0 0\n");
  }
  SUBCASE("uniform gray for a constant array") {
    PlaneArray pi(CellSet::from_shape(rectangle(2, 2)), ExtNat(50));
    CHECK(pgm_string(pi, 50) == "P2\n2 2\n50\n50 50\n50 50\n");
  }
  SUBCASE("byte-identical across reruns of the same seed") {
    auto run = [] {
      SimConfig cfg;
      cfg.lambda = rectangle(8, 8);
      cfg.init_all = 8;
      cfg.stop = StopRule::cell_zero({8, 1});
      cfg.seed = 42;
      PathRecord rec = simulate(cfg);
      PlaneArray pi(CellSet::from_shape(rectangle(8, 8)), rec.final_values);
      return pgm_string(pi, 8);
    };
    CHECK(run() == run());
  }
}

TEST_CASE("M and R path simulators") {
  SUBCASE("M^1 from 1 is a unit-rate clock") {
    double sum = 0.0;
    const long reps = 20000;
    for (long rep = 0; rep < reps; ++rep)
      sum += simulate_M(1, {1}, StopRule::absorption(), 9, rep).final_time;
    CHECK(std::abs(sum / reps - 1.0) < 0.025);
  }
  SUBCASE("R grows and stays sorted") {
    PathRecord rec = simulate_R(3, {0, 0, 0}, StopRule::time_limit(0.5), 10, 0);
    CHECK(std::is_sorted(rec.final_values.begin(), rec.final_values.end()));
  }
}
