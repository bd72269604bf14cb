#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "whittaker/coeff.hpp"
#include "whittaker/intertwine.hpp"

using namespace whittaker;

TEST_CASE("one-step kernel intertwining") {
  CHECK(verify_prop_iq(2, AlphaSpec(), 5).pass);
  CHECK(verify_prop_iq(3, AlphaSpec({1, 0, 2}), 3).pass);
  CHECK(verify_prop_iq(4, AlphaSpec({2, 1, 0, 1}), 2).pass);
  SUBCASE("negative control reports a witness") {
    auto rep = verify_prop_iq(2, AlphaSpec(), 3, true);
    CHECK(!rep.pass);
    CHECK(rep.detail.find("at n=") != std::string::npos);
  }
}

TEST_CASE("Markov-function relation on shapes") {
  CHECK(verify_mf_rpp(Shape({2, 1}), Shape({1}), AlphaSpec(), {3, 3}).pass);
  CHECK(verify_mf_rpp(staircase(3), staircase(2), AlphaSpec(), {2, 2, 2}).pass);
  SUBCASE("trivial when mu is empty") {
    CHECK(verify_mf_rpp(Shape({2, 2}), Shape(), AlphaSpec(), {2, 2, 2, 2}).pass);
  }
  SUBCASE("with non-zero offsets") {
    CHECK(verify_mf_rpp(Shape({3, 3}), Shape({2}), AlphaSpec({1, 1, 0}),
                        {2, 2, 2, 2})
              .pass);
    CHECK(verify_mf_rpp(Shape({3, 2, 1}), Shape({1, 1}), AlphaSpec({2, 1}),
                        {2, 2, 2, 2})
              .pass);
  }
  SUBCASE("negative control") {
    CHECK(!verify_mf_rpp(Shape({2, 1}), Shape({1}), AlphaSpec(), {3, 3}, true).pass);
  }
  SUBCASE("Doob transforms agree between the two routes") {
    CHECK(verify_doob_consistency(2, {3, 3}).pass);
    CHECK(verify_doob_consistency(3, {2, 2, 2}).pass);
  }
  SUBCASE("normalized kernel rows sum to one") {
    Shape lam({2, 1}), mu({1});
    AlphaSpec zero;
    for (long n = 0; n <= 3; ++n)
      for (long m = 0; m <= 3; ++m) {
        Rat A = coeff_general_shape(lam, mu, zero, {n, m});
        Rat total(0);
        for (const auto& pi : enumerate_fiber(lam, mu, zero, {n, m}))
          total += weight_general(lam, mu, zero, pi) / A;
        CHECK(total == 1);
      }
  }
}

TEST_CASE("root-system intertwinings") {
  CHECK(verify_root_system(RootSystem::B2, 3).pass);
  CHECK(verify_root_system(RootSystem::B3, 2).pass);
  CHECK(verify_root_system(RootSystem::BC1, 8).pass);
  CHECK(verify_root_system(RootSystem::BC2, 6).pass);
  CHECK(verify_root_system(RootSystem::G2, 3).pass);
  SUBCASE("negative controls") {
    CHECK(!verify_root_system(RootSystem::B2, 2, true).pass);
    CHECK(!verify_root_system(RootSystem::BC1, 4, true).pass);
    CHECK(!verify_root_system(RootSystem::BC2, 3, true).pass);
    CHECK(!verify_root_system(RootSystem::G2, 2, true).pass);
  }
  CHECK_THROWS(root_system_from_string("E8"));
}

TEST_CASE("exact Markov projection via matrix exponentials") {
  SUBCASE("point mass at t = 0") {
    auto rep = verify_projection_exact(Shape({2, 1}), Shape({1}), AlphaSpec(),
                                       {2, 2}, 0.0);
    CHECK(rep.pass);
  }
  CHECK(verify_projection_exact(Shape({2, 1}), Shape({1}), AlphaSpec(), {2, 2},
                                0.5)
            .pass);
  CHECK(verify_projection_exact(staircase(3), staircase(2), AlphaSpec(),
                                {2, 1, 1}, 0.3)
            .pass);
}

TEST_CASE("first row versus the rank chain") {
  CHECK(verify_first_row_bose(rectangle(3, 3), 2).pass);
  CHECK(verify_first_row_bose(rectangle(2, 4), 3).pass);
  SUBCASE("N = 1 reduces to corner growth at rate 1") {
    BuiltOperator r = build_R_bose(1, 5);
    for (int s = 0; s + 1 < r.space.size(); ++s) {
      CHECK(r.op.off[s].size() == 1);
      CHECK(r.op.off[s][0].second == 1);
    }
    CHECK(verify_first_row_bose(rectangle(1, 5), 1).pass);
  }
  SUBCASE("worked nested-partition state has rates 1,4,6,4,3") {
    NestedPartitions np(rectangle(5, 5),
                        {Shape({1, 1}), Shape({4, 3}), Shape({4, 3, 3, 3})});
    PlaneArray pi = from_nested(np);
    std::multiset<long> rates;
    for (Cell c : pi.cells().cells()) {
      long v = pi.at(c).value();
      long left = pi.at_or_zero({c.i, c.j - 1}).value();
      long up = pi.at_or_zero({c.i - 1, c.j}).value();
      long rate = (v - left) * (v - up);
      if (rate > 0) rates.insert(rate);
    }
    CHECK(rates == std::multiset<long>{1, 3, 4, 4, 6});
  }
}

TEST_CASE("dense matrix exponential sanity") {
  // exp(t [ -1 1; 0 0 ]) row 0 is (e^{-t}, 1-e^{-t}).
  auto E = expm({{-1.0, 1.0}, {0.0, 0.0}}, 0.7);
  CHECK(E[0][0] == doctest::Approx(std::exp(-0.7)).epsilon(1e-12));
  CHECK(E[0][1] == doctest::Approx(1 - std::exp(-0.7)).epsilon(1e-12));
}
