#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <thread>

#include "whittaker/coeff.hpp"
#include "whittaker/laurent.hpp"

using namespace whittaker;

namespace {

// Bump's closed form for r = 2, evaluated independently of the recursion.
Rat bump_a2(long n, long m, long a, long b) {
  Rat num(factorial(n + m + a + b));
  Rat den(factorial(n) * factorial(n + a) * factorial(n + a + b) *
          factorial(m) * factorial(m + b) * factorial(m + a + b));
  return num / den;
}

}  // namespace

TEST_CASE("q_kernel examples") {
  AlphaSpec zero;
  CHECK(q_kernel(2, zero, {1, 1}, {1}) == Rat(1));
  CHECK(q_kernel(2, zero, {1, 1}, {2}) == Rat(0));  // negative factorial
  CHECK(q_kernel(2, AlphaSpec({1, 1}), {1, 1}, {0}) == ratio(1, 12));
}

TEST_CASE("a coefficients") {
  CoeffEngine eng;
  CHECK(eng.a(1, {3}) == ratio(1, 36));
  CHECK(eng.a(2, {1, 1}) == Rat(2));
  SUBCASE("recursion equals Bump's closed form") {
    for (auto [a, b] : {std::pair<long, long>{0, 0}, {1, 1}, {3, 0}}) {
      CoeffEngine e(AlphaSpec({a, b}));
      for (long n = 0; n <= 6; ++n)
        for (long m = 0; m <= 6; ++m)
          CHECK(e.a(2, {n, m}) == bump_a2(n, m, a, b));
    }
  }
  SUBCASE("a_r(0) product formula") {
    for (auto alpha : {std::vector<long>{1}, {1, 2}, {0, 3, 1}, {1, 2, 0, 1}}) {
      int r = static_cast<int>(alpha.size());
      AlphaSpec spec(alpha);
      CoeffEngine e(spec);
      Rat expected(1);
      for (int i = 1; i <= r; ++i)
        for (int j = i; j <= r; ++j)
          expected *= inv_factorial(spec.alpha_range(i, j));
      CHECK(e.a(r, std::vector<long>(r, 0)) == expected);
    }
  }
  SUBCASE("difference equation residual is exactly zero") {
    for (auto alpha : {std::vector<long>{}, {1, 2}, {2, 0, 1}}) {
      AlphaSpec spec(alpha);
      CoeffEngine e(spec);
      for (int r = 1; r <= 3; ++r) {
        std::vector<long> n(r, 0);
        while (true) {
          CHECK(difference_equation_residual(e, r, n) == 0);
          int pos = 0;
          while (pos < r && n[pos] == 3) n[pos++] = 0;
          if (pos == r) break;
          ++n[pos];
        }
      }
    }
  }
  SUBCASE("vanishes below the omega cone") {
    CoeffEngine e(AlphaSpec({-1, -1}));
    // omega boundary is (2, 2); anything below gives zero.
    CHECK(e.a(2, {1, 1}) == 0);
    CHECK(e.a(2, {2, 1}) == 0);
    CHECK(e.a(2, {2, 2}) != 0);
    CHECK(e.a(2, {-1, 4}) == 0);
  }
}

TEST_CASE("normalized coefficients") {
  CoeffEngine eng;
  CHECK(eng.a_normalized(2, {2, 3}) == binomial(5, 2));
  CHECK(eng.a_normalized(3, {1, 1, 1}) == 5);
  CHECK(eng.a_normalized(3, {0, 0, 0}) == 1);
  CHECK(eng.a_normalized(4, {0, 0, 0, 0}) == 1);
  SUBCASE("Pascal relation for A_2") {
    for (long n = 0; n <= 12; ++n)
      for (long m = 0; m <= 12; ++m) {
        Int v = eng.a_normalized(2, {n, m});
        CHECK(v == binomial(n + m, n));
        if (n > 0 && m > 0)
          CHECK(v == eng.a_normalized(2, {n - 1, m}) +
                         eng.a_normalized(2, {n, m - 1}));
      }
  }
  CHECK_THROWS(CoeffEngine(AlphaSpec({1})).a_normalized(1, {1}));
}

TEST_CASE("general shape coefficients") {
  AlphaSpec zero;
  SUBCASE("Vandermonde") {
    CHECK(coeff_general_shape(Shape({2, 1}), Shape({1}), zero, {2, 1}) == 3);
    for (long n = 0; n <= 5; ++n)
      for (long m = 0; m <= 5; ++m)
        CHECK(coeff_general_shape(Shape({2, 1}), Shape({1}), zero, {n, m}) ==
              Rat(binomial(n + m, n)));
  }
  SUBCASE("empty boundary values give weight one") {
    CHECK(coeff_general_shape(Shape({3, 2}), Shape({1}), zero, {0, 0, 0, 0}) == 1);
  }
  SUBCASE("staircase pair reduces to the normalized coefficients") {
    CoeffEngine eng;
    for (int r = 2; r <= 3; ++r) {
      Shape lam = staircase(r), mu = staircase(r - 1);
      std::vector<long> n(r, 0);
      while (true) {
        CHECK(coeff_general_shape(lam, mu, zero, n) ==
              Rat(eng.a_normalized(r, n)));
        int pos = 0;
        while (pos < r && n[pos] == 3) n[pos++] = 0;
        if (pos == r) break;
        ++n[pos];
      }
    }
  }
  SUBCASE("mu outside the interior is rejected") {
    CHECK_THROWS(coeff_general_shape(Shape({2, 1}), Shape({2}), zero, {0, 0}));
  }
}

TEST_CASE("type B coefficients") {
  CHECK(b_coeff(2, {1, 1}) == 3);
  CHECK(b_coeff(2, {0, 0}) == 1);
  CHECK(b_coeff(3, {0, 0, 0}) == 1);
  CHECK(b_coeff(2, {2, 2}) == 19);
  SUBCASE("difference-equation route agrees") {
    for (int r = 2; r <= 3; ++r) {
      std::vector<long> n(r, 0);
      while (true) {
        CHECK(Rat(b_coeff(r, n)) == b_coeff_via_recursion(r, n));
        int pos = 0;
        while (pos < r && n[pos] == 2) n[pos++] = 0;
        if (pos == r) break;
        ++n[pos];
      }
    }
  }
  SUBCASE("zeta(2) Apery recurrence on the diagonal") {
    std::vector<Int> b;
    for (long n = 0; n <= 12; ++n) b.push_back(b_coeff(2, {n, n}));
    CHECK(b[0] == 1);
    CHECK(b[1] == 3);
    for (long n = 2; n <= 12; ++n)
      CHECK(Int(n * n) * b[n] ==
            Int(11 * n * n - 11 * n + 3) * b[n - 1] + Int((n - 1) * (n - 1)) * b[n - 2]);
  }
  SUBCASE("diagonal equals the general-shape family A_{(2,2,1),(1,1)}") {
    for (long n = 0; n <= 3; ++n)
      CHECK(Rat(b_coeff(2, {n, n})) ==
            coeff_general_shape(Shape({2, 2, 1}), Shape({1, 1}), AlphaSpec(),
                                {n, n, n}));
  }
}

TEST_CASE("BC2 Delannoy numbers") {
  CHECK(bc2_coeff(1, 1) == 3);
  CHECK(bc2_coeff(2, 2) == 13);
  CHECK(bc2_coeff(0, 5) == 1);
  SUBCASE("annihilated by both Hamiltonians") {
    for (long n = 0; n <= 8; ++n)
      for (long m = 0; m <= 8; ++m) {
        CHECK(Rat(bc2_coeff(n, m)) == bc2_coeff_via_recursion(n, m, false));
        CHECK(Rat(bc2_coeff(n, m)) == bc2_coeff_via_recursion(n, m, true));
      }
  }
}

TEST_CASE("G2 coefficients via three routes") {
  CHECK(g2_coeff(0, 0) == 1);
  CHECK(g2_coeff(1, 1) == 4);
  CHECK(g2_constant_term(0, 0) == 1);
  CHECK(g2_constant_term(1, 1) == 4);
  for (long n = 0; n <= 3; ++n)
    for (long m = 0; m <= 3; ++m) {
      Int bs = g2_coeff(n, m);
      CHECK(Rat(bs) == g2_coeff_via_recursion(n, m));
      CHECK(bs == g2_constant_term(n, m));
    }
}

TEST_CASE("Laurent polynomial arithmetic") {
  LaurentPoly x = LaurentPoly::monomial(Int(1), {1, 0, 0, 0});
  LaurentPoly xinv = LaurentPoly::monomial(Int(1), {-1, 0, 0, 0});
  LaurentPoly one = LaurentPoly::constant(Int(1));
  CHECK((x * xinv).constant_term() == 1);
  CHECK((x + xinv).pow(2).constant_term() == 2);
  CHECK((one + x).pow(4).coefficient({2, 0, 0, 0}) == 6);
}

TEST_CASE("Apery diagonal") {
  auto seq = apery_diagonal(8);
  CHECK(seq[0] == 1);
  CHECK(seq[1] == 5);
  CHECK(seq[2] == 73);
  for (long n = 0; n <= 8; ++n) CHECK(seq[n] == apery_binomial(n));
}

TEST_CASE("shifted coefficients and permutation invariance") {
  SUBCASE("r = 1 closed form, symmetric in nu") {
    std::vector<Rat> nu{ratio(1, 2), ratio(-1, 2)};
    // alpha_1 = 1; n' = n + 1/2.
    for (long n = 0; n <= 4; ++n) {
      Rat n_shift = Rat(n) + ratio(1, 2);
      CHECK(tilde_a(1, nu, {n_shift}) ==
            inv_factorial(n) * inv_factorial(n + 1));
      CHECK(permutation_invariance_check(1, nu, {n_shift}, {1, 0}));
    }
  }
  SUBCASE("r = 2 trivial invariance at nu = 0") {
    std::vector<Rat> nu{Rat(0), Rat(0), Rat(0)};
    CHECK(permutation_invariance_check(2, nu, {Rat(2), Rat(1)}, {2, 0, 1}));
  }
  SUBCASE("r = 2, alpha = (1,-1): all six permutations agree") {
    // nu = (1/3, -2/3, 1/3).
    std::vector<Rat> nu{ratio(1, 3), ratio(-2, 3), ratio(1, 3)};
    std::vector<std::vector<int>> perms = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                           {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    // Shifted cone S^{2,nu} = (1/3, 2/3) + Z_+^2.
    for (long i = 0; i <= 2; ++i)
      for (long j = 0; j <= 2; ++j) {
        std::vector<Rat> np{Rat(i) + ratio(1, 3), Rat(j) + ratio(2, 3)};
        for (const auto& p : perms)
          CHECK(permutation_invariance_check(2, nu, np, p));
      }
  }
  CHECK_THROWS(tilde_a(1, {Rat(1), Rat(1)}, {Rat(0)}));  // nonzero sum
}

TEST_CASE("coefficient engine is usable from several threads") {
  CoeffEngine eng;
  std::vector<std::thread> pool;
  std::vector<Rat> results(4);
  for (int w = 0; w < 4; ++w)
    pool.emplace_back([&, w] { results[w] = eng.a(3, {3, 3, 3}); });
  for (auto& t : pool) t.join();
  for (int w = 1; w < 4; ++w) CHECK(results[w] == results[0]);
  CHECK(results[0] * Rat(factorial(3) * factorial(3)).get_num() != 0);
}
