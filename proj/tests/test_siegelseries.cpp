#include <doctest.h>

#include <random>

#include "eiscong/errors.hpp"
#include "eiscong/siegelseries.hpp"
#include "oracle_support.hpp"
#include "random_unimodular.hpp"

using namespace eiscong;

namespace {
std::vector<Integer> coeffs(long p, const char* T) { return local_F(p, HalfIntegralMatrix::parse(T)).coefficients(); }
}  // namespace

TEST_CASE("laurent polynomials") {
  const LaurentPolyX a{{0, Rational(1)}, {1, Rational(-2)}}, b{{-1, Rational(3)}, {2, Rational(1)}};
  const LaurentPolyX ab = a * b;
  CHECK(ab.coefficient(-1) == 3);
  CHECK(ab.coefficient(0) == -6);
  CHECK(ab.low_degree() == -1);
  CHECK(ab.degree() == 3);
  CHECK(ab.evaluate(Rational(2)) == a.evaluate(Rational(2)) * b.evaluate(Rational(2)));
  CHECK(ab.divide_exact(a) == b);
  CHECK_THROWS_AS((ab + LaurentPolyX{{0, Rational(1)}}).divide_exact(a), InvariantViolation);
  CHECK((a - a).is_zero());
  CHECK(ab.truncated(0).degree() == 0);
}

TEST_CASE("local characters") {
  CHECK(chi_p(2, Rational(-1)) == 0);
  CHECK(chi_p(2, Rational(17)) == 1);
  CHECK(chi_p(2, Rational(5)) == -1);
  CHECK(chi_p(2, Rational(3)) == 0);
  CHECK(chi_p(2, Rational(8)) == 0);
  CHECK(chi_p(3, Rational(4)) == 1);
  CHECK(chi_p(3, Rational(2)) == -1);
  CHECK(chi_p(3, Rational(6)) == 0);
  CHECK(chi_p(5, Rational(1, 4)) == 1);
  CHECK(chi_p(3, Rational(18)) == -1);
}

TEST_CASE("gamma factor") {
  const GammaFactor g1 = gamma_p(3, HalfIntegralMatrix::parse("1"));
  CHECK(g1.numerator == LaurentPolyX{{0, Rational(1)}, {1, Rational(-1)}});
  CHECK(g1.denominator == LaurentPolyX{{0, Rational(1)}});
  const GammaFactor g2 = gamma_p(5, HalfIntegralMatrix::identity(2));
  CHECK(g2.denominator == LaurentPolyX{{0, Rational(1)}, {1, Rational(-5)}});
  CHECK(gamma_p(2, HalfIntegralMatrix::identity(3)).numerator.degree() == 3);
}

TEST_CASE("known local polynomials") {
  CHECK(coeffs(2, "1") == std::vector<Integer>{1});
  CHECK(coeffs(3, "9") == std::vector<Integer>{1, 3, 9});
  CHECK(coeffs(2, "4") == std::vector<Integer>{1, 2, 4});
  CHECK(coeffs(2, "1,0,1") == std::vector<Integer>{1});
  CHECK(coeffs(2, "1,0,0,1,0,1") == std::vector<Integer>{1, 0, -16});
  CHECK(coeffs(2, "1,0,16") == std::vector<Integer>{1, 0, 8, 0, 64});
  CHECK_THROWS_AS(local_F(4, HalfIntegralMatrix::parse("1")), DomainError);
  CHECK_THROWS_AS(local_F(2, HalfIntegralMatrix::parse("1,2,1")), DomainError);
}

TEST_CASE("degree one: F_p((t), X) = sum (pX)^i") {
  for (long p : {2L, 3L, 5L, 7L})
    for (long t = 1; t <= 60; ++t) {
      const auto F = local_F(p, HalfIntegralMatrix::parse(std::to_string(t)));
      const int e = ord_p(Integer(t), p);
      REQUIRE(F.degree() == e);
      for (int i = 0; i <= e; ++i) CHECK(F.coefficients()[i] == ipow(p, i));
    }
}

TEST_CASE("sum of two squares style identity") {
  // 2 prod_{p | 2t} F*_p((t), p^{k-2}) = 2 sigma_{k-1}(t)
  for (int k : {8, 12})
    for (long t = 1; t <= 30; ++t) {
      Rational prod = 2;
      for (auto [p, e] : factorize(2 * t))
        prod *= local_F_star(p, HalfIntegralMatrix::parse(std::to_string(t)), Rational(ipow(p, k - 2)));
      CHECK(prod == Rational(2 * sigma(k - 1, t)));
    }
}

TEST_CASE("local_F_star uses the nondegenerate part") {
  const auto T = HalfIntegralMatrix::parse("1,0,0,1,0,0");
  CHECK(local_F_star(2, T, Rational(3)) == local_F(2, HalfIntegralMatrix::identity(2)).evaluate(Rational(3)));
  CHECK_THROWS_AS(local_F_star(2, HalfIntegralMatrix::zero(2), Rational(1)), DomainError);
}

TEST_CASE("GL invariance") {
  std::mt19937 rng(99);
  for (const char* s : {"1,1,3", "2,1,2", "1,0,4", "1,1,0,2,1,3", "1,0,0,1,0,1", "2,2,1,2,0,3"}) {
    const auto B = HalfIntegralMatrix::parse(s);
    for (int trial = 0; trial < 6; ++trial) {
      const auto B2 = transform(B, random_unimodular(B.size(), rng));
      for (long p : {2L, 3L}) CHECK(local_F(p, B2) == local_F(p, B));
    }
  }
}

TEST_CASE("oracle equivalence, n = 1 and 2, p = 2") {
  for (int n : {1, 2})
    for (const auto& B : reduced_forms(n, 40)) {
      const int J = local_F(2, B).degree() + n + 2;
      CHECK(oracle_bp(2, B, J) == gamma_times_F(2, B, J));
    }
}

TEST_CASE("oracle equivalence, n = 3 to X^3") {
  for (const char* s : {"1,0,0,1,0,1", "1,1,1,1,1,1", "1,0,0,1,0,2", "1,1,0,1,0,1"}) {
    const auto B = HalfIntegralMatrix::parse(s);
    CHECK(oracle_bp(2, B, 3) == gamma_times_F(2, B, 3));
  }
  const auto I3 = HalfIntegralMatrix::identity(3);
  CHECK(oracle_bp(3, I3, 3) == gamma_times_F(3, I3, 3));
}

TEST_CASE("naive oracle agrees with the leveled one") {
  for (const char* s : {"1", "3", "1,0,1", "1,1,1", "1,0,0,1,0,1"}) {
    const auto B = HalfIntegralMatrix::parse(s);
    const int J = B.size() == 3 ? 2 : 3;
    CHECK(oracle_bp_naive(2, B, J) == oracle_bp(2, B, J));
  }
  CHECK(oracle_bp_naive(3, HalfIntegralMatrix::parse("1,0,1"), 2) == oracle_bp(3, HalfIntegralMatrix::parse("1,0,1"), 2));
}

TEST_CASE("oracle budget") {
  OracleOptions tiny;
  tiny.budget = 10;
  CHECK_THROWS_AS(oracle_bp(2, HalfIntegralMatrix::identity(3), 4, tiny), BudgetExceeded);
  CHECK_THROWS_AS(oracle_bp_naive(2, HalfIntegralMatrix::identity(3), 4, tiny), BudgetExceeded);
}
