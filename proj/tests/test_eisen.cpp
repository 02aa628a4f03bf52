#include <doctest.h>

#include <random>

#include "eiscong/eisen.hpp"
#include "eiscong/errors.hpp"
#include "random_unimodular.hpp"

using namespace eiscong;

namespace {
HalfIntegralMatrix pad(const HalfIntegralMatrix& T) {
  IntMat m;
  m.n = T.size() + 1;
  for (int i = 0; i < T.size(); ++i)
    for (int j = 0; j < T.size(); ++j) m(i, j) = T.doubled(i, j);
  return HalfIntegralMatrix::from_doubled(m);
}

// random PSD 2x2, possibly singular
HalfIntegralMatrix random_psd2(std::mt19937& rng) {
  while (true) {
    const long a = rng() % 5, c = rng() % 5, b = static_cast<long>(rng() % 9) - 4;
    const auto T = HalfIntegralMatrix::from_doubled(std::vector<std::vector<std::int64_t>>{{2 * a, b}, {b, 2 * c}});
    if (is_psd(T) && rank(T) > 0) return T;
  }
}
}  // namespace

TEST_CASE("normalizing constant") {
  CHECK(Z_const(1, 12) == zeta_neg(12));
  CHECK(Z_const(2, 12) == zeta_neg(12) * zeta_neg(22));
  CHECK(Z_const(3, 12) == Z_const(2, 12));
  CHECK_THROWS_AS(Z_const(2, 5), DomainError);
}

TEST_CASE("context validation") {
  CHECK_THROWS_AS(EisensteinContext(4, 12), DomainError);
  CHECK_THROWS_AS(EisensteinContext(2, 7), DomainError);
  CHECK_THROWS_AS(EisensteinContext(2, 2), DomainError);
  CHECK_NOTHROW(EisensteinContext(3, 4));
  const EisensteinContext E(2, 12);
  CHECK_THROWS_AS(E.coefficient(HalfIntegralMatrix::identity(3)), DomainError);
  CHECK_THROWS_AS(E.coefficient(HalfIntegralMatrix::parse("1,3,1")), DomainError);
  CHECK(E.coefficient(HalfIntegralMatrix::zero(2)) == Z_const(2, 12));
}

TEST_CASE("degree one") {
  const EisensteinContext E(1, 16);
  CHECK(E.coefficient(HalfIntegralMatrix::parse("2")) == 65538);
  for (int k : {8, 10, 12, 16}) {
    const EisensteinContext Ek(1, k);
    for (long t = 1; t <= 50; ++t)
      CHECK(eis_coeff(Ek, HalfIntegralMatrix::parse(std::to_string(t))) == Rational(2 * sigma(k - 1, t)));
  }
}

TEST_CASE("siegel operator") {
  std::mt19937 rng(314159);
  for (int k : {8, 14}) {
    const EisensteinContext E1(1, k), E2(2, k), E3(3, k);
    for (int trial = 0; trial < 20; ++trial) {
      const auto T = random_psd2(rng);
      CHECK(E3.coefficient(pad(T)) == E2.coefficient(T));
    }
    for (long t = 1; t <= 10; ++t) {
      const auto T = HalfIntegralMatrix::parse(std::to_string(t));
      CHECK(E2.coefficient(pad(T)) == zeta_neg(2 * k - 2) * E1.coefficient(T));
    }
  }
}

TEST_CASE("unimodular invariance") {
  std::mt19937 rng(2718);
  const EisensteinContext E(3, 14);
  for (const char* s : {"1,0,0,1,0,1", "1,1,0,1,0,1", "1,1,1,1,0,1", "1,0,0,1,0,0", "2,1,0,1,0,3"}) {
    const auto T = HalfIntegralMatrix::parse(s);
    const Rational a = E.coefficient(T);
    for (int trial = 0; trial < 8; ++trial) CHECK(E.coefficient(transform(T, random_unimodular(3, rng))) == a);
  }
}

TEST_CASE("degree three at the identity") {
  // F_2(I_3, X) = 1 - 16 X^2 (checked against the character-sum oracle in the local series tests)
  const EisensteinContext E(3, 14);
  const Rational X(ipow(2, 14 - 3 - 1));
  // rank 3 in degree 3: empty zeta tail
  CHECK(E.coefficient(HalfIntegralMatrix::identity(3)) == 4 * (1 - 16 * X * X));
}
