#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "eiscong/arith.hpp"
#include "eiscong/quadform.hpp"

namespace eiscong {

// finitely supported sum of c_e X^e
class LaurentPolyX {
 public:
  LaurentPolyX() = default;
  LaurentPolyX(std::initializer_list<std::pair<const int, Rational>> terms);
  static LaurentPolyX from_coefficients(const std::vector<Rational>& c);  // c[i] X^i
  static LaurentPolyX monomial(int e, const Rational& c);

  Rational coefficient(int e) const;
  const std::map<int, Rational>& terms() const { return terms_; }
  int degree() const;     // highest exponent, -1 for zero
  int low_degree() const; // lowest exponent, 0 for zero
  bool is_zero() const { return terms_.empty(); }
  Rational evaluate(const Rational& X) const;
  LaurentPolyX truncated(int max_exponent) const;

  LaurentPolyX& operator+=(const LaurentPolyX& o);
  LaurentPolyX& operator-=(const LaurentPolyX& o);
  bool operator==(const LaurentPolyX&) const = default;

  // exact division; throws InvariantViolation on a nonzero remainder
  LaurentPolyX divide_exact(const LaurentPolyX& d) const;

 private:
  void add(int e, const Rational& c);
  std::map<int, Rational> terms_;
};
LaurentPolyX operator+(LaurentPolyX a, const LaurentPolyX& b);
LaurentPolyX operator-(LaurentPolyX a, const LaurentPolyX& b);
LaurentPolyX operator*(const LaurentPolyX& a, const LaurentPolyX& b);

class SiegelSeriesPolynomial {
 public:
  explicit SiegelSeriesPolynomial(std::vector<Integer> coeffs);
  const std::vector<Integer>& coefficients() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Rational evaluate(const Rational& X) const;
  LaurentPolyX as_laurent() const;
  bool operator==(const SiegelSeriesPolynomial&) const = default;

 private:
  std::vector<Integer> c_;
};

int chi_p(long p, const Rational& a);

struct GammaFactor {
  LaurentPolyX numerator;
  LaurentPolyX denominator;  // 1 for odd size
};
GammaFactor gamma_p(long p, const HalfIntegralMatrix& B);

SiegelSeriesPolynomial local_F(long p, const HalfIntegralMatrix& B);
Rational local_F_star(long p, const HalfIntegralMatrix& T, const Rational& X);

struct OracleOptions {
  std::uint64_t budget = std::uint64_t{1} << 24;
  unsigned threads = 0;  // 0: hardware concurrency
};

// coefficients of X^0..X^j_max of b_p(B, X) from the character sum, one R per kernel lattice
LaurentPolyX oracle_bp(long p, const HalfIntegralMatrix& B, int j_max, const OracleOptions& opt = {});
// same sum over every R in Sym_n(p^{-j_max} Z / Z); only for tiny cases
LaurentPolyX oracle_bp_naive(long p, const HalfIntegralMatrix& B, int j_max, const OracleOptions& opt = {});

}  // namespace eiscong
