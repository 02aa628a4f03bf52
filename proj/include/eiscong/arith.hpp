#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace eiscong {

using Integer = mpz_class;
using Rational = mpq_class;

Rational make_rational(const Integer& num, const Integer& den);
Rational parse_rational(const std::string& s);
std::string to_string(const Integer& x);
std::string to_string(const Rational& x);

// p-adic valuation; zero has no valuation and throws
int ord_p(const Integer& x, long p);
int ord_p(const Rational& x, long p);
bool is_p_unit(const Rational& x, long p);

Integer ipow(long base, unsigned e);
Rational rpow(const Rational& base, int e);
Integer factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);

bool is_prime(long n);
std::vector<std::pair<long, int>> factorize(long n);
std::vector<long> divisors(long n);
int mobius(long n);
Integer sigma(unsigned k, long n);

// Kronecker character attached to a fundamental discriminant (or D = 1)
class DiscriminantChar {
 public:
  DiscriminantChar() = default;
  explicit DiscriminantChar(long D);
  long discriminant() const { return d_; }
  long conductor() const { return d_ < 0 ? -d_ : d_; }
  bool is_trivial() const { return d_ == 1; }
  int operator()(long n) const;
  bool operator==(const DiscriminantChar&) const = default;

 private:
  long d_ = 1;
};

bool is_fundamental_discriminant(long D);

// coefficient * pi^pi_exponent
struct PiRational {
  Rational coefficient;
  int pi_exponent = 0;
};
PiRational operator*(const PiRational& a, const PiRational& b);
PiRational operator/(const PiRational& a, const PiRational& b);
bool operator==(const PiRational& a, const PiRational& b);

Rational bernoulli(unsigned n);
Rational bernoulli_poly(unsigned n, const Rational& x);
Rational zeta_neg(int k);  // zeta(1 - k)
int kronecker(long D, long n);

struct FundamentalDecomposition {
  DiscriminantChar chi;
  long f;
};
FundamentalDecomposition fundamental_decomposition(long M);
// discriminant of Q(sqrt(a)) for a nonzero rational, 1 when a is a square
long quadratic_discriminant(const Rational& a);

Rational gen_bernoulli(unsigned r, const DiscriminantChar& chi);
Rational l_value_neg(unsigned r, const DiscriminantChar& chi);  // L(1 - r, chi)
Rational cohen_H(unsigned r, long N);
Rational pochhammer(const Rational& x, unsigned n);

}  // namespace eiscong
