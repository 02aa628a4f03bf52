#pragma once

#include <array>
#include <map>
#include <utility>
#include <vector>

#include "eiscong/arith.hpp"
#include "eiscong/quadform.hpp"

namespace eiscong {

// sum of c_{ij} s^i m^j
class BivariatePoly {
 public:
  void add(int i, int j, const Rational& c);
  Rational coefficient(int i, int j) const;
  Rational evaluate(const Rational& s, const Rational& m) const;
  const std::map<std::pair<int, int>, Rational>& terms() const { return terms_; }
  bool operator==(const BivariatePoly&) const = default;

 private:
  std::map<std::pair<int, int>, Rational> terms_;
};

// homogeneous degree-nu form; coefficient i belongs to x^{nu-i} y^i
class BinaryForm {
 public:
  explicit BinaryForm(int degree = 0);
  explicit BinaryForm(std::vector<Rational> coeffs);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Rational& operator[](int i) const { return c_.at(i); }
  Rational& operator[](int i) { return c_.at(i); }
  const std::vector<Rational>& coefficients() const { return c_; }
  Rational evaluate(const Rational& x, const Rational& y) const;
  bool is_zero() const;

  BinaryForm& operator+=(const BinaryForm& o);
  BinaryForm& operator-=(const BinaryForm& o);
  BinaryForm& operator*=(const Rational& s);
  bool operator==(const BinaryForm&) const = default;

 private:
  std::vector<Rational> c_;
};
BinaryForm operator+(BinaryForm a, const BinaryForm& b);
BinaryForm operator-(BinaryForm a, const BinaryForm& b);
BinaryForm operator*(const Rational& s, BinaryForm a);
BinaryForm operator*(const BinaryForm& a, const BinaryForm& b);

BivariatePoly gegenbauer_poly(int d, int nu);
bool generating_check(int d, int nu_max, const Rational& s, const Rational& m);
BinaryForm eval_binary(int d, int nu, std::array<long, 2> R, long n, const HalfIntegralMatrix& N);

}  // namespace eiscong
