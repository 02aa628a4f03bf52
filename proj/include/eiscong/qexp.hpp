#pragma once

#include <cstddef>
#include <vector>

#include "eiscong/arith.hpp"

namespace eiscong {

// a(0) + a(1) q + ... + a(P) q^P of a level-1 form of the given weight
class QExpansion {
 public:
  QExpansion(int weight, std::vector<Rational> coeffs);
  static QExpansion zero(int weight, std::size_t precision);

  int weight() const { return weight_; }
  std::size_t precision() const { return a_.size() - 1; }
  const Rational& operator[](std::size_t n) const;
  const std::vector<Rational>& coefficients() const { return a_; }
  QExpansion truncated(std::size_t P) const;
  bool is_zero() const;

  QExpansion& operator+=(const QExpansion& o);
  QExpansion& operator-=(const QExpansion& o);
  QExpansion& operator*=(const Rational& s);
  bool operator==(const QExpansion&) const = default;

 private:
  int weight_;
  std::vector<Rational> a_;
};
QExpansion operator+(QExpansion a, const QExpansion& b);
QExpansion operator-(QExpansion a, const QExpansion& b);
QExpansion operator*(const Rational& s, QExpansion a);
QExpansion operator*(const QExpansion& a, const QExpansion& b);

int dim_modular(int k);
int dim_cusp(int k);
int sturm_bound(int k);
std::size_t default_precision(int k);

QExpansion eisenstein_qexp(int k, std::size_t P);
QExpansion delta_qexp(std::size_t P);

struct MillerBasis {
  int weight;
  std::vector<QExpansion> modular;  // a(i) = delta_{ij} for i, j < dim M_k
  std::vector<QExpansion> cusp;     // the members with a(0) = 0
};
MillerBasis miller_basis(int k, std::size_t P);

// membership of g in the span of an echelon basis (basis[i] has a(pivot_offset + i) = 1 and zeros at the
// other pivots), decided to the common precision; coords receives the coefficients
bool in_span(const std::vector<QExpansion>& basis, std::size_t pivot_offset, const QExpansion& g,
             std::vector<Rational>* coords = nullptr);

QExpansion hecke_T(long p, const QExpansion& f);
QExpansion hecke_Tm(long m, const QExpansion& f);

class EigenBasis {
 public:
  EigenBasis(int weight, std::vector<QExpansion> forms);
  int weight() const { return weight_; }
  std::size_t size() const { return forms_.size(); }
  const QExpansion& form(std::size_t j) const { return forms_.at(j); }
  const std::vector<QExpansion>& forms() const { return forms_; }
  // eigenvalue of T^{(m)}: product of a_j(p)^e over m = prod p^e
  Rational eigenvalue(std::size_t j, long m) const;

 private:
  int weight_;
  std::vector<QExpansion> forms_;
};

EigenBasis eigen_basis(int k, std::size_t P = 0);

QExpansion cohen_series(int k, int r, std::size_t P);

// c with g = c f_j + (other eigenforms)
Rational petersson_ratio(const EigenBasis& basis, std::size_t j, const QExpansion& g);

Rational std_L_value(int k, int nu, const EigenBasis& basis, std::size_t j);
Rational std_L_value(int k, int nu, const QExpansion& f);

}  // namespace eiscong
