#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "eiscong/arith.hpp"

namespace eiscong {

// square integer matrix of size <= 3
struct IntMat {
  int n = 0;
  std::array<std::array<std::int64_t, 3>, 3> a{};

  static IntMat identity(int n);
  std::int64_t& operator()(int i, int j) { return a[i][j]; }
  std::int64_t operator()(int i, int j) const { return a[i][j]; }
  IntMat transpose() const;
  Integer det() const;
  bool operator==(const IntMat&) const = default;
};
IntMat operator*(const IntMat& x, const IntMat& y);

// symmetric n x n half-integral T, stored as the even-diagonal integral matrix 2T
class HalfIntegralMatrix {
 public:
  HalfIntegralMatrix() = default;
  static HalfIntegralMatrix from_doubled(const IntMat& doubled);
  static HalfIntegralMatrix from_doubled(const std::vector<std::vector<std::int64_t>>& rows);
  static HalfIntegralMatrix zero(int n);
  static HalfIntegralMatrix identity(int n);

  // "t" (1x1, T = (t)), "a,b,c" (2x2), "a,b,c,d,e,f" (3x3); see README
  static HalfIntegralMatrix parse(std::string_view text);
  std::string to_string() const;

  int size() const { return d_.n; }
  std::int64_t doubled(int i, int j) const { return d_(i, j); }
  const IntMat& doubled() const { return d_; }
  Rational entry(int i, int j) const;
  Integer det_doubled() const { return d_.det(); }
  Rational det() const;
  bool operator==(const HalfIntegralMatrix&) const = default;
  auto operator<=>(const HalfIntegralMatrix& o) const { return d_.a <=> o.d_.a; }

 private:
  IntMat d_;
};

// U (2T) U^t
HalfIntegralMatrix transform(const HalfIntegralMatrix& T, const IntMat& U);

// size-reduced, diagonal-sorted member of the GL_n(Z) class of a positive definite T (not a canonical form)
HalfIntegralMatrix reduce(const HalfIntegralMatrix& T);

HalfIntegralMatrix build_T(long n, const HalfIntegralMatrix& N, std::array<long, 2> R);

int rank(const HalfIntegralMatrix& T);
bool is_psd(const HalfIntegralMatrix& T);
bool is_pd(const HalfIntegralMatrix& T);

struct NondegPart {
  HalfIntegralMatrix reduced;  // size = rank
  Integer det_doubled;         // det(2 T~)
  IntMat transform;            // U with U (2T) U^t = diag(2T~, 0)
};
NondegPart nondeg_part(const HalfIntegralMatrix& T);

DiscriminantChar chi_star(const HalfIntegralMatrix& T);

std::vector<std::array<long, 2>> enumerate_R(long n, const HalfIntegralMatrix& N);

// unimodular U with U A = H, H upper triangular (row Hermite form)
IntMat row_hermite(const IntMat& A, IntMat* U = nullptr);

}  // namespace eiscong
