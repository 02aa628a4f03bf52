#pragma once

#include <vector>

#include "eiscong/siegelseries.hpp"

// gamma_p(B) F_p(B) as a power series in X, coefficients X^0..X^J
inline eiscong::LaurentPolyX gamma_times_F(long p, const eiscong::HalfIntegralMatrix& B, int J) {
  using namespace eiscong;
  const GammaFactor g = gamma_p(p, B);
  const LaurentPolyX num = (g.numerator * local_F(p, B).as_laurent()).truncated(J);
  // denominator is 1 or 1 - c X
  const Rational c = -g.denominator.coefficient(1);
  std::vector<Rational> out(J + 1, Rational(0));
  for (int i = 0; i <= J; ++i) out[i] = num.coefficient(i) + (i ? c * out[i - 1] : Rational(0));
  return LaurentPolyX::from_coefficients(out);
}

// Minkowski-reduced even positive definite 2B with det(2B) <= max_det
inline std::vector<eiscong::HalfIntegralMatrix> reduced_forms(int n, long max_det) {
  using namespace eiscong;
  using Rows = std::vector<std::vector<std::int64_t>>;
  std::vector<HalfIntegralMatrix> out;
  if (n == 1) {
    for (long t = 1; 2 * t <= max_det; ++t) out.push_back(HalfIntegralMatrix::from_doubled(Rows{{2 * t}}));
  } else if (n == 2) {
    for (long a = 1; 4 * a * a - a * a <= max_det; ++a)
      for (long c = a; 4 * a * c - a * a <= max_det; ++c)
        for (long b = 0; b <= a; ++b)
          if (4 * a * c - b * b <= max_det) out.push_back(HalfIntegralMatrix::from_doubled(Rows{{2 * a, b}, {b, 2 * c}}));
  } else {
    for (long a = 1; a <= 3; ++a)
      for (long d = a; d <= 4; ++d)
        for (long f = d; f <= 6; ++f)
          for (long b = 0; b <= a; ++b)
            for (long c = -a; c <= a; ++c)
              for (long e = -d; e <= d; ++e) {
                const auto B = HalfIntegralMatrix::from_doubled(Rows{{2 * a, b, c}, {b, 2 * d, e}, {c, e, 2 * f}});
                if (is_pd(B) && B.det_doubled() <= max_det) out.push_back(B);
              }
  }
  return out;
}
