#include "eiscong/quadform.hpp"

#include <cctype>
#include <cmath>
#include <numeric>

#include "eiscong/errors.hpp"

namespace eiscong {

IntMat IntMat::identity(int n) {
  IntMat m;
  m.n = n;
  for (int i = 0; i < n; ++i) m.a[i][i] = 1;
  return m;
}

IntMat IntMat::transpose() const {
  IntMat t;
  t.n = n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t.a[i][j] = a[j][i];
  return t;
}

Integer IntMat::det() const {
  auto e = [&](int i, int j) { return Integer(static_cast<long>(a[i][j])); };
  switch (n) {
    case 0:
      return 1;
    case 1:
      return e(0, 0);
    case 2:
      return e(0, 0) * e(1, 1) - e(0, 1) * e(1, 0);
    default:
      return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
             e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
  }
}

IntMat operator*(const IntMat& x, const IntMat& y) {
  if (x.n != y.n) throw DomainError("matrix size mismatch");
  IntMat r;
  r.n = x.n;
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) {
      __int128 s = 0;
      for (int k = 0; k < x.n; ++k) s += static_cast<__int128>(x.a[i][k]) * y.a[k][j];
      if (s > INT64_MAX || s < INT64_MIN) throw DomainError("matrix entry overflow");
      r.a[i][j] = static_cast<std::int64_t>(s);
    }
  return r;
}

HalfIntegralMatrix HalfIntegralMatrix::from_doubled(const IntMat& m) {
  if (m.n < 1 || m.n > 3) throw DomainError("matrix size must be 1..3");
  for (int i = 0; i < m.n; ++i) {
    if (m.a[i][i] % 2 != 0) throw DomainError("diagonal of 2T must be even");
    for (int j = 0; j < m.n; ++j)
      if (m.a[i][j] != m.a[j][i]) throw DomainError("2T must be symmetric");
  }
  HalfIntegralMatrix T;
  T.d_ = m;
  return T;
}

HalfIntegralMatrix HalfIntegralMatrix::from_doubled(const std::vector<std::vector<std::int64_t>>& rows) {
  IntMat m;
  m.n = static_cast<int>(rows.size());
  if (m.n < 1 || m.n > 3) throw DomainError("matrix size must be 1..3");
  for (int i = 0; i < m.n; ++i) {
    if (static_cast<int>(rows[i].size()) != m.n) throw DomainError("matrix must be square");
    for (int j = 0; j < m.n; ++j) m.a[i][j] = rows[i][j];
  }
  return from_doubled(m);
}

HalfIntegralMatrix HalfIntegralMatrix::zero(int n) {
  IntMat m;
  m.n = n;
  return from_doubled(m);
}

HalfIntegralMatrix HalfIntegralMatrix::identity(int n) {
  IntMat m = IntMat::identity(n);
  for (int i = 0; i < n; ++i) m.a[i][i] = 2;
  return from_doubled(m);
}

HalfIntegralMatrix HalfIntegralMatrix::parse(std::string_view text) {
  std::vector<std::int64_t> v;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  while (true) {
    skip_ws();
    const std::size_t start = i;
    bool neg = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) neg = text[i++] == '-';
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
      throw ParseError("expected an integer in matrix '" + std::string(text) + "'", i);
    std::int64_t x = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      if (x > (INT64_MAX / 4 - 9) / 10) throw ParseError("integer too large", start);
      x = x * 10 + (text[i++] - '0');
    }
    v.push_back(neg ? -x : x);
    skip_ws();
    if (i == text.size()) break;
    if (text[i] != ',') throw ParseError("expected ',' in matrix '" + std::string(text) + "'", i);
    ++i;
  }
  IntMat m;
  switch (v.size()) {
    case 1:
      m.n = 1;
      m.a[0][0] = 2 * v[0];
      break;
    case 3:
      m.n = 2;
      m.a[0][0] = 2 * v[0];
      m.a[0][1] = m.a[1][0] = v[1];
      m.a[1][1] = 2 * v[2];
      break;
    case 6:
      m.n = 3;
      m.a[0][0] = 2 * v[0];
      m.a[0][1] = m.a[1][0] = v[1];
      m.a[0][2] = m.a[2][0] = v[2];
      m.a[1][1] = 2 * v[3];
      m.a[1][2] = m.a[2][1] = v[4];
      m.a[2][2] = 2 * v[5];
      break;
    default:
      throw ParseError("matrix needs 1, 3 or 6 entries, got " + std::to_string(v.size()), text.size());
  }
  return from_doubled(m);
}

std::string HalfIntegralMatrix::to_string() const {
  std::vector<std::int64_t> v;
  for (int i = 0; i < d_.n; ++i)
    for (int j = i; j < d_.n; ++j) v.push_back(i == j ? d_.a[i][i] / 2 : d_.a[i][j]);
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

Rational HalfIntegralMatrix::entry(int i, int j) const { return make_rational(static_cast<long>(d_(i, j)), 2); }

Rational HalfIntegralMatrix::det() const { return make_rational(det_doubled(), ipow(2, d_.n)); }

HalfIntegralMatrix transform(const HalfIntegralMatrix& T, const IntMat& U) {
  return HalfIntegralMatrix::from_doubled(U * T.doubled() * U.transpose());
}

HalfIntegralMatrix reduce(const HalfIntegralMatrix& T) {
  if (!is_pd(T)) throw DomainError("reduce needs a positive definite matrix");
  IntMat M = T.doubled();
  const int n = M.n;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (M.a[j][j] < M.a[i][i]) {
          std::swap(M.a[i], M.a[j]);
          for (int r = 0; r < n; ++r) std::swap(M.a[r][i], M.a[r][j]);
        }
    // each move strictly lowers the trace
    for (int j = 1; j < n; ++j)
      for (int i = 0; i < j; ++i) {
        if (2 * std::llabs(M.a[i][j]) <= M.a[i][i]) continue;
        const std::int64_t q = (2 * M.a[i][j] + (M.a[i][j] > 0 ? M.a[i][i] : -M.a[i][i])) / (2 * M.a[i][i]);
        IntMat E = IntMat::identity(n);
        E.a[j][i] = -q;
        M = E * M * E.transpose();
        changed = true;
      }
  }
  return HalfIntegralMatrix::from_doubled(M);
}

HalfIntegralMatrix build_T(long n, const HalfIntegralMatrix& N, std::array<long, 2> R) {
  if (N.size() != 2) throw DomainError("build_T needs a 2x2 N");
  IntMat m;
  m.n = 3;
  m.a[0][0] = 2 * n;
  m.a[0][1] = m.a[1][0] = R[0];
  m.a[0][2] = m.a[2][0] = R[1];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m.a[i + 1][j + 1] = N.doubled(i, j);
  return HalfIntegralMatrix::from_doubled(m);
}

IntMat row_hermite(const IntMat& A, IntMat* Uout) {
  IntMat H = A, U = IntMat::identity(A.n);
  auto row_op = [&](IntMat& M, int dst, int src, std::int64_t q) {
    for (int j = 0; j < M.n; ++j) M.a[dst][j] -= q * M.a[src][j];
  };
  int r = 0;
  for (int c = 0; c < H.n && r < H.n; ++c) {
    // Euclid down the column until only row r is nonzero
    while (true) {
      int best = -1;
      for (int i = r; i < H.n; ++i)
        if (H.a[i][c] != 0 && (best < 0 || std::llabs(H.a[i][c]) < std::llabs(H.a[best][c]))) best = i;
      if (best < 0) break;
      std::swap(H.a[r], H.a[best]);
      std::swap(U.a[r], U.a[best]);
      bool done = true;
      for (int i = r + 1; i < H.n; ++i) {
        if (H.a[i][c] == 0) continue;
        const std::int64_t q = H.a[i][c] / H.a[r][c];
        row_op(H, i, r, q);
        row_op(U, i, r, q);
        if (H.a[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (H.a[r][c] != 0) {
      if (H.a[r][c] < 0) {
        for (int j = 0; j < H.n; ++j) {
          H.a[r][j] = -H.a[r][j];
          U.a[r][j] = -U.a[r][j];
        }
      }
      ++r;
    }
  }
  if (Uout) *Uout = U;
  return H;
}

int rank(const HalfIntegralMatrix& T) {
  IntMat H = row_hermite(T.doubled());
  int r = 0;
  for (int i = 0; i < H.n; ++i) {
    bool nz = false;
    for (int j = 0; j < H.n; ++j) nz = nz || H.a[i][j] != 0;
    r += nz;
  }
  return r;
}

namespace {

Integer principal_minor(const IntMat& m, unsigned mask) {
  IntMat s;
  for (int i = 0; i < m.n; ++i) {
    if (!(mask >> i & 1)) continue;
    int cj = 0;
    for (int j = 0; j < m.n; ++j)
      if (mask >> j & 1) s.a[s.n][cj++] = m.a[i][j];
    ++s.n;
  }
  return s.det();
}

}  // namespace

bool is_psd(const HalfIntegralMatrix& T) {
  const int n = T.size();
  for (unsigned mask = 1; mask < (1u << n); ++mask)
    if (principal_minor(T.doubled(), mask) < 0) return false;
  return true;
}

bool is_pd(const HalfIntegralMatrix& T) {
  for (int k = 1; k <= T.size(); ++k)
    if (principal_minor(T.doubled(), (1u << k) - 1) <= 0) return false;
  return true;
}

NondegPart nondeg_part(const HalfIntegralMatrix& T) {
  if (!is_psd(T)) throw DomainError("nondeg_part needs a PSD matrix");
  IntMat U;
  IntMat H = row_hermite(T.doubled(), &U);
  const int m = rank(T);
  if (m == 0) throw DomainError("nondeg_part of the zero matrix");
  // rows m.. of U (2T) vanish, so U (2T) U^t is block diagonal
  IntMat full = U * T.doubled() * U.transpose();
  IntMat red;
  red.n = m;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) red.a[i][j] = full.a[i][j];
  for (int i = 0; i < full.n; ++i)
    for (int j = 0; j < full.n; ++j)
      if ((i >= m || j >= m) && full.a[i][j] != 0) throw InvariantViolation("nondeg_part: block split failed");
  (void)H;
  NondegPart out{HalfIntegralMatrix::from_doubled(red), red.det(), U};
  if (!is_pd(out.reduced)) throw InvariantViolation("nondeg_part: reduced block not positive definite");
  return out;
}

DiscriminantChar chi_star(const HalfIntegralMatrix& T) {
  const int m = rank(T);
  if (m % 2 != 0) throw DomainError("chi_star needs even rank");
  if (m == 0) return DiscriminantChar(1);
  NondegPart np = nondeg_part(T);
  // det(2T~) = 2^m det T~ and 2^m is a square
  Integer a = np.det_doubled;
  if ((m / 2) % 2 == 1) a = -a;
  return DiscriminantChar(quadratic_discriminant(Rational(a)));
}

std::vector<std::array<long, 2>> enumerate_R(long n, const HalfIntegralMatrix& N) {
  if (N.size() != 2 || !is_pd(N)) throw DomainError("enumerate_R needs a positive definite 2x2 N");
  if (n < 1) throw DomainError("enumerate_R needs n >= 1");
  const long a2 = N.doubled(0, 0), b = N.doubled(0, 1), c2 = N.doubled(1, 1);
  // R N^{-1} R^t <= 4n  <=>  c r1^2 - b r1 r2 + a r2^2 <= n (4ac - b^2), scaled by 2 below
  const long bound = n * (a2 * c2 - b * b);
  const long m1 = static_cast<long>(std::sqrt(static_cast<double>(2 * a2 * n))) + 1;
  const long m2 = static_cast<long>(std::sqrt(static_cast<double>(2 * c2 * n))) + 1;
  std::vector<std::array<long, 2>> out;
  for (long r1 = -m1; r1 <= m1; ++r1)
    for (long r2 = -m2; r2 <= m2; ++r2)
      if (c2 * r1 * r1 - 2 * b * r1 * r2 + a2 * r2 * r2 <= 2 * bound) out.push_back({r1, r2});
  return out;
}

}  // namespace eiscong
