#include "eiscong/qexp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>

#include "eiscong/errors.hpp"
#include "eiscong/gegenbauer.hpp"

namespace eiscong {

QExpansion::QExpansion(int weight, std::vector<Rational> coeffs) : weight_(weight), a_(std::move(coeffs)) {
  if (a_.empty()) throw DomainError("q-expansion needs at least a(0)");
}

QExpansion QExpansion::zero(int weight, std::size_t precision) {
  return QExpansion(weight, std::vector<Rational>(precision + 1, Rational(0)));
}

const Rational& QExpansion::operator[](std::size_t n) const {
  if (n >= a_.size())
    throw DomainError("coefficient " + std::to_string(n) + " beyond precision " + std::to_string(precision()));
  return a_[n];
}

QExpansion QExpansion::truncated(std::size_t P) const {
  if (P > precision()) throw DomainError("cannot raise precision by truncation");
  return QExpansion(weight_, std::vector<Rational>(a_.begin(), a_.begin() + static_cast<std::ptrdiff_t>(P + 1)));
}

bool QExpansion::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Rational& c) { return c == 0; });
}

QExpansion& QExpansion::operator+=(const QExpansion& o) {
  if (o.weight_ != weight_) throw DomainError("adding q-expansions of different weight");
  a_.resize(std::min(a_.size(), o.a_.size()));
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

QExpansion& QExpansion::operator-=(const QExpansion& o) {
  if (o.weight_ != weight_) throw DomainError("subtracting q-expansions of different weight");
  a_.resize(std::min(a_.size(), o.a_.size()));
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

QExpansion& QExpansion::operator*=(const Rational& s) {
  for (auto& c : a_) c *= s;
  return *this;
}

QExpansion operator+(QExpansion a, const QExpansion& b) { return a += b; }
QExpansion operator-(QExpansion a, const QExpansion& b) { return a -= b; }
QExpansion operator*(const Rational& s, QExpansion a) { return a *= s; }

QExpansion operator*(const QExpansion& a, const QExpansion& b) {
  const std::size_t P = std::min(a.precision(), b.precision());
  std::vector<Rational> c(P + 1, Rational(0));
  for (std::size_t i = 0; i <= P; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j <= P; ++j) c[i + j] += a[i] * b[j];
  }
  return QExpansion(a.weight() + b.weight(), std::move(c));
}

int dim_modular(int k) {
  if (k < 0 || k % 2 != 0 || k == 2) return 0;
  return k % 12 == 2 ? k / 12 : k / 12 + 1;
}

int dim_cusp(int k) {
  if (k < 12) return 0;
  return dim_modular(k) - 1;
}

int sturm_bound(int k) { return k / 12 + 1; }

std::size_t default_precision(int k) { return static_cast<std::size_t>(std::max(20, 2 * sturm_bound(k))); }

QExpansion eisenstein_qexp(int k, std::size_t P) {
  if (k < 4 || k % 2 != 0) throw DomainError("eisenstein_qexp needs even k >= 4");
  const Rational c = Rational(-2 * k) / bernoulli(static_cast<unsigned>(k));
  std::vector<Rational> a(P + 1);
  a[0] = 1;
  for (std::size_t n = 1; n <= P; ++n) a[n] = c * Rational(sigma(static_cast<unsigned>(k - 1), static_cast<long>(n)));
  return QExpansion(k, std::move(a));
}

QExpansion delta_qexp(std::size_t P) {
  // q prod (1 - q^n)^24
  std::vector<Integer> f(P + 1, Integer(0));
  if (P >= 1) f[1] = 1;
  for (std::size_t n = 1; n <= P; ++n)
    for (int rep = 0; rep < 24; ++rep)
      for (std::size_t i = P; i >= n + 1; --i) f[i] -= f[i - n];
  std::vector<Rational> a(f.begin(), f.end());
  return QExpansion(12, std::move(a));
}

namespace {

QExpansion power(const QExpansion& f, int e, std::size_t P) {
  std::vector<Rational> one(P + 1, Rational(0));
  one[0] = 1;
  QExpansion r(0, std::move(one));
  for (int i = 0; i < e; ++i) r = r * f;
  return r;
}

}  // namespace

MillerBasis miller_basis(int k, std::size_t P) {
  if (k < 0 || k % 2 != 0) throw DomainError("miller_basis needs even k >= 0");
  const int d = dim_modular(k);
  if (P + 1 < static_cast<std::size_t>(d)) throw DomainError("precision too small for the Miller basis");
  MillerBasis mb{k, {}, {}};
  if (d == 0) return mb;
  const QExpansion E4 = eisenstein_qexp(4, P), E6 = eisenstein_qexp(6, P), D = delta_qexp(P);
  std::vector<QExpansion> g;
  for (int i = 0; i < d; ++i) {
    const int rest = k - 12 * i;
    const int b = rest % 4 == 0 ? 0 : 1;
    const int a = (rest - 6 * b) / 4;
    QExpansion f = power(D, i, P) * power(E4, a, P) * power(E6, b, P);
    g.push_back(QExpansion(k, f.coefficients()));
  }
  for (int i = d - 1; i >= 0; --i)
    for (int j = i + 1; j < d; ++j) {
      const Rational c = g[i][j];
      if (c != 0) g[i] -= c * g[j];
    }
  mb.modular = g;
  mb.cusp.assign(g.begin() + 1, g.end());
  return mb;
}

bool in_span(const std::vector<QExpansion>& basis, std::size_t offset, const QExpansion& g,
             std::vector<Rational>* coords) {
  QExpansion r = g;
  std::vector<Rational> c;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    c.push_back(g[offset + i]);
    r -= c.back() * basis[i];
  }
  if (coords) *coords = c;
  return r.is_zero();
}

QExpansion hecke_T(long p, const QExpansion& f) {
  if (!is_prime(p)) throw DomainError("hecke_T needs a prime, got " + std::to_string(p));
  const std::size_t P = f.precision() / static_cast<std::size_t>(p);
  const Rational pk(ipow(p, static_cast<unsigned>(f.weight() - 1)));
  std::vector<Rational> a(P + 1);
  for (std::size_t n = 0; n <= P; ++n) {
    a[n] = f[n * p];
    if (n % p == 0) a[n] += pk * f[n / p];
  }
  return QExpansion(f.weight(), std::move(a));
}

QExpansion hecke_Tm(long m, const QExpansion& f) {
  if (m < 1) throw DomainError("hecke_Tm needs m >= 1");
  QExpansion g = f;
  if (m == 1) return g;
  for (auto [p, e] : factorize(m))
    for (int i = 0; i < e; ++i) g = hecke_T(p, g);
  return g;
}

EigenBasis::EigenBasis(int weight, std::vector<QExpansion> forms) : weight_(weight), forms_(std::move(forms)) {
  for (const auto& f : forms_)
    if (f.precision() < 1 || f[1] != 1) throw InvariantViolation("eigenform not normalized");
}

Rational EigenBasis::eigenvalue(std::size_t j, long m) const {
  if (m < 1) throw DomainError("eigenvalue needs m >= 1");
  const QExpansion& f = form(j);
  Rational v = 1;
  if (m == 1) return v;
  for (auto [p, e] : factorize(m)) v *= rpow(f[static_cast<std::size_t>(p)], e);
  return v;
}

namespace {

using RMatrix = std::vector<std::vector<Rational>>;

// kernel of a square rational matrix
std::vector<std::vector<Rational>> kernel(RMatrix M) {
  const std::size_t n = M.size();
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < n; ++c) {
    std::size_t piv = r;
    while (piv < n && M[piv][c] == 0) ++piv;
    if (piv == n) continue;
    std::swap(M[r], M[piv]);
    const Rational inv = Rational(1) / M[r][c];
    for (auto& x : M[r]) x *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || M[i][c] == 0) continue;
      const Rational f = M[i][c];
      for (std::size_t j = 0; j < n; ++j) M[i][j] -= f * M[r][j];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  std::vector<std::vector<Rational>> out;
  for (std::size_t free = 0; free < n; ++free) {
    if (std::find(pivot_col.begin(), pivot_col.end(), static_cast<int>(free)) != pivot_col.end()) continue;
    std::vector<Rational> v(n, Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -M[i][free];
    out.push_back(v);
  }
  return out;
}

// characteristic polynomial det(xI - A), coefficients low to high (Faddeev-LeVerrier)
std::vector<Rational> charpoly(const RMatrix& A) {
  const std::size_t n = A.size();
  std::vector<Rational> c(n + 1, Rational(0));
  c[n] = 1;
  RMatrix M(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t k = 1; k <= n; ++k) {
    RMatrix AM(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t l = 0; l < n; ++l) AM[i][j] += A[i][l] * M[l][j];
      }
    // M_k = A M_{k-1} + c_{n-k+1} I
    for (std::size_t i = 0; i < n; ++i) AM[i][i] += c[n - k + 1];
    M = AM;
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) tr += A[i][l] * M[l][i];
    c[n - k] = -tr / static_cast<long>(k);
  }
  return c;
}

struct BasisCache {
  std::shared_mutex mu;
  std::map<std::pair<int, std::size_t>, EigenBasis> memo;
};

BasisCache& basis_cache() {
  static BasisCache c;
  return c;
}

EigenBasis build_eigen_basis(int k, std::size_t P) {
  const int d = dim_cusp(k);
  if (d == 0) return EigenBasis(k, {});
  const MillerBasis mb = miller_basis(k, P);
  const std::vector<QExpansion>& S = mb.cusp;
  RMatrix A(d, std::vector<Rational>(d, Rational(0)));
  for (int i = 0; i < d; ++i) {
    const QExpansion t = hecke_T(2, S[i]);
    for (int j = 0; j < d; ++j) A[i][j] = t[j + 1];
  }
  std::vector<Rational> cp = charpoly(A);
  std::vector<Integer> ci;
  for (const auto& c : cp) {
    if (c.get_den() != 1) throw InvariantViolation("non-integral Hecke characteristic polynomial");
    ci.emplace_back(c.get_num());
  }
  // eigenvalues of T(2) are algebraic integers bounded by 2 * 2^{(k-1)/2}
  const long B = static_cast<long>(std::floor(2.0 * std::pow(2.0, (k - 1) / 2.0))) + 1;
  std::vector<long> roots;
  for (long x = -B; x <= B; ++x) {
    Integer v = 0;
    for (std::size_t i = ci.size(); i-- > 0;) v = v * x + ci[i];
    if (v == 0) roots.push_back(x);
  }
  if (static_cast<int>(roots.size()) != d)
    throw UnsupportedHeckeField("T(2) on S_" + std::to_string(k) + " has irrational or repeated eigenvalues");
  std::vector<QExpansion> forms;
  for (long lam : roots) {
    RMatrix At(d, std::vector<Rational>(d, Rational(0)));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) At[i][j] = A[j][i] - (i == j ? Rational(lam) : Rational(0));
    auto ker = kernel(At);
    if (ker.size() != 1) throw UnsupportedHeckeField("eigenspace of dimension != 1");
    const auto& c = ker[0];
    if (c[0] == 0) throw InvariantViolation("eigenvector with a(1) = 0");
    QExpansion f = QExpansion::zero(k, P);
    for (int i = 0; i < d; ++i) f += (c[i] / c[0]) * S[i];
    if (!(hecke_T(2, f) == Rational(lam) * f.truncated(P / 2)))
      throw InvariantViolation("constructed form is not a T(2) eigenform");
    forms.push_back(std::move(f));
  }
  return EigenBasis(k, std::move(forms));
}

}  // namespace

EigenBasis eigen_basis(int k, std::size_t P) {
  if (k < 12 || k % 2 != 0) throw DomainError("eigen_basis needs even k >= 12");
  P = std::max({P, default_precision(k), static_cast<std::size_t>(2 * dim_cusp(k) + 2)});
  BasisCache& cache = basis_cache();
  {
    std::shared_lock lk(cache.mu);
    auto it = cache.memo.find({k, P});
    if (it != cache.memo.end()) return it->second;
  }
  EigenBasis b = build_eigen_basis(k, P);
  std::unique_lock lk(cache.mu);
  return cache.memo.emplace(std::make_pair(k, P), std::move(b)).first->second;
}

QExpansion cohen_series(int k, int r, std::size_t P) {
  if (k % 2 != 0 || r % 2 == 0 || r < 3 || r > k - 1)
    throw DomainError("cohen_series needs k even and r odd with 3 <= r <= k-1");
  const int nu = k - r - 1;
  const BivariatePoly G = gegenbauer_poly(2 * r + 2, nu);
  std::vector<Rational> a(P + 1, Rational(0));
  for (std::size_t m = 0; m <= P; ++m) {
    const long M = static_cast<long>(m);
    Rational s = 0;
    for (long t = 0; t * t <= 4 * M; ++t) {
      Rational term = G.evaluate(make_rational(t, 2), Rational(M)) * cohen_H(static_cast<unsigned>(r), 4 * M - t * t);
      s += t == 0 ? term : 2 * term;  // the t and -t terms agree (nu even)
    }
    a[m] = s;
  }
  return QExpansion(k, std::move(a));
}

Rational petersson_ratio(const EigenBasis& basis, std::size_t j, const QExpansion& g) {
  if (g.weight() != basis.weight()) throw DomainError("petersson_ratio: weight mismatch");
  if (g[0] != 0) throw DomainError("petersson_ratio needs a cusp form");
  if (static_cast<int>(g.precision()) < sturm_bound(g.weight()))
    throw SingularSystem("precision below the Sturm bound");
  const std::size_t d = basis.size();
  if (j >= d) throw DomainError("eigenform index out of range");
  // solve sum_l c_l a_l(i) = g(i), i = 1..d
  RMatrix M(d, std::vector<Rational>(d + 1, Rational(0)));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t l = 0; l < d; ++l) M[i][l] = basis.form(l)[i + 1];
    M[i][d] = g[i + 1];
  }
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    while (piv < d && M[piv][c] == 0) ++piv;
    if (piv == d) throw SingularSystem("eigenform coefficient matrix is singular");
    std::swap(M[c], M[piv]);
    for (std::size_t i = 0; i < d; ++i) {
      if (i == c || M[i][c] == 0) continue;
      const Rational f = M[i][c] / M[c][c];
      for (std::size_t l = c; l <= d; ++l) M[i][l] -= f * M[c][l];
    }
  }
  QExpansion r = g;
  std::vector<Rational> coef(d);
  for (std::size_t l = 0; l < d; ++l) {
    coef[l] = M[l][d] / M[l][l];
    r -= coef[l] * basis.form(l);
  }
  if (!r.is_zero()) throw DomainError("petersson_ratio: g is not in the cusp space");
  return coef[j];
}

Rational std_L_value(int k, int nu, const EigenBasis& basis, std::size_t j) {
  if (k < 6 || k % 2 != 0 || nu < 2 || nu % 2 != 0) throw DomainError("std_L_value needs even k >= 6, even nu >= 2");
  if (basis.weight() != k + nu) throw DomainError("std_L_value: eigenform weight must be k + nu");
  const std::size_t P = basis.form(j).precision();
  const QExpansion C = cohen_series(k + nu, k - 1, P);
  const Rational ratio = petersson_ratio(basis, j, C);
  Rational c = Rational(factorial(nu) * factorial(k - 2)) / Rational(factorial(k + nu - 2));
  c *= Rational(ipow(2, k + nu - 3));
  return -c * ratio;
}

Rational std_L_value(int k, int nu, const QExpansion& f) {
  const EigenBasis b = eigen_basis(k + nu, f.precision());
  for (std::size_t j = 0; j < b.size(); ++j) {
    const std::size_t P = std::min(f.precision(), b.form(j).precision());
    if (b.form(j).truncated(P) == f.truncated(P)) return std_L_value(k, nu, b, j);
  }
  throw DomainError("std_L_value: f is not a rational eigenform of weight k + nu");
}

}  // namespace eiscong
