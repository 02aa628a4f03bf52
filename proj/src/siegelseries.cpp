#include "eiscong/siegelseries.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <thread>

#include "eiscong/errors.hpp"

namespace eiscong {

LaurentPolyX::LaurentPolyX(std::initializer_list<std::pair<const int, Rational>> terms) {
  for (const auto& [e, c] : terms) add(e, c);
}

LaurentPolyX LaurentPolyX::from_coefficients(const std::vector<Rational>& c) {
  LaurentPolyX r;
  for (std::size_t i = 0; i < c.size(); ++i) r.add(static_cast<int>(i), c[i]);
  return r;
}

LaurentPolyX LaurentPolyX::monomial(int e, const Rational& c) {
  LaurentPolyX r;
  r.add(e, c);
  return r;
}

void LaurentPolyX::add(int e, const Rational& c) {
  if (c == 0) return;
  auto& slot = terms_[e];
  slot += c;
  if (slot == 0) terms_.erase(e);
}

Rational LaurentPolyX::coefficient(int e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

int LaurentPolyX::degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }
int LaurentPolyX::low_degree() const { return terms_.empty() ? 0 : terms_.begin()->first; }

Rational LaurentPolyX::evaluate(const Rational& X) const {
  Rational v = 0;
  for (const auto& [e, c] : terms_) v += c * rpow(X, e);
  return v;
}

LaurentPolyX LaurentPolyX::truncated(int max_exponent) const {
  LaurentPolyX r;
  for (const auto& [e, c] : terms_)
    if (e <= max_exponent) r.add(e, c);
  return r;
}

LaurentPolyX& LaurentPolyX::operator+=(const LaurentPolyX& o) {
  for (const auto& [e, c] : o.terms_) add(e, c);
  return *this;
}

LaurentPolyX& LaurentPolyX::operator-=(const LaurentPolyX& o) {
  for (const auto& [e, c] : o.terms_) add(e, -c);
  return *this;
}

LaurentPolyX operator+(LaurentPolyX a, const LaurentPolyX& b) { return a += b; }
LaurentPolyX operator-(LaurentPolyX a, const LaurentPolyX& b) { return a -= b; }

LaurentPolyX operator*(const LaurentPolyX& a, const LaurentPolyX& b) {
  LaurentPolyX r;
  for (const auto& [e, c] : a.terms())
    for (const auto& [f, d] : b.terms()) r += LaurentPolyX::monomial(e + f, c * d);
  return r;
}

LaurentPolyX LaurentPolyX::divide_exact(const LaurentPolyX& d) const {
  if (d.is_zero()) throw DomainError("division by the zero polynomial");
  LaurentPolyX rem = *this, q;
  const int dd = d.degree();
  const Rational lead = d.coefficient(dd);
  while (!rem.is_zero() && rem.degree() - dd >= low_degree() - d.low_degree()) {
    const int e = rem.degree() - dd;
    const LaurentPolyX t = monomial(e, rem.coefficient(rem.degree()) / lead);
    q += t;
    rem -= t * d;
  }
  if (!rem.is_zero()) throw InvariantViolation("inexact polynomial division");
  return q;
}

SiegelSeriesPolynomial::SiegelSeriesPolynomial(std::vector<Integer> coeffs) : c_(std::move(coeffs)) {
  while (c_.size() > 1 && c_.back() == 0) c_.pop_back();
  if (c_.empty() || c_[0] != 1) throw InvariantViolation("Siegel series polynomial must have constant term 1");
}

Rational SiegelSeriesPolynomial::evaluate(const Rational& X) const {
  Rational v = 0;
  for (std::size_t i = c_.size(); i-- > 0;) v = v * X + Rational(c_[i]);
  return v;
}

LaurentPolyX SiegelSeriesPolynomial::as_laurent() const {
  std::vector<Rational> r(c_.begin(), c_.end());
  return LaurentPolyX::from_coefficients(r);
}

int chi_p(long p, const Rational& a) {
  if (a == 0) throw DomainError("chi_p(0)");
  const int v = ord_p(a, p);
  if (v % 2 != 0) return 0;
  Rational u = a / rpow(Rational(p), v);
  // unit part reduced mod p^3
  const Integer m = ipow(p, 3);
  Integer inv;
  const Integer den(u.get_den());
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
  Integer r = Integer(u.get_num()) * inv;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
  if (p == 2) {
    const long r8 = mpz_fdiv_ui(r.get_mpz_t(), 8);
    if (r8 == 1) return 1;
    if (r8 == 5) return -1;
    return 0;
  }
  const Integer P(p);
  return mpz_legendre(r.get_mpz_t(), P.get_mpz_t());
}

GammaFactor gamma_p(long p, const HalfIntegralMatrix& B) {
  const int n = B.size();
  if (B.det_doubled() == 0) throw DomainError("gamma_p needs a nondegenerate matrix");
  GammaFactor g{LaurentPolyX{{0, Rational(1)}, {1, Rational(-1)}}, LaurentPolyX{{0, Rational(1)}}};
  for (int i = 1; i <= n / 2; ++i)
    g.numerator = g.numerator * LaurentPolyX{{0, Rational(1)}, {2, -Rational(ipow(p, 2 * i))}};
  if (n % 2 == 0) {
    Rational a = B.det();
    if ((n / 2) % 2 == 1) a = -a;
    g.denominator = LaurentPolyX{{0, Rational(1)}, {1, -Rational(ipow(p, n / 2)) * chi_p(p, a)}};
  }
  return g;
}

namespace {

int vp(std::int64_t x, long p) {
  if (x == 0) return 1 << 20;
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

std::int64_t ipow64(long p, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= p;
  return r;
}

// canonical lower-triangular basis of the lattice spanned by the columns
IntMat hnf_cols(IntMat A) {
  const int n = A.n;
  auto col_sub = [&](int dst, int src, std::int64_t q) {
    for (int r = 0; r < n; ++r) A.a[r][dst] -= q * A.a[r][src];
  };
  auto col_swap = [&](int x, int y) {
    for (int r = 0; r < n; ++r) std::swap(A.a[r][x], A.a[r][y]);
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      while (A.a[i][j] != 0) {
        const std::int64_t q = A.a[i][i] / A.a[i][j];
        col_sub(i, j, q);
        col_swap(i, j);
      }
    }
    if (A.a[i][i] < 0)
      for (int r = 0; r < n; ++r) A.a[r][i] = -A.a[r][i];
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) {
      std::int64_t q = A.a[i][j] / A.a[i][i];
      if (A.a[i][j] - q * A.a[i][i] < 0) --q;
      col_sub(j, i, q);
    }
  return A;
}

// P A Q = diag; returns the diagonal, P written to *P
std::array<std::int64_t, 3> snf(IntMat A, IntMat* Pout) {
  const int n = A.n;
  IntMat P = IntMat::identity(n);
  for (int t = 0; t < n; ++t) {
    while (true) {
      int bi = -1, bj = -1;
      for (int i = t; i < n; ++i)
        for (int j = t; j < n; ++j)
          if (A.a[i][j] != 0 && (bi < 0 || std::llabs(A.a[i][j]) < std::llabs(A.a[bi][bj]))) {
            bi = i;
            bj = j;
          }
      if (bi < 0) break;
      std::swap(A.a[t], A.a[bi]);
      std::swap(P.a[t], P.a[bi]);
      for (int r = 0; r < n; ++r) std::swap(A.a[r][t], A.a[r][bj]);
      bool done = true;
      for (int i = t + 1; i < n; ++i) {
        const std::int64_t q = A.a[i][t] / A.a[t][t];
        if (q)
          for (int c = 0; c < n; ++c) {
            A.a[i][c] -= q * A.a[t][c];
            P.a[i][c] -= q * P.a[t][c];
          }
        if (A.a[i][t]) done = false;
      }
      for (int j = t + 1; j < n; ++j) {
        const std::int64_t q = A.a[t][j] / A.a[t][t];
        if (q)
          for (int r = 0; r < n; ++r) A.a[r][j] -= q * A.a[r][t];
        if (A.a[t][j]) done = false;
      }
      if (!done) continue;
      int bad = -1;
      for (int i = t + 1; i < n; ++i)
        for (int j = t + 1; j < n; ++j)
          if (A.a[i][j] % A.a[t][t]) bad = i;
      if (bad >= 0) {
        for (int c = 0; c < n; ++c) {
          A.a[t][c] += A.a[bad][c];
          P.a[t][c] += P.a[bad][c];
        }
        continue;
      }
      break;
    }
  }
  if (Pout) *Pout = P;
  return {A.a[0][0], n > 1 ? A.a[1][1] : 0, n > 2 ? A.a[2][2] : 0};
}

std::vector<IntMat> index_p_sublattices(long p, int n) {
  std::vector<IntMat> out;
  for (int i = 0; i < n; ++i) {
    const std::int64_t count = ipow64(p, i);
    for (std::int64_t code = 0; code < count; ++code) {
      IntMat H = IntMat::identity(n);
      H.a[i][i] = p;
      std::int64_t c = code;
      for (int col = 0; col < i; ++col) {
        H.a[i][col] = c % p;
        c /= p;
      }
      out.push_back(H);
    }
  }
  return out;
}

SiegelSeriesPolynomial compute_local_F(long p, const HalfIntegralMatrix& B) {
  const int n = B.size();
  const IntMat M = B.doubled();
  const Integer det = B.det_doubled();
  if (det == 0) throw DomainError("local_F needs a nondegenerate matrix");
  const int e = ord_p(det, p);
  const int o2 = p == 2 ? 1 : 0;
  // deg F <= e and gamma_p has numerator degree n, so b_p times the gamma denominator has degree <= e + n + 1;
  // work modulo X^{J+1} and demand a zero tail above e
  const int J = e + n + 1;
  const std::vector<IntMat> subs = index_p_sublattices(p, n);

  // sum over sublattices K with B in the dual of K, weighted by p^{sum d_i + sum_{i<j} min(d_i, d_j)}
  std::vector<Integer> A(J + 1, Integer(0));
  A[0] = 1;
  std::set<std::array<std::array<std::int64_t, 3>, 3>> level{IntMat::identity(n).a};
  for (int i = 1; i <= J && !level.empty(); ++i) {
    std::set<std::array<std::array<std::int64_t, 3>, 3>> cand, next;
    for (const auto& k : level) {
      IntMat K;
      K.n = n;
      K.a = k;
      for (const IntMat& S : subs) cand.insert(hnf_cols(K * S).a);
    }
    for (const auto& k : cand) {
      IntMat K;
      K.n = n;
      K.a = k;
      IntMat P;
      const auto diag = snf(K, &P);
      int d[3];
      for (int a = 0; a < n; ++a) d[a] = vp(diag[a], p);
      const IntMat Mp = P * M * P.transpose();
      bool ok = true;
      int w = 0;
      for (int a = 0; a < n && ok; ++a) {
        ok = vp(Mp.a[a][a], p) >= d[a] + o2;
        w += d[a];
        for (int b = a + 1; b < n && ok; ++b) {
          ok = vp(Mp.a[a][b], p) >= std::min(d[a], d[b]);
          w += std::min(d[a], d[b]);
        }
      }
      if (!ok) continue;
      next.insert(k);
      A[i] += ipow(p, w);
    }
    level = std::move(next);
  }
  LaurentPolyX b;
  for (int i = 0; i <= J; ++i) b += LaurentPolyX::monomial(i, Rational(A[i]));
  for (int i = 0; i < n; ++i) b = (b * LaurentPolyX{{0, Rational(1)}, {1, -Rational(ipow(p, i))}}).truncated(J);
  const GammaFactor g = gamma_p(p, B);
  const LaurentPolyX num = (b * g.denominator).truncated(J);
  // power-series division by the gamma numerator (constant term 1)
  std::vector<Rational> f(J + 1, Rational(0));
  for (int i = 0; i <= J; ++i) {
    Rational v = num.coefficient(i);
    for (const auto& [ex, c] : g.numerator.terms())
      if (ex > 0 && ex <= i) v -= c * f[i - ex];
    f[i] = v;
  }
  std::vector<Integer> c(static_cast<std::size_t>(e) + 1, Integer(0));
  for (int i = 0; i <= J; ++i) {
    if (f[i].get_den() != 1) throw InvariantViolation("local_F: non-integral coefficient");
    if (i > e && f[i] != 0) throw InvariantViolation("local_F: series does not terminate at degree ord_p(det 2B)");
    if (i <= e) c[i] = f[i].get_num();
  }
  return SiegelSeriesPolynomial(std::move(c));
}

struct FCache {
  std::shared_mutex mu;
  std::map<std::pair<long, std::array<std::array<std::int64_t, 3>, 3>>, SiegelSeriesPolynomial> memo;
};

FCache& f_cache() {
  static FCache c;
  return c;
}

// value of sum_a h[a] zeta^a, zeta a primitive p^J-th root of unity; must be rational
Integer collapse(const std::vector<std::int64_t>& h, long p, int J) {
  if (J == 0) return Integer(static_cast<long>(h[0]));
  const std::int64_t q = ipow64(p, J - 1);
  for (std::int64_t r = 1; r < q; ++r)
    for (long i = 1; i < p; ++i)
      if (h[r + i * q] != h[r]) throw InvariantViolation("oracle character sum is not rational");
  for (long i = 1; i + 1 < p; ++i)
    if (h[i * q] != h[(p - 1) * q]) throw InvariantViolation("oracle character sum is not rational");
  return Integer(static_cast<long>(h[0])) - Integer(static_cast<long>(h[(p - 1) * q]));
}

// p-exponent of mu(R) for R = S / p^D, S integral symmetric
int level_exponent(const IntMat& S, long p, int D) {
  const auto diag = snf(S, nullptr);
  int mu = 0;
  for (int i = 0; i < S.n; ++i) mu += std::max(0, D - vp(diag[i], p));
  return mu;
}

unsigned worker_count(const OracleOptions& opt) {
  unsigned t = opt.threads ? opt.threads : std::thread::hardware_concurrency();
  return std::max(1u, t);
}

// run body(i, histogram) for i in [0, count) over workers, summing histograms of size len
std::vector<std::int64_t> parallel_histogram(std::size_t count, std::size_t len, unsigned workers,
                                             const std::function<void(std::size_t, std::vector<std::int64_t>&)>& body) {
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
  std::vector<std::vector<std::int64_t>> parts(workers, std::vector<std::int64_t>(len, 0));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) body(i, parts[w]);
    });
  for (std::size_t i = 0; i < count; i += workers) body(i, parts[0]);
  for (auto& t : pool) t.join();
  for (unsigned w = 1; w < workers; ++w)
    for (std::size_t a = 0; a < len; ++a) parts[0][a] += parts[w][a];
  return parts[0];
}

std::vector<IntMat> lattices_of_index(long p, int n, int j) {
  std::vector<IntMat> out;
  std::array<int, 3> e{};
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n - 1) {
      e[i] = left;
      // off-diagonal entries: row r has r free entries reduced mod p^{e_r}
      std::int64_t count = 1;
      for (int r = 0; r < n; ++r) count *= ipow64(p, e[r] * r);
      for (std::int64_t code = 0; code < count; ++code) {
        IntMat H;
        H.n = n;
        std::int64_t c = code;
        for (int r = 0; r < n; ++r) {
          const std::int64_t m = ipow64(p, e[r]);
          H.a[r][r] = m;
          for (int col = 0; col < r; ++col) {
            H.a[r][col] = c % m;
            c /= m;
          }
        }
        out.push_back(H);
      }
      return;
    }
    for (int x = 0; x <= left; ++x) {
      e[i] = x;
      rec(i + 1, left - x);
    }
  };
  rec(0, j);
  return out;
}

}  // namespace

SiegelSeriesPolynomial local_F(long p, const HalfIntegralMatrix& B) {
  if (!is_prime(p)) throw DomainError("local_F needs a prime");
  const HalfIntegralMatrix R = B.size() > 1 && is_pd(B) ? reduce(B) : B;
  FCache& cache = f_cache();
  const auto key = std::make_pair(p, R.doubled().a);
  {
    std::shared_lock lk(cache.mu);
    auto it = cache.memo.find(key);
    if (it != cache.memo.end()) return it->second;
  }
  SiegelSeriesPolynomial F = compute_local_F(p, R);
  std::unique_lock lk(cache.mu);
  return cache.memo.emplace(key, std::move(F)).first->second;
}

Rational local_F_star(long p, const HalfIntegralMatrix& T, const Rational& X) {
  if (rank(T) == 0) throw DomainError("local_F_star needs rank >= 1");
  return local_F(p, nondeg_part(T).reduced).evaluate(X);
}

LaurentPolyX oracle_bp(long p, const HalfIntegralMatrix& B, int j_max, const OracleOptions& opt) {
  if (!is_prime(p)) throw DomainError("oracle_bp needs a prime");
  if (B.det_doubled() == 0) throw DomainError("oracle_bp needs a nondegenerate matrix");
  const int n = B.size();
  const IntMat M = B.doubled();

  struct Job {
    IntMat Mp;
    int d[3];
  };
  std::vector<std::vector<Job>> jobs(j_max + 1);
  std::uint64_t work = 0;
  for (int j = 0; j <= j_max; ++j) {
    for (const IntMat& K : lattices_of_index(p, n, j)) {
      IntMat P;
      const auto diag = snf(K, &P);
      Job job{P * M * P.transpose(), {0, 0, 0}};
      std::uint64_t cnt = 1;
      for (int a = 0; a < n; ++a) job.d[a] = vp(diag[a], p);
      for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) cnt *= static_cast<std::uint64_t>(ipow64(p, std::min(job.d[a], job.d[b])));
      work += cnt;
      if (work > opt.budget) throw BudgetExceeded("oracle_bp: enumeration exceeds the work budget");
      jobs[j].push_back(job);
    }
  }

  LaurentPolyX out;
  for (int j = 0; j <= j_max; ++j) {
    const std::int64_t pj = ipow64(p, j);
    auto body = [&](std::size_t idx, std::vector<std::int64_t>& h) {
      const Job& job = jobs[j][idx];
      // R' entries x_ab / p^{m_ab} for a <= b
      std::array<std::pair<int, int>, 6> pos;
      std::array<int, 6> m{};
      int cnt = 0, D = 0;
      for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
          pos[cnt] = {a, b};
          m[cnt] = std::min(job.d[a], job.d[b]);
          D = std::max(D, m[cnt]);
          ++cnt;
        }
      std::array<std::int64_t, 6> x{};
      while (true) {
        IntMat S;
        S.n = n;
        std::int64_t phase = 0;
        for (int t = 0; t < cnt; ++t) {
          auto [a, b] = pos[t];
          const std::int64_t s = x[t] * ipow64(p, D - m[t]);
          S.a[a][b] = S.a[b][a] = s;
          // tr(B R): diagonal carries B_aa = M_aa / 2, off-diagonal pairs carry M_ab
          const std::int64_t coef = a == b ? job.Mp.a[a][a] / 2 : job.Mp.a[a][b];
          phase += static_cast<std::int64_t>((static_cast<__int128>(coef % pj) * (x[t] * ipow64(p, j - m[t]))) % pj);
          phase %= pj;
        }
        if (level_exponent(S, p, D) == j) h[static_cast<std::size_t>((phase % pj + pj) % pj)] += 1;
        int t = 0;
        while (t < cnt && ++x[t] == ipow64(p, m[t])) x[t++] = 0;
        if (t == cnt) break;
      }
    };
    const auto h = parallel_histogram(jobs[j].size(), static_cast<std::size_t>(pj), worker_count(opt), body);
    out += LaurentPolyX::monomial(j, Rational(collapse(h, p, j)));
  }
  return out;
}

LaurentPolyX oracle_bp_naive(long p, const HalfIntegralMatrix& B, int J, const OracleOptions& opt) {
  if (!is_prime(p)) throw DomainError("oracle_bp_naive needs a prime");
  const int n = B.size();
  const int cnt = n * (n + 1) / 2;
  const std::int64_t pJ = ipow64(p, J);
  double total = 1;
  for (int t = 0; t < cnt; ++t) total *= static_cast<double>(pJ);
  if (total > static_cast<double>(opt.budget)) throw BudgetExceeded("oracle_bp_naive: enumeration exceeds budget");
  const IntMat M = B.doubled();
  std::array<std::pair<int, int>, 6> pos;
  int c = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) pos[c++] = {a, b};
  // one histogram per level, all over the denominator p^J
  std::vector<std::vector<std::int64_t>> h(J + 1, std::vector<std::int64_t>(static_cast<std::size_t>(pJ), 0));
  std::array<std::int64_t, 6> x{};
  while (true) {
    IntMat S;
    S.n = n;
    std::int64_t phase = 0;
    for (int t = 0; t < cnt; ++t) {
      auto [a, b] = pos[t];
      S.a[a][b] = S.a[b][a] = x[t];
      const std::int64_t coef = a == b ? M.a[a][a] / 2 : M.a[a][b];
      phase = ((phase + coef % pJ * x[t]) % pJ + pJ) % pJ;
    }
    const int lv = level_exponent(S, p, J);
    if (lv <= J) h[lv][static_cast<std::size_t>(phase)] += 1;
    int t = 0;
    while (t < cnt && ++x[t] == pJ) x[t++] = 0;
    if (t == cnt) break;
  }
  LaurentPolyX out;
  for (int j = 0; j <= J; ++j) out += LaurentPolyX::monomial(j, Rational(collapse(h[j], p, J)));
  return out;
}

}  // namespace eiscong
