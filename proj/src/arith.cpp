#include "eiscong/arith.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <shared_mutex>

#include "eiscong/errors.hpp"

namespace eiscong {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(const std::string& s) {
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0) throw ParseError("not a rational: '" + s + "'", 0);
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'", 0);
  q.canonicalize();
  return q;
}

std::string to_string(const Integer& x) { return x.get_str(); }
std::string to_string(const Rational& x) { return x.get_str(); }

int ord_p(const Integer& x, long p) {
  if (x == 0) throw DomainError("ord_p of zero");
  Integer y = abs(x);
  int v = 0;
  const Integer P(p);
  while (mpz_divisible_p(y.get_mpz_t(), P.get_mpz_t())) {
    y /= P;
    ++v;
  }
  return v;
}

int ord_p(const Rational& x, long p) {
  if (x == 0) throw DomainError("ord_p of zero");
  return ord_p(Integer(x.get_num()), p) - ord_p(Integer(x.get_den()), p);
}

bool is_p_unit(const Rational& x, long p) { return x != 0 && ord_p(x, p) == 0; }

Integer ipow(long base, unsigned e) {
  Integer r;
  const Integer b(base);
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

Rational rpow(const Rational& base, int e) {
  if (e < 0) {
    if (base == 0) throw DomainError("negative power of zero");
    return rpow(Rational(1) / base, -e);
  }
  Integer n, d;
  mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
  return make_rational(n, d);
}

Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Integer binomial(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::pair<long, int>> factorize(long n) {
  if (n == 0) throw DomainError("factorize(0)");
  if (n < 0) n = -n;
  std::vector<std::pair<long, int>> out;
  for (long d = 2; d * d <= n; ++d) {
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<long> divisors(long n) {
  std::vector<long> out{1};
  for (auto [p, e] : factorize(n)) {
    const std::size_t sz = out.size();
    long pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < sz; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int mobius(long n) {
  int s = 1;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return 0;
    s = -s;
  }
  return s;
}

Integer sigma(unsigned k, long n) {
  Integer s = 0;
  for (long d : divisors(n)) s += ipow(d, k);
  return s;
}

namespace {

// squarefree part with sign, and f with n = s * f^2
std::pair<long, long> square_split(long n) {
  long s = n < 0 ? -1 : 1, f = 1;
  for (auto [p, e] : factorize(n)) {
    for (int i = 0; i < e / 2; ++i) f *= p;
    if (e % 2) s *= p;
  }
  return {s, f};
}

long mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

int jacobi(long a, long n) {
  // n odd positive
  a = mod(a, n);
  int t = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      long r = n % 8;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) t = -t;
    a %= n;
  }
  return n == 1 ? t : 0;
}

}  // namespace

int kronecker(long D, long n) {
  if (n == 0) return (D == 1 || D == -1) ? 1 : 0;
  int t = 1;
  if (n < 0) {
    n = -n;
    if (D < 0) t = -1;
  }
  if (n % 2 == 0) {
    if (D % 2 == 0) return 0;
    int two = (mod(D, 8) == 1 || mod(D, 8) == 7) ? 1 : -1;
    while (n % 2 == 0) {
      n /= 2;
      t *= two;
    }
  }
  if (n == 1) return t;
  return t * jacobi(D, n);
}

bool is_fundamental_discriminant(long D) {
  if (D == 1) return true;
  if (D == 0) return false;
  if (mod(D, 4) == 1) return square_split(D).second == 1;
  if (mod(D, 4) != 0) return false;
  long m = D / 4;
  return (mod(m, 4) == 2 || mod(m, 4) == 3) && square_split(m).second == 1;
}

DiscriminantChar::DiscriminantChar(long D) : d_(D) {
  if (!is_fundamental_discriminant(D))
    throw DomainError("not a fundamental discriminant: " + std::to_string(D));
}

int DiscriminantChar::operator()(long n) const { return kronecker(d_, n); }

PiRational operator*(const PiRational& a, const PiRational& b) {
  return {a.coefficient * b.coefficient, a.pi_exponent + b.pi_exponent};
}
PiRational operator/(const PiRational& a, const PiRational& b) {
  if (b.coefficient == 0) throw DomainError("division by zero");
  return {a.coefficient / b.coefficient, a.pi_exponent - b.pi_exponent};
}
bool operator==(const PiRational& a, const PiRational& b) {
  if (a.coefficient == 0 && b.coefficient == 0) return true;
  return a.coefficient == b.coefficient && a.pi_exponent == b.pi_exponent;
}

Rational bernoulli(unsigned n) {
  static std::shared_mutex mu;
  static std::vector<Rational> table{Rational(1)};
  {
    std::shared_lock lk(mu);
    if (n < table.size()) return table[n];
  }
  std::unique_lock lk(mu);
  while (table.size() <= n) {
    const unsigned m = static_cast<unsigned>(table.size());
    Rational s = 0;
    for (unsigned j = 0; j < m; ++j) s += Rational(binomial(m + 1, j)) * table[j];
    table.push_back(-s / (m + 1));
  }
  return table[n];
}

Rational bernoulli_poly(unsigned n, const Rational& x) {
  Rational s = 0;
  for (unsigned j = 0; j <= n; ++j) s += Rational(binomial(n, j)) * bernoulli(j) * rpow(x, static_cast<int>(n - j));
  return s;
}

Rational zeta_neg(int k) {
  if (k < 2 || k % 2 != 0) throw DomainError("zeta_neg needs even k >= 2, got " + std::to_string(k));
  return -bernoulli(static_cast<unsigned>(k)) / k;
}

FundamentalDecomposition fundamental_decomposition(long M) {
  if (M == 0) throw DomainError("fundamental_decomposition(0)");
  if (mod(M, 4) == 2 || mod(M, 4) == 3)
    throw DomainError(std::to_string(M) + " is not a discriminant (not 0 or 1 mod 4)");
  auto [s, f] = square_split(M);
  if (mod(s, 4) == 1) return {DiscriminantChar(s), f};
  return {DiscriminantChar(4 * s), f / 2};
}

long quadratic_discriminant(const Rational& a) {
  if (a == 0) throw DomainError("quadratic_discriminant(0)");
  Integer nd = a.get_num() * a.get_den();
  if (!nd.fits_slong_p()) throw DomainError("quadratic_discriminant: argument too large");
  long s = square_split(nd.get_si()).first;
  return mod(s, 4) == 1 ? s : 4 * s;
}

Rational gen_bernoulli(unsigned r, const DiscriminantChar& chi) {
  if (r < 1) throw DomainError("gen_bernoulli needs r >= 1");
  const long m = chi.conductor();
  Rational s = 0;
  for (long a = 1; a <= m; ++a) {
    int c = chi(a);
    if (c) s += c * bernoulli_poly(r, make_rational(a, m));
  }
  return s * Rational(ipow(m, r - 1));
}

Rational l_value_neg(unsigned r, const DiscriminantChar& chi) { return -gen_bernoulli(r, chi) / r; }

Rational cohen_H(unsigned r, long N) {
  if (r < 1 || N < 0) throw DomainError("cohen_H needs r >= 1, N >= 0");
  if (N == 0) return zeta_neg(static_cast<int>(2 * r));
  if (N % 4 == 1 || N % 4 == 2) return 0;

  static std::shared_mutex mu;
  static std::map<std::pair<unsigned, long>, Rational> memo;
  {
    std::shared_lock lk(mu);
    auto it = memo.find({r, N});
    if (it != memo.end()) return it->second;
  }
  auto [chi, f] = fundamental_decomposition(-N);
  Rational s = 0;
  for (long d : divisors(f)) {
    int mu_d = mobius(d);
    if (mu_d == 0) continue;
    s += Rational(mu_d * chi(d)) * Rational(ipow(d, r - 1)) * Rational(sigma(2 * r - 1, f / d));
  }
  Rational h = l_value_neg(r, chi) * s;
  std::unique_lock lk(mu);
  memo.emplace(std::make_pair(r, N), h);
  return h;
}

Rational pochhammer(const Rational& x, unsigned n) {
  Rational r = 1;
  for (unsigned i = 0; i < n; ++i) r *= x + i;
  return r;
}

}  // namespace eiscong
