#include "eiscong/pullback.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <tuple>

#include "eiscong/eisen.hpp"
#include "eiscong/errors.hpp"
#include "eiscong/qexp.hpp"

namespace eiscong {

namespace {

void check_k_nu(int k, int nu) {
  if (k % 2 != 0 || nu % 2 != 0 || k < 6) throw DomainError("k must be even >= 6 and nu even");
  if (nu < 2) throw DomainError("nu must be >= 2 (the scalar case is out of scope)");
}

const EisensteinContext& degree3_context(int k) {
  static std::shared_mutex mu;
  static std::map<int, std::unique_ptr<EisensteinContext>> ctx;
  {
    std::shared_lock lk(mu);
    auto it = ctx.find(k);
    if (it != ctx.end()) return *it->second;
  }
  std::unique_lock lk(mu);
  auto& slot = ctx[k];
  if (!slot) slot = std::make_unique<EisensteinContext>(3, k);
  return *slot;
}

}  // namespace

Rational gamma1(int k, int nu) {
  check_k_nu(k, nu);
  Rational g = 8 * Rational(factorial(nu)) * pochhammer(k - 1, nu + 1) * pochhammer(2 * k - 1, nu - 2) /
               pochhammer(2 * k + nu - 2, nu - 1);
  return ((k + nu) / 2 + 1) % 2 ? -g : g;
}

Rational gamma2(int k, int nu) {
  check_k_nu(k, nu);
  Rational g = 32 * Rational(factorial(nu)) * pochhammer(k - 1, nu + 1) * pochhammer(2 * k - 1, nu - 2) /
               pochhammer(2 * k + nu - 4, nu - 1);
  return (nu / 2 + 1) % 2 ? -g : g;
}

PiRational pullback_c1(int k, int nu) {
  check_k_nu(k, nu);
  return {16 * pochhammer(k, nu) * pochhammer(2 * k - 1, nu - 1), 1};
}

PiRational pullback_c2(int k, int nu) {
  check_k_nu(k, nu);
  Rational c = 256 * pochhammer(k, nu) * pochhammer(2 * k - 1, nu - 2) / (k - 2);
  return {(k / 2) % 2 ? -c : c, 3};
}

Rational gamma1_from_c1(int k, int nu) {
  // nu! (2 pi i)^{-nu} (k-1)(-1)^{k/2+1} (2 pi)^{nu-1} / (2k+nu-3)_nu * c1
  Rational f = Rational(factorial(nu)) * (k - 1) / (2 * pochhammer(2 * k + nu - 3, nu));
  if ((nu / 2) % 2) f = -f;       // i^{-nu}
  if ((k / 2 + 1) % 2) f = -f;
  const PiRational r = PiRational{f, -1} * pullback_c1(k, nu);
  if (r.pi_exponent != 0) throw InvariantViolation("gamma1 is not rational");
  return r.coefficient;
}

BinaryForm epsilon(int k, int nu, long n, const HalfIntegralMatrix& N) {
  check_k_nu(k, nu);
  if (N.size() != 2 || !is_pd(N)) throw DomainError("epsilon needs a positive definite 2x2 N");
  if (n < 1) throw DomainError("epsilon needs n >= 1");
  static std::shared_mutex mu;
  static std::map<std::tuple<int, int, long, HalfIntegralMatrix>, BinaryForm> memo;
  const auto key = std::make_tuple(k, nu, n, N);
  {
    std::shared_lock lk(mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  const EisensteinContext& E = degree3_context(k);
  BinaryForm sum(nu);
  for (const auto& R : enumerate_R(n, N)) {
    const HalfIntegralMatrix T = build_T(n, N, R);
    const Rational a = E.coefficient(T);
    if (a != 0) sum += a * eval_binary(2 * k, nu, R, n, N);
  }
  std::unique_lock lk(mu);
  memo.emplace(key, sum);
  return sum;
}

namespace {

BinaryForm hecke_rec(int k, int nu, const std::vector<long>& primes, std::size_t upto, long n,
                     const HalfIntegralMatrix& N) {
  if (upto == 0) return epsilon(k, nu, n, N);
  const long p = primes[upto - 1];
  BinaryForm r = hecke_rec(k, nu, primes, upto - 1, n * p, N);
  if (n % p == 0) r += Rational(ipow(p, k + nu - 1)) * hecke_rec(k, nu, primes, upto - 1, n / p, N);
  return r;
}

}  // namespace

BinaryForm epsilon_hecke(int k, int nu, long m, long n, const HalfIntegralMatrix& N) {
  if (m < 1) throw DomainError("epsilon_hecke needs m >= 1");
  std::vector<long> primes;
  if (m > 1)
    for (auto [p, e] : factorize(m))
      for (int i = 0; i < e; ++i) primes.push_back(p);
  return hecke_rec(k, nu, primes, primes.size(), n, N);
}

namespace {

Rational det_rational(std::vector<std::vector<Rational>> M) {
  const std::size_t n = M.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && M[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(M[piv], M[c]);
      det = -det;
    }
    det *= M[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      const Rational f = M[i][c] / M[c][c];
      for (std::size_t j = c; j < n; ++j) M[i][j] -= f * M[c][j];
    }
  }
  return det;
}

}  // namespace

Cond2Result cond2_determinant(int k, int nu, const HalfIntegralMatrix& N, const std::vector<long>& m_list, int slot) {
  check_k_nu(k, nu);
  const EigenBasis basis = eigen_basis(k + nu);
  const std::size_t d = basis.size();
  if (d == 0) throw DomainError("no cusp forms of weight k + nu");
  if (m_list.size() != d) throw DomainError("m_list length must equal dim S_{k+nu}");
  if (slot < 0 || slot > nu) throw DomainError("slot out of range");
  std::vector<std::vector<Rational>> E(d, std::vector<Rational>(d)), L(d, std::vector<Rational>(d));
  for (std::size_t i = 0; i < d; ++i) {
    E[i][0] = epsilon_hecke(k, nu, m_list[i], 1, N)[slot];
    for (std::size_t j = 0; j < d; ++j) {
      L[i][j] = basis.eigenvalue(j, m_list[i]);
      if (j > 0) E[i][j] = L[i][j];
    }
  }
  Cond2Result r;
  r.det_value = det_rational(E);
  r.zeta_times_det = zeta_neg(2 * k - 2) * r.det_value;
  r.delta = det_rational(L);
  return r;
}

int pick_slot(const BinaryForm& eps1, long p) {
  for (int i = 0; i <= eps1.degree(); ++i)
    if (is_p_unit(eps1[i], p)) return i;
  return -1;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::ProvenModP:
      return "ProvenModP";
    case Verdict::ProvenModPAlpha:
      return "ProvenModPAlpha";
    default:
      return "NotEstablished";
  }
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "ProvenModP") return Verdict::ProvenModP;
  if (s == "ProvenModPAlpha") return Verdict::ProvenModPAlpha;
  if (s == "NotEstablished") return Verdict::NotEstablished;
  throw ParseError("unknown verdict '" + s + "'", 0);
}

ConditionStatus derive_status(const CongruenceCertificate& c) {
  ConditionStatus s;
  s.cond1 = c.L_value != 0 && ord_p(c.L_value, c.p) > 0;
  s.cond2 = is_p_unit(c.zeta3m2k, c.p) && is_p_unit(c.witness.det_value, c.p) && is_p_unit(c.witness.delta, c.p);
  s.cond3 = c.p >= 2 * (c.k + c.nu) - 3;
  s.cond3_prime = c.p >= std::max(2 * c.k, c.k + c.nu - 2);
  if (c.gamma1 != 0) s.ord_p_gamma1 = ord_p(c.gamma1, c.p);
  s.size_bound = s.cond3 || (s.cond3_prime && s.ord_p_gamma1 == 0);
  s.size_bound_waived = !s.size_bound && c.strictness == Strictness::Relaxed;
  return s;
}

Verdict derive_verdict(const CongruenceCertificate& c, const ConditionStatus& s) {
  if (!s.cond1 || !s.cond2) return Verdict::NotEstablished;
  if (!s.size_bound && c.strictness == Strictness::Strict) return Verdict::NotEstablished;
  if (c.dim_cusp == 1 && c.alpha >= 2) return Verdict::ProvenModPAlpha;
  return Verdict::ProvenModP;
}

CongruenceCertificate certify(int k, int nu, long p, const HalfIntegralMatrix& A, std::vector<long> m_list,
                              std::optional<int> slot, Strictness strictness, std::optional<Rational> reference_gamma) {
  check_k_nu(k, nu);
  if (!is_prime(p)) throw DomainError("p must be prime");
  if (A.size() != 2 || !is_pd(A)) throw DomainError("A must be a positive definite 2x2 matrix");
  const EigenBasis basis = eigen_basis(k + nu);
  CongruenceCertificate c;
  c.k = k;
  c.nu = nu;
  c.p = p;
  c.A = A;
  c.strictness = strictness;
  c.dim_cusp = static_cast<int>(basis.size());
  if (c.dim_cusp == 0) throw DomainError("S_{k+nu} is zero; nothing to certify");
  if (m_list.empty())
    for (int i = 1; i <= c.dim_cusp; ++i) m_list.push_back(i);
  c.m_list = m_list;

  c.L_value = std_L_value(k, nu, basis, 0);
  c.alpha = c.L_value == 0 ? 0 : ord_p(c.L_value, p);
  c.gamma1 = gamma1(k, nu);
  c.gamma2 = gamma2(k, nu);
  c.zeta3m2k = zeta_neg(2 * k - 2);
  // Von Staudt-Clausen: no prime above 2k-1 divides the denominator of zeta(3-2k)
  if (p > 2 * k - 1 && ord_p(c.zeta3m2k, p) < 0) throw InvariantViolation("zeta(3-2k) has p in its denominator");

  c.epsilon1 = epsilon(k, nu, 1, A);
  c.epsilon_at_10 = c.epsilon1.evaluate(1, 0);
  c.epsilon_at_11 = c.epsilon1.evaluate(1, 1);
  c.slot = slot ? *slot : std::max(0, pick_slot(c.epsilon1, p));
  c.witness = cond2_determinant(k, nu, A, c.m_list, c.slot);
  c.reference_gamma = std::move(reference_gamma);

  c.status = derive_status(c);
  c.verdict = derive_verdict(c, c.status);
  const std::string mod = c.verdict == Verdict::ProvenModPAlpha
                              ? std::to_string(p) + "^" + std::to_string(c.alpha)
                              : std::to_string(p);
  c.implied_congruence = "λ_G(q) ≡ (1+q^" + std::to_string(k - 2) + ")·λ_f(q) mod " + mod +
                         " for every prime q (f the weight-" + std::to_string(k + nu) + " eigenform)";
  if (c.verdict == Verdict::NotEstablished) c.implied_congruence.clear();
  return c;
}

}  // namespace eiscong
