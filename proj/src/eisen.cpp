#include "eiscong/eisen.hpp"

#include <mutex>

#include "eiscong/errors.hpp"
#include "eiscong/siegelseries.hpp"

namespace eiscong {

Rational Z_const(int n, int k) {
  if (k < 4 || k % 2 != 0) throw DomainError("Z_const needs even k >= 4");
  if (n < 1) throw DomainError("Z_const needs n >= 1");
  Rational z = zeta_neg(k);
  for (int j = 1; j <= n / 2; ++j) z *= zeta_neg(2 * k - 2 * j);
  return z;
}

EisensteinContext::EisensteinContext(int n, int k) : n_(n), k_(k), cache_(std::make_shared<Cache>()) {
  if (n < 1 || n > 3) throw DomainError("Eisenstein degree must be 1..3");
  if (k % 2 != 0 || k < 4 || 2 * k < n + 1) throw DomainError("Eisenstein weight must be even, >= 4 and >= (n+1)/2");
  const bool bad1 = 2 * k == n + 2 && k % 4 == 2;
  const bool bad2 = 2 * k == n + 3 && k % 4 == 2;
  if (bad1 || bad2) throw DomainError("excluded weight for this degree");
}

Rational EisensteinContext::coefficient(const HalfIntegralMatrix& T) const {
  if (T.size() != n_) throw DomainError("matrix size does not match the Eisenstein degree");
  if (!is_psd(T)) throw DomainError("Eisenstein coefficient needs a PSD matrix");
  const int m = rank(T);
  if (m == 0) return Z_const(n_, k_);
  const NondegPart np = nondeg_part(T);
  const HalfIntegralMatrix Tr = reduce(np.reduced);
  const auto key = Tr.doubled().a;
  {
    std::shared_lock lk(cache_->mu);
    auto it = cache_->memo.find(key);
    if (it != cache_->memo.end()) return it->second;
  }

  Rational a(ipow(2, (m + 1) / 2));
  const Integer& D = np.det_doubled;
  if (!D.fits_slong_p()) throw DomainError("determinant too large");
  for (auto [p, e] : factorize(D.get_si())) {
    (void)e;
    a *= local_F(p, Tr).evaluate(Rational(ipow(p, static_cast<unsigned>(k_ - m - 1))));
  }
  const int first = m % 2 == 0 ? m / 2 + 1 : (m + 1) / 2;
  for (int i = first; i <= n_ / 2; ++i) a *= zeta_neg(2 * k_ - 2 * i);
  if (m % 2 == 0) a *= l_value_neg(static_cast<unsigned>(k_ - m / 2), chi_star(np.reduced));

  std::unique_lock lk(cache_->mu);
  cache_->memo.emplace(key, a);
  return a;
}

Rational eis_coeff(const EisensteinContext& ctx, const HalfIntegralMatrix& T) { return ctx.coefficient(T); }

}  // namespace eiscong
