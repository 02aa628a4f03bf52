#include "eiscong/gegenbauer.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>

#include "eiscong/errors.hpp"

namespace eiscong {

void BivariatePoly::add(int i, int j, const Rational& c) {
  if (c == 0) return;
  auto& slot = terms_[{i, j}];
  slot += c;
  if (slot == 0) terms_.erase({i, j});
}

Rational BivariatePoly::coefficient(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational BivariatePoly::evaluate(const Rational& s, const Rational& m) const {
  Rational v = 0;
  for (const auto& [e, c] : terms_) v += c * rpow(s, e.first) * rpow(m, e.second);
  return v;
}

BinaryForm::BinaryForm(int degree) {
  if (degree < 0) throw DomainError("negative degree");
  c_.assign(degree + 1, Rational(0));
}

BinaryForm::BinaryForm(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) throw DomainError("binary form needs at least one coefficient");
}

Rational BinaryForm::evaluate(const Rational& x, const Rational& y) const {
  const int nu = degree();
  Rational v = 0;
  for (int i = 0; i <= nu; ++i) v += c_[i] * rpow(x, nu - i) * rpow(y, i);
  return v;
}

bool BinaryForm::is_zero() const {
  for (const auto& c : c_)
    if (c != 0) return false;
  return true;
}

BinaryForm& BinaryForm::operator+=(const BinaryForm& o) {
  if (o.degree() != degree()) throw DomainError("binary form degree mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

BinaryForm& BinaryForm::operator-=(const BinaryForm& o) {
  if (o.degree() != degree()) throw DomainError("binary form degree mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

BinaryForm& BinaryForm::operator*=(const Rational& s) {
  for (auto& c : c_) c *= s;
  return *this;
}

BinaryForm operator+(BinaryForm a, const BinaryForm& b) { return a += b; }
BinaryForm operator-(BinaryForm a, const BinaryForm& b) { return a -= b; }
BinaryForm operator*(const Rational& s, BinaryForm a) { return a *= s; }

BinaryForm operator*(const BinaryForm& a, const BinaryForm& b) {
  BinaryForm r(a.degree() + b.degree());
  for (int i = 0; i <= a.degree(); ++i)
    for (int j = 0; j <= b.degree(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

BivariatePoly gegenbauer_poly(int d, int nu) {
  if (d < 3 || nu < 0) throw DomainError("gegenbauer_poly needs d >= 3, nu >= 0");
  static std::shared_mutex mu;
  static std::map<std::pair<int, int>, BivariatePoly> memo;
  {
    std::shared_lock lk(mu);
    auto it = memo.find({d, nu});
    if (it != memo.end()) return it->second;
  }
  const Rational h = make_rational(d - 2, 2);
  BivariatePoly P;
  for (int mu_ = 0; 2 * mu_ <= nu; ++mu_) {
    Rational c = pochhammer(h, nu - mu_) / Rational(factorial(nu - 2 * mu_) * factorial(mu_));
    c *= Rational(ipow(2, nu - 2 * mu_));
    if (mu_ % 2) c = -c;
    P.add(nu - 2 * mu_, mu_, c);
  }
  std::unique_lock lk(mu);
  memo.emplace(std::make_pair(d, nu), P);
  return P;
}

bool generating_check(int d, int nu_max, const Rational& s, const Rational& m) {
  if (d % 2 != 0 || d < 4) throw DomainError("generating_check needs even d >= 4");
  const int h = (d - 2) / 2;
  // u = 2st - m t^2 as a polynomial in t; (1-u)^{-h} = sum_j C(h+j-1, j) u^j
  std::vector<Rational> u(nu_max + 1, Rational(0));
  if (nu_max >= 1) u[1] = 2 * s;
  if (nu_max >= 2) u[2] = -m;
  std::vector<Rational> total(nu_max + 1, Rational(0)), upow(nu_max + 1, Rational(0));
  upow[0] = 1;
  for (int j = 0; j <= nu_max; ++j) {
    const Rational c(binomial(h + j - 1, j));
    for (int e = 0; e <= nu_max; ++e) total[e] += c * upow[e];
    std::vector<Rational> next(nu_max + 1, Rational(0));
    for (int a = 0; a <= nu_max; ++a)
      for (int b = 1; a + b <= nu_max && b <= 2; ++b) next[a + b] += upow[a] * u[b];
    upow = std::move(next);
  }
  for (int nu = 0; nu <= nu_max; ++nu)
    if (total[nu] != gegenbauer_poly(d, nu).evaluate(s, m)) return false;
  return true;
}

BinaryForm eval_binary(int d, int nu, std::array<long, 2> R, long n, const HalfIntegralMatrix& N) {
  if (N.size() != 2) throw DomainError("eval_binary needs a 2x2 N");
  // s = (r1 x + r2 y)/2, m = n (N11 x^2 + 2 N12 xy + N22 y^2)
  const BinaryForm s(std::vector<Rational>{make_rational(R[0], 2), make_rational(R[1], 2)});
  const BinaryForm m(std::vector<Rational>{Rational(n * N.doubled(0, 0) / 2), Rational(n * N.doubled(0, 1)),
                                           Rational(n * N.doubled(1, 1) / 2)});
  const BivariatePoly P = gegenbauer_poly(d, nu);
  std::vector<BinaryForm> spow{BinaryForm(std::vector<Rational>{Rational(1)})};
  std::vector<BinaryForm> mpow{spow[0]};
  for (int i = 1; i <= nu; ++i) spow.push_back(spow.back() * s);
  for (int j = 1; 2 * j <= nu; ++j) mpow.push_back(mpow.back() * m);
  BinaryForm out(nu);
  for (const auto& [e, c] : P.terms()) out += c * (spow[e.first] * mpow[e.second]);
  return out;
}

}  // namespace eiscong
