#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <shared_mutex>

#include "eiscong/arith.hpp"
#include "eiscong/quadform.hpp"

namespace eiscong {

Rational Z_const(int n, int k);

// a(T) of the normalized degree-n Siegel-Eisenstein series of weight k
class EisensteinContext {
 public:
  EisensteinContext(int n, int k);
  int degree() const { return n_; }
  int weight() const { return k_; }
  Rational coefficient(const HalfIntegralMatrix& T) const;

 private:
  struct Cache {
    std::shared_mutex mu;
    std::map<std::array<std::array<std::int64_t, 3>, 3>, Rational> memo;
  };
  int n_, k_;
  std::shared_ptr<Cache> cache_;
};

Rational eis_coeff(const EisensteinContext& ctx, const HalfIntegralMatrix& T);

}  // namespace eiscong
