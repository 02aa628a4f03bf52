#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eiscong/arith.hpp"
#include "eiscong/gegenbauer.hpp"
#include "eiscong/quadform.hpp"

namespace eiscong {

Rational gamma1(int k, int nu);
Rational gamma2(int k, int nu);
PiRational pullback_c1(int k, int nu);
PiRational pullback_c2(int k, int nu);
// gamma1 rebuilt from c_{k,nu,1} and the Gamma-factor ratio, for cross-checking
Rational gamma1_from_c1(int k, int nu);

BinaryForm epsilon(int k, int nu, long n, const HalfIntegralMatrix& N);
BinaryForm epsilon_hecke(int k, int nu, long m, long n, const HalfIntegralMatrix& N);

struct Cond2Result {
  Rational zeta_times_det;  // zeta(3-2k) * det
  Rational det_value;
  Rational delta;           // det(lambda_{j, m_i})
};
Cond2Result cond2_determinant(int k, int nu, const HalfIntegralMatrix& N, const std::vector<long>& m_list, int slot);

// first slot whose coefficient in epsilon(1, N) is a p-unit, -1 if none
int pick_slot(const BinaryForm& eps1, long p);

enum class Strictness { Strict, Relaxed };
enum class Verdict { ProvenModP, ProvenModPAlpha, NotEstablished };
std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

struct ConditionStatus {
  bool cond1 = false;        // ord_p(L) > 0
  bool cond2 = false;        // determinant criterion
  bool cond3 = false;        // p >= 2(k+nu) - 3
  bool cond3_prime = false;  // p >= max(2k, k+nu-2)
  std::optional<int> ord_p_gamma1;
  bool size_bound = false;   // cond3 or (cond3' and ord_p(gamma1) = 0)
  bool size_bound_waived = false;
  bool operator==(const ConditionStatus&) const = default;
};

struct CongruenceCertificate {
  int k = 0, nu = 0;
  long p = 0;
  HalfIntegralMatrix A;
  Strictness strictness = Strictness::Strict;
  int dim_cusp = 0;
  Rational L_value;
  int alpha = 0;
  Rational gamma1, gamma2;
  Rational zeta3m2k;
  BinaryForm epsilon1{0};
  Rational epsilon_at_10, epsilon_at_11;
  std::vector<long> m_list;
  int slot = 0;
  Cond2Result witness;
  std::optional<Rational> reference_gamma;
  ConditionStatus status;
  Verdict verdict = Verdict::NotEstablished;
  std::string implied_congruence;
};

// recompute status and verdict from the stored quantities
ConditionStatus derive_status(const CongruenceCertificate& c);
Verdict derive_verdict(const CongruenceCertificate& c, const ConditionStatus& s);

CongruenceCertificate certify(int k, int nu, long p, const HalfIntegralMatrix& A, std::vector<long> m_list,
                              std::optional<int> slot, Strictness strictness,
                              std::optional<Rational> reference_gamma = std::nullopt);

std::string certificate_to_json(const CongruenceCertificate& c, int indent = 2);
// parses and re-verifies; throws InvariantViolation when stored and recomputed verdicts differ
CongruenceCertificate certificate_from_json(const std::string& text);

}  // namespace eiscong
