#include <json.hpp>

#include "eiscong/errors.hpp"
#include "eiscong/pullback.hpp"

namespace eiscong {

namespace {

using ojson = nlohmann::ordered_json;

ojson rat(const Rational& q) { return ojson{{"num", Integer(q.get_num()).get_str()}, {"den", Integer(q.get_den()).get_str()}}; }

Rational rat_from(const ojson& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den")) throw ParseError("rational must be {num, den}", 0);
  Integer n, d;
  if (n.set_str(j.at("num").get<std::string>(), 10) != 0 || d.set_str(j.at("den").get<std::string>(), 10) != 0)
    throw ParseError("malformed rational string", 0);
  return make_rational(n, d);
}

}  // namespace

std::string certificate_to_json(const CongruenceCertificate& c, int indent) {
  ojson eps = ojson::array();
  for (const auto& x : c.epsilon1.coefficients()) eps.push_back(rat(x));
  ojson j;
  j["schema"] = "eiscong-cert-v1";
  j["k"] = c.k;
  j["nu"] = c.nu;
  j["p"] = c.p;
  j["A"] = c.A.to_string();
  j["strictness"] = c.strictness == Strictness::Strict ? "strict" : "relaxed";
  j["dim_cusp"] = c.dim_cusp;
  j["L_value"] = rat(c.L_value);
  j["alpha"] = c.alpha;
  j["gamma1"] = rat(c.gamma1);
  j["gamma2"] = rat(c.gamma2);
  j["zeta3m2k"] = rat(c.zeta3m2k);
  j["epsilon"] = ojson{{"coefficients", eps}, {"at_1_0", rat(c.epsilon_at_10)}, {"at_1_1", rat(c.epsilon_at_11)}};
  j["epsilon_witness"] = ojson{{"m_list", c.m_list},
                               {"slot", c.slot},
                               {"determinant", rat(c.witness.det_value)},
                               {"zeta_times_determinant", rat(c.witness.zeta_times_det)},
                               {"delta", rat(c.witness.delta)}};
  j["reference_gamma"] = c.reference_gamma ? rat(*c.reference_gamma) : ojson(nullptr);
  j["conditions"] = ojson{{"cond1", c.status.cond1},
                          {"cond2", c.status.cond2},
                          {"cond3", c.status.cond3},
                          {"cond3_prime", c.status.cond3_prime},
                          {"ord_p_gamma1", c.status.ord_p_gamma1 ? ojson(*c.status.ord_p_gamma1) : ojson(nullptr)},
                          {"size_bound", c.status.size_bound},
                          {"size_bound_waived", c.status.size_bound_waived}};
  j["verdict"] = to_string(c.verdict);
  j["implied_congruence"] = c.implied_congruence;
  return j.dump(indent);
}

CongruenceCertificate certificate_from_json(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("certificate is not valid JSON: ") + e.what(), e.byte);
  }
  try {
    if (j.at("schema") != "eiscong-cert-v1") throw ParseError("unknown certificate schema", 0);
    CongruenceCertificate c;
    c.k = j.at("k").get<int>();
    c.nu = j.at("nu").get<int>();
    c.p = j.at("p").get<long>();
    c.A = HalfIntegralMatrix::parse(j.at("A").get<std::string>());
    const std::string st = j.at("strictness").get<std::string>();
    if (st != "strict" && st != "relaxed") throw ParseError("strictness must be strict or relaxed", 0);
    c.strictness = st == "strict" ? Strictness::Strict : Strictness::Relaxed;
    c.dim_cusp = j.at("dim_cusp").get<int>();
    c.L_value = rat_from(j.at("L_value"));
    c.alpha = j.at("alpha").get<int>();
    c.gamma1 = rat_from(j.at("gamma1"));
    c.gamma2 = rat_from(j.at("gamma2"));
    c.zeta3m2k = rat_from(j.at("zeta3m2k"));
    std::vector<Rational> eps;
    for (const auto& x : j.at("epsilon").at("coefficients")) eps.push_back(rat_from(x));
    c.epsilon1 = BinaryForm(eps);
    c.epsilon_at_10 = rat_from(j.at("epsilon").at("at_1_0"));
    c.epsilon_at_11 = rat_from(j.at("epsilon").at("at_1_1"));
    const auto& w = j.at("epsilon_witness");
    c.m_list = w.at("m_list").get<std::vector<long>>();
    c.slot = w.at("slot").get<int>();
    c.witness.det_value = rat_from(w.at("determinant"));
    c.witness.zeta_times_det = rat_from(w.at("zeta_times_determinant"));
    c.witness.delta = rat_from(w.at("delta"));
    if (!j.at("reference_gamma").is_null()) c.reference_gamma = rat_from(j.at("reference_gamma"));
    const auto& cs = j.at("conditions");
    c.status.cond1 = cs.at("cond1").get<bool>();
    c.status.cond2 = cs.at("cond2").get<bool>();
    c.status.cond3 = cs.at("cond3").get<bool>();
    c.status.cond3_prime = cs.at("cond3_prime").get<bool>();
    if (!cs.at("ord_p_gamma1").is_null()) c.status.ord_p_gamma1 = cs.at("ord_p_gamma1").get<int>();
    c.status.size_bound = cs.at("size_bound").get<bool>();
    c.status.size_bound_waived = cs.at("size_bound_waived").get<bool>();
    c.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    c.implied_congruence = j.at("implied_congruence").get<std::string>();

    // recompute everything that follows from the stored inputs
    if (c.gamma1 != gamma1(c.k, c.nu) || c.gamma2 != gamma2(c.k, c.nu)) throw InvariantViolation("gamma mismatch");
    if (c.zeta3m2k != zeta_neg(2 * c.k - 2)) throw InvariantViolation("zeta(3-2k) mismatch");
    if (c.witness.zeta_times_det != c.zeta3m2k * c.witness.det_value)
      throw InvariantViolation("determinant witness mismatch");
    if (c.epsilon1.degree() != c.nu || c.epsilon_at_10 != c.epsilon1.evaluate(1, 0) ||
        c.epsilon_at_11 != c.epsilon1.evaluate(1, 1))
      throw InvariantViolation("epsilon evaluations mismatch");
    const int alpha = c.L_value == 0 ? 0 : ord_p(c.L_value, c.p);
    if (alpha != c.alpha) throw InvariantViolation("alpha does not match ord_p(L)");
    const ConditionStatus s = derive_status(c);
    if (!(s == c.status)) throw InvariantViolation("stored condition status does not match recomputation");
    if (derive_verdict(c, s) != c.verdict) throw InvariantViolation("stored verdict does not match recomputation");
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed certificate: ") + e.what(), 0);
  }
}

}  // namespace eiscong
