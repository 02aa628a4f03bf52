#include "eiscong/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "eiscong/eisen.hpp"
#include "eiscong/errors.hpp"
#include "eiscong/pullback.hpp"
#include "eiscong/qexp.hpp"
#include "eiscong/siegelseries.hpp"

namespace eiscong {

namespace {

using ojson = nlohmann::ordered_json;

struct Config {
  std::string format = "json";
  std::uint64_t budget = std::uint64_t{1} << 24;
  std::size_t precision = 0;
  int k = 0, nu = 0, degree = 0, r = 0;
  long p = 0, n = 1;
  std::string N = "1,0,1", A = "1,0,1", T;
  std::vector<long> ords, m_list;
  std::vector<std::string> at;
  long hecke_m = 1;
  std::optional<int> slot;
  bool relaxed = false;
  std::string ref_gamma, cert_file;
  int oracle_level = -1;
};

std::pair<Rational, Rational> parse_point(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw ParseError("evaluation point must be 'x,y': '" + s + "'", s.size());
  return {parse_rational(s.substr(0, comma)), parse_rational(s.substr(comma + 1))};
}

std::size_t precision_for(const Config& c, int weight) {
  if (c.precision) return c.precision;
  if (const char* env = std::getenv("EISCONG_PRECISION"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    throw ParseError(std::string("EISCONG_PRECISION must be a positive integer, got '") + env + "'", 0);
  }
  return default_precision(weight);
}

void emit(std::ostream& out, const ojson& j) { out << j.dump(2) << "\n"; }

void require_json(const Config& c) {
  if (c.format == "csv") throw DomainError("csv output is only available for scalar tables (lvalue)");
}

int cmd_lvalue(const Config& c, std::ostream& out) {
  const int w = c.k + c.nu;
  const std::size_t P = precision_for(c, w);
  if (static_cast<int>(P) < sturm_bound(w))
    throw SingularSystem("precision " + std::to_string(P) + " is below the Sturm bound " +
                         std::to_string(sturm_bound(w)) + " for weight " + std::to_string(w));
  const EigenBasis basis = eigen_basis(w, P);
  ojson rows = ojson::array();
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const Rational L = std_L_value(c.k, c.nu, basis, j);
    ojson row;
    row["index"] = j;
    row["a2"] = to_string(basis.form(j)[2]);
    row["L_value"] = to_string(L);
    ojson ords = ojson::object();
    for (long q : c.ords) ords[std::to_string(q)] = L == 0 ? ojson(nullptr) : ojson(ord_p(L, q));
    row["ord"] = ords;
    rows.push_back(row);
  }
  if (c.format == "json") {
    emit(out, ojson{{"k", c.k}, {"nu", c.nu}, {"weight", w}, {"forms", rows}});
  } else if (c.format == "csv") {
    out << "index,a2,L_value";
    for (long q : c.ords) out << ",ord_" << q;
    out << "\n";
    for (const auto& row : rows) {
      out << row["index"].get<std::size_t>() << "," << row["a2"].get<std::string>() << ","
          << row["L_value"].get<std::string>();
      for (long q : c.ords) {
        const auto& v = row["ord"][std::to_string(q)];
        out << "," << (v.is_null() ? std::string("inf") : std::to_string(v.get<int>()));
      }
      out << "\n";
    }
  } else {
    for (const auto& row : rows) {
      out << "L(" << c.k - 1 << ", f" << row["index"].get<std::size_t>() << ", St) = " << row["L_value"].get<std::string>();
      for (long q : c.ords) {
        const auto& v = row["ord"][std::to_string(q)];
        out << "  ord_" << q << " = " << (v.is_null() ? std::string("inf") : std::to_string(v.get<int>()));
      }
      out << "\n";
    }
  }
  return kExitOk;
}

int cmd_epsilon(const Config& c, std::ostream& out) {
  require_json(c);
  const HalfIntegralMatrix N = HalfIntegralMatrix::parse(c.N);
  const BinaryForm e = c.hecke_m == 1 ? epsilon(c.k, c.nu, c.n, N) : epsilon_hecke(c.k, c.nu, c.hecke_m, c.n, N);
  ojson coeffs = ojson::array(), evals = ojson::array();
  for (const auto& x : e.coefficients()) coeffs.push_back(to_string(x));
  for (const auto& s : c.at) {
    auto [x, y] = parse_point(s);
    evals.push_back(ojson{{"at", s}, {"value", to_string(e.evaluate(x, y))}});
  }
  if (c.format == "json") {
    emit(out, ojson{{"k", c.k}, {"nu", c.nu}, {"m", c.hecke_m}, {"n", c.n}, {"N", N.to_string()},
                    {"coefficients", coeffs}, {"evaluations", evals}});
  } else {
    for (int i = 0; i <= e.degree(); ++i) out << "x^" << e.degree() - i << " y^" << i << ": " << to_string(e[i]) << "\n";
    for (const auto& ev : evals) out << "at (" << ev["at"].get<std::string>() << "): " << ev["value"].get<std::string>() << "\n";
  }
  return kExitOk;
}

int cmd_certify(const Config& c, std::ostream& out) {
  require_json(c);
  std::optional<Rational> ref;
  if (!c.ref_gamma.empty()) ref = parse_rational(c.ref_gamma);
  const CongruenceCertificate cert = certify(c.k, c.nu, c.p, HalfIntegralMatrix::parse(c.A), c.m_list, c.slot,
                                             c.relaxed ? Strictness::Relaxed : Strictness::Strict, ref);
  if (c.format == "json") {
    out << certificate_to_json(cert) << "\n";
  } else {
    out << "verdict: " << to_string(cert.verdict) << "\n"
        << "L_value: " << to_string(cert.L_value) << " (alpha = " << cert.alpha << ")\n"
        << "conditions: (1) " << cert.status.cond1 << " (2) " << cert.status.cond2 << " (3) " << cert.status.cond3
        << " (3') " << cert.status.cond3_prime << "\n";
    if (!cert.implied_congruence.empty()) out << cert.implied_congruence << "\n";
  }
  return cert.verdict == Verdict::NotEstablished ? kExitNotEstablished : kExitOk;
}

int cmd_verify(const Config& c, std::ostream& out) {
  std::ifstream in(c.cert_file);
  if (!in) throw DomainError("cannot read certificate file '" + c.cert_file + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  CongruenceCertificate cert;
  try {
    cert = certificate_from_json(ss.str());
  } catch (const InvariantViolation& e) {
    out << "certificate rejected: " << e.what() << "\n";
    return kExitNotEstablished;
  }
  out << "certificate verified: " << to_string(cert.verdict) << "\n";
  return cert.verdict == Verdict::NotEstablished ? kExitNotEstablished : kExitOk;
}

int cmd_siegel_series(const Config& c, std::ostream& out) {
  require_json(c);
  const HalfIntegralMatrix B = HalfIntegralMatrix::parse(c.T);
  if (B.det_doubled() == 0) throw DomainError("siegel-series needs a nondegenerate matrix");
  if (!is_prime(c.p)) throw DomainError("p must be prime");
  const SiegelSeriesPolynomial F = local_F(c.p, B);
  ojson coeffs = ojson::array();
  for (const auto& x : F.coefficients()) coeffs.push_back(x.get_str());
  ojson j{{"p", c.p}, {"T", B.to_string()}, {"F", coeffs}};
  if (c.oracle_level >= 0) {
    const LaurentPolyX b = oracle_bp(c.p, B, c.oracle_level, OracleOptions{c.budget, 0});
    ojson oc = ojson::array();
    for (int e = 0; e <= c.oracle_level; ++e) oc.push_back(to_string(b.coefficient(e)));
    j["oracle_b"] = oc;
  }
  if (c.format == "json") {
    emit(out, j);
  } else {
    out << "F_" << c.p << "(" << B.to_string() << ", X) =";
    for (std::size_t i = 0; i < F.coefficients().size(); ++i) out << " " << F.coefficients()[i] << "*X^" << i;
    out << "\n";
  }
  return kExitOk;
}

int cmd_eis_coeff(const Config& c, std::ostream& out) {
  require_json(c);
  const EisensteinContext E(c.degree, c.k);
  const HalfIntegralMatrix T = HalfIntegralMatrix::parse(c.T);
  const Rational a = eis_coeff(E, T);
  if (c.format == "json")
    emit(out, ojson{{"degree", c.degree}, {"k", c.k}, {"T", T.to_string()}, {"rank", rank(T)}, {"value", to_string(a)}});
  else
    out << "a(" << T.to_string() << ") = " << to_string(a) << "\n";
  return kExitOk;
}

int cmd_cohen(const Config& c, std::ostream& out) {
  require_json(c);
  const QExpansion C = cohen_series(c.k, c.r, precision_for(c, c.k));
  ojson coeffs = ojson::array();
  for (const auto& x : C.coefficients()) coeffs.push_back(to_string(x));
  if (c.format == "json")
    emit(out, ojson{{"k", c.k}, {"r", c.r}, {"precision", C.precision()}, {"coefficients", coeffs}});
  else
    for (std::size_t i = 0; i <= C.precision(); ++i) out << "q^" << i << ": " << to_string(C[i]) << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"exact Eisenstein congruence toolkit", "eiscong"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv", "pretty"}));
  app.add_option("--budget", c.budget, "oracle enumeration budget");
  app.add_option("--precision", c.precision, "q-expansion precision (default: EISCONG_PRECISION or automatic)");

  auto* lv = app.add_subcommand("lvalue", "normalized standard L-values of weight k+nu eigenforms");
  lv->add_option("--k", c.k)->required();
  lv->add_option("--nu", c.nu)->required();
  lv->add_option("--ords", c.ords, "primes for ord_p columns")->delimiter(',');

  auto* ep = app.add_subcommand("epsilon", "pullback coefficient epsilon_{k,nu}(n, N) as a binary form");
  ep->add_option("--k", c.k)->required();
  ep->add_option("--nu", c.nu)->required();
  ep->add_option("--n", c.n);
  ep->add_option("--N", c.N, "2x2 matrix a,b,c");
  ep->add_option("--m", c.hecke_m, "apply T^(m)");
  ep->add_option("--at", c.at, "evaluation point x,y (repeatable)");

  auto* ce = app.add_subcommand("certify", "congruence certificate");
  ce->add_option("--k", c.k)->required();
  ce->add_option("--nu", c.nu)->required();
  ce->add_option("--p", c.p)->required();
  ce->add_option("--A", c.A, "2x2 matrix a,b,c");
  ce->add_option("--m", c.m_list, "Hecke indices m_1..m_d")->delimiter(',');
  ce->add_option("--slot", c.slot, "binary form slot for the determinant");
  ce->add_flag("--relaxed", c.relaxed, "waive the size bound on p");
  ce->add_option("--ref-gamma", c.ref_gamma, "reference gamma recorded for display");

  auto* ve = app.add_subcommand("verify", "re-verify a stored certificate");
  ve->add_option("file", c.cert_file)->required();

  auto* ss = app.add_subcommand("siegel-series", "local Siegel series polynomial F_p");
  ss->add_option("--p", c.p)->required();
  ss->add_option("--T", c.T)->required();
  ss->add_option("--oracle", c.oracle_level, "also run the character-sum oracle up to this level");

  auto* ec = app.add_subcommand("eisenstein-coeff", "Fourier coefficient of the normalized Siegel-Eisenstein series");
  ec->add_option("--degree", c.degree)->required();
  ec->add_option("--k", c.k)->required();
  ec->add_option("--T", c.T)->required();

  auto* co = app.add_subcommand("cohen-series", "q-expansion of the Cohen series C_{k,r}");
  co->add_option("--k", c.k)->required();
  co->add_option("--r", c.r)->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*lv) return cmd_lvalue(c, out);
    if (*ep) return cmd_epsilon(c, out);
    if (*ce) return cmd_certify(c, out);
    if (*ve) return cmd_verify(c, out);
    if (*ss) return cmd_siegel_series(c, out);
    if (*ec) return cmd_eis_coeff(c, out);
    if (*co) return cmd_cohen(c, out);
  } catch (const UnsupportedHeckeField& e) {
    err << "UnsupportedHeckeField: " << e.what() << "\n";
    return kExitUnsupportedField;
  } catch (const SingularSystem& e) {
    err << "SingularSystem: " << e.what() << "\n";
    return kExitSingular;
  } catch (const BudgetExceeded& e) {
    err << "BudgetExceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const ParseError& e) {
    err << "ParseError: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "DomainError: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace eiscong
