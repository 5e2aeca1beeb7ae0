// qcpn: exact verification of the curvature of positive line bundles over
// quantum projective space.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qcpn/curvature.hpp"
#include "qcpn/expr.hpp"
#include "qcpn/hopf.hpp"
#include "qcpn/session.hpp"

namespace {

using namespace qcpn;

constexpr int kExitUsage = 2;

void print_human(const VerificationReport& r) {
  std::cout << (r.pass ? "PASS " : "FAIL ") << r.check << " n=" << r.n;
  if (r.k) std::cout << " k=" << *r.k;
  if (r.coefficient) std::cout << " coefficient=" << r.coefficient->to_text();
  std::cout << "\n";
  if (r.witness) std::cout << "     witness: " << *r.witness << "\n";
  for (const auto& note : r.notes) std::cout << "     note: " << note << "\n";
}

int cmd_verify_all(const SessionConfig& cfg, bool json, bool timing) {
  int passed = 0, failed = 0;
  int code = run_verify_all(cfg, [&](const VerificationReport& r) {
    (r.pass ? passed : failed)++;
    if (json) {
      std::cout << r.to_json(timing).dump() << "\n";
    } else {
      print_human(r);
    }
    std::cout.flush();
  });
  if (!json) std::cout << passed << " passed, " << failed << " failed\n";
  return code;
}

int cmd_nf(const std::string& text, int n, int oracle_degree, bool json) {
  const Algebra alg(n);
  NCPoly nf, free;
  try {
    nf = parse_expression(alg, text);
    free = parse_expression_free(alg, text);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  }
  // The unreduced expression and its normal form must pair identically.
  auto choice = select_convention(n, oracle_degree);
  bool checked = false, agrees = true;
  if (choice.chosen) {
    PairingOracle oracle(n, choice.chosen->ordering);
    agrees = oracle.oracle_equal(free, nf, oracle_degree);
    checked = true;
  }
  std::optional<int> deg;
  try {
    deg = alg.degree(nf);
  } catch (const std::invalid_argument&) {
  }
  if (json) {
    nlohmann::json j{{"input", text}, {"n", n}, {"normal_form", nf.to_text(n)}, {"json", nf.to_json()}};
    if (deg) j["degree"] = *deg;
    if (checked) j["oracle_agrees"] = agrees;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << nf.to_text(n) << "\n";
  }
  return agrees ? 0 : 1;
}

int cmd_curvature(const SessionConfig& cfg, int k, bool json) {
  const Algebra alg(cfg.n, RelationConvention::Anchor, cfg.term_limit);
  TableSetup setup = setup_action_table(alg, cfg);
  if (!setup.table) {
    for (const auto& r : setup.reports) std::cerr << r.to_json().dump() << "\n";
    return kExitUsage;
  }
  const Calculus calc(alg, *setup.table);
  VerificationReport r = curvature_coefficient(calc, k);
  if (json) {
    std::cout << r.to_json().dump() << "\n";
  } else {
    std::cout << (r.coefficient ? r.coefficient->to_text() : std::string("(not proportional)")) << "\n";
    std::cout << (r.pass ? "pass" : "fail") << ": expected " << qint_round(k, -2).to_text() << "\n";
    for (const auto& note : r.notes) std::cerr << "note: " << note << "\n";
  }
  return r.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification engine for line-bundle curvature over quantum projective space"};
  app.require_subcommand(1);

  SessionConfig cfg;
  bool json = false, timing = false;
  std::string ansatz = "printed-rows";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "rank n of SU(n+1)")->capture_default_str();
    sub->add_option("--term-limit", cfg.term_limit, "abort when an intermediate exceeds this many terms")
        ->capture_default_str();
    sub->add_option("--cache-dir", cfg.cache_dir, "directory for the solved action table");
    sub->add_option("--ansatz", ansatz, "action-table ansatz")
        ->check(CLI::IsMember({"printed-rows", "weight-compatible"}))
        ->capture_default_str();
    sub->add_flag("--json", json, "JSON output");
  };

  auto* verify = app.add_subcommand("verify-all", "run every suite and emit one report per check");
  add_common(verify);
  verify->add_option("--k-max", cfg.k_max, "largest k in the line-bundle grid")->capture_default_str();
  verify->add_option("--oracle-degree", cfg.oracle_degree, "PBW degree bound for the oracle")->capture_default_str();
  verify->add_option("--seed", cfg.seed, "seed for the random corpora")->capture_default_str();
  verify->add_flag("--timing", timing, "include wall-clock times in JSON output");

  std::string expr;
  int nf_oracle_degree = 3;
  auto* nf = app.add_subcommand("nf", "print the normal form of an expression");
  nf->add_option("expr", expr, "expression in u[i,j], z[i], zbar[i], s, q")->required();
  nf->add_option("--n", cfg.n, "rank n")->capture_default_str();
  nf->add_option("--oracle-degree", nf_oracle_degree, "PBW degree bound for the cross-check")->capture_default_str();
  nf->add_flag("--json", json, "JSON output");

  int k = 1;
  auto* curv = app.add_subcommand("curvature", "coefficient c with P(z1^k) = c z1^(k-1) P(z1)");
  add_common(curv);
  curv->add_option("--k", k, "line-bundle degree")->required()->check(CLI::Range(1, 12));

  std::optional<int> round, bracket, factorial;
  std::vector<int> binomial;
  std::optional<int> base;
  int qn = 1;
  auto* qint = app.add_subcommand("qint", "quantum integers, factorials and binomials");
  auto* g = qint->add_option_group("kind")->require_option(1);
  g->add_option("--round", round, "(m)_q = 1 + q + ... + q^(m-1)")->check(CLI::Range(0, 200));
  g->add_option("--bracket", bracket, "[m]_q = q^(1-m) + ... + q^(m-1)")->check(CLI::Range(0, 200));
  g->add_option("--factorial", factorial, "[m]_q!")->check(CLI::Range(0, 60));
  g->add_option("--binomial", binomial, "[N r]_q")->expected(2)->check(CLI::Range(0, 60));
  qint->add_option("--n", qn, "q = s^(n+1)")->capture_default_str()->check(CLI::Range(1, 12));
  qint->add_option("--base", base, "base exponent t for s^t (default n+1)");
  qint->add_flag("--json", json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    cfg.ansatz = ansatz == "weight-compatible" ? ActionAnsatz::WeightCompatible : ActionAnsatz::PrintedRows;
    if (*verify) {
      cfg.validate();
      return cmd_verify_all(cfg, json, timing);
    }
    if (*nf) {
      cfg.validate();
      return cmd_nf(expr, cfg.n, nf_oracle_degree, json);
    }
    if (*curv) {
      cfg.validate();
      return cmd_curvature(cfg, k, json);
    }
    if (*qint) {
      const int t = base.value_or(qn + 1);
      if (t == 0) throw std::invalid_argument("base exponent must be nonzero");
      ScalarRat v;
      if (round) v = qint_round(*round, t);
      else if (bracket) v = qint_bracket(*bracket, t);
      else if (factorial) v = qfactorial(*factorial, t);
      else {
        if (binomial[1] > binomial[0]) throw std::invalid_argument("binomial needs r <= N");
        v = qbinomial(binomial[0], binomial[1], t);
      }
      std::cout << (json ? v.to_json().dump() : v.to_text(qn + 1)) << "\n";
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
