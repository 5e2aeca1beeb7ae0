// Acceptance run: one line per criterion, details indented below it.
// Exit status is 0 only when every criterion passes.

#include <algorithm>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "qcpn/curvature.hpp"
#include "qcpn/session.hpp"

using namespace qcpn;

namespace {

struct Criterion {
  Criterion(int id, std::string title) : id(id), title(std::move(title)) {}

  int id;
  std::string title;
  bool pass = true;
  std::vector<std::string> details;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      details.push_back("FAIL " + what);
    }
  }
  void note(const std::string& what) { details.push_back(what); }
};

constexpr int kKMax = 4;

struct Setup {
  Algebra alg;
  std::optional<ActionTable> printed;  // printed rows; absent when inconsistent
  std::string printed_error;
  ActionTable table;                 // table used for the calculus checks
  ActionAnsatz used;

  explicit Setup(int n) : alg(n), used(ActionAnsatz::PrintedRows) {
    try {
      printed = solve_e0_action(alg, ActionAnsatz::PrintedRows).table;
    } catch (const InconsistentActionError& e) {
      printed_error = e.what();
    }
    if (printed) {
      table = *printed;
    } else {
      used = ActionAnsatz::WeightCompatible;
      table = solve_e0_action(alg, used).table;
    }
  }
};

std::string tag(int n, std::optional<int> k = {}) {
  return "n=" + std::to_string(n) + (k ? " k=" + std::to_string(*k) : std::string());
}

bool all_pass(const std::vector<VerificationReport>& rs, Criterion& c, int n) {
  bool ok = true;
  for (const auto& r : rs)
    if (!r.pass) {
      ok = false;
      c.require(false, tag(n) + " " + r.check + ": " + r.witness.value_or(""));
    }
  return ok;
}

}  // namespace

int main() {
  std::vector<Setup> setups;
  for (int n = 1; n <= 3; ++n) setups.emplace_back(n);
  std::vector<Calculus> calcs;
  for (auto& s : setups) calcs.emplace_back(s.alg, s.table);

  std::vector<Criterion> out;

  {
    Criterion c{1, "lemma P(z1^k) = (k)_{s^2} P(z1) z1^{k-1}"};
    for (auto& calc : calcs) {
      const int n = calc.n();
      if (setups[static_cast<std::size_t>(n - 1)].used != ActionAnsatz::PrintedRows)
        c.note(tag(n) + " uses the weight-compatible table (printed rows are inconsistent)");
      for (int k = 1; k <= kKMax; ++k) {
        VerificationReport r = verify_lemma(calc, k);
        std::string obs = r.coefficient ? r.coefficient->to_text() : "not proportional";
        c.require(r.pass, tag(n, k) + " observed ratio " + obs + ", expected " + qint_round(k, 2).to_text());
      }
      VerificationReport alt = verify_lemma(calc, kKMax, 2 * (n + 1));
      c.note(tag(n) + " ratio (k)_{q^2} = (k)_{s^" + std::to_string(2 * (n + 1)) + "} holds through k=" +
             std::to_string(kKMax) + ": " + (alt.pass ? "yes" : "no"));
    }
    out.push_back(c);
  }
  {
    Criterion c{2, "commutation z1 P(z1) = s^2 P(z1) z1"};
    for (auto& calc : calcs) {
      VerificationReport r = verify_commutation(calc);
      c.require(r.pass, tag(calc.n()) + ": " + r.witness.value_or(""));
    }
    out.push_back(c);
  }
  {
    Criterion c{3, "curvature coefficient (k)_{s^-2}, integer k at s = 1"};
    for (auto& calc : calcs) {
      const int n = calc.n();
      for (int k = 1; k <= kKMax; ++k) {
        VerificationReport r = curvature_coefficient(calc, k);
        if (!r.coefficient) {
          c.require(false, tag(n, k) + " P(z1^k) is not proportional to z1^(k-1) P(z1)");
          continue;
        }
        c.require(r.pass, tag(n, k) + " coefficient " + r.coefficient->to_text() + ", expected " +
                              qint_round(k, -2).to_text());
        auto at1 = r.coefficient->evaluate(1);
        c.require(at1 && *at1 == BigRational(k), tag(n, k) + " value at s=1 is not " + std::to_string(k));
      }
    }
    c.note("classical limit: every coefficient evaluates to k at s=1 unless listed above");
    out.push_back(c);
  }
  {
    Criterion c{4, "holomorphicity of z1^k and z_i"};
    for (auto& calc : calcs)
      for (int k = 1; k <= kKMax; ++k) {
        VerificationReport r = verify_holomorphic(calc, k);
        c.require(r.pass, tag(calc.n(), k) + ": " + r.witness.value_or(""));
      }
    out.push_back(c);
  }
  {
    Criterion c{5, "action table from the printed rows: relations, factoring, e0 <| z1 in C e0"};
    SessionConfig cfg;
    cfg.factoring_pairs = 200;
    for (std::size_t i = 0; i < setups.size(); ++i) {
      const Setup& s = setups[i];
      const int n = s.alg.n();
      auto judge = [&](const ActionTable& t, bool counts, const std::string& label) {
        auto defects = relation_defects(s.alg, t);
        std::vector<std::string> fails;
        if (!defects.empty()) fails.push_back("relation defect " + defects.front());
        Calculus calc(s.alg, t);
        for (const auto& r : calculus_suite(calc, cfg))
          if ((r.check == "action_factoring" || r.check == "e0_eigen_z1") && !r.pass)
            fails.push_back(r.check + ": " + r.witness.value_or(""));
        for (const auto& f : fails)
          if (counts) c.require(false, tag(n) + " " + f);
          else c.note(tag(n) + " " + label + ": " + f);
        if (fails.empty()) c.note(tag(n) + " " + label + ": solved, 0 defects, factoring and e0 eigenvector hold");
      };
      if (s.printed) {
        judge(*s.printed, true, "printed rows");
      } else {
        c.require(false, tag(n) + " solve fails: " + s.printed_error);
        judge(s.table, false, "weight-compatible rows (not counted)");
      }
    }
    out.push_back(c);
  }
  {
    Criterion c{6, "normal form equality agrees with the pairing oracle"};
    for (const auto& s : setups) {
      SessionConfig cfg;
      cfg.n = s.alg.n();
      cfg.oracle_pairs = 100;
      for (const auto& r : presentation_suite(s.alg, cfg)) {
        if (r.check != "oracle_equivalence" && r.check != "presentation_certification") continue;
        c.require(r.pass, tag(cfg.n) + " " + r.check + ": " + r.witness.value_or(""));
      }
    }
    out.push_back(c);
  }
  {
    Criterion c{7, "Hopf axioms and U_q relations on V, V (x) V"};
    for (const auto& s : setups) {
      SessionConfig cfg;
      cfg.n = s.alg.n();
      cfg.hopf_words = 50;
      auto rs = hopf_suite(s.alg, cfg);
      if (all_pass(rs, c, cfg.n)) c.note(tag(cfg.n) + ": " + std::to_string(rs.size()) + " checks");
    }
    out.push_back(c);
  }
  {
    Criterion c{8, "q-integer identities"};
    for (int n = 1; n <= 3; ++n) all_pass(scalar_suite(n + 1), c, n);
    out.push_back(c);
  }
  {
    Criterion c{9, "negative controls"};
    for (auto& calc : calcs) {
      const int n = calc.n();
      VerificationReport com = verify_commutation(calc, spow(3));
      c.require(!com.pass && com.witness, tag(n) + " commutation with s^3 passed");
      for (int k = 2; k <= kKMax; ++k) {
        VerificationReport r = verify_lemma(calc, k, 3);
        c.require(!r.pass && r.witness, tag(n, k) + " lemma with base s^3 passed");
      }
    }
    c.note("lemma base perturbation is vacuous at k=1, since (1)_x = 1 for every x");
    std::mt19937_64 rng(20240601);
    for (const auto& s : setups) {
      const int n = s.alg.n();
      const ActionTable& t = s.table;
      std::vector<std::pair<int, Gen>> slots;  // b = -1: delbar entry
      for (Gen g : s.alg.generators()) {
        for (int b = 0; b < t.dim(); ++b) slots.emplace_back(b, g);
        slots.emplace_back(-1, g);
      }
      if (n == 3) {
        std::shuffle(slots.begin(), slots.end(), rng);
        slots.resize(24);
      }
      int caught = 0;
      for (const auto& [b, g] : slots) {
        ActionTable p = t;
        if (b >= 0) {
          LambdaVec v = p.entry(b, g);
          v.c[static_cast<std::size_t>(b)] += spow(1);
          p.set_entry(b, g, v);
        } else {
          LambdaVec v = p.delbar_gen(g);
          v.c[static_cast<std::size_t>(basis_zero(n))] += spow(1);
          p.set_delbar_gen(g, v);
        }
        auto defects = relation_defects(s.alg, p);
        if (defects.empty())
          c.require(false, tag(n) + " perturbing " + (b >= 0 ? basis_name(n, b) + " <| " : std::string("delbar ")) +
                               word_text(Word{g}) + " went unnoticed");
        else
          ++caught;
      }
      c.note(tag(n) + ": " + std::to_string(caught) + "/" + std::to_string(slots.size()) +
             " single-entry perturbations detected" + (n == 3 ? " (seeded sample)" : ""));
    }
    out.push_back(c);
  }

  bool all = true;
  for (const auto& c : out) {
    all = all && c.pass;
    std::cout << "criterion " << c.id << ": " << (c.pass ? "PASS" : "FAIL") << "  " << c.title << "\n";
    for (const auto& d : c.details) std::cout << "    " << d << "\n";
  }
  return all ? 0 : 1;
}
