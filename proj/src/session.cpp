#include "qcpn/session.hpp"

#include <chrono>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qcpn/corpus.hpp"
#include "qcpn/curvature.hpp"
#include "qcpn/hopf.hpp"

namespace qcpn {

namespace {

constexpr std::size_t kWitnessTerms = 6;

// Collapses a list of sub-checks into one report: pass iff all pass, first
// failure becomes the witness, distinct notes are kept.
VerificationReport merge(const std::string& name, int n, const std::vector<VerificationReport>& parts) {
  VerificationReport r = VerificationReport::ok(name, n);
  std::set<std::string> seen;
  int failures = 0;
  for (const auto& p : parts) {
    if (!p.pass) {
      ++failures;
      if (r.pass) {
        r = VerificationReport::failed(name, n, std::nullopt, p.check + ": " + p.witness.value_or(""));
      }
    }
    for (const auto& note : p.notes)
      if (seen.insert(note).second) r.notes.push_back(note);
  }
  if (failures > 1) r.notes.push_back(std::to_string(failures) + " of " + std::to_string(parts.size()) +
                                      " sub-checks failed");
  return r;
}

std::string poly_text(const Algebra& alg, const NCPoly& p) {
  std::string t = p.to_text(alg.n());
  if (t.size() > 400) t = t.substr(0, 400) + " ...";
  return t;
}

// First random element in `words` on which `check` returns a witness.
template <class F>
VerificationReport sample_check(const std::string& name, int n, int count, F&& check) {
  for (int i = 0; i < count; ++i) {
    if (auto w = check(i)) return VerificationReport::failed(name, n, std::nullopt, *w);
  }
  auto r = VerificationReport::ok(name, n);
  r.notes.push_back(std::to_string(count) + " samples");
  return r;
}

}  // namespace

void SessionConfig::validate() const {
  if (n < 1 || n > 4) throw std::invalid_argument("n must be in 1..4");
  if (k_max < 1 || k_max > 12) throw std::invalid_argument("k-max must be in 1..12");
  if (oracle_degree < 1 || oracle_degree > 6) throw std::invalid_argument("oracle-degree must be in 1..6");
  if (term_limit < 1000) throw std::invalid_argument("term-limit must be >= 1000");
  if (oracle_pairs < 0 || hopf_words < 0 || factoring_pairs < 0 || rewrite_triples < 0)
    throw std::invalid_argument("sample counts must be non-negative");
}

VerificationReport timed(const std::function<VerificationReport()>& f) {
  auto t0 = std::chrono::steady_clock::now();
  VerificationReport r = f();
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

// ------------------------------------------------------------------ scalars

std::vector<VerificationReport> scalar_suite(int q_step) {
  std::vector<VerificationReport> out;
  const int n = q_step - 1;
  const std::vector<int> bases{1, 2, -2, q_step, 2 * q_step};

  {
    std::vector<VerificationReport> parts;
    for (int t : bases)
      for (int m = 0; m <= 20; ++m) {
        ScalarRat lhs = qint_round(m, t) * (ScalarRat(1) - spow(t));
        ScalarRat rhs = ScalarRat(1) - spow(t * m);
        if (lhs != rhs)
          parts.push_back(VerificationReport::failed("geometric", n, m, "(m)(1-s^t) != 1-s^(tm) at t=" +
                                                                            std::to_string(t)));
      }
    out.push_back(merge("qint_geometric", n, parts));
  }
  {
    std::vector<VerificationReport> parts;
    for (int t : bases)
      for (int m = 0; m <= 20; ++m) {
        ScalarRat lhs = qint_bracket(m, t);
        ScalarRat rhs = m == 0 ? ScalarRat(0) : spow(t * (1 - m)) * qint_round(m, 2 * t);
        if (lhs != rhs)
          parts.push_back(VerificationReport::failed(
              "conversion", n, m, "[m]_{s^t} = " + lhs.to_text() + " but s^{t(1-m)}(m)_{s^2t} = " + rhs.to_text()));
        if (qint_bracket(m, t) != qint_bracket(m, -t))
          parts.push_back(VerificationReport::failed("palindromic", n, m, "[m] not invariant under s -> 1/s"));
      }
    out.push_back(merge("qint_bracket_conversion", n, parts));
  }
  {
    std::vector<VerificationReport> parts;
    for (int t : {1, q_step})
      for (int N = 0; N <= 8; ++N)
        for (int r = 0; r <= N; ++r) {
          ScalarRat b = qbinomial(N, r, t);
          ScalarRat fact = qfactorial(N, t) / (qfactorial(r, t) * qfactorial(N - r, t));
          if (b != fact)
            parts.push_back(VerificationReport::failed("factorial", n, N,
                                                       "binomial(" + std::to_string(N) + "," + std::to_string(r) +
                                                           ") != factorial quotient"));
          if (r > 0 && r < N) {
            ScalarRat pascal = spow(-t * r) * qbinomial(N - 1, r, t) + spow(t * (N - r)) * qbinomial(N - 1, r - 1, t);
            if (b != pascal)
              parts.push_back(VerificationReport::failed("pascal", n, N,
                                                         "q-Pascal fails at (" + std::to_string(N) + "," +
                                                             std::to_string(r) + ")"));
          }
        }
    out.push_back(merge("qbinomial_pascal", n, parts));
  }
  for (int k = 1; k <= 8; ++k) {
    out.push_back(verify_qint_conversion(k, 2));
    out.back().n = n;
  }
  return out;
}

// ------------------------------------------------------------ presentation

std::vector<VerificationReport> presentation_suite(const Algebra& alg, const SessionConfig& cfg) {
  std::vector<VerificationReport> out;
  const int n = alg.n();
  Rng rng(cfg.seed);

  auto choice = select_convention(n, cfg.oracle_degree);
  {
    VerificationReport r = choice.chosen && choice.chosen->convention == alg.convention()
                               ? VerificationReport::ok("presentation_certification", n)
                               : VerificationReport::failed("presentation_certification", n, std::nullopt,
                                                            "no relation convention certifies with the anchor");
    for (const auto& a : choice.attempts) {
      std::string line = std::string(convention_name(a.convention)) + "/" + ordering_name(a.ordering) +
                         ": anchor " + (a.anchor_holds ? "holds" : "fails") + ", ";
      if (a.all_relations) {
        line += "all relations certify";
      } else {
        line += std::to_string(a.failed_relations.size()) + " relations fail (first " +
                a.failed_relations.front() + ")";
      }
      r.notes.push_back(line);
    }
    if (choice.chosen)
      r.notes.push_back(std::string("chosen: ") + convention_name(choice.chosen->convention) + "/" +
                        ordering_name(choice.chosen->ordering));
    out.push_back(r);
  }
  const RepOrdering ord = choice.chosen ? choice.chosen->ordering : RepOrdering::HighestWeightFirst;
  const PairingOracle oracle(n, ord);

  {
    NCPoly lhs = alg.mul(alg.gen(1, 2), alg.gen(1, 1));
    NCPoly rhs = alg.q_pow(-1) * alg.mul(alg.gen(1, 1), alg.gen(1, 2));
    out.push_back(lhs == rhs ? VerificationReport::ok("anchor_relation", n)
                             : VerificationReport::failed("anchor_relation", n, std::nullopt,
                                                          "u12*u11 -> " + poly_text(alg, lhs)));
  }
  {
    NCPoly d = alg.normal_form(alg.qdet());
    out.push_back(d == NCPoly(1) ? VerificationReport::ok("det_normal_form", n)
                                 : VerificationReport::failed("det_normal_form", n, std::nullopt,
                                                              "det_q -> " + poly_text(alg, d)));
  }
  out.push_back(sample_check("det_central", n, alg.dim() * alg.dim(), [&](int i) -> std::optional<std::string> {
    Gen g = alg.generators()[static_cast<std::size_t>(i)];
    NCPoly x = NCPoly::monomial(Word{g});
    NCPoly c = alg.normal_form_exchange(alg.qdet() * x - x * alg.qdet());
    if (c.is_zero()) return std::nullopt;
    return "[det_q, " + word_text(Word{g}) + "] = " + poly_text(alg, c);
  }));
  {
    std::optional<ScalarRat> zeta = z_eigenvalue(alg, oracle, alg.z(1));
    VerificationReport r = VerificationReport::ok("z_grading", n);
    if (!zeta || (*zeta != alg.q_pow(n) && *zeta != alg.q_pow(-n))) {
      r = VerificationReport::failed("z_grading", n, std::nullopt, "z1 is not a Z-eigenvector with eigenvalue q^(+-n)");
    } else {
      r.coefficient = *zeta;
      for (int i = 1; i <= alg.dim() && r.pass; ++i) {
        for (int bar = 0; bar < 2 && r.pass; ++bar) {
          NCPoly x = bar ? alg.zbar(i) : alg.z(i);
          auto e = z_eigenvalue(alg, oracle, x);
          ScalarRat want = bar ? zeta->inverse() : *zeta;
          if (!e || *e != want)
            r = VerificationReport::failed("z_grading", n, std::nullopt,
                                           std::string(bar ? "zbar" : "z") + std::to_string(i) +
                                               " eigenvalue differs from " + want.to_text(n + 1));
        }
      }
      // Random sphere words cost dim^(degree) coproduct terms each; at n >= 3
      // the generators alone are checked.
      const int samples = n <= 2 ? 10 : 0;
      for (int i = 0; i < samples && r.pass; ++i) {
        NCPoly w = random_sphere_word(alg, rng, 2);
        auto deg = alg.degree(w);
        if (!deg) continue;
        auto e = z_eigenvalue(alg, oracle, w);
        if (!e || *e != zeta->pow(*deg))
          r = VerificationReport::failed("z_grading", n, std::nullopt,
                                         "sphere word " + poly_text(alg, w) + " of degree " + std::to_string(*deg) +
                                             " has the wrong Z-eigenvalue");
      }
      r.coefficient = *zeta;
      r.notes.push_back("Z acts on z1 by " + zeta->to_text(n + 1) + " in the certified ordering");
    }
    out.push_back(r);
  }

  out.push_back(sample_check("normal_form_idempotent", n, cfg.rewrite_triples, [&](int) -> std::optional<std::string> {
    NCPoly a = alg.normal_form(random_element(alg, rng, 4, 3));
    for (const auto& [w, c] : a.terms())
      if (!w.is_ordered()) return "unordered word " + word_text(w) + " in a normal form";
    NCPoly b = alg.normal_form(a);
    if (a == b) return std::nullopt;
    return "NF(NF(a)) != NF(a) for a = " + poly_text(alg, a);
  }));
  out.push_back(sample_check("associativity", n, cfg.rewrite_triples, [&](int) -> std::optional<std::string> {
    NCPoly a = random_element(alg, rng, 3, 2);
    NCPoly b = random_element(alg, rng, 3, 2);
    NCPoly c = random_element(alg, rng, 3, 2);
    NCPoly l = alg.mul(alg.mul(a, b), c);
    NCPoly r = alg.mul(a, alg.mul(b, c));
    if (l == r) return std::nullopt;
    return "(ab)c != a(bc) for a = " + poly_text(alg, a) + ", b = " + poly_text(alg, b) + ", c = " + poly_text(alg, c);
  }));
  out.push_back(sample_check("free_product_agrees", n, cfg.rewrite_triples / 2, [&](int) -> std::optional<std::string> {
    NCPoly a = random_element(alg, rng, 3, 2);
    NCPoly b = random_element(alg, rng, 3, 2);
    if (alg.normal_form(a * b) == alg.mul(alg.normal_form(a), alg.normal_form(b))) return std::nullopt;
    return "NF(ab) != NF(a)NF(b) for a = " + poly_text(alg, a) + ", b = " + poly_text(alg, b);
  }));
  out.push_back(sample_check("degree_preserved", n, 30, [&](int) -> std::optional<std::string> {
    int expected = 0;
    NCPoly reduced(1);
    int len = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int t = 0; t < len; ++t) {
      int i = std::uniform_int_distribution<int>(1, alg.dim())(rng);
      bool bar = std::uniform_int_distribution<int>(0, 1)(rng);
      expected += bar ? -1 : 1;
      reduced = alg.mul(reduced, bar ? alg.zbar(i) : alg.z(i));
    }
    auto deg = alg.degree(reduced);
    if (reduced.is_zero() || (deg && *deg == expected)) return std::nullopt;
    return "sphere word of degree " + std::to_string(expected) + " reduced to " + poly_text(alg, reduced);
  }));
  out.push_back(sample_check("star_involution", n, 20, [&](int) -> std::optional<std::string> {
    NCPoly a = alg.normal_form(random_element(alg, rng, n <= 2 ? 2 : 1, 2));
    NCPoly b = alg.star(alg.star(a));
    if (a == b) return std::nullopt;
    return "a** != a for a = " + poly_text(alg, a);
  }));
  {
    std::vector<VerificationReport> parts;
    for (int i = 1; i <= alg.dim(); ++i) {
      if (alg.star(alg.z(i)) != alg.zbar(i))
        parts.push_back(VerificationReport::failed("star", n, i, "z" + std::to_string(i) + "* != zbar" + std::to_string(i)));
    }
    NCPoly sphere(0);
    for (int i = 1; i <= alg.dim(); ++i) sphere += alg.mul(alg.zbar(i), alg.z(i));
    if (sphere != NCPoly(1))
      parts.push_back(VerificationReport::failed("sum", n, std::nullopt, "sum_i zbar_i z_i = " + poly_text(alg, sphere)));
    out.push_back(merge("sphere_generators", n, parts));
  }

  {
    // Half disguised-equal pairs, half independent pairs; normal forms and the
    // oracle must agree on every one.
    int equal_pairs = 0;
    VerificationReport r = VerificationReport::ok("oracle_equivalence", n);
    for (int i = 0; i < cfg.oracle_pairs && r.pass; ++i) {
      NCPoly a = random_element(alg, rng, 2, 2);
      NCPoly b = (i % 2 == 0) ? disguise(alg, rng, a) : random_element(alg, rng, 2, 2);
      bool nf_eq = alg.normal_form(a) == alg.normal_form(b);
      bool oracle_eq = oracle.oracle_equal(a, b, cfg.oracle_degree);
      equal_pairs += nf_eq;
      if (nf_eq != oracle_eq)
        r = VerificationReport::failed("oracle_equivalence", n, std::nullopt,
                                       std::string("normal forms say ") + (nf_eq ? "equal" : "different") +
                                           ", oracle says " + (oracle_eq ? "equal" : "different") + ": a = " +
                                           poly_text(alg, a) + ", b = " + poly_text(alg, b));
    }
    if (r.pass)
      r.notes.push_back(std::to_string(cfg.oracle_pairs) + " pairs, " + std::to_string(equal_pairs) + " equal");
    out.push_back(r);
  }
  return out;
}

// -------------------------------------------------------------------- Hopf

std::vector<VerificationReport> hopf_suite(const Algebra& alg, const SessionConfig& cfg) {
  std::vector<VerificationReport> out;
  const int n = alg.n();
  Rng rng(cfg.seed + 1);

  for (RepOrdering ord : {RepOrdering::HighestWeightFirst, RepOrdering::LowestWeightFirst}) {
    for (int m = 1; m <= 2; ++m) {
      std::string name = std::string("uq_relations[m=") + std::to_string(m) + "," + ordering_name(ord) + "]";
      out.push_back(merge(name, n, verify_uq_relations(n, m, ord)));
    }
  }

  std::vector<NCPoly> words;
  for (Gen g : alg.generators()) words.push_back(NCPoly::monomial(Word{g}));
  for (int i = 0; i < cfg.hopf_words; ++i) words.push_back(NCPoly::monomial(random_word(alg, rng, 3)));

  out.push_back(sample_check("counit_axioms", n, static_cast<int>(words.size()), [&](int i) -> std::optional<std::string> {
    const NCPoly& w = words[static_cast<std::size_t>(i)];
    NCPoly nf = alg.normal_form(w);
    if (counit_left(alg, w) != nf) return "(eps (x) id) Delta != id on " + poly_text(alg, w);
    if (counit_right(alg, w) != nf) return "(id (x) eps) Delta != id on " + poly_text(alg, w);
    return std::nullopt;
  }));
  out.push_back(sample_check("antipode_axioms", n, static_cast<int>(words.size()), [&](int i) -> std::optional<std::string> {
    const NCPoly& w = words[static_cast<std::size_t>(i)];
    NCPoly e(counit(alg.normal_form(w)));
    if (antipode_left(alg, w) != e) return "m(S (x) id) Delta != eps on " + poly_text(alg, w);
    if (antipode_right(alg, w) != e) return "m(id (x) S) Delta != eps on " + poly_text(alg, w);
    return std::nullopt;
  }));
  out.push_back(sample_check("antipode_antimultiplicative", n, 20, [&](int) -> std::optional<std::string> {
    NCPoly a = NCPoly::monomial(random_word(alg, rng, 2));
    NCPoly b = NCPoly::monomial(random_word(alg, rng, 2));
    if (antipode(alg, alg.mul(a, b)) == alg.mul(antipode(alg, b), antipode(alg, a))) return std::nullopt;
    return "S(ab) != S(b)S(a) for a = " + poly_text(alg, a) + ", b = " + poly_text(alg, b);
  }));
  out.push_back(sample_check("coproduct_multiplicative", n, 20, [&](int) -> std::optional<std::string> {
    NCPoly a = random_element(alg, rng, 2, 2);
    NCPoly b = random_element(alg, rng, 2, 2);
    if (coproduct(alg, alg.mul(a, b)) == tensor_mul(alg, coproduct(alg, a), coproduct(alg, b))) return std::nullopt;
    return "Delta(ab) != Delta(a)Delta(b) for a = " + poly_text(alg, a) + ", b = " + poly_text(alg, b);
  }));
  return out;
}

// ----------------------------------------------------------------- calculus

TableSetup setup_action_table(const Algebra& alg, const SessionConfig& cfg) {
  TableSetup setup;
  const int n = alg.n();
  const std::string name = std::string("action_table[") + ansatz_name(cfg.ansatz) + "]";
  std::optional<ActionTable> table;
  std::vector<std::string> log;
  if (!cfg.cache_dir.empty()) table = action_cache::load(cfg.cache_dir, alg, cfg.ansatz);
  if (table) {
    log.push_back("loaded from cache " + action_cache::file_name(alg, cfg.ansatz));
  } else {
    try {
      ActionSolve solved = solve_e0_action(alg, cfg.ansatz);
      table = std::move(solved.table);
      log = std::move(solved.log);
      if (!cfg.cache_dir.empty()) action_cache::store(cfg.cache_dir, alg, cfg.ansatz, *table);
    } catch (const InconsistentActionError& e) {
      auto r = VerificationReport::failed(name, n, std::nullopt, e.what());
      r.notes.push_back("inconsistent relation: " + e.relation());
      setup.reports.push_back(r);
      return setup;
    }
  }
  VerificationReport r = table->free_parameters.empty()
                             ? VerificationReport::ok(name, n)
                             : VerificationReport::failed(name, n, std::nullopt, "undetermined entries remain");
  r.notes = log;
  for (const auto& f : table->free_parameters) r.notes.push_back("free: " + f);
  setup.reports.push_back(r);

  auto defects = relation_defects(alg, *table);
  if (defects.empty()) {
    setup.reports.push_back(VerificationReport::ok("relation_defects", n));
  } else {
    auto d = VerificationReport::failed("relation_defects", n, std::nullopt, defects.front());
    d.notes = defects;
    setup.reports.push_back(d);
  }

  {
    // The printed e+- rows against the solved table.
    std::vector<std::string> diffs;
    const int dim = table->dim();
    for (int b = 0; b < dim; ++b) {
      if (b == basis_zero(n)) continue;
      for (Gen g : alg.generators()) {
        auto known = known_action(n);
        auto it = known.find({b, g});
        LambdaVec want = it == known.end() ? LambdaVec(dim) : it->second;
        if (table->entry(b, g) != want)
          diffs.push_back(basis_name(n, b) + " <| " + word_text(Word{g}) + " = " + table->entry(b, g).to_text(n));
      }
    }
    if (diffs.empty()) {
      setup.reports.push_back(VerificationReport::ok("known_rows", n));
    } else {
      auto d = VerificationReport::failed("known_rows", n, std::nullopt, diffs.front());
      d.notes = diffs;
      setup.reports.push_back(d);
    }
  }
  setup.table = std::move(table);
  return setup;
}

std::vector<VerificationReport> calculus_suite(const Calculus& calc, const SessionConfig& cfg) {
  std::vector<VerificationReport> out;
  const Algebra& alg = calc.algebra();
  const int n = alg.n();
  const int dim = calc.dim();
  Rng rng(cfg.seed + 2);

  out.push_back(sample_check("action_factoring", n, cfg.factoring_pairs, [&](int) -> std::optional<std::string> {
    NCPoly a = random_element(alg, rng, 2, 2);
    NCPoly b = random_element(alg, rng, 2, 2);
    NCPoly ab = alg.mul(a, b);
    for (int v = 0; v < dim; ++v) {
      LambdaVec e = LambdaVec::unit(dim, v);
      if (calc.act(calc.act(e, a), b) != calc.act(e, ab))
        return "(" + basis_name(n, v) + " <| a) <| b != " + basis_name(n, v) + " <| ab for a = " + poly_text(alg, a) +
               ", b = " + poly_text(alg, b);
    }
    return std::nullopt;
  }));
  out.push_back(sample_check("delbar_well_defined", n, 50, [&](int) -> std::optional<std::string> {
    NCPoly a = random_element(alg, rng, 3, 2);
    if (calc.delbar(a) == calc.delbar(alg.normal_form(a))) return std::nullopt;
    return "delbar(a) depends on the representative for a = " + poly_text(alg, a);
  }));
  out.push_back(sample_check("delbar_derivation", n, 50, [&](int) -> std::optional<std::string> {
    NCPoly a = random_element(alg, rng, 2, 2);
    NCPoly b = random_element(alg, rng, 2, 2);
    LambdaVec lhs = calc.delbar(alg.mul(a, b));
    LambdaVec rhs = calc.act(calc.delbar(a), b) + counit(alg.normal_form(a)) * calc.delbar(b);
    if (lhs == rhs) return std::nullopt;
    return "delbar(ab) != delbar(a)<|b + eps(a)delbar(b) for a = " + poly_text(alg, a) + ", b = " + poly_text(alg, b);
  }));
  {
    const LambdaVec e0 = LambdaVec::unit(dim, basis_zero(n));
    VerificationReport r = VerificationReport::ok("e0_eigen_z1", n);
    for (int k = 1; k <= 5 && r.pass; ++k) {
      LambdaVec v = calc.act(e0, alg.pow(alg.z(1), k));
      for (int b = 0; b < dim; ++b)
        if (b != basis_zero(n) && !v.c[static_cast<std::size_t>(b)].is_zero())
          r = VerificationReport::failed("e0_eigen_z1", n, k,
                                         "e0 <| z1^" + std::to_string(k) + " = " + v.to_text(n));
      if (k == 1 && r.pass) r.coefficient = v.c[static_cast<std::size_t>(basis_zero(n))];
    }
    out.push_back(r);
  }
  {
    // The same statement on A (x) Lambda: right multiplication of 1 (x) e0 by
    // z1-powers stays vertical only if every cross term e0 <| u^b_1 vanishes.
    VerificationReport r = VerificationReport::ok("vertical_right_mult_z1", n);
    OneForm one;
    one.add(NCPoly(1), LambdaVec::unit(dim, basis_zero(n)));
    for (int k = 1; k <= 5 && r.pass; ++k) {
      OneForm w = calc.right_mult(one, alg.pow(alg.z(1), k));
      OneForm h = calc.proj10(w);
      OneForm a = calc.proj01(w);
      if (!h.is_zero() || !a.is_zero())
        r = VerificationReport::failed("vertical_right_mult_z1", n, k,
                                       "(1 (x) e0) z1^" + std::to_string(k) + " has (1,0) part " +
                                           h.to_text(n, kWitnessTerms));
    }
    for (int b = 2; b <= alg.dim(); ++b) {
      LambdaVec v = calc.table().entry(basis_zero(n), u(b, 1));
      if (!v.is_zero()) r.notes.push_back("e0 <| " + word_text(Word{u(b, 1)}) + " = " + v.to_text(n));
    }
    out.push_back(r);
  }
  out.push_back(sample_check("unit_leibniz", n, 20, [&](int) -> std::optional<std::string> {
    NCPoly a = random_element(alg, rng, 2, 2);
    NCPoly b = random_element(alg, rng, 2, 2);
    OneForm lhs = calc.unit_d(alg.mul(a, b));
    OneForm rhs = calc.right_mult(calc.unit_d(a), b) + calc.left_mult(a, calc.unit_d(b));
    if (lhs == rhs) return std::nullopt;
    return "d(ab) != (da)b + a(db) for a = " + poly_text(alg, a) + ", b = " + poly_text(alg, b);
  }));
  out.push_back(sample_check("right_mult_associative", n, 20, [&](int) -> std::optional<std::string> {
    NCPoly x = random_element(alg, rng, 2, 2);
    NCPoly a = random_element(alg, rng, 2, 1);
    NCPoly b = random_element(alg, rng, 2, 1);
    OneForm w = calc.unit_d(x);
    if (calc.right_mult(calc.right_mult(w, a), b) == calc.right_mult(w, alg.mul(a, b))) return std::nullopt;
    return "(w a) b != w (ab) for w = d(" + poly_text(alg, x) + ")";
  }));
  out.push_back(sample_check("projections", n, 20, [&](int) -> std::optional<std::string> {
    OneForm w = calc.unit_d(random_element(alg, rng, 3, 2));
    if (calc.proj10(w) + calc.proj01(w) + calc.proj_vert(w) != w) return std::string("projections do not sum to id");
    if (calc.proj10(calc.proj10(w)) != calc.proj10(w)) return std::string("proj10 not idempotent");
    if (!calc.proj01(calc.proj10(w)).is_zero()) return std::string("proj01 proj10 != 0");
    return std::nullopt;
  }));
  {
    std::vector<NCPoly> samples{alg.z(1), alg.pow(alg.z(1), 2), alg.mul(alg.z(1), alg.zbar(1))};
    for (int i = 0; i < 10; ++i) samples.push_back(random_element(alg, rng, 2, 2));
    out.push_back(sample_check("unit_round_trip", n, static_cast<int>(samples.size()), [&](int i) -> std::optional<std::string> {
      const NCPoly& x = samples[static_cast<std::size_t>(i)];
      OneForm w = calc.unit_d(x);
      if (calc.unit_formal(calc.unit_inverse(w)) == w) return std::nullopt;
      return "unit(unit^-1(dx)) != dx for x = " + poly_text(alg, x);
    }));
    FormalOneForm dz = calc.unit_inverse(calc.unit_d(alg.z(1)));
    FormalOneForm want{{u(1, 1), NCPoly(1)}};
    out.push_back(dz == want ? VerificationReport::ok("unit_inverse_dz1", n)
                             : VerificationReport::failed("unit_inverse_dz1", n, std::nullopt,
                                                          "unit^-1(unit(dz1)) = " + formal_text(n, dz)));
  }
  {
    std::vector<VerificationReport> parts;
    OneForm p = holo_derivative(calc, alg.z(1));
    OneForm want;
    for (int a = 2; a <= alg.dim(); ++a) want.add(alg.gen(1, a), LambdaVec::unit(dim, basis_plus(a - 1)));
    if (p != want)
      parts.push_back(VerificationReport::failed("P(z1)", n, std::nullopt, "P(z1) = " + p.to_text(n, kWitnessTerms)));
    OneForm vert = calc.proj_vert(calc.unit_d(alg.z(1)));
    OneForm want_vert;
    want_vert.add(alg.gen(1, 1), LambdaVec::unit(dim, basis_zero(n), calc.table().delbar_gen(u(1, 1)).c[static_cast<std::size_t>(basis_zero(n))]));
    if (vert != want_vert)
      parts.push_back(VerificationReport::failed("vert(dz1)", n, std::nullopt, "vertical part of dz1 = " + vert.to_text(n, kWitnessTerms)));
    OneForm pb = holo_derivative(calc, alg.zbar(1));
    if (!pb.is_zero())
      parts.push_back(VerificationReport::failed("P(zbar1)", n, std::nullopt, "P(zbar1) = " + pb.to_text(n, kWitnessTerms)));
    if (calc.proj01(calc.unit_d(alg.zbar(1))).is_zero())
      parts.push_back(VerificationReport::failed("dbar(zbar1)", n, std::nullopt, "(0,1) part of d zbar1 vanishes"));
    auto r = merge("holomorphic_examples", n, parts);
    r.notes.push_back("P(z1) = " + p.to_text(n, kWitnessTerms));
    out.push_back(r);
  }
  return out;
}

// ---------------------------------------------------------------- curvature

std::vector<VerificationReport> curvature_suite(const Calculus& calc, const SessionConfig& cfg) {
  std::vector<VerificationReport> out;
  const int n = calc.n();
  out.push_back(timed([&] { return verify_commutation(calc); }));
  {
    auto neg = verify_commutation(calc, spow(3));
    auto r = neg.pass ? VerificationReport::failed("commutation_negative_control", n, std::nullopt,
                                                   "factor s^3 was accepted")
                      : VerificationReport::ok("commutation_negative_control", n);
    out.push_back(r);
  }
  std::vector<ScalarRat> coeffs;
  for (int k = 1; k <= cfg.k_max; ++k) {
    out.push_back(timed([&] { return verify_lemma(calc, k); }));
    if (k >= 2) {
      auto neg = verify_lemma(calc, k, 3);
      out.push_back(neg.pass ? VerificationReport::failed("lemma_negative_control", n, k, "base s^3 was accepted")
                             : VerificationReport::ok("lemma_negative_control", n, k));
    }
    out.push_back(timed([&] { return verify_leibniz_recursion(calc, k); }));
    out.push_back(timed([&] { return verify_holomorphic(calc, k); }));
    out.push_back(timed([&] { return verify_decomposition(calc, k); }));
    auto c = timed([&] { return curvature_coefficient(calc, k); });
    out.push_back(c);
    if (c.coefficient) coeffs.push_back(*c.coefficient);
  }
  if (static_cast<int>(coeffs.size()) == cfg.k_max) {
    std::vector<VerificationReport> limit, recur, consist;
    for (int k = 1; k <= cfg.k_max; ++k) {
      const ScalarRat& c = coeffs[static_cast<std::size_t>(k - 1)];
      auto at1 = c.evaluate(1);
      if (!at1 || *at1 != BigRational(k))
        limit.push_back(VerificationReport::failed("limit", n, k, "coefficient at s=1 is not " + std::to_string(k)));
      if (c != qint_round(k, 2) * spow(-2 * (k - 1)))
        consist.push_back(VerificationReport::failed("consistency", n, k,
                                                     "k=" + std::to_string(k) + ": " + c.to_text() +
                                                         " != (k)_{s^2} s^{-2(k-1)}"));
      if (k < cfg.k_max && coeffs[static_cast<std::size_t>(k)] - spow(-2) * c != ScalarRat(1))
        recur.push_back(VerificationReport::failed("recurrence", n, k,
                                                   "c_" + std::to_string(k + 1) + " - s^-2 c_" + std::to_string(k) +
                                                       " = " + (coeffs[static_cast<std::size_t>(k)] - spow(-2) * c).to_text()));
    }
    out.push_back(merge("coefficient_classical_limit", n, limit));
    out.push_back(merge("coefficient_recurrence", n, recur));
    out.push_back(merge("coefficient_consistency", n, consist));
  } else {
    out.push_back(VerificationReport::failed("coefficient_classical_limit", n, std::nullopt,
                                             "P(z1^k) is not proportional to z1^(k-1) P(z1) for some k"));
  }
  return out;
}

// ------------------------------------------------------------ orchestrator

int run_verify_all(const SessionConfig& cfg, const ReportSink& sink) {
  cfg.validate();
  bool any_fail = false;
  auto emit = [&](const VerificationReport& r) {
    any_fail = any_fail || !r.pass;
    sink(r);
  };
  auto emit_all = [&](const std::vector<VerificationReport>& rs) {
    for (const auto& r : rs) emit(r);
  };
  try {
    const Algebra alg(cfg.n, RelationConvention::Anchor, cfg.term_limit);
    emit_all(scalar_suite(cfg.n + 1));
    emit_all(presentation_suite(alg, cfg));
    emit_all(hopf_suite(alg, cfg));
    TableSetup setup = setup_action_table(alg, cfg);
    emit_all(setup.reports);
    if (!setup.table) return 2;
    const Calculus calc(alg, *setup.table);
    emit_all(calculus_suite(calc, cfg));
    emit_all(curvature_suite(calc, cfg));
  } catch (const ResourceLimitError& e) {
    emit(VerificationReport::failed("resource_limit", cfg.n, std::nullopt, e.what()));
    return 2;
  }
  return any_fail ? 1 : 0;
}

}  // namespace qcpn
