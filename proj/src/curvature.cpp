#include "qcpn/curvature.hpp"

#include <sstream>

namespace qcpn {

namespace {

constexpr std::size_t kWitnessTerms = 8;

void require_k(int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
}

}  // namespace

OneForm holo_derivative(const Calculus& calc, const NCPoly& f) {
  return calc.proj10(calc.unit_d(f));
}

std::optional<ScalarRat> proportionality(const OneForm& a, const OneForm& b) {
  if (b.is_zero()) return std::nullopt;
  if (a.is_zero()) return ScalarRat(0);
  const auto& [w, v] = *b.terms().begin();
  auto it = a.terms().find(w);
  if (it == a.terms().end()) return std::nullopt;
  int j = 0;
  while (v.c[static_cast<std::size_t>(j)].is_zero()) ++j;
  ScalarRat c = it->second.c[static_cast<std::size_t>(j)] / v.c[static_cast<std::size_t>(j)];
  if (a != c * b) return std::nullopt;
  return c;
}

VerificationReport verify_commutation(const Calculus& calc, std::optional<ScalarRat> factor) {
  const Algebra& alg = calc.algebra();
  const ScalarRat f = factor.value_or(spow(2));
  const NCPoly z1 = alg.z(1);
  const OneForm p = holo_derivative(calc, z1);
  const OneForm diff = calc.left_mult(z1, p) - f * calc.right_mult(p, z1);
  std::string name = "commutation";
  if (factor) name += "[factor=" + f.to_text() + "]";
  if (diff.is_zero()) {
    auto r = VerificationReport::ok(name, calc.n());
    r.coefficient = f;
    return r;
  }
  auto r = VerificationReport::failed(name, calc.n(), std::nullopt,
                                      "z1*P(z1) - (" + f.to_text() + ")*P(z1)*z1 = " +
                                          diff.to_text(calc.n(), kWitnessTerms));
  if (auto c = proportionality(calc.left_mult(z1, p), calc.right_mult(p, z1)))
    r.notes.push_back("observed factor " + c->to_text());
  return r;
}

VerificationReport verify_lemma(const Calculus& calc, int k, int base_exponent) {
  require_k(k);
  const Algebra& alg = calc.algebra();
  const NCPoly z1 = alg.z(1);
  const ScalarRat expected = qint_round(k, base_exponent);
  const OneForm lhs = holo_derivative(calc, alg.pow(z1, k));
  const OneForm base = calc.right_mult(holo_derivative(calc, z1), alg.pow(z1, k - 1));
  const OneForm diff = lhs - expected * base;
  std::string name = "lemma";
  if (base_exponent != 2) name += "[base=s^" + std::to_string(base_exponent) + "]";
  auto observed = proportionality(lhs, base);
  if (diff.is_zero()) {
    auto r = VerificationReport::ok(name, calc.n(), k);
    r.coefficient = expected;
    return r;
  }
  std::ostringstream w;
  w << "P(z1^" << k << ") - (" << expected.to_text() << ")*P(z1)*z1^" << k - 1 << " = "
    << diff.to_text(calc.n(), kWitnessTerms);
  auto r = VerificationReport::failed(name, calc.n(), k, w.str());
  if (observed) {
    r.coefficient = *observed;
    r.notes.push_back("observed P(z1^k) = (" + observed->to_text(calc.n() + 1) + ") P(z1) z1^(k-1)");
  } else {
    r.notes.push_back("P(z1^k) is not a scalar multiple of P(z1) z1^(k-1)");
  }
  return r;
}

VerificationReport verify_leibniz_recursion(const Calculus& calc, int k) {
  require_k(k);
  const Algebra& alg = calc.algebra();
  const NCPoly z1 = alg.z(1);
  const NCPoly zk = alg.pow(z1, k);
  const OneForm p1 = holo_derivative(calc, z1);
  const OneForm lhs = holo_derivative(calc, alg.pow(z1, k + 1));
  const OneForm rhs = calc.right_mult(holo_derivative(calc, zk), z1) + calc.left_mult(zk, p1);
  const OneForm diff = lhs - rhs;
  if (diff.is_zero()) return VerificationReport::ok("leibniz_recursion", calc.n(), k);
  return VerificationReport::failed("leibniz_recursion", calc.n(), k,
                                    "P(z1^" + std::to_string(k + 1) + ") - P(z1^" + std::to_string(k) +
                                        ")*z1 - z1^" + std::to_string(k) + "*P(z1) = " +
                                        diff.to_text(calc.n(), kWitnessTerms));
}

VerificationReport verify_holomorphic(const Calculus& calc, int k) {
  require_k(k);
  const Algebra& alg = calc.algebra();
  const OneForm a = calc.proj01(calc.unit_d(alg.pow(alg.z(1), k)));
  if (!a.is_zero())
    return VerificationReport::failed("holomorphic", calc.n(), k,
                                      "proj01(unit_d(z1^" + std::to_string(k) + ")) = " +
                                          a.to_text(calc.n(), kWitnessTerms));
  for (int i = 1; i <= alg.dim(); ++i) {
    const OneForm b = calc.proj01(calc.unit_d(alg.z(i)));
    if (!b.is_zero())
      return VerificationReport::failed("holomorphic", calc.n(), k,
                                        "proj01(unit_d(z" + std::to_string(i) + ")) = " +
                                            b.to_text(calc.n(), kWitnessTerms));
  }
  return VerificationReport::ok("holomorphic", calc.n(), k);
}

VerificationReport verify_decomposition(const Calculus& calc, int k) {
  require_k(k);
  const Algebra& alg = calc.algebra();
  const NCPoly z1 = alg.z(1);
  const NCPoly tail = alg.pow(z1, k - 1);
  OneForm lhs;
  for (int i = 1; i <= alg.dim(); ++i) {
    const NCPoly x = alg.mul(alg.gen(1, 1), alg.zbar(i));
    auto deg = alg.degree(x);
    if (!deg || *deg != 0)
      return VerificationReport::failed("decomposition", calc.n(), k,
                                        "u[1,1]*S(u[1," + std::to_string(i) + "]) has degree " +
                                            (deg ? std::to_string(*deg) : std::string("inhomogeneous")));
    lhs += calc.right_mult(holo_derivative(calc, x), alg.mul(alg.z(i), tail));
  }
  const OneForm rhs = calc.right_mult(holo_derivative(calc, z1), tail);
  const OneForm diff = lhs - rhs;
  if (diff.is_zero()) return VerificationReport::ok("decomposition", calc.n(), k);
  return VerificationReport::failed("decomposition", calc.n(), k,
                                    "sum_i P(u11 S(u1i)) ui1 z1^(k-1) - P(z1) z1^(k-1) = " +
                                        diff.to_text(calc.n(), kWitnessTerms));
}

VerificationReport curvature_coefficient(const Calculus& calc, int k, int base_exponent) {
  require_k(k);
  const Algebra& alg = calc.algebra();
  const NCPoly z1 = alg.z(1);
  const ScalarRat expected = qint_round(k, base_exponent);
  const OneForm lhs = holo_derivative(calc, alg.pow(z1, k));
  const OneForm base = calc.left_mult(alg.pow(z1, k - 1), holo_derivative(calc, z1));
  std::string name = "curvature_coefficient";
  if (base_exponent != -2) name += "[base=s^" + std::to_string(base_exponent) + "]";
  auto c = proportionality(lhs, base);
  if (!c)
    return VerificationReport::failed(name, calc.n(), k,
                                      "P(z1^k) is not a multiple of z1^(k-1) P(z1): " +
                                          lhs.to_text(calc.n(), kWitnessTerms));
  VerificationReport r = *c == expected
                             ? VerificationReport::ok(name, calc.n(), k)
                             : VerificationReport::failed(name, calc.n(), k,
                                                          "coefficient " + c->to_text() +
                                                              " != expected " + expected.to_text());
  r.coefficient = *c;
  if (auto at1 = c->evaluate(1)) r.notes.push_back("value at s=1: " + rational_text(*at1));
  return r;
}

VerificationReport verify_qint_conversion(int k, int t) {
  require_k(k);
  if (t == 0) throw std::invalid_argument("base exponent must be nonzero");
  ScalarRat lhs = qint_round(k, t) * spow(t * (1 - k));
  ScalarRat rhs = qint_round(k, -t);
  std::string name = "qint_conversion[t=" + std::to_string(t) + "]";
  if (lhs == rhs) {
    auto r = VerificationReport::ok(name, 0, k);
    r.coefficient = rhs;
    return r;
  }
  return VerificationReport::failed(name, 0, k, lhs.to_text() + " != " + rhs.to_text());
}

}  // namespace qcpn
