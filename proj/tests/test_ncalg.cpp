#include <doctest.h>

#include "qcpn/corpus.hpp"
#include "qcpn/expr.hpp"
#include "qcpn/hopf.hpp"
#include "qcpn/ncalg.hpp"

using namespace qcpn;

TEST_CASE("anchor relation and determinant") {
  for (int n = 1; n <= 3; ++n) {
    Algebra alg(n);
    NCPoly lhs = alg.mul(alg.gen(1, 2), alg.gen(1, 1));
    CHECK(lhs == alg.q_pow(-1) * alg.mul(alg.gen(1, 1), alg.gen(1, 2)));
    CHECK(alg.normal_form(alg.qdet() - NCPoly(1)).is_zero());
    CHECK(alg.normal_form(NCPoly()).is_zero());
  }
  Algebra alg(1);
  CHECK(alg.mul(alg.gen(1, 2), alg.gen(1, 1)).to_text(1) == "q^-1 * u[1,1]u[1,2]");
  CHECK(alg.qdet().to_text(1) == "u[1,1]u[2,2] - q * u[1,2]u[2,1]");
}

TEST_CASE("determinant is central before it is set to 1") {
  for (int n = 1; n <= 2; ++n) {
    Algebra alg(n);
    for (Gen g : alg.generators()) {
      NCPoly x = NCPoly::monomial(Word{g});
      CHECK(alg.normal_form_exchange(alg.qdet() * x - x * alg.qdet()).is_zero());
    }
  }
}

TEST_CASE("normal forms match the pairing oracle") {
  // The oracle only sees the fundamental representation; it never rewrites.
  for (int n = 1; n <= 2; ++n) {
    Algebra alg(n);
    PairingOracle oracle(n, RepOrdering::LowestWeightFirst);
    Rng rng(7 + n);
    for (int i = 0; i < 30; ++i) {
      NCPoly a = random_element(alg, rng, 3, 2);
      CHECK(oracle.oracle_equal(a, alg.normal_form(a), 3));
    }
    for (const auto& r : alg.relations()) CHECK(oracle.oracle_equal(r.lhs, r.rhs, 3));
  }
}

TEST_CASE("rewriting invariants") {
  Algebra alg(2);
  Rng rng(11);
  for (int i = 0; i < 40; ++i) {
    NCPoly a = random_element(alg, rng, 3, 2);
    NCPoly b = random_element(alg, rng, 2, 2);
    NCPoly c = random_element(alg, rng, 2, 2);
    NCPoly na = alg.normal_form(a);
    CHECK(alg.normal_form(na) == na);
    for (const auto& [w, coeff] : na.terms()) CHECK(w.is_ordered());
    CHECK(alg.mul(alg.mul(a, b), c) == alg.mul(a, alg.mul(b, c)));
  }
}

TEST_CASE("sphere grading") {
  Algebra alg(2);
  NCPoly z1 = alg.z(1);
  for (int k = 0; k <= 4; ++k) CHECK(alg.degree(alg.pow(z1, k)) == k);
  CHECK(alg.degree(NCPoly(1)) == 0);
  NCPoly zz = alg.mul(z1, alg.zbar(1));
  CHECK(alg.degree(zz) == 0);
  CHECK(alg.degree(alg.mul(zz, alg.zbar(2))) == -1);
  NCPoly sphere;
  for (int i = 1; i <= alg.dim(); ++i) sphere += alg.mul(alg.zbar(i), alg.z(i));
  CHECK(sphere == NCPoly(1));
}

TEST_CASE("star structure") {
  Algebra alg(2);
  CHECK(alg.star(alg.z(1)) == alg.zbar(1));
  CHECK(alg.star(NCPoly(1)) == NCPoly(1));
  NCPoly z12 = alg.mul(alg.z(1), alg.z(2));
  CHECK(alg.star(alg.star(z12)) == z12);
  // conjugate-linear: s is real
  CHECK(alg.star(spow(3) * alg.z(1)) == spow(3) * alg.zbar(1));
}

TEST_CASE("expression parser") {
  Algebra alg(1);
  CHECK(parse_expression(alg, "u[1,2]*u[1,1]").to_text(1) == "q^-1 * u[1,1]u[1,2]");
  CHECK(parse_expression(alg, "1").to_text(1) == "1");
  CHECK(parse_expression(alg, "-s^2*u[1,1]") == -(spow(2) * alg.gen(1, 1)));
  CHECK(parse_expression(alg, "(q - q^-1)/2") == NCPoly((alg.q() - alg.q_pow(-1)) * ScalarRat(BigRational(1, 2))));
  CHECK(parse_expression(alg, "z[1]^3") == alg.pow(alg.z(1), 3));
  CHECK(parse_expression(alg, "zbar[2]") == alg.zbar(2));
  CHECK(parse_expression_free(alg, "u[1,2]*u[1,1]") == NCPoly::monomial(Word{u(1, 2), u(1, 1)}));
  CHECK_THROWS_AS(parse_expression(alg, "u[3,1]"), ParseError);
  CHECK_THROWS_AS(parse_expression(alg, "u[1,1]/u[1,2]"), ParseError);
  CHECK_THROWS_AS(parse_expression(alg, "u[1,1]^-1"), ParseError);
  CHECK_THROWS_AS(parse_expression(alg, "(u[1,1]"), ParseError);
  CHECK_THROWS_AS(parse_expression(alg, "1 +"), ParseError);
}

TEST_CASE("term limit") {
  Algebra alg(2, RelationConvention::Anchor, 1000);
  NCPoly big;
  for (Gen g : alg.generators()) big += NCPoly::monomial(Word{g});
  CHECK_THROWS_AS(alg.pow(big, 6), ResourceLimitError);
}

TEST_CASE("JSON round trip") {
  Algebra alg(2);
  NCPoly p = alg.mul(alg.zbar(1), alg.z(2)) + spow(-3) * alg.gen(2, 3);
  CHECK(NCPoly::from_json(p.to_json()) == p);
}
