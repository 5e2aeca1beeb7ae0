#include <doctest.h>

#include "qcpn/scalar.hpp"

using namespace qcpn;

namespace {

// Independent evaluation: powers of a rational point, summed directly.
BigRational rpow(const BigRational& s, int e) {
  BigRational r = 1;
  for (int i = 0; i < std::abs(e); ++i) r *= s;
  return e >= 0 ? r : BigRational(1 / r);
}

BigRational round_at(int m, int t, const BigRational& s) {
  BigRational r = 0;
  for (int j = 0; j < m; ++j) r += rpow(s, t * j);
  return r;
}

BigRational bracket_at(int m, int t, const BigRational& s) {
  BigRational r = 0;
  for (int j = 0; j < m; ++j) r += rpow(s, t * (2 * j + 1 - m));
  return r;
}

const BigRational kPoints[] = {BigRational(3, 2), BigRational(2), BigRational(-5, 7), BigRational(11, 3)};

}  // namespace

TEST_CASE("spow") {
  CHECK(spow(0) == ScalarRat(1));
  CHECK(spow(3).to_text() == "s^3");
  CHECK(spow(-2).to_text() == "s^-2");
  CHECK(spow(-2) * spow(2) == ScalarRat(1));
}

TEST_CASE("quantum integers, examples") {
  // q = s^2 for n = 1
  CHECK(qint_round(3, 2).to_text(2) == "1 + q + q^2");
  CHECK(qint_round(0, 5).is_zero());
  CHECK(qint_round(2, -2).to_text() == "1 + s^-2");
  CHECK(qint_bracket(2, 2).to_text(2) == "q^-1 + q");
  CHECK(qint_bracket(1, 7) == ScalarRat(1));
  CHECK(qint_bracket(4, 2).to_text(2) == "q^-3 + q^-1 + q + q^3");
  CHECK(qfactorial(0, 2) == ScalarRat(1));
  for (int N = 0; N <= 6; ++N) CHECK(qbinomial(N, 0, 2) == ScalarRat(1));
}

TEST_CASE("quantum integers agree with direct evaluation") {
  for (const auto& s : kPoints)
    for (int t : {1, 2, -2, 3})
      for (int m = 0; m <= 12; ++m) {
        CHECK(*qint_round(m, t).evaluate(s) == round_at(m, t, s));
        CHECK(*qint_bracket(m, t).evaluate(s) == bracket_at(m, t, s));
      }
}

TEST_CASE("q-binomial (4,2) by direct expansion") {
  // [4][3] / ([2][1]) evaluated pointwise
  for (const auto& s : kPoints) {
    BigRational want = bracket_at(4, 2, s) * bracket_at(3, 2, s) / bracket_at(2, 2, s);
    CHECK(*qbinomial(4, 2, 2).evaluate(s) == want);
  }
  CHECK(qbinomial(4, 2, 1).to_text() == "s^-4 + s^-2 + 2 + s^2 + s^4");
}

TEST_CASE("identities") {
  for (int t : {1, 2, -3})
    for (int m = 0; m <= 20; ++m) {
      CHECK(qint_round(m, t) * (ScalarRat(1) - spow(t)) == ScalarRat(1) - spow(t * m));
      if (m >= 1) CHECK(qint_bracket(m, t) == qint_bracket(m, -t));
      CHECK(qint_bracket(m, t) == (m == 0 ? ScalarRat(0) : spow(t * (1 - m)) * qint_round(m, 2 * t)));
    }
}

TEST_CASE("field arithmetic") {
  ScalarRat a = ScalarRat(1) + spow(2);
  ScalarRat b = ScalarRat(1) - spow(1);
  ScalarRat c = a / b;
  CHECK(c * b == a);
  CHECK((c - c).is_zero());
  CHECK(c.inverse() * c == ScalarRat(1));
  // (1 - s^4) / (1 - s^2) reduces to 1 + s^2
  ScalarRat r = (ScalarRat(1) - spow(4)) / (ScalarRat(1) - spow(2));
  CHECK(r == a);
  CHECK(r.den() == SPoly(1));
  CHECK_THROWS_AS(ScalarRat(0).inverse(), std::domain_error);
  for (const auto& s : kPoints) CHECK(*c.evaluate(s) == *a.evaluate(s) / *b.evaluate(s));
  CHECK_FALSE(b.inverse().evaluate(1).has_value());
}

TEST_CASE("text and JSON") {
  CHECK(ScalarRat(0).to_text() == "0");
  CHECK((ScalarRat(1) + spow(-2)).to_text() == "1 + s^-2");
  CHECK((spow(-6) + spow(-2)).to_text() == "s^-2 + s^-6");
  CHECK((ScalarRat(BigRational(-1, 2)) * spow(3)).to_text() == "-1/2*s^3");
  ScalarRat x = (ScalarRat(3) - spow(-1)) / (ScalarRat(2) + spow(5));
  CHECK(ScalarRat::from_json(x.to_json()) == x);
  auto j = (ScalarRat(1) + spow(2)).to_json();
  CHECK(j["num"].dump() == R"([[0,"1/1"],[2,"1/1"]])");
}
