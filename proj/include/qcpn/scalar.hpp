#ifndef QCPN_SCALAR_HPP
#define QCPN_SCALAR_HPP

#include <gmpxx.h>

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace qcpn {

using BigRational = mpq_class;

/// Sparse univariate polynomial in s over the rationals.
///
/// Terms are kept sorted by ascending exponent with no stored zeros, so two
/// polynomials are equal exactly when their term vectors are equal.
class SPoly {
 public:
  using Term = std::pair<int, BigRational>;

  SPoly() = default;
  SPoly(long c);  // NOLINT(google-explicit-constructor)
  SPoly(const BigRational& c);  // NOLINT(google-explicit-constructor)

  static SPoly monomial(int exp, const BigRational& c = 1);
  /// Build from arbitrary (exponent, coefficient) pairs; merges duplicates.
  static SPoly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  int degree() const;      // -1 for zero
  int low_degree() const;  // lowest exponent; 0 for zero
  const BigRational& leading_coeff() const;
  BigRational coeff(int exp) const;

  SPoly shifted(int k) const;  // multiply by s^k (k may be negative if exact)
  SPoly scaled(const BigRational& c) const;

  SPoly& operator+=(const SPoly& o);
  SPoly& operator-=(const SPoly& o);
  friend SPoly operator+(SPoly a, const SPoly& b) { return a += b; }
  friend SPoly operator-(SPoly a, const SPoly& b) { return a -= b; }
  friend SPoly operator*(const SPoly& a, const SPoly& b);
  SPoly operator-() const { return scaled(-1); }

  friend bool operator==(const SPoly& a, const SPoly& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const SPoly& a, const SPoly& b) { return !(a == b); }

  /// Euclidean division; throws std::domain_error on a zero divisor.
  static std::pair<SPoly, SPoly> divmod(const SPoly& a, const SPoly& b);
  /// Monic gcd; gcd(0, 0) = 0.
  static SPoly gcd(SPoly a, SPoly b);

  BigRational evaluate(const BigRational& s) const;

 private:
  std::vector<Term> terms_;
};

/// Element of Q(s): a reduced fraction with monic denominator.
///
/// Negative powers of s live in the denominator; there is no Laurent form.
class ScalarRat {
 public:
  ScalarRat() : den_(1) {}
  ScalarRat(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  ScalarRat(const BigRational& c) : num_(c), den_(1) {}  // NOLINT
  ScalarRat(const SPoly& p) : num_(p), den_(1) {}  // NOLINT
  ScalarRat(SPoly num, SPoly den);

  const SPoly& num() const { return num_; }
  const SPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;

  ScalarRat& operator+=(const ScalarRat& o);
  ScalarRat& operator-=(const ScalarRat& o);
  ScalarRat& operator*=(const ScalarRat& o);
  ScalarRat& operator/=(const ScalarRat& o);
  friend ScalarRat operator+(ScalarRat a, const ScalarRat& b) { return a += b; }
  friend ScalarRat operator-(ScalarRat a, const ScalarRat& b) { return a -= b; }
  friend ScalarRat operator*(ScalarRat a, const ScalarRat& b) { return a *= b; }
  friend ScalarRat operator/(ScalarRat a, const ScalarRat& b) { return a /= b; }
  ScalarRat operator-() const;
  ScalarRat inverse() const;
  ScalarRat pow(int e) const;

  friend bool operator==(const ScalarRat& a, const ScalarRat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const ScalarRat& a, const ScalarRat& b) {
    return !(a == b);
  }

  /// Value at a rational point; nullopt if the denominator vanishes there.
  std::optional<BigRational> evaluate(const BigRational& s) const;

  /// Canonical text.  When every exponent is a multiple of `q_step` (> 1)
  /// the output is written in q = s^q_step instead of s.
  std::string to_text(int q_step = 0) const;
  nlohmann::json to_json() const;
  static ScalarRat from_json(const nlohmann::json& j);

 private:
  void normalize();

  SPoly num_;
  SPoly den_;
};

std::ostream& operator<<(std::ostream& os, const ScalarRat& x);

/// s^e; negative exponents give 1/s^{-e}.
ScalarRat spow(int e);

/// (m)_{s^t} = 1 + s^t + ... + s^{t(m-1)}.
ScalarRat qint_round(int m, int t);
/// [m]_{s^t} = s^{t(1-m)} + s^{t(3-m)} + ... + s^{t(m-1)}.
ScalarRat qint_bracket(int m, int t);
/// [m]_{s^t}! with [0]! = 1.
ScalarRat qfactorial(int m, int t);
/// Symmetric q-binomial in base s^t; throws on r > n or negative arguments.
ScalarRat qbinomial(int n, int r, int t);

std::string rational_text(const BigRational& c);

}  // namespace qcpn

#endif  // QCPN_SCALAR_HPP
