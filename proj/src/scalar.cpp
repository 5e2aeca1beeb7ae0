#include "qcpn/scalar.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace qcpn {

// ---------------------------------------------------------------- SPoly

SPoly::SPoly(long c) {
  if (c != 0) terms_.emplace_back(0, BigRational(c));
}

SPoly::SPoly(const BigRational& c) {
  if (sgn(c) != 0) terms_.emplace_back(0, c);
}

SPoly SPoly::monomial(int exp, const BigRational& c) {
  SPoly p;
  if (sgn(c) != 0) p.terms_.emplace_back(exp, c);
  return p;
}

SPoly SPoly::from_terms(std::vector<Term> terms) {
  std::map<int, BigRational> acc;
  for (auto& [e, c] : terms) acc[e] += c;
  SPoly p;
  for (auto& [e, c] : acc)
    if (sgn(c) != 0) p.terms_.emplace_back(e, c);
  return p;
}

int SPoly::degree() const { return terms_.empty() ? -1 : terms_.back().first; }

int SPoly::low_degree() const {
  return terms_.empty() ? 0 : terms_.front().first;
}

const BigRational& SPoly::leading_coeff() const {
  if (terms_.empty()) throw std::domain_error("leading coefficient of zero");
  return terms_.back().second;
}

BigRational SPoly::coeff(int exp) const {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), exp,
      [](const Term& t, int e) { return t.first < e; });
  if (it != terms_.end() && it->first == exp) return it->second;
  return 0;
}

SPoly SPoly::shifted(int k) const {
  SPoly r = *this;
  for (auto& t : r.terms_) t.first += k;
  return r;
}

SPoly SPoly::scaled(const BigRational& c) const {
  if (sgn(c) == 0) return {};
  SPoly r = *this;
  for (auto& t : r.terms_) t.second *= c;
  return r;
}

namespace {

std::vector<SPoly::Term> merge(const std::vector<SPoly::Term>& a,
                               const std::vector<SPoly::Term>& b, int sign) {
  std::vector<SPoly::Term> out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, sign > 0 ? b[j].second : BigRational(-b[j].second));
      ++j;
    } else {
      BigRational c = sign > 0 ? BigRational(a[i].second + b[j].second)
                               : BigRational(a[i].second - b[j].second);
      if (sgn(c) != 0) out.emplace_back(a[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

SPoly& SPoly::operator+=(const SPoly& o) {
  terms_ = merge(terms_, o.terms_, 1);
  return *this;
}

SPoly& SPoly::operator-=(const SPoly& o) {
  terms_ = merge(terms_, o.terms_, -1);
  return *this;
}

SPoly operator*(const SPoly& a, const SPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.is_monomial()) return b.shifted(a.terms_[0].first).scaled(a.terms_[0].second);
  if (b.is_monomial()) return a.shifted(b.terms_[0].first).scaled(b.terms_[0].second);
  // Exponents here are small, so accumulate densely.
  const int lo = a.low_degree() + b.low_degree();
  std::vector<BigRational> acc(static_cast<std::size_t>(a.degree() + b.degree() - lo + 1));
  BigRational t;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      mpq_mul(t.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
      acc[static_cast<std::size_t>(ea + eb - lo)] += t;
    }
  SPoly r;
  for (std::size_t i = 0; i < acc.size(); ++i)
    if (sgn(acc[i]) != 0) r.terms_.emplace_back(lo + static_cast<int>(i), std::move(acc[i]));
  return r;
}

std::pair<SPoly, SPoly> SPoly::divmod(const SPoly& a, const SPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  SPoly quot;
  SPoly rem = a;
  const int db = b.degree();
  const BigRational& lb = b.leading_coeff();
  std::vector<Term> qterms;
  while (!rem.is_zero() && rem.degree() >= db) {
    int e = rem.degree() - db;
    BigRational c = rem.leading_coeff() / lb;
    qterms.emplace_back(e, c);
    rem -= b.shifted(e).scaled(c);
  }
  std::reverse(qterms.begin(), qterms.end());
  quot.terms_ = std::move(qterms);
  return {quot, rem};
}

SPoly SPoly::gcd(SPoly a, SPoly b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a.scaled(1 / a.leading_coeff());
}

BigRational SPoly::evaluate(const BigRational& s) const {
  BigRational acc = 0;
  for (const auto& [e, c] : terms_) {
    BigRational p = 1;
    BigRational base = e >= 0 ? s : BigRational(1 / s);
    for (int k = 0; k < std::abs(e); ++k) p *= base;
    acc += c * p;
  }
  return acc;
}

// ------------------------------------------------------------- ScalarRat

ScalarRat::ScalarRat(SPoly num, SPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("ScalarRat with zero denominator");
  normalize();
}

void ScalarRat::normalize() {
  if (num_.is_zero()) {
    den_ = SPoly(1);
    return;
  }
  // Pull common powers of s (and stray negative exponents) out first.
  int t = std::min(num_.low_degree(), den_.low_degree());
  if (t != 0) {
    num_ = num_.shifted(-t);
    den_ = den_.shifted(-t);
  }
  if (!den_.is_monomial()) {
    SPoly g = SPoly::gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = SPoly::divmod(num_, g).first;
      den_ = SPoly::divmod(den_, g).first;
    }
  }
  BigRational lc = den_.leading_coeff();
  if (lc != 1) {
    BigRational inv = 1 / lc;
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

bool ScalarRat::is_one() const {
  return den_.is_monomial() && den_.degree() == 0 && num_ == den_;
}

ScalarRat& ScalarRat::operator+=(const ScalarRat& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_.is_monomial() && o.den_.is_monomial()) {
    // both denominators are s^d
    int d1 = den_.degree(), d2 = o.den_.degree();
    int m = std::max(d1, d2);
    num_ = num_.shifted(m - d1) + o.num_.shifted(m - d2);
    den_ = SPoly::monomial(m);
  } else if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  normalize();
  return *this;
}

ScalarRat& ScalarRat::operator-=(const ScalarRat& o) { return *this += -o; }

ScalarRat& ScalarRat::operator*=(const ScalarRat& o) {
  if (is_zero() || o.is_zero()) return *this = ScalarRat();
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

ScalarRat& ScalarRat::operator/=(const ScalarRat& o) { return *this *= o.inverse(); }

ScalarRat ScalarRat::operator-() const {
  ScalarRat r = *this;
  r.num_ = -r.num_;
  return r;
}

ScalarRat ScalarRat::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero scalar");
  return ScalarRat(den_, num_);
}

ScalarRat ScalarRat::pow(int e) const {
  ScalarRat base = e >= 0 ? *this : inverse();
  ScalarRat r(1);
  for (int k = 0; k < std::abs(e); ++k) r *= base;
  return r;
}

std::optional<BigRational> ScalarRat::evaluate(const BigRational& s) const {
  BigRational d = den_.evaluate(s);
  if (sgn(d) == 0) return std::nullopt;
  return BigRational(num_.evaluate(s) / d);
}

std::string rational_text(const BigRational& c) { return c.get_str(); }

namespace {

std::string render_terms(std::vector<SPoly::Term> terms, const char* var) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms) {
    bool neg = sgn(c) < 0;
    BigRational a = abs(c);
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      os << rational_text(a);
      continue;
    }
    if (a != 1) os << rational_text(a) << "*";
    os << var;
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

bool all_divisible(const std::vector<SPoly::Term>& terms, int step) {
  return std::all_of(terms.begin(), terms.end(),
                     [step](const SPoly::Term& t) { return t.first % step == 0; });
}

std::vector<SPoly::Term> divide_exponents(std::vector<SPoly::Term> terms, int step) {
  for (auto& t : terms) t.first /= step;
  return terms;
}

}  // namespace

std::string ScalarRat::to_text(int q_step) const {
  if (is_zero()) return "0";
  if (den_.is_monomial()) {
    int d = den_.degree();
    std::vector<SPoly::Term> terms = num_.shifted(-d).terms();
    const char* var = "s";
    if (q_step > 1 && all_divisible(terms, q_step)) {
      terms = divide_exponents(std::move(terms), q_step);
      var = "q";
    }
    // Polynomials in s^-1 read in ascending powers of s^-1.
    if (terms.back().first <= 0) std::reverse(terms.begin(), terms.end());
    return render_terms(std::move(terms), var);
  }
  auto nt = num_.terms();
  auto dt = den_.terms();
  const char* var = "s";
  if (q_step > 1 && all_divisible(nt, q_step) && all_divisible(dt, q_step)) {
    nt = divide_exponents(std::move(nt), q_step);
    dt = divide_exponents(std::move(dt), q_step);
    var = "q";
  }
  return "(" + render_terms(nt, var) + ")/(" + render_terms(dt, var) + ")";
}

namespace {

nlohmann::json poly_json(const SPoly& p) {
  auto arr = nlohmann::json::array();
  for (const auto& [e, c] : p.terms()) {
    std::string num = c.get_num().get_str();
    std::string den = c.get_den().get_str();
    arr.push_back({e, num + "/" + den});
  }
  return arr;
}

SPoly poly_from_json(const nlohmann::json& arr) {
  std::vector<SPoly::Term> terms;
  for (const auto& t : arr) {
    BigRational c(t.at(1).get<std::string>());
    c.canonicalize();
    terms.emplace_back(t.at(0).get<int>(), c);
  }
  return SPoly::from_terms(std::move(terms));
}

}  // namespace

nlohmann::json ScalarRat::to_json() const {
  return {{"num", poly_json(num_)}, {"den", poly_json(den_)}};
}

ScalarRat ScalarRat::from_json(const nlohmann::json& j) {
  return ScalarRat(poly_from_json(j.at("num")), poly_from_json(j.at("den")));
}

std::ostream& operator<<(std::ostream& os, const ScalarRat& x) {
  return os << x.to_text();
}

// --------------------------------------------------------- quantum integers

ScalarRat spow(int e) {
  if (e >= 0) return ScalarRat(SPoly::monomial(e));
  return ScalarRat(SPoly(1), SPoly::monomial(-e));
}

namespace {

void check_base(int t) {
  if (t == 0) throw std::invalid_argument("quantum integer base exponent must be nonzero");
}

}  // namespace

ScalarRat qint_round(int m, int t) {
  check_base(t);
  if (m < 0) throw std::invalid_argument("quantum integer needs m >= 0");
  ScalarRat r;
  for (int j = 0; j < m; ++j) r += spow(t * j);
  return r;
}

ScalarRat qint_bracket(int m, int t) {
  check_base(t);
  if (m < 0) throw std::invalid_argument("quantum integer needs m >= 0");
  ScalarRat r;
  for (int j = 0; j < m; ++j) r += spow(t * (1 - m + 2 * j));
  return r;
}

ScalarRat qfactorial(int m, int t) {
  check_base(t);
  if (m < 0) throw std::invalid_argument("q-factorial needs m >= 0");
  ScalarRat r(1);
  for (int j = 2; j <= m; ++j) r *= qint_bracket(j, t);
  return r;
}

ScalarRat qbinomial(int n, int r, int t) {
  if (n < 0 || r < 0 || r > n)
    throw std::invalid_argument("q-binomial needs 0 <= r <= n");
  return qfactorial(n, t) / (qfactorial(r, t) * qfactorial(n - r, t));
}

}  // namespace qcpn
