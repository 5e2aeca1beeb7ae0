#include "qcpn/ncalg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace qcpn {

// ------------------------------------------------------------------ Word

bool Word::is_ordered() const {
  return std::is_sorted(letters.begin(), letters.end());
}

Word operator*(const Word& a, const Word& b) {
  Word w = a;
  w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
  return w;
}

std::string word_text(const Word& w) {
  std::ostringstream os;
  for (const auto& g : w.letters)
    os << "u[" << int(g.row) << "," << int(g.col) << "]";
  return os.str();
}

// ---------------------------------------------------------------- NCPoly

NCPoly::NCPoly(const ScalarRat& c) {
  if (!c.is_zero()) terms_.emplace(Word{}, c);
}

NCPoly NCPoly::monomial(Word w, const ScalarRat& c) {
  NCPoly p;
  if (!c.is_zero()) p.terms_.emplace(std::move(w), c);
  return p;
}

ScalarRat NCPoly::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? ScalarRat() : it->second;
}

std::size_t NCPoly::max_degree() const {
  std::size_t d = 0;
  for (const auto& [w, c] : terms_) d = std::max(d, w.size());
  return d;
}

void NCPoly::add_term(const Word& w, const ScalarRat& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

NCPoly& NCPoly::operator+=(const NCPoly& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

NCPoly& NCPoly::operator*=(const ScalarRat& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, v] : terms_) v *= c;
  return *this;
}

NCPoly operator*(const NCPoly& a, const NCPoly& b) {
  NCPoly r;
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) r.add_term(wa * wb, ca * cb);
  return r;
}

NCPoly power(const NCPoly& p, int k) {
  NCPoly r(1);
  for (int i = 0; i < k; ++i) r = r * p;
  return r;
}

std::string NCPoly::to_text(int n) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    std::string ct = c.to_text(n + 1);
    bool single = c.den().is_monomial() && c.num().is_monomial();
    bool neg = single && ct.front() == '-';
    if (neg) ct.erase(0, 1);
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (w.empty()) {
      os << (single ? ct : "(" + ct + ")");
      continue;
    }
    if (ct != "1") os << (single ? ct : "(" + ct + ")") << " * ";
    os << word_text(w);
  }
  return os.str();
}

nlohmann::json NCPoly::to_json() const {
  auto arr = nlohmann::json::array();
  for (const auto& [w, c] : terms_) {
    auto word = nlohmann::json::array();
    for (const auto& g : w.letters) word.push_back({int(g.row), int(g.col)});
    arr.push_back({{"word", word}, {"coeff", c.to_json()}});
  }
  return arr;
}

NCPoly NCPoly::from_json(const nlohmann::json& j) {
  NCPoly p;
  for (const auto& t : j) {
    Word w;
    for (const auto& g : t.at("word")) w.letters.push_back(u(g.at(0), g.at(1)));
    p.add_term(w, ScalarRat::from_json(t.at("coeff")));
  }
  return p;
}

const char* convention_name(RelationConvention c) {
  return c == RelationConvention::Anchor ? "anchor" : "inverted";
}

// ------------------------------------------------------- reduction order

bool reduction_less(const Word& a, const Word& b, int dim) {
  if (a.size() != b.size()) return a.size() < b.size();
  std::vector<int> ea(dim * dim, 0), eb(dim * dim, 0);
  for (const auto& g : a.letters) ++ea[(g.row - 1) * dim + g.col - 1];
  for (const auto& g : b.letters) ++eb[(g.row - 1) * dim + g.col - 1];
  if (ea != eb) {
    // larger exponent on an earlier generator means larger
    for (int i = 0; i < dim * dim; ++i)
      if (ea[i] != eb[i]) return ea[i] < eb[i];
  }
  // same commutative image: the ordered word is the smallest
  return a.letters < b.letters;
}

// --------------------------------------------------------------- Algebra

Algebra::Algebra(int n, RelationConvention conv, std::size_t term_limit)
    : n_(n), conv_(conv), term_limit_(term_limit) {
  if (n < 1) throw std::invalid_argument("Algebra needs n >= 1");
  if (n > 14) throw std::invalid_argument("Algebra supports n <= 14");
  qrel_ = conv == RelationConvention::Anchor ? q() : q().inverse();
  det_ = quantum_minor(
      [&] {
        std::vector<int> v(dim());
        std::iota(v.begin(), v.end(), 1);
        return v;
      }(),
      [&] {
        std::vector<int> v(dim());
        std::iota(v.begin(), v.end(), 1);
        return v;
      }());
  build_relations();
}

void Algebra::check_gen(Gen g) const {
  if (g.row < 1 || g.row > dim() || g.col < 1 || g.col > dim())
    throw std::out_of_range("generator index out of range");
}

NCPoly Algebra::gen(int row, int col) const {
  check_gen(u(row, col));
  return NCPoly::generator(row, col);
}

std::vector<Gen> Algebra::generators() const {
  std::vector<Gen> gs;
  for (int i = 1; i <= dim(); ++i)
    for (int j = 1; j <= dim(); ++j) gs.push_back(u(i, j));
  return gs;
}

void Algebra::build_relations() {
  const int N = dim();
  const ScalarRat qi = qrel_.inverse();
  auto mono = [](Gen a, Gen b, const ScalarRat& c = 1) {
    return NCPoly::monomial(Word{a, b}, c);
  };
  auto tag = [](const char* kind, int a, int b, int c, int d) {
    std::ostringstream os;
    os << kind << "(" << a << "," << b << ";" << c << "," << d << ")";
    return os.str();
  };
  for (int k = 1; k <= N; ++k)
    for (int i = 1; i <= N; ++i)
      for (int j = i + 1; j <= N; ++j) {
        relations_.push_back({tag("row", k, i, k, j), mono(u(k, i), u(k, j)),
                              mono(u(k, j), u(k, i), qrel_)});
        rules_.push_back({Word{u(k, j), u(k, i)}, mono(u(k, i), u(k, j), qi)});
        relations_.push_back({tag("col", i, k, j, k), mono(u(i, k), u(j, k)),
                              mono(u(j, k), u(i, k), qrel_)});
        rules_.push_back({Word{u(j, k), u(i, k)}, mono(u(i, k), u(j, k), qi)});
      }
  for (int i = 1; i <= N; ++i)
    for (int j = i + 1; j <= N; ++j)
      for (int k = 1; k <= N; ++k)
        for (int l = k + 1; l <= N; ++l) {
          relations_.push_back({tag("anti", i, l, j, k), mono(u(i, l), u(j, k)),
                                mono(u(j, k), u(i, l))});
          rules_.push_back({Word{u(j, k), u(i, l)}, mono(u(i, l), u(j, k))});
          relations_.push_back({tag("diag", i, k, j, l),
                                mono(u(i, k), u(j, l)) - mono(u(j, l), u(i, k)),
                                mono(u(i, l), u(j, k), qrel_ - qi)});
          rules_.push_back({Word{u(j, l), u(i, k)},
                            mono(u(i, k), u(j, l)) - mono(u(i, l), u(j, k), qrel_ - qi)});
        }
  relations_.push_back({"det", det_, NCPoly(1)});
  Word diag;
  for (int i = 1; i <= N; ++i) diag.letters.push_back(u(i, i));
  NCPoly rest = det_;
  rest.add_term(diag, -1);
  rules_.push_back({diag, NCPoly(1) - rest});
}

std::string Algebra::convention_hash() const {
  // FNV-1a over the canonical presentation dump
  std::string dump = presentation_json().dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : dump) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

nlohmann::json Algebra::presentation_json() const {
  auto rels = nlohmann::json::array();
  for (const auto& r : relations_)
    rels.push_back({{"name", r.name}, {"lhs", r.lhs.to_json()}, {"rhs", r.rhs.to_json()}});
  return {{"n", n_}, {"convention", convention_name(conv_)}, {"relations", rels}};
}

std::vector<Algebra::ExchangeTerm> Algebra::exchange(Gen x, Gen g) const {
  // x > g in row-major order; returns x*g as ordered two-letter words.
  const ScalarRat qi = qrel_.inverse();
  if (x.row == g.row || x.col == g.col) return {{qi, g, x}};
  if (x.col < g.col) return {{ScalarRat(1), g, x}};
  // x = u^j_l, g = u^i_k with i < j, k < l
  return {{ScalarRat(1), g, x}, {qi - qrel_, u(g.row, x.col), u(x.row, g.col)}};
}

std::string Algebra::key(const Word& m, Gen g) const {
  std::string k;
  k.reserve(m.size() + 1);
  for (const auto& l : m.letters) k.push_back(static_cast<char>(l.row * 16 + l.col));
  k.push_back(static_cast<char>(g.row * 16 + g.col));
  return k;
}

void Algebra::guard(const NCPoly& p) const {
  if (p.size() > term_limit_)
    throw ResourceLimitError("term count " + std::to_string(p.size()) +
                             " exceeds limit " + std::to_string(term_limit_));
}

const NCPoly& Algebra::mul_letter(const Word& m, Gen g, bool with_det) const {
  Cache& cache = with_det ? mul_cache_det_ : mul_cache_exchange_;
  std::string k = key(m, g);
  if (auto it = cache.find(k); it != cache.end()) return it->second;

  NCPoly result;
  if (m.empty() || !(g < m.letters.back())) {
    Word w = m;
    w.letters.push_back(g);
    result = with_det ? reduce_det(w) : NCPoly::monomial(std::move(w));
  } else {
    Gen x = m.letters.back();
    Word prefix(std::vector<Gen>(m.letters.begin(), m.letters.end() - 1));
    for (const auto& t : exchange(x, g)) {
      NCPoly part = mul_letter(prefix, t.first, with_det);
      part = mul_poly_letter(part, t.second, with_det);
      result += part * t.coeff;
    }
  }
  guard(result);
  return cache.emplace(std::move(k), std::move(result)).first->second;
}

NCPoly Algebra::mul_poly_letter(const NCPoly& p, Gen g, bool with_det) const {
  NCPoly r;
  for (const auto& [w, c] : p.terms()) {
    const NCPoly& prod = mul_letter(w, g, with_det);
    for (const auto& [w2, c2] : prod.terms()) r.add_term(w2, c * c2);
  }
  guard(r);
  return r;
}

NCPoly Algebra::mul_poly_word(NCPoly p, const Word& w, bool with_det) const {
  for (const auto& g : w.letters) p = mul_poly_letter(p, g, with_det);
  return p;
}

const NCPoly& Algebra::reduce_det(const Word& ordered) const {
  std::string k = key(ordered, Gen{0, 0});
  if (auto it = det_cache_.find(k); it != det_cache_.end()) return it->second;

  // Remove one copy of each diagonal generator; fail fast if absent.
  Word beta = ordered;
  bool divisible = true;
  for (int i = 1; i <= dim() && divisible; ++i) {
    auto it = std::find(beta.letters.begin(), beta.letters.end(), u(i, i));
    if (it == beta.letters.end())
      divisible = false;
    else
      beta.letters.erase(it);
  }
  NCPoly result;
  if (!divisible) {
    result = NCPoly::monomial(ordered);
  } else {
    // beta * det = c * ordered + rest (exchange relations only), and
    // beta * det = beta modulo det - 1.
    NCPoly prod;
    for (const auto& [w, c] : det_.terms())
      prod += mul_poly_word(NCPoly::monomial(beta), w, false) * c;
    ScalarRat lead = prod.coeff(ordered);
    if (lead.is_zero()) throw std::logic_error("determinant reduction lost its leading word");
    prod.add_term(ordered, -lead);
    result = (reduce_det_poly(NCPoly::monomial(beta)) - reduce_det_poly(prod)) * lead.inverse();
  }
  guard(result);
  return det_cache_.emplace(std::move(k), std::move(result)).first->second;
}

NCPoly Algebra::reduce_det_poly(const NCPoly& p) const {
  NCPoly r;
  for (const auto& [w, c] : p.terms()) r += reduce_det(w) * c;
  return r;
}

NCPoly Algebra::normal_form(const NCPoly& p) const {
  NCPoly r;
  for (const auto& [w, c] : p.terms()) {
    for (const auto& g : w.letters) check_gen(g);
    r += mul_poly_word(NCPoly(c), w, true);
    guard(r);
  }
  return r;
}

NCPoly Algebra::normal_form_exchange(const NCPoly& p) const {
  NCPoly r;
  for (const auto& [w, c] : p.terms()) {
    for (const auto& g : w.letters) check_gen(g);
    r += mul_poly_word(NCPoly(c), w, false);
    guard(r);
  }
  return r;
}

NCPoly Algebra::mul(const NCPoly& a, const NCPoly& b) const {
  NCPoly na = normal_form(a);
  NCPoly r;
  for (const auto& [w, c] : b.terms()) r += mul_poly_word(na, w, true) * c;
  guard(r);
  return r;
}

NCPoly Algebra::pow(const NCPoly& a, int k) const {
  NCPoly r(1);
  for (int i = 0; i < k; ++i) r = mul(r, a);
  return r;
}

NCPoly Algebra::quantum_minor(const std::vector<int>& rows,
                              const std::vector<int>& cols) const {
  if (rows.size() != cols.size()) throw std::invalid_argument("minor needs a square index set");
  std::vector<int> perm(cols.size());
  std::iota(perm.begin(), perm.end(), 0);
  const ScalarRat mq = -qrel_;
  NCPoly r;
  do {
    int inv = 0;
    for (size_t a = 0; a < perm.size(); ++a)
      for (size_t b = a + 1; b < perm.size(); ++b) inv += perm[a] > perm[b];
    Word w;
    for (size_t t = 0; t < rows.size(); ++t) w.letters.push_back(u(rows[t], cols[perm[t]]));
    r.add_term(w, mq.pow(inv));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return r;
}

NCPoly Algebra::qdet() const { return det_; }

NCPoly Algebra::cofactor(int i, int j) const {
  check_gen(u(i, j));
  std::vector<int> rows, cols;
  for (int a = 1; a <= dim(); ++a) {
    if (a != j) rows.push_back(a);
    if (a != i) cols.push_back(a);
  }
  ScalarRat sign = (-qrel_).pow(i - j);
  if (rows.empty()) return NCPoly(sign);
  return quantum_minor(rows, cols) * sign;
}

std::optional<int> Algebra::degree(const NCPoly& p) const {
  std::optional<int> deg;
  bool first = true;
  for (const auto& [w, c] : p.terms()) {
    // Z acts on column index 1 with weight n and on the others with -1.
    int weight = 0;
    for (const auto& g : w.letters) weight += g.col == 1 ? n_ : -1;
    if (weight % n_ != 0)
      throw std::invalid_argument("word " + word_text(w) + " is outside the sphere grading");
    int d = weight / n_;
    if (first) {
      deg = d;
      first = false;
    } else if (deg != d) {
      return std::nullopt;
    }
  }
  return first ? std::optional<int>(0) : deg;
}

NCPoly Algebra::star(const NCPoly& p) const {
  NCPoly r;
  for (const auto& [w, c] : p.terms()) {
    // q is real, so conjugation fixes every coefficient.
    NCPoly acc(c);
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
      acc = mul(acc, cofactor(it->col, it->row));
    r += acc;
  }
  return normal_form(r);
}

}  // namespace qcpn
