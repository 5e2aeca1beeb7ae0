#ifndef QCPN_NCALG_HPP
#define QCPN_NCALG_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "qcpn/scalar.hpp"

namespace qcpn {

/// Matrix coefficient u^row_col of the fundamental representation (1-based).
struct Gen {
  std::uint8_t row = 1;
  std::uint8_t col = 1;

  // Row-major: u^1_1 < u^1_2 < ... < u^{n+1}_{n+1}.
  friend auto operator<=>(const Gen&, const Gen&) = default;
  friend bool operator==(const Gen&, const Gen&) = default;
};

inline Gen u(int row, int col) {
  return Gen{static_cast<std::uint8_t>(row), static_cast<std::uint8_t>(col)};
}

/// Word in the generators; ordered degree-lexicographically.
struct Word {
  std::vector<Gen> letters;

  Word() = default;
  Word(std::initializer_list<Gen> l) : letters(l) {}
  explicit Word(std::vector<Gen> l) : letters(std::move(l)) {}

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  /// True when letters are non-decreasing in the row-major order (PBW form).
  bool is_ordered() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend bool operator<(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.letters < b.letters;
  }
  friend Word operator*(const Word& a, const Word& b);
};

std::string word_text(const Word& w);

/// Finite linear combination of words with coefficients in Q(s).
class NCPoly {
 public:
  using TermMap = std::map<Word, ScalarRat>;

  NCPoly() = default;
  NCPoly(const ScalarRat& c);  // NOLINT(google-explicit-constructor)
  NCPoly(long c) : NCPoly(ScalarRat(c)) {}  // NOLINT(google-explicit-constructor)
  static NCPoly monomial(Word w, const ScalarRat& c = 1);
  static NCPoly generator(int row, int col) { return monomial(Word{u(row, col)}); }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  ScalarRat coeff(const Word& w) const;
  /// Total number of letters over all terms.
  std::size_t max_degree() const;

  void add_term(const Word& w, const ScalarRat& c);
  NCPoly& operator+=(const NCPoly& o);
  NCPoly& operator-=(const NCPoly& o);
  NCPoly& operator*=(const ScalarRat& c);
  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  friend NCPoly operator*(NCPoly a, const ScalarRat& c) { return a *= c; }
  friend NCPoly operator*(const ScalarRat& c, NCPoly a) { return a *= c; }
  NCPoly operator-() const { return *this * ScalarRat(-1); }
  /// Free (concatenation) product; no rewriting.
  friend NCPoly operator*(const NCPoly& a, const NCPoly& b);

  friend bool operator==(const NCPoly&, const NCPoly&) = default;

  /// Canonical text; coefficients print in q = s^{n+1} when possible.
  std::string to_text(int n) const;
  nlohmann::json to_json() const;
  static NCPoly from_json(const nlohmann::json& j);

 private:
  TermMap terms_;
};

NCPoly power(const NCPoly& p, int k);

/// Which power of q appears in the exchange relations.  `Anchor` is the
/// convention with u^1_2 u^1_1 = q^{-1} u^1_1 u^1_2; `Inverted` swaps q and
/// q^{-1} everywhere (relations, determinant, antipode).
enum class RelationConvention { Anchor, Inverted };

const char* convention_name(RelationConvention c);

class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Relation {
  std::string name;
  NCPoly lhs;
  NCPoly rhs;
  NCPoly difference() const { return lhs - rhs; }
};

/// Oriented rule `lead -> replacement`.
struct RewriteRule {
  Word lead;
  NCPoly replacement;
};

/// Order used to orient the rewriting system: total degree, then exponent
/// vector lexicographic with u^1_1 most significant, then word order.  Every
/// rewrite step strictly decreases the leading word in this order.
bool reduction_less(const Word& a, const Word& b, int dim);

/// Quantized coordinate algebra O_q(SU_{n+1}) in its FRT presentation.
///
/// Normal forms are ordered (PBW) words not divisible by the diagonal word
/// u^1_1 u^2_2 ... u^{n+1}_{n+1}; the determinant relation is the single
/// extra reduction on top of the quadratic exchange rules.  The instance keeps
/// memo tables, so one Algebra should not be shared across threads.
class Algebra {
 public:
  explicit Algebra(int n, RelationConvention conv = RelationConvention::Anchor,
                   std::size_t term_limit = 2'000'000);

  int n() const { return n_; }
  int dim() const { return n_ + 1; }
  RelationConvention convention() const { return conv_; }
  std::size_t term_limit() const { return term_limit_; }

  /// q = s^{n+1}.
  ScalarRat q() const { return spow(n_ + 1); }
  /// q^e (integer e).
  ScalarRat q_pow(int e) const { return spow(e * (n_ + 1)); }

  const std::vector<Relation>& relations() const { return relations_; }
  const std::vector<RewriteRule>& rules() const { return rules_; }
  std::string convention_hash() const;
  nlohmann::json presentation_json() const;

  NCPoly gen(int row, int col) const;
  std::vector<Gen> generators() const;

  /// Reduce to normal form modulo all relations including det_q = 1.
  NCPoly normal_form(const NCPoly& p) const;
  /// Reduce modulo the exchange relations only (quantum matrix algebra).
  NCPoly normal_form_exchange(const NCPoly& p) const;
  /// Normal form of a*b.
  NCPoly mul(const NCPoly& a, const NCPoly& b) const;
  NCPoly pow(const NCPoly& a, int k) const;

  /// Quantum minor over ordered row and column index sets of equal size.
  NCPoly quantum_minor(const std::vector<int>& rows, const std::vector<int>& cols) const;
  NCPoly qdet() const;
  /// (-q)^{i-j} times the quantum minor with row j and column i removed.
  NCPoly cofactor(int i, int j) const;

  /// Sphere generators z_i = u^i_1 and zbar_i = S(u^1_i).
  NCPoly z(int i) const { return gen(i, 1); }
  NCPoly zbar(int i) const { return cofactor(1, i); }

  /// Z-grading normalised so deg z_1 = 1; nullopt when inhomogeneous.
  /// Throws std::invalid_argument for words outside the sphere grading.
  std::optional<int> degree(const NCPoly& p) const;

  /// Conjugate-linear anti-homomorphism with (u^i_j)* = S(u^j_i).
  NCPoly star(const NCPoly& p) const;

  void check_gen(Gen g) const;

 private:
  using Cache = std::unordered_map<std::string, NCPoly>;

  struct ExchangeTerm {
    ScalarRat coeff;
    Gen first;
    Gen second;
  };

  void build_relations();
  std::vector<ExchangeTerm> exchange(Gen x, Gen g) const;
  const NCPoly& mul_letter(const Word& m, Gen g, bool with_det) const;
  NCPoly mul_poly_letter(const NCPoly& p, Gen g, bool with_det) const;
  NCPoly mul_poly_word(NCPoly p, const Word& w, bool with_det) const;
  const NCPoly& reduce_det(const Word& ordered) const;
  NCPoly reduce_det_poly(const NCPoly& p) const;
  void guard(const NCPoly& p) const;
  std::string key(const Word& m, Gen g) const;

  int n_;
  RelationConvention conv_;
  std::size_t term_limit_;
  ScalarRat qrel_;  // q or q^{-1} depending on convention
  std::vector<Relation> relations_;
  std::vector<RewriteRule> rules_;
  NCPoly det_;

  mutable Cache mul_cache_det_;
  mutable Cache mul_cache_exchange_;
  mutable Cache det_cache_;
};

}  // namespace qcpn

#endif  // QCPN_NCALG_HPP
