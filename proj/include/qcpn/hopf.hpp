#ifndef QCPN_HOPF_HPP
#define QCPN_HOPF_HPP

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qcpn/ncalg.hpp"
#include "qcpn/report.hpp"

namespace qcpn {

// ------------------------------------------------------------- U_q side

enum class UqKind : std::uint8_t { F, Kinv, K, E };

struct UqLetter {
  UqKind kind;
  int index;  // 1..n
  friend bool operator==(const UqLetter&, const UqLetter&) = default;
};

using UqWord = std::vector<UqLetter>;

std::string uq_word_text(const UqWord& w);

/// Basis ordering of the fundamental module.  `HighestWeightFirst` puts the
/// highest weight vector at index 1 (E_i -> e_{i,i+1}); `LowestWeightFirst`
/// reverses the weight order (E_i -> e_{i+1,i}, K_i -> diag(.., q^-1, q, ..)).
enum class RepOrdering { HighestWeightFirst, LowestWeightFirst };

const char* ordering_name(RepOrdering o);

/// Dense square matrix over Q(s).
class RepMatrix {
 public:
  RepMatrix() = default;
  explicit RepMatrix(int dim) : dim_(dim), entries_(static_cast<size_t>(dim) * dim) {}
  static RepMatrix identity(int dim);

  int dim() const { return dim_; }
  const ScalarRat& at(int r, int c) const { return entries_[static_cast<size_t>(r) * dim_ + c]; }
  ScalarRat& at(int r, int c) { return entries_[static_cast<size_t>(r) * dim_ + c]; }
  bool is_zero() const;

  friend RepMatrix operator*(const RepMatrix& a, const RepMatrix& b);
  friend RepMatrix operator+(const RepMatrix& a, const RepMatrix& b);
  friend RepMatrix operator-(const RepMatrix& a, const RepMatrix& b);
  friend RepMatrix operator*(const ScalarRat& c, const RepMatrix& a);
  friend bool operator==(const RepMatrix&, const RepMatrix&) = default;

  std::string to_text() const;

 private:
  int dim_ = 0;
  std::vector<ScalarRat> entries_;
};

/// Generator matrix on V (dimension n+1).  q = s^{n+1}.
RepMatrix fundamental_rep(int n, UqLetter g, RepOrdering ord = RepOrdering::HighestWeightFirst);
/// Action on V^{tensor m} through the iterated coproduct.
RepMatrix tensor_rep(int n, int m, UqLetter g, RepOrdering ord);

/// Checks every defining relation of U_q(sl_{n+1}) (Serre relations included)
/// on V^{tensor m}, plus the antipode identity on V and the counit.
std::vector<VerificationReport> verify_uq_relations(int n, int m, RepOrdering ord);

// ------------------------------------------------------------- A side

/// Element of A (x) A in the basis of pairs of normal-form words.
class TensorPair {
 public:
  using Key = std::pair<Word, Word>;
  void add(const Word& a, const Word& b, const ScalarRat& c);
  void add(const NCPoly& a, const NCPoly& b);
  const std::map<Key, ScalarRat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::vector<std::pair<NCPoly, NCPoly>> pairs() const;
  friend bool operator==(const TensorPair&, const TensorPair&) = default;

 private:
  std::map<Key, ScalarRat> terms_;
};

/// Delta(u^i_j) = sum_k u^i_k (x) u^k_j, extended multiplicatively; both legs
/// reduced to normal form.
TensorPair coproduct(const Algebra& alg, const NCPoly& a);
/// Same expansion, free words on both sides (no rewriting).
TensorPair coproduct_words(const Algebra& alg, const NCPoly& a);
/// Product of two tensors, legwise, reduced.
TensorPair tensor_mul(const Algebra& alg, const TensorPair& x, const TensorPair& y);

ScalarRat counit(const NCPoly& a);
NCPoly antipode(const Algebra& alg, const NCPoly& a);

/// (eps (x) id) Delta, (id (x) eps) Delta, m(S (x) id) Delta, m(id (x) S) Delta.
NCPoly counit_left(const Algebra& alg, const NCPoly& a);
NCPoly counit_right(const Algebra& alg, const NCPoly& a);
NCPoly antipode_left(const Algebra& alg, const NCPoly& a);
NCPoly antipode_right(const Algebra& alg, const NCPoly& a);

// ---------------------------------------------------------- the oracle

/// Evaluates elements of A on U_q words through V and its tensor powers.
/// Entirely independent of the rewriting system.
class PairingOracle {
 public:
  PairingOracle(int n, RepOrdering ord) : n_(n), ord_(ord) {}

  int n() const { return n_; }
  RepOrdering ordering() const { return ord_; }

  ScalarRat pairing_eval(const NCPoly& a, const UqWord& x) const;
  /// True iff a - b pairs to zero with every PBW word of length <= bound.
  bool oracle_equal(const NCPoly& a, const NCPoly& b, int degree_bound) const;
  /// First PBW word separating a and b, if any.
  std::optional<UqWord> separating_word(const NCPoly& a, const NCPoly& b, int degree_bound) const;

  /// PBW-ordered words: F-letters, then K^{+-1}, then E-letters.
  const std::vector<UqWord>& pbw_words(int degree_bound) const;

 private:
  using SparseVec = std::map<std::vector<std::uint8_t>, ScalarRat>;
  SparseVec act(const UqLetter& g, const SparseVec& v) const;
  ScalarRat k_entry(int i, int slot, int power) const;  // slot 0-based

  int n_;
  RepOrdering ord_;
  mutable std::unordered_map<int, std::vector<UqWord>> pbw_cache_;
};

/// Relation-by-relation certification of a presentation against the oracle.
struct Certification {
  RelationConvention convention;
  RepOrdering ordering;
  bool anchor_holds = false;  // u^1_2 u^1_1 = q^{-1} u^1_1 u^1_2 under the oracle
  bool all_relations = false;
  std::vector<std::string> failed_relations;
};

Certification certify_presentation(const Algebra& alg, RepOrdering ord, int degree_bound);

/// Tries the stated convention first, then the alternatives, and picks the
/// first one whose relations all certify and which reproduces the anchor
/// relation.  Every attempt is returned for the record.
struct ConventionChoice {
  std::vector<Certification> attempts;
  std::optional<Certification> chosen;
};

ConventionChoice select_convention(int n, int degree_bound);

/// Eigenvalue of the element Z = K_1^n K_2^{n-1} ... K_n acting on a by
/// a -> a_(1) <a_(2), Z>; nullopt if a is not an eigenvector.
std::optional<ScalarRat> z_eigenvalue(const Algebra& alg, const PairingOracle& oracle,
                                      const NCPoly& a);

}  // namespace qcpn

#endif  // QCPN_HOPF_HPP
