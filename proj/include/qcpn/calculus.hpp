#ifndef QCPN_CALCULUS_HPP
#define QCPN_CALCULUS_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qcpn/hopf.hpp"
#include "qcpn/ncalg.hpp"

namespace qcpn {

// Basis of Lambda, in order: e+_1..e+_n, e0, e-_1..e-_n.
inline int basis_plus(int i) { return i - 1; }
inline int basis_zero(int n) { return n; }
inline int basis_minus(int n, int i) { return n + i; }
std::string basis_name(int n, int b);

struct LambdaVec {
  std::vector<ScalarRat> c;

  LambdaVec() = default;
  explicit LambdaVec(int dim) : c(static_cast<std::size_t>(dim)) {}
  static LambdaVec unit(int dim, int b, const ScalarRat& v = 1);

  int dim() const { return static_cast<int>(c.size()); }
  bool is_zero() const;
  LambdaVec& operator+=(const LambdaVec& o);
  LambdaVec& operator-=(const LambdaVec& o);
  friend LambdaVec operator+(LambdaVec a, const LambdaVec& b) { return a += b; }
  friend LambdaVec operator-(LambdaVec a, const LambdaVec& b) { return a -= b; }
  friend LambdaVec operator*(const ScalarRat& s, LambdaVec a);
  friend bool operator==(const LambdaVec&, const LambdaVec&) = default;

  std::string to_text(int n) const;
  nlohmann::json to_json() const;
  static LambdaVec from_json(const nlohmann::json& j);
};

class InconsistentActionError : public std::runtime_error {
 public:
  InconsistentActionError(std::string relation, const std::string& what)
      : std::runtime_error(what), relation_(std::move(relation)) {}
  const std::string& relation() const { return relation_; }

 private:
  std::string relation_;
};

/// Right action of the generators on Lambda, plus the classes of their
/// differentials.  Rows are basis vectors: entry(b, g) = e_b <| g.
class ActionTable {
 public:
  ActionTable() = default;
  explicit ActionTable(int n);

  int n() const { return n_; }
  int dim() const { return 2 * n_ + 1; }

  const LambdaVec& entry(int b, Gen g) const;
  void set_entry(int b, Gen g, LambdaVec v);
  const LambdaVec& delbar_gen(Gen g) const;
  void set_delbar_gen(Gen g, LambdaVec v);

  LambdaVec act(const LambdaVec& v, Gen g) const;

  /// Directions the solve left undetermined (empty when fully pinned).
  std::vector<std::string> free_parameters;

  friend bool operator==(const ActionTable& a, const ActionTable& b) {
    return a.n_ == b.n_ && a.rows_ == b.rows_ && a.delbar_ == b.delbar_ &&
           a.free_parameters == b.free_parameters;
  }

  nlohmann::json to_json() const;
  static ActionTable from_json(const nlohmann::json& j);

 private:
  std::size_t slot(int b, Gen g) const;
  std::size_t gslot(Gen g) const;

  int n_ = 0;
  std::vector<LambdaVec> rows_;    // dim * (n+1)^2
  std::vector<LambdaVec> delbar_;  // (n+1)^2
};

/// The e+ and e- rows: diagonal scaling by s^{(n+1)(d_{i+1,k}+d_{1k}) - 2} on
/// u^k_k, zero on off-diagonal generators.  Keys are (basis, generator).
std::map<std::pair<int, Gen>, LambdaVec> known_action(int n);

/// Which entries the solve may determine.  `PrintedRows` fixes every e+- row
/// to the printed formulas; `WeightCompatible` additionally frees the
/// off-diagonal e+- entries that the torus weights allow
/// (e+_i <| u^{j+1}_{i+1} along e+_j, e-_i <| u^{i+1}_{j+1} along e-_j).
enum class ActionAnsatz { PrintedRows, WeightCompatible };

const char* ansatz_name(ActionAnsatz a);

struct ActionSolve {
  ActionTable table;
  std::vector<std::string> log;  // one line per solve stage
};

/// Derives the e0 rows and the classes of the diagonal generators from
/// delbar(r) = 0 and the module condition e0 <| r = 0 over every relation r.
/// Unknowns respect the torus weights: e0 <| u^k_l has weight eps_l - eps_k
/// and delbar(u^i_i) is a multiple of e0.  Throws InconsistentActionError.
ActionSolve solve_e0_action(const Algebra& alg, ActionAnsatz ansatz = ActionAnsatz::PrintedRows);

/// Relations r with delbar(r) != 0, or with e_b <| r != 0 for some b.
std::vector<std::string> relation_defects(const Algebra& alg, const ActionTable& table);

/// Element of A (x) Lambda, A-factors in normal form.
class OneForm {
 public:
  void add(const Word& w, const LambdaVec& v);
  void add(const NCPoly& a, const LambdaVec& v);
  const std::map<Word, LambdaVec>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  OneForm& operator+=(const OneForm& o);
  OneForm& operator-=(const OneForm& o);
  friend OneForm operator+(OneForm a, const OneForm& b) { return a += b; }
  friend OneForm operator-(OneForm a, const OneForm& b) { return a -= b; }
  friend OneForm operator*(const ScalarRat& c, const OneForm& a);
  friend bool operator==(const OneForm&, const OneForm&) = default;

  /// Keep only the coordinates b with keep[b].
  OneForm masked(const std::vector<bool>& keep) const;

  std::string to_text(int n, std::size_t max_terms = 0) const;
  nlohmann::json to_json() const;

 private:
  std::map<Word, LambdaVec> terms_;
};

/// sum_g p_g d(g): the left-A-linear combination of generator differentials
/// returned by the inverse of the unit map.
using FormalOneForm = std::map<Gen, NCPoly>;
std::string formal_text(int n, const FormalOneForm& f);

/// Calculus data for one n: the algebra and a solved action table.
/// Keeps memo tables; use one instance per thread.
class Calculus {
 public:
  Calculus(const Algebra& alg, ActionTable table);

  const Algebra& algebra() const { return alg_; }
  const ActionTable& table() const { return table_; }
  int n() const { return alg_.n(); }
  int dim() const { return table_.dim(); }

  /// v <| w for a word w.
  LambdaVec act_word(const LambdaVec& v, const Word& w) const;
  /// v <| a, extended linearly.
  LambdaVec act(const LambdaVec& v, const NCPoly& a) const;
  /// Class of da in Lambda.
  LambdaVec delbar(const NCPoly& a) const;

  OneForm unit_d(const NCPoly& a) const;
  OneForm right_mult(const OneForm& w, const NCPoly& b) const;
  OneForm left_mult(const NCPoly& a, const OneForm& w) const;

  OneForm proj10(const OneForm& w) const;
  OneForm proj01(const OneForm& w) const;
  OneForm proj_vert(const OneForm& w) const;

  /// Lifts: e+_i -> d u^{i+1}_1, e0 -> d u^1_1, e-_i -> d u^1_{i+1}.
  FormalOneForm unit_inverse(const OneForm& w) const;
  /// unit of sum_g p_g dg = sum p_g g_(1) (x) delbar(g_(2)).
  OneForm unit_formal(const FormalOneForm& f) const;

 private:
  const LambdaVec& delbar_word(const Word& w) const;
  const std::vector<std::vector<ScalarRat>>& word_matrix(const Word& w) const;

  const Algebra& alg_;
  ActionTable table_;
  mutable std::map<Word, LambdaVec> delbar_memo_;
  mutable std::map<Word, std::vector<std::vector<ScalarRat>>> matrix_memo_;
};

/// Versioned JSON cache of the solved table, keyed by n, the ansatz and the
/// presentation hash.  `load` returns nullopt on a miss or a stale file.
namespace action_cache {
inline constexpr const char* kSchema = "qcpn.action-table";
inline constexpr int kVersion = 1;
std::string file_name(const Algebra& alg, ActionAnsatz ansatz);
nlohmann::json dump(const Algebra& alg, ActionAnsatz ansatz, const ActionTable& table);
std::optional<ActionTable> parse(const Algebra& alg, ActionAnsatz ansatz, const nlohmann::json& j);
std::optional<ActionTable> load(const std::string& dir, const Algebra& alg, ActionAnsatz ansatz);
void store(const std::string& dir, const Algebra& alg, ActionAnsatz ansatz, const ActionTable& table);
}  // namespace action_cache

}  // namespace qcpn

#endif  // QCPN_CALCULUS_HPP
