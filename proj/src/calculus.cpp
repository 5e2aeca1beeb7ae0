#include "qcpn/calculus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace qcpn {

std::string basis_name(int n, int b) {
  if (b < n) return "e+" + std::to_string(b + 1);
  if (b == n) return "e0";
  return "e-" + std::to_string(b - n);
}

// ------------------------------------------------------------- LambdaVec

LambdaVec LambdaVec::unit(int dim, int b, const ScalarRat& v) {
  LambdaVec r(dim);
  r.c[static_cast<std::size_t>(b)] = v;
  return r;
}

bool LambdaVec::is_zero() const {
  for (const auto& x : c)
    if (!x.is_zero()) return false;
  return true;
}

LambdaVec& LambdaVec::operator+=(const LambdaVec& o) {
  if (c.empty()) c.resize(o.c.size());
  for (std::size_t i = 0; i < o.c.size(); ++i)
    if (!o.c[i].is_zero()) c[i] += o.c[i];
  return *this;
}

LambdaVec& LambdaVec::operator-=(const LambdaVec& o) {
  if (c.empty()) c.resize(o.c.size());
  for (std::size_t i = 0; i < o.c.size(); ++i)
    if (!o.c[i].is_zero()) c[i] -= o.c[i];
  return *this;
}

LambdaVec operator*(const ScalarRat& s, LambdaVec a) {
  for (auto& x : a.c)
    if (!x.is_zero()) x *= s;
  return a;
}

std::string LambdaVec::to_text(int n) const {
  std::ostringstream os;
  bool first = true;
  for (int b = 0; b < dim(); ++b) {
    const auto& x = c[static_cast<std::size_t>(b)];
    if (x.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    if (x.is_one())
      os << basis_name(n, b);
    else
      os << "(" << x.to_text(n + 1) << ") " << basis_name(n, b);
  }
  return first ? "0" : os.str();
}

nlohmann::json LambdaVec::to_json() const {
  auto j = nlohmann::json::array();
  for (const auto& x : c) j.push_back(x.to_json());
  return j;
}

LambdaVec LambdaVec::from_json(const nlohmann::json& j) {
  LambdaVec v;
  for (const auto& x : j) v.c.push_back(ScalarRat::from_json(x));
  return v;
}

// ----------------------------------------------------------- ActionTable

ActionTable::ActionTable(int n) : n_(n) {
  const int g = (n + 1) * (n + 1);
  rows_.assign(static_cast<std::size_t>(dim() * g), LambdaVec(dim()));
  delbar_.assign(static_cast<std::size_t>(g), LambdaVec(dim()));
}

std::size_t ActionTable::gslot(Gen g) const {
  if (g.row < 1 || g.row > n_ + 1 || g.col < 1 || g.col > n_ + 1)
    throw std::out_of_range("generator outside the action table");
  return static_cast<std::size_t>((g.row - 1) * (n_ + 1) + g.col - 1);
}

std::size_t ActionTable::slot(int b, Gen g) const {
  if (b < 0 || b >= dim()) throw std::out_of_range("basis index outside Lambda");
  return static_cast<std::size_t>(b) * static_cast<std::size_t>((n_ + 1) * (n_ + 1)) + gslot(g);
}

const LambdaVec& ActionTable::entry(int b, Gen g) const { return rows_[slot(b, g)]; }
void ActionTable::set_entry(int b, Gen g, LambdaVec v) { rows_[slot(b, g)] = std::move(v); }
const LambdaVec& ActionTable::delbar_gen(Gen g) const { return delbar_[gslot(g)]; }
void ActionTable::set_delbar_gen(Gen g, LambdaVec v) { delbar_[gslot(g)] = std::move(v); }

LambdaVec ActionTable::act(const LambdaVec& v, Gen g) const {
  LambdaVec out(dim());
  for (int b = 0; b < dim(); ++b) {
    const auto& x = v.c[static_cast<std::size_t>(b)];
    if (!x.is_zero()) out += x * entry(b, g);
  }
  return out;
}

nlohmann::json ActionTable::to_json() const {
  auto rows = nlohmann::json::array();
  auto del = nlohmann::json::array();
  for (int i = 1; i <= n_ + 1; ++i)
    for (int j = 1; j <= n_ + 1; ++j) {
      for (int b = 0; b < dim(); ++b)
        rows.push_back({{"basis", b}, {"gen", {i, j}}, {"vec", entry(b, u(i, j)).to_json()}});
      del.push_back({{"gen", {i, j}}, {"vec", delbar_gen(u(i, j)).to_json()}});
    }
  return {{"n", n_}, {"rows", rows}, {"delbar", del}, {"free_parameters", free_parameters}};
}

ActionTable ActionTable::from_json(const nlohmann::json& j) {
  ActionTable t(j.at("n").get<int>());
  for (const auto& r : j.at("rows"))
    t.set_entry(r.at("basis").get<int>(), u(r.at("gen")[0].get<int>(), r.at("gen")[1].get<int>()),
                LambdaVec::from_json(r.at("vec")));
  for (const auto& r : j.at("delbar"))
    t.set_delbar_gen(u(r.at("gen")[0].get<int>(), r.at("gen")[1].get<int>()),
                     LambdaVec::from_json(r.at("vec")));
  t.free_parameters = j.at("free_parameters").get<std::vector<std::string>>();
  return t;
}

std::map<std::pair<int, Gen>, LambdaVec> known_action(int n) {
  std::map<std::pair<int, Gen>, LambdaVec> out;
  const int dim = 2 * n + 1;
  const int N = n + 1;
  for (int i = 1; i <= n; ++i)
    for (int b : {basis_plus(i), basis_minus(n, i)})
      for (int k = 1; k <= N; ++k)
        for (int l = 1; l <= N; ++l) {
          if (k != l) {
            out[{b, u(k, l)}] = LambdaVec(dim);
            continue;
          }
          int e = N * ((i + 1 == k ? 1 : 0) + (k == 1 ? 1 : 0)) - 2;
          out[{b, u(k, k)}] = LambdaVec::unit(dim, b, spow(e));
        }
  return out;
}

// ------------------------------------------------------------ the solve

const char* ansatz_name(ActionAnsatz a) {
  return a == ActionAnsatz::PrintedRows ? "printed-rows" : "weight-compatible";
}

namespace {

// Polynomial in the unknowns of the action table.
struct SymPoly {
  std::map<std::vector<std::uint8_t>, ScalarRat> t;

  static SymPoly constant(int nv, const ScalarRat& c) {
    SymPoly p;
    if (!c.is_zero()) p.t.emplace(std::vector<std::uint8_t>(static_cast<std::size_t>(nv), 0), c);
    return p;
  }
  static SymPoly var(int nv, int v) {
    SymPoly p;
    std::vector<std::uint8_t> e(static_cast<std::size_t>(nv), 0);
    e[static_cast<std::size_t>(v)] = 1;
    p.t.emplace(std::move(e), ScalarRat(1));
    return p;
  }
  bool is_zero() const { return t.empty(); }
  int degree() const {
    int d = 0;
    for (const auto& [e, c] : t) {
      int s = 0;
      for (auto x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }
  void add(const std::vector<std::uint8_t>& e, const ScalarRat& c) {
    if (c.is_zero()) return;
    auto [it, ins] = t.try_emplace(e, c);
    if (ins) return;
    it->second += c;
    if (it->second.is_zero()) t.erase(it);
  }
  SymPoly& operator+=(const SymPoly& o) {
    for (const auto& [e, c] : o.t) add(e, c);
    return *this;
  }
  friend SymPoly operator*(const SymPoly& a, const SymPoly& b) {
    SymPoly r;
    for (const auto& [ea, ca] : a.t)
      for (const auto& [eb, cb] : b.t) {
        auto e = ea;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::uint8_t>(e[i] + eb[i]);
        r.add(e, ca * cb);
      }
    return r;
  }
  friend SymPoly operator*(const ScalarRat& c, const SymPoly& a) {
    SymPoly r;
    if (c.is_zero()) return r;
    for (const auto& [e, x] : a.t) r.t.emplace(e, x * c);
    return r;
  }
  SymPoly substitute(int v, const SymPoly& value) const {
    SymPoly r;
    const auto vi = static_cast<std::size_t>(v);
    for (const auto& [e, c] : t) {
      if (e[vi] == 0) {
        r.add(e, c);
        continue;
      }
      auto base = e;
      base[vi] = 0;
      SymPoly term;
      term.t.emplace(base, c);
      for (int d = 0; d < e[vi]; ++d) term = term * value;
      r += term;
    }
    return r;
  }
  std::string to_text(const std::vector<std::string>& names, int q_step) const {
    if (t.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : t) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c.to_text(q_step) << ")";
      for (std::size_t i = 0; i < e.size(); ++i)
        for (int d = 0; d < e[i]; ++d) os << "*" << names[i];
    }
    return os.str();
  }
};

struct Equation {
  SymPoly poly;
  std::string origin;
};

struct Unknowns {
  std::vector<std::string> names;
  // (basis row, generator) -> (variable, target basis); the target is the
  // unique basis vector of the right torus weight
  std::map<std::pair<int, Gen>, std::pair<int, int>> row_vars;
  // delbar(u^i_i) = var * e0 for i >= 2
  std::map<Gen, int> diag_class;
};

std::string gen_text(int k, int l) {
  return "u[" + std::to_string(k) + "," + std::to_string(l) + "]";
}

Unknowns make_unknowns(int n, ActionAnsatz ansatz) {
  Unknowns u_;
  const int N = n + 1;
  auto add_row = [&](int b, Gen g, int target) {
    u_.names.push_back(basis_name(n, b) + "<|" + gen_text(g.row, g.col) + ":" + basis_name(n, target));
    u_.row_vars[{b, g}] = {static_cast<int>(u_.names.size()) - 1, target};
  };
  const int z = basis_zero(n);
  for (int k = 1; k <= N; ++k) add_row(z, u(k, k), z);
  for (int i = 1; i <= n; ++i) {
    add_row(z, u(i + 1, 1), basis_plus(i));
    add_row(z, u(1, i + 1), basis_minus(n, i));
  }
  if (ansatz == ActionAnsatz::WeightCompatible)
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        if (i == j) continue;
        add_row(basis_plus(i), u(j + 1, i + 1), basis_plus(j));
        add_row(basis_minus(n, i), u(i + 1, j + 1), basis_minus(n, j));
      }
  for (int i = 2; i <= N; ++i) {
    u_.names.push_back("delbar(" + gen_text(i, i) + "):e0");
    u_.diag_class[u(i, i)] = static_cast<int>(u_.names.size()) - 1;
  }
  return u_;
}

using SymMatrix = std::vector<std::vector<SymPoly>>;

// Block matrix [[eps(g), delbar(g)], [0, M(g)]] of size dim+1.
SymMatrix block_matrix(int n, const Unknowns& unk, Gen g) {
  const int dim = 2 * n + 1;
  const int nv = static_cast<int>(unk.names.size());
  SymMatrix m(static_cast<std::size_t>(dim + 1), std::vector<SymPoly>(static_cast<std::size_t>(dim + 1)));
  if (g.row == g.col) m[0][0] = SymPoly::constant(nv, 1);
  // delbar of the generator
  if (g.col == 1 && g.row >= 2) m[0][1 + basis_plus(g.row - 1)] = SymPoly::constant(nv, 1);
  else if (g.row == 1 && g.col == 1) m[0][1 + basis_zero(n)] = SymPoly::constant(nv, 1);
  else if (g.row == 1 && g.col >= 2) m[0][1 + basis_minus(n, g.col - 1)] = SymPoly::constant(nv, 1);
  else if (auto it = unk.diag_class.find(g); it != unk.diag_class.end())
    m[0][1 + basis_zero(n)] = SymPoly::var(nv, it->second);
  static thread_local std::map<int, std::map<std::pair<int, Gen>, LambdaVec>> known_cache;
  auto& known = known_cache.try_emplace(n, known_action(n)).first->second;
  for (int b = 0; b < dim; ++b) {
    if (b == basis_zero(n)) continue;
    const LambdaVec& v = known.at({b, g});
    if (unk.row_vars.count({b, g})) continue;
    for (int c = 0; c < dim; ++c)
      if (!v.c[static_cast<std::size_t>(c)].is_zero())
        m[static_cast<std::size_t>(1 + b)][static_cast<std::size_t>(1 + c)] =
            SymPoly::constant(nv, v.c[static_cast<std::size_t>(c)]);
  }
  for (int b = 0; b < dim; ++b)
    if (auto it = unk.row_vars.find({b, g}); it != unk.row_vars.end())
      m[static_cast<std::size_t>(1 + b)][static_cast<std::size_t>(1 + it->second.second)] =
          SymPoly::var(nv, it->second.first);
  return m;
}

std::vector<SymPoly> row_times(const std::vector<SymPoly>& r, const SymMatrix& m) {
  std::vector<SymPoly> out(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i].is_zero()) continue;
    for (std::size_t j = 0; j < r.size(); ++j)
      if (!m[i][j].is_zero()) out[j] += r[i] * m[i][j];
  }
  return out;
}

}  // namespace

ActionSolve solve_e0_action(const Algebra& alg, ActionAnsatz ansatz) {
  const int n = alg.n();
  const int dim = 2 * n + 1;
  const Unknowns unk = make_unknowns(n, ansatz);
  const int nv = static_cast<int>(unk.names.size());
  std::map<Gen, SymMatrix> blocks;
  for (Gen g : alg.generators()) blocks.emplace(g, block_matrix(n, unk, g));

  // Rows 0 (delbar) and 1 + b (module action of e_b) of the block product,
  // summed over the relation.
  std::vector<Equation> eqs;
  for (const auto& rel : alg.relations()) {
    NCPoly diff = rel.difference();
    for (int start = 0; start <= dim; ++start) {
      std::vector<SymPoly> total(static_cast<std::size_t>(dim + 1));
      for (const auto& [w, c] : diff.terms()) {
        std::vector<SymPoly> r(static_cast<std::size_t>(dim + 1));
        r[static_cast<std::size_t>(start)] = SymPoly::constant(nv, 1);
        for (Gen g : w.letters) r = row_times(r, blocks.at(g));
        for (std::size_t j = 0; j <= static_cast<std::size_t>(dim); ++j)
          if (!r[j].is_zero()) total[j] += c * r[j];
      }
      for (int j = 1; j <= dim; ++j) {
        auto& p = total[static_cast<std::size_t>(j)];
        if (p.is_zero()) continue;
        std::string origin = (start == 0 ? "delbar(" : basis_name(n, start - 1) + "<|(") + rel.name + ")[" +
                             basis_name(n, j - 1) + "]";
        eqs.push_back({std::move(p), std::move(origin)});
      }
    }
  }

  ActionSolve out;
  std::map<int, SymPoly> solved;
  auto check_constants = [&] {
    for (const auto& e : eqs)
      if (!e.poly.is_zero() && e.poly.degree() == 0)
        throw InconsistentActionError(
            e.origin, "inconsistent action table: " + e.origin + " reduces to " +
                          e.poly.to_text(unk.names, n + 1) + " != 0");
  };
  check_constants();
  int stage = 0;
  while (true) {
    auto it = std::find_if(eqs.begin(), eqs.end(),
                           [](const Equation& e) { return e.poly.degree() == 1; });
    if (it == eqs.end()) break;
    // pivot on the last variable appearing linearly
    int pivot = -1;
    ScalarRat coef;
    for (const auto& [e, c] : it->poly.t)
      for (int v = 0; v < nv; ++v)
        if (e[static_cast<std::size_t>(v)] == 1) {
          pivot = v;
          coef = c;
        }
    SymPoly value;
    for (const auto& [e, c] : it->poly.t)
      if (e[static_cast<std::size_t>(pivot)] == 0) value.add(e, -c / coef);
    out.log.push_back("stage " + std::to_string(++stage) + ": " + unk.names[static_cast<std::size_t>(pivot)] +
                      " = " + value.to_text(unk.names, n + 1) + "  from " + it->origin);
    for (auto& [v, p] : solved) p = p.substitute(pivot, value);
    solved[pivot] = value;
    for (auto& e : eqs) e.poly = e.poly.substitute(pivot, value);
    check_constants();
    eqs.erase(std::remove_if(eqs.begin(), eqs.end(), [](const Equation& e) { return e.poly.is_zero(); }),
              eqs.end());
  }
  for (const auto& e : eqs)
    out.log.push_back("unresolved nonlinear constraint " + e.origin + ": " +
                      e.poly.to_text(unk.names, n + 1));

  ActionTable table(n);
  for (const auto& [key, v] : known_action(n)) table.set_entry(key.first, key.second, v);
  auto value_of = [&](int v) -> ScalarRat {
    auto s = solved.find(v);
    if (s == solved.end() || s->second.degree() > 0) {
      // left free: recorded, and the zero representative is used
      std::string name = unk.names[static_cast<std::size_t>(v)];
      if (std::find(table.free_parameters.begin(), table.free_parameters.end(), name) ==
          table.free_parameters.end())
        table.free_parameters.push_back(name);
      return 0;
    }
    return s->second.is_zero() ? ScalarRat(0) : s->second.t.begin()->second;
  };
  for (const auto& [key, var] : unk.row_vars) {
    LambdaVec row = key.first == basis_zero(n) ? LambdaVec(dim) : table.entry(key.first, key.second);
    row.c[static_cast<std::size_t>(var.second)] = value_of(var.first);
    table.set_entry(key.first, key.second, row);
  }
  for (Gen g : alg.generators()) {
    if (!unk.row_vars.count({basis_zero(n), g})) table.set_entry(basis_zero(n), g, LambdaVec(dim));
    LambdaVec d(dim);
    if (g.col == 1 && g.row >= 2) d = LambdaVec::unit(dim, basis_plus(g.row - 1));
    else if (g.row == 1 && g.col == 1) d = LambdaVec::unit(dim, basis_zero(n));
    else if (g.row == 1) d = LambdaVec::unit(dim, basis_minus(n, g.col - 1));
    else if (auto jt = unk.diag_class.find(g); jt != unk.diag_class.end())
      d = LambdaVec::unit(dim, basis_zero(n), value_of(jt->second));
    table.set_delbar_gen(g, d);
  }
  out.table = std::move(table);
  return out;
}

std::vector<std::string> relation_defects(const Algebra& alg, const ActionTable& table) {
  std::vector<std::string> out;
  Calculus calc(alg, table);
  const int dim = table.dim();
  for (const auto& rel : alg.relations()) {
    NCPoly diff = rel.difference();
    if (!calc.delbar(diff).is_zero()) {
      out.push_back("delbar(" + rel.name + ")");
      continue;
    }
    for (int b = 0; b < dim; ++b)
      if (!calc.act(LambdaVec::unit(dim, b), diff).is_zero()) {
        out.push_back(basis_name(alg.n(), b) + "<|(" + rel.name + ")");
        break;
      }
  }
  return out;
}

// --------------------------------------------------------------- OneForm

void OneForm::add(const Word& w, const LambdaVec& v) {
  if (v.is_zero()) return;
  auto [it, ins] = terms_.try_emplace(w, v);
  if (ins) return;
  it->second += v;
  if (it->second.is_zero()) terms_.erase(it);
}

void OneForm::add(const NCPoly& a, const LambdaVec& v) {
  if (v.is_zero()) return;
  for (const auto& [w, c] : a.terms()) add(w, c * v);
}

OneForm& OneForm::operator+=(const OneForm& o) {
  for (const auto& [w, v] : o.terms_) add(w, v);
  return *this;
}

OneForm& OneForm::operator-=(const OneForm& o) {
  for (const auto& [w, v] : o.terms_) add(w, ScalarRat(-1) * v);
  return *this;
}

OneForm operator*(const ScalarRat& c, const OneForm& a) {
  OneForm r;
  if (c.is_zero()) return r;
  for (const auto& [w, v] : a.terms_) r.add(w, c * v);
  return r;
}

OneForm OneForm::masked(const std::vector<bool>& keep) const {
  OneForm r;
  for (const auto& [w, v] : terms_) {
    LambdaVec m = v;
    for (std::size_t b = 0; b < m.c.size(); ++b)
      if (!keep[b]) m.c[b] = ScalarRat();
    r.add(w, m);
  }
  return r;
}

std::string OneForm::to_text(int n, std::size_t max_terms) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  std::size_t count = 0, total = 0;
  for (const auto& [w, v] : terms_)
    for (const auto& x : v.c)
      if (!x.is_zero()) ++total;
  for (const auto& [w, v] : terms_)
    for (int b = 0; b < v.dim(); ++b) {
      const auto& x = v.c[static_cast<std::size_t>(b)];
      if (x.is_zero()) continue;
      if (max_terms && count == max_terms) {
        os << " + ... (" << total - count << " more)";
        return os.str();
      }
      if (count++) os << " + ";
      if (!x.is_one()) os << "(" << x.to_text(n + 1) << ") * ";
      os << (w.empty() ? std::string("1") : word_text(w)) << " (x) " << basis_name(n, b);
    }
  return os.str();
}

nlohmann::json OneForm::to_json() const {
  auto j = nlohmann::json::array();
  for (const auto& [w, v] : terms_) {
    auto word = nlohmann::json::array();
    for (const auto& g : w.letters) word.push_back({int(g.row), int(g.col)});
    j.push_back({{"word", word}, {"vec", v.to_json()}});
  }
  return j;
}

std::string formal_text(int n, const FormalOneForm& f) {
  if (f.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [g, p] : f) {
    if (!first) os << " + ";
    first = false;
    os << "(" << p.to_text(n) << ") d" << word_text(Word{g});
  }
  return os.str();
}

// -------------------------------------------------------------- Calculus

Calculus::Calculus(const Algebra& alg, ActionTable table) : alg_(alg), table_(std::move(table)) {
  if (table_.n() != alg.n()) throw std::invalid_argument("action table built for another n");
}

const std::vector<std::vector<ScalarRat>>& Calculus::word_matrix(const Word& w) const {
  auto it = matrix_memo_.find(w);
  if (it != matrix_memo_.end()) return it->second;
  const int d = dim();
  std::vector<std::vector<ScalarRat>> m;
  if (w.empty()) {
    m.assign(static_cast<std::size_t>(d), std::vector<ScalarRat>(static_cast<std::size_t>(d)));
    for (int i = 0; i < d; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  } else {
    Word prefix(std::vector<Gen>(w.letters.begin(), w.letters.end() - 1));
    const auto& p = word_matrix(prefix);
    Gen g = w.letters.back();
    m.assign(static_cast<std::size_t>(d), std::vector<ScalarRat>(static_cast<std::size_t>(d)));
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k) {
        const auto& x = p[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
        if (x.is_zero()) continue;
        const LambdaVec& row = table_.entry(k, g);
        for (int j = 0; j < d; ++j)
          if (!row.c[static_cast<std::size_t>(j)].is_zero())
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += x * row.c[static_cast<std::size_t>(j)];
      }
  }
  return matrix_memo_.emplace(w, std::move(m)).first->second;
}

LambdaVec Calculus::act_word(const LambdaVec& v, const Word& w) const {
  if (w.empty()) return v;
  const auto& m = word_matrix(w);
  LambdaVec out(dim());
  for (int i = 0; i < dim(); ++i) {
    const auto& x = v.c[static_cast<std::size_t>(i)];
    if (x.is_zero()) continue;
    for (int j = 0; j < dim(); ++j)
      if (!m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].is_zero())
        out.c[static_cast<std::size_t>(j)] += x * m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return out;
}

LambdaVec Calculus::act(const LambdaVec& v, const NCPoly& a) const {
  LambdaVec out(dim());
  for (const auto& [w, c] : a.terms()) out += c * act_word(v, w);
  return out;
}

const LambdaVec& Calculus::delbar_word(const Word& w) const {
  auto it = delbar_memo_.find(w);
  if (it != delbar_memo_.end()) return it->second;
  LambdaVec r(dim());
  if (!w.empty()) {
    Word prefix(std::vector<Gen>(w.letters.begin(), w.letters.end() - 1));
    Gen g = w.letters.back();
    // delbar(x g) = delbar(x) <| g + eps(x) delbar(g)
    r = table_.act(delbar_word(prefix), g);
    bool eps = std::all_of(prefix.letters.begin(), prefix.letters.end(),
                           [](Gen h) { return h.row == h.col; });
    if (eps) r += table_.delbar_gen(g);
  }
  return delbar_memo_.emplace(w, std::move(r)).first->second;
}

LambdaVec Calculus::delbar(const NCPoly& a) const {
  LambdaVec out(dim());
  for (const auto& [w, c] : a.terms()) out += c * delbar_word(w);
  return out;
}

OneForm Calculus::unit_d(const NCPoly& a) const {
  std::map<Word, LambdaVec> acc;
  const TensorPair cw = coproduct_words(alg_, a);
  for (const auto& [k, c] : cw.terms()) {
    const LambdaVec& v = delbar_word(k.second);
    if (v.is_zero()) continue;
    auto [it, ins] = acc.try_emplace(k.first, c * v);
    if (!ins) it->second += c * v;
  }
  OneForm out;
  for (const auto& [w, v] : acc)
    if (!v.is_zero()) out.add(alg_.normal_form(NCPoly::monomial(w)), v);
  return out;
}

OneForm Calculus::right_mult(const OneForm& w, const NCPoly& b) const {
  std::map<Word, std::vector<std::pair<Word, ScalarRat>>> groups;
  const TensorPair cw = coproduct_words(alg_, b);
  for (const auto& [k, c] : cw.terms()) groups[k.first].emplace_back(k.second, c);
  OneForm out;
  for (const auto& [x, v] : w.terms())
    for (const auto& [b1, list] : groups) {
      LambdaVec acc(dim());
      for (const auto& [b2, c] : list) acc += c * act_word(v, b2);
      if (acc.is_zero()) continue;
      out.add(alg_.mul(NCPoly::monomial(x), NCPoly::monomial(b1)), acc);
    }
  return out;
}

OneForm Calculus::left_mult(const NCPoly& a, const OneForm& w) const {
  OneForm out;
  for (const auto& [x, v] : w.terms()) out.add(alg_.mul(a, NCPoly::monomial(x)), v);
  return out;
}

OneForm Calculus::proj10(const OneForm& w) const {
  std::vector<bool> keep(static_cast<std::size_t>(dim()), false);
  for (int i = 1; i <= n(); ++i) keep[static_cast<std::size_t>(basis_plus(i))] = true;
  return w.masked(keep);
}

OneForm Calculus::proj01(const OneForm& w) const {
  std::vector<bool> keep(static_cast<std::size_t>(dim()), false);
  for (int i = 1; i <= n(); ++i) keep[static_cast<std::size_t>(basis_minus(n(), i))] = true;
  return w.masked(keep);
}

OneForm Calculus::proj_vert(const OneForm& w) const {
  std::vector<bool> keep(static_cast<std::size_t>(dim()), false);
  keep[static_cast<std::size_t>(basis_zero(n()))] = true;
  return w.masked(keep);
}

FormalOneForm Calculus::unit_inverse(const OneForm& w) const {
  FormalOneForm out;
  const int N = n() + 1;
  for (const auto& [x, v] : w.terms())
    for (int b = 0; b < dim(); ++b) {
      const auto& c = v.c[static_cast<std::size_t>(b)];
      if (c.is_zero()) continue;
      Gen lift = b < n() ? u(b + 2, 1) : (b == n() ? u(1, 1) : u(1, b - n() + 1));
      for (int k = 1; k <= N; ++k) {
        NCPoly term = alg_.mul(NCPoly::monomial(x, c), alg_.cofactor(lift.row, k));
        if (term.is_zero()) continue;
        auto& slot = out[u(k, lift.col)];
        slot += term;
      }
    }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

OneForm Calculus::unit_formal(const FormalOneForm& f) const {
  OneForm out;
  const int N = n() + 1;
  for (const auto& [g, p] : f)
    for (int m = 1; m <= N; ++m) {
      const LambdaVec& v = table_.delbar_gen(u(m, g.col));
      if (v.is_zero()) continue;
      out.add(alg_.mul(p, alg_.gen(g.row, m)), v);
    }
  return out;
}

// ------------------------------------------------------------ the cache

namespace action_cache {

std::string file_name(const Algebra& alg, ActionAnsatz ansatz) {
  return "action_table_n" + std::to_string(alg.n()) + "_" + ansatz_name(ansatz) + "_" +
         alg.convention_hash() + ".json";
}

nlohmann::json dump(const Algebra& alg, ActionAnsatz ansatz, const ActionTable& table) {
  return {{"schema", kSchema},
          {"version", kVersion},
          {"n", alg.n()},
          {"ansatz", ansatz_name(ansatz)},
          {"convention_hash", alg.convention_hash()},
          {"presentation", alg.presentation_json()},
          {"table", table.to_json()}};
}

std::optional<ActionTable> parse(const Algebra& alg, ActionAnsatz ansatz, const nlohmann::json& j) {
  try {
    if (j.at("schema") != kSchema || j.at("version") != kVersion) return std::nullopt;
    if (j.at("n") != alg.n() || j.at("ansatz") != ansatz_name(ansatz)) return std::nullopt;
    if (j.at("convention_hash") != alg.convention_hash()) return std::nullopt;
    if (j.at("presentation") != alg.presentation_json()) return std::nullopt;
    auto t = ActionTable::from_json(j.at("table"));
    if (t.n() != alg.n()) return std::nullopt;
    return t;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::optional<ActionTable> load(const std::string& dir, const Algebra& alg, ActionAnsatz ansatz) {
  std::ifstream in(std::filesystem::path(dir) / file_name(alg, ansatz));
  if (!in) return std::nullopt;
  try {
    return parse(alg, ansatz, nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  }
}

void store(const std::string& dir, const Algebra& alg, ActionAnsatz ansatz, const ActionTable& table) {
  std::filesystem::create_directories(dir);
  std::ofstream out(std::filesystem::path(dir) / file_name(alg, ansatz));
  if (!out) throw std::runtime_error("cannot write action-table cache in " + dir);
  out << dump(alg, ansatz, table).dump(1) << "\n";
}

}  // namespace action_cache

}  // namespace qcpn
