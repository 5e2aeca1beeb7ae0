#include "qcpn/expr.hpp"

#include <cctype>

namespace qcpn {

namespace {

class Parser {
 public:
  Parser(const Algebra& alg, const std::string& text, bool reduce) : alg_(alg), s_(text), reduce_(reduce) {}

  NCPoly run() {
    NCPoly v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  bool eat_word(const char* w) {
    skip();
    std::size_t len = std::char_traits<char>::length(w);
    if (s_.compare(pos_, len, w) != 0) return false;
    // do not split identifiers: "zbar" must not match "z"
    if (pos_ + len < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_ + len]))) return false;
    pos_ += len;
    return true;
  }

  long integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    if (pos_ - start > 9) fail("integer too large");
    return std::stol(s_.substr(start, pos_ - start));
  }

  int index() {
    long v = integer();
    if (v < 1 || v > alg_.dim())
      fail("index " + std::to_string(v) + " outside 1.." + std::to_string(alg_.dim()));
    return static_cast<int>(v);
  }

  static std::optional<ScalarRat> as_scalar(const NCPoly& p) {
    if (p.is_zero()) return ScalarRat(0);
    if (p.size() == 1 && p.terms().begin()->first.empty()) return p.terms().begin()->second;
    return std::nullopt;
  }

  NCPoly expr() {
    NCPoly v = term();
    while (true) {
      if (eat('+')) v += term();
      else if (eat('-')) v -= term();
      else return v;
    }
  }

  NCPoly term() {
    NCPoly v = unary();
    while (true) {
      if (eat('*')) {
        v = reduce_ ? alg_.mul(v, unary()) : v * unary();
      } else if (eat('/')) {
        std::size_t at = pos_;
        auto d = as_scalar(unary());
        if (!d) throw ParseError("division by a non-scalar", at);
        if (d->is_zero()) throw ParseError("division by zero", at);
        v *= d->inverse();
      } else {
        return v;
      }
    }
  }

  NCPoly power() {
    NCPoly base = atom();
    if (!eat('^')) return base;
    bool neg = eat('-');
    long e = integer();
    if (e > 64) fail("exponent too large");
    if (neg) {
      auto c = as_scalar(base);
      if (!c) fail("negative power of a non-scalar");
      if (c->is_zero()) fail("negative power of zero");
      return NCPoly(c->pow(static_cast<int>(-e)));
    }
    return reduce_ ? alg_.pow(base, static_cast<int>(e)) : qcpn::power(base, static_cast<int>(e));
  }

  NCPoly unary() {
    if (eat('-')) return -unary();
    return power();
  }

  NCPoly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return NCPoly(ScalarRat(integer()));
    if (eat('(')) {
      NCPoly v = expr();
      expect(')');
      return v;
    }
    if (eat_word("zbar")) {
      expect('[');
      int i = index();
      expect(']');
      return alg_.zbar(i);
    }
    if (eat_word("z")) {
      expect('[');
      int i = index();
      expect(']');
      return alg_.z(i);
    }
    if (eat_word("u")) {
      expect('[');
      int i = index();
      expect(',');
      int j = index();
      expect(']');
      return alg_.gen(i, j);
    }
    if (eat_word("s")) return NCPoly(spow(1));
    if (eat_word("q")) return NCPoly(alg_.q());
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const Algebra& alg_;
  const std::string& s_;
  bool reduce_;
  std::size_t pos_ = 0;
};

}  // namespace

NCPoly parse_expression(const Algebra& alg, const std::string& text) {
  return alg.normal_form(Parser(alg, text, true).run());
}

NCPoly parse_expression_free(const Algebra& alg, const std::string& text) {
  return Parser(alg, text, false).run();
}

}  // namespace qcpn
