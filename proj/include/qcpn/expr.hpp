#ifndef QCPN_EXPR_HPP
#define QCPN_EXPR_HPP

#include <stdexcept>
#include <string>

#include "qcpn/ncalg.hpp"

namespace qcpn {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at offset " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

/// Parses and evaluates an expression in the algebra, returning its normal
/// form.  Grammar:
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*      division by scalars only
///   unary   := '-' unary | power
///   power   := atom ('^' ['-'] int)?           negative powers of scalars only
///   atom    := int | 's' | 'q' | u[i,j] | z[i] | zbar[i] | '(' expr ')'
NCPoly parse_expression(const Algebra& alg, const std::string& text);
/// Same grammar, products left unreduced (free words).
NCPoly parse_expression_free(const Algebra& alg, const std::string& text);

}  // namespace qcpn

#endif  // QCPN_EXPR_HPP
