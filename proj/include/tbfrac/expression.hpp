#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "tbfrac/jet.hpp"

namespace tbfrac {

class ExpressionError : public std::invalid_argument {
 public:
  ExpressionError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Scalar function of x parsed from text. Grammar:
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' unary)?
///   primary := number | 'x' | 'pi' | 'e' | func '(' expr ')' | '(' expr ')'
///   func    := sin | cos | sinh | cosh | exp
///
/// Exponents must be constant. Evaluation returns the value with its first
/// and second x-derivatives.
class Expression {
 public:
  static Expression parse(std::string_view text);

  Jet<double> operator()(double x) const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  Expression(std::shared_ptr<const Node> root, std::string text);

  std::shared_ptr<const Node> root_;
  std::string text_;
};

}  // namespace tbfrac
