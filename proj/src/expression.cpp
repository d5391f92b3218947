#include "tbfrac/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <vector>

namespace tbfrac {

ExpressionError::ExpressionError(const std::string& what, std::size_t position)
    : std::invalid_argument(what + " at offset " + std::to_string(position)), position_(position) {}

struct Expression::Node {
  enum class Kind { kNumber, kVariable, kNegate, kAdd, kSub, kMul, kDiv, kPow, kSin, kCos, kSinh, kCosh, kExp };
  Kind kind;
  double number = 0.0;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;

  bool is_constant() const {
    switch (kind) {
      case Kind::kNumber:
        return true;
      case Kind::kVariable:
        return false;
      default:
        return (!lhs || lhs->is_constant()) && (!rhs || rhs->is_constant());
    }
  }

  Jet<double> eval(const Jet<double>& x) const {
    using J = Jet<double>;
    switch (kind) {
      case Kind::kNumber:
        return J::constant(number);
      case Kind::kVariable:
        return x;
      case Kind::kNegate:
        return -lhs->eval(x);
      case Kind::kAdd:
        return lhs->eval(x) + rhs->eval(x);
      case Kind::kSub:
        return lhs->eval(x) - rhs->eval(x);
      case Kind::kMul:
        return lhs->eval(x) * rhs->eval(x);
      case Kind::kDiv:
        return lhs->eval(x) / rhs->eval(x);
      case Kind::kPow:
        return pow(lhs->eval(x), rhs->eval(x).v);
      case Kind::kSin:
        return sin(lhs->eval(x));
      case Kind::kCos:
        return cos(lhs->eval(x));
      case Kind::kSinh:
        return sinh(lhs->eval(x));
      case Kind::kCosh:
        return cosh(lhs->eval(x));
      case Kind::kExp:
        return exp(lhs->eval(x));
    }
    return {};
  }
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;
using Kind = Node::Kind;

NodePtr make(Kind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr, double number = 0.0) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  n->number = number;
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr root = expr();
    skip_space();
    if (pos_ != text_.size()) throw ExpressionError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    return root;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) throw ExpressionError(std::string("expected '") + c + "'", pos_);
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = make(Kind::kAdd, lhs, term());
      else if (accept('-'))
        lhs = make(Kind::kSub, lhs, term());
      else
        return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*'))
        lhs = make(Kind::kMul, lhs, unary());
      else if (accept('/'))
        lhs = make(Kind::kDiv, lhs, unary());
      else
        return lhs;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Kind::kNegate, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    skip_space();
    const std::size_t at = pos_;
    if (accept('^')) {
      NodePtr exponent = unary();
      if (!exponent->is_constant()) throw ExpressionError("exponent must not depend on x", at);
      return make(Kind::kPow, base, exponent);
    }
    return base;
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= text_.size()) throw ExpressionError("unexpected end of expression", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string_view word = text_.substr(start, pos_ - start);
      if (word == "x") return make(Kind::kVariable);
      if (word == "pi") return make(Kind::kNumber, nullptr, nullptr, std::numbers::pi);
      if (word == "e") return make(Kind::kNumber, nullptr, nullptr, std::numbers::e);
      Kind kind;
      if (word == "sin")
        kind = Kind::kSin;
      else if (word == "cos")
        kind = Kind::kCos;
      else if (word == "sinh")
        kind = Kind::kSinh;
      else if (word == "cosh")
        kind = Kind::kCosh;
      else if (word == "exp")
        kind = Kind::kExp;
      else
        throw ExpressionError("unknown identifier '" + std::string(word) + "'", start);
      expect('(');
      NodePtr arg = expr();
      expect(')');
      return make(kind, arg);
    }
    throw ExpressionError("unexpected '" + std::string(1, c) + "'", pos_);
  }

  NodePtr number() {
    double value = 0.0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc()) throw ExpressionError("malformed number", pos_);
    pos_ += static_cast<std::size_t>(ptr - first);
    return make(Kind::kNumber, nullptr, nullptr, value);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression::Expression(std::shared_ptr<const Node> root, std::string text)
    : root_(std::move(root)), text_(std::move(text)) {}

Expression Expression::parse(std::string_view text) {
  return Expression(Parser(text).parse(), std::string(text));
}

Jet<double> Expression::operator()(double x) const { return root_->eval(Jet<double>::variable(x)); }

}  // namespace tbfrac
