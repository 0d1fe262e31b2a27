#pragma once

// Arithmetic expressions over a fixed set of variables, used for loads and
// exact solutions given in configuration files.
//
// Grammar (whitespace ignored):
//
//   expr    := term   (('+' | '-') term)*
//   term    := unary  (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' unary)?          right-associative; -x^2 = -(x^2)
//   primary := number | variable | '(' expr ')'
//   number  := digits ['.' digits] [('e' | 'E') ['+' | '-'] digits]
//
// Variables are single identifiers from the list given to the parser
// (e.g. x, u, v for a load).

#include <charconv>
#include <cctype>
#include <cmath>
#include <memory>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kirchhoff {

class ExpressionError : public std::runtime_error {
 public:
  ExpressionError(const std::string& msg, std::size_t column)
      : std::runtime_error(msg + " at column " + std::to_string(column + 1)), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

class Expression {
 public:
  static Expression parse(std::string_view text, std::vector<std::string> variables);

  /// Evaluates with `values[i]` bound to `variables()[i]`.
  double evaluate(std::span<const double> values) const {
    if (values.size() != variables_.size()) throw std::invalid_argument("wrong number of expression arguments");
    return eval(*root_, values.data());
  }

  double operator()(double a) const { return evaluate(std::span<const double>(&a, 1)); }
  double operator()(double a, double b, double c) const {
    const double vals[3] = {a, b, c};
    return evaluate(vals);
  }

  const std::vector<std::string>& variables() const { return variables_; }
  const std::string& text() const { return text_; }

 private:
  enum class Op { constant, variable, add, sub, mul, div, pow, neg };

  struct Node {
    Op op;
    double value = 0.0;
    std::size_t var = 0;
    std::shared_ptr<const Node> lhs, rhs;
  };
  using NodePtr = std::shared_ptr<const Node>;

  class Parser;

  static double eval(const Node& n, const double* vals) {
    switch (n.op) {
      case Op::constant: return n.value;
      case Op::variable: return vals[n.var];
      case Op::add: return eval(*n.lhs, vals) + eval(*n.rhs, vals);
      case Op::sub: return eval(*n.lhs, vals) - eval(*n.rhs, vals);
      case Op::mul: return eval(*n.lhs, vals) * eval(*n.rhs, vals);
      case Op::div: return eval(*n.lhs, vals) / eval(*n.rhs, vals);
      case Op::pow: return std::pow(eval(*n.lhs, vals), eval(*n.rhs, vals));
      case Op::neg: return -eval(*n.lhs, vals);
    }
    return 0.0;
  }

  // Shared so that copies (e.g. inside std::function) stay cheap.
  NodePtr root_;
  std::vector<std::string> variables_;
  std::string text_;
};

class Expression::Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& vars) : s_(text), vars_(vars) {}

  NodePtr run() {
    skip_ws();
    if (pos_ == s_.size()) throw ExpressionError("empty expression", pos_);
    auto n = expr();
    skip_ws();
    if (pos_ != s_.size()) throw ExpressionError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return n;
  }

 private:
  static NodePtr make(Op op, NodePtr l, NodePtr r = nullptr) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    auto lhs = term();
    for (;;) {
      if (accept('+')) lhs = make(Op::add, lhs, term());
      else if (accept('-')) lhs = make(Op::sub, lhs, term());
      else return lhs;
    }
  }

  NodePtr term() {
    auto lhs = unary();
    for (;;) {
      if (accept('*')) lhs = make(Op::mul, lhs, unary());
      else if (accept('/')) lhs = make(Op::div, lhs, unary());
      else return lhs;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Op::neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    auto base = primary();
    if (accept('^')) return make(Op::pow, base, unary());
    return base;
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ == s_.size()) throw ExpressionError("unexpected end of expression", pos_);
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      auto inner = expr();
      if (!accept(')')) throw ExpressionError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return variable();
    throw ExpressionError(std::string("unexpected '") + c + "'", pos_);
  }

  NodePtr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      const std::size_t b = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return pos_ - b;
    };
    std::size_t count = digits();
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      count += digits();
    }
    if (count == 0) throw ExpressionError("malformed number", start);
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      if (digits() == 0) throw ExpressionError("malformed exponent", start);
    }
    double value = 0.0;
    const auto res = std::from_chars(s_.data() + start, s_.data() + pos_, value);
    if (res.ec != std::errc() || res.ptr != s_.data() + pos_) throw ExpressionError("malformed number", start);
    auto n = std::make_shared<Node>();
    n->op = Op::constant;
    n->value = value;
    return n;
  }

  NodePtr variable() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    const std::string_view name = s_.substr(start, pos_ - start);
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i] == name) {
        auto n = std::make_shared<Node>();
        n->op = Op::variable;
        n->var = i;
        return n;
      }
    }
    std::string allowed;
    for (const auto& v : vars_) allowed += (allowed.empty() ? "" : ", ") + v;
    throw ExpressionError("unknown variable '" + std::string(name) + "' (allowed: " + allowed + ")", start);
  }

  std::string_view s_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

inline Expression Expression::parse(std::string_view text, std::vector<std::string> variables) {
  Expression e;
  e.variables_ = std::move(variables);
  e.text_ = std::string(text);
  e.root_ = Parser(text, e.variables_).run();
  return e;
}

}  // namespace kirchhoff
