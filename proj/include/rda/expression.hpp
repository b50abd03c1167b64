// Arithmetic expressions in x for custom initial profiles:
// numbers, x, + - * / ^, unary minus, parentheses, exp(), abs().
#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace rda {

class ExpressionError : public std::invalid_argument {
 public:
  ExpressionError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class Expression {
 public:
  static Expression parse(const std::string& text);
  double eval(double x) const;
  const std::string& text() const { return text_; }

  struct Node {
    enum class Op { Number, Var, Neg, Add, Sub, Mul, Div, Pow, Exp, Abs } op;
    double value = 0.0;
    int lhs = -1;
    int rhs = -1;
  };

 private:
  std::string text_;
  std::vector<Node> nodes_;
  int root_ = -1;
  double eval(int node, double x) const;
  friend class ExpressionParser;
};

}  // namespace rda
