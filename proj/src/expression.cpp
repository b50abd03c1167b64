#include "rda/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

namespace rda {

ExpressionError::ExpressionError(const std::string& what, std::size_t position)
    : std::invalid_argument(what + " at column " + std::to_string(position + 1)), position_(position) {}

// Recursive descent:
//   sum     := product (('+'|'-') product)*
//   product := unary (('*'|'/') unary)*
//   unary   := '-' unary | power
//   power   := atom ('^' unary)?
//   atom    := number | 'x' | '(' sum ')' | ('exp'|'abs') '(' sum ')'
class ExpressionParser {
 public:
  ExpressionParser(const std::string& s, Expression& e) : s_(s), e_(e) {}

  int parse() {
    const int root = sum();
    skip();
    if (pos_ != s_.size()) throw ExpressionError("unexpected character '" + std::string(1, s_[pos_]) + "'", pos_);
    return root;
  }

 private:
  using Op = Expression::Node::Op;

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) throw ExpressionError(std::string("expected '") + c + "'", pos_);
  }
  int node(Op op, int lhs = -1, int rhs = -1, double value = 0.0) {
    e_.nodes_.push_back({op, value, lhs, rhs});
    return static_cast<int>(e_.nodes_.size()) - 1;
  }

  int sum() {
    int lhs = product();
    for (;;) {
      if (accept('+')) lhs = node(Op::Add, lhs, product());
      else if (accept('-')) lhs = node(Op::Sub, lhs, product());
      else return lhs;
    }
  }
  int product() {
    int lhs = unary();
    for (;;) {
      if (accept('*')) lhs = node(Op::Mul, lhs, unary());
      else if (accept('/')) lhs = node(Op::Div, lhs, unary());
      else return lhs;
    }
  }
  int unary() {
    if (accept('-')) return node(Op::Neg, unary());
    if (accept('+')) return unary();
    return power();
  }
  int power() {
    const int base = atom();
    if (accept('^')) return node(Op::Pow, base, unary());
    return base;
  }
  int atom() {
    skip();
    if (pos_ >= s_.size()) throw ExpressionError("unexpected end of expression", pos_);
    if (accept('(')) {
      const int inner = sum();
      expect(')');
      return inner;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = 0.0;
      const auto [end, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
      if (ec != std::errc()) throw ExpressionError("malformed number", pos_);
      pos_ = static_cast<std::size_t>(end - s_.data());
      return node(Op::Number, -1, -1, v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string word = s_.substr(start, pos_ - start);
      if (word == "x") return node(Op::Var);
      if (word == "exp" || word == "abs") {
        expect('(');
        const int arg = sum();
        expect(')');
        return node(word == "exp" ? Op::Exp : Op::Abs, arg);
      }
      throw ExpressionError("unknown identifier '" + word + "'", start);
    }
    throw ExpressionError("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  const std::string& s_;
  Expression& e_;
  std::size_t pos_ = 0;
};

Expression Expression::parse(const std::string& text) {
  Expression e;
  e.text_ = text;
  ExpressionParser p(text, e);
  e.root_ = p.parse();
  return e;
}

double Expression::eval(double x) const { return eval(root_, x); }

double Expression::eval(int i, double x) const {
  const Node& n = nodes_[static_cast<std::size_t>(i)];
  switch (n.op) {
    case Node::Op::Number: return n.value;
    case Node::Op::Var: return x;
    case Node::Op::Neg: return -eval(n.lhs, x);
    case Node::Op::Add: return eval(n.lhs, x) + eval(n.rhs, x);
    case Node::Op::Sub: return eval(n.lhs, x) - eval(n.rhs, x);
    case Node::Op::Mul: return eval(n.lhs, x) * eval(n.rhs, x);
    case Node::Op::Div: return eval(n.lhs, x) / eval(n.rhs, x);
    case Node::Op::Pow: return std::pow(eval(n.lhs, x), eval(n.rhs, x));
    case Node::Op::Exp: return std::exp(eval(n.lhs, x));
    case Node::Op::Abs: return std::abs(eval(n.lhs, x));
  }
  return 0.0;
}

}  // namespace rda
