#include "ahlab/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>

namespace ahlab {

class ExprParser {
 public:
  explicit ExprParser(const std::string& src) : src_(src) {}

  Expr run() {
    Expr e;
    e.source_ = src_;
    out_ = &e;
    pos_ = 0;
    e.root_ = parse_expr();
    skip_ws();
    if (pos_ != src_.size()) fail("trailing input");
    out_ = nullptr;
    return e;
  }

 private:
  using Op = Expr::Op;

  int push(Expr::Node n) {
    out_->nodes_.push_back(n);
    return static_cast<int>(out_->nodes_.size()) - 1;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw parse_error("expression parse error at offset " + std::to_string(pos_) + ": " + msg +
                      " in \"" + src_ + "\"");
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  int parse_expr() {
    int lhs = parse_term();
    while (true) {
      if (eat('+'))
        lhs = push({Op::add, 0, 0, lhs, parse_term()});
      else if (eat('-'))
        lhs = push({Op::sub, 0, 0, lhs, parse_term()});
      else
        return lhs;
    }
  }

  int parse_term() {
    int lhs = parse_unary();
    while (true) {
      if (eat('*'))
        lhs = push({Op::mul, 0, 0, lhs, parse_unary()});
      else if (eat('/'))
        lhs = push({Op::div, 0, 0, lhs, parse_unary()});
      else
        return lhs;
    }
  }

  int parse_unary() {
    if (eat('-')) return push({Op::neg, 0, 0, parse_unary(), -1});
    return parse_power();
  }

  int parse_power() {
    int base = parse_atom();
    if (eat('^')) return push({Op::pow, 0, 0, base, parse_unary()});  // right associative
    return base;
  }

  int parse_atom() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    const char c = src_[pos_];

    if (c == '(') {
      ++pos_;
      int e = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = src_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      return push({Op::constant, v, 0, -1, -1});
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t e = pos_;
      while (e < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[e])))) ++e;
      const std::string word = src_.substr(pos_, e - pos_);
      pos_ = e;
      if (word.size() >= 2 && word[0] == 'u' &&
          std::all_of(word.begin() + 1, word.end(),
                      [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
        const int idx = std::atoi(word.c_str() + 1);
        out_->max_coord_ = std::max(out_->max_coord_, idx);
        return push({Op::coordinate, 0, idx, -1, -1});
      }
      Op op;
      if (word == "sin") op = Op::sin;
      else if (word == "cos") op = Op::cos;
      else if (word == "tan") op = Op::tan;
      else if (word == "exp") op = Op::exp;
      else if (word == "log") op = Op::log;
      else if (word == "sqrt") op = Op::sqrt;
      else fail("unknown identifier '" + word + "'");
      if (!eat('(')) fail("expected '(' after function name");
      int arg = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return push({op, 0, 0, arg, -1});
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  Expr* out_ = nullptr;
};

Expr Expr::parse(const std::string& source) { return ExprParser(source).run(); }

Expr Expr::constant(double value) {
  Expr e;
  e.source_ = std::to_string(value);
  e.nodes_.push_back({Op::constant, value, 0, -1, -1});
  e.root_ = 0;
  return e;
}

double Expr::eval(const Vec& u) const {
  if (root_ < 0) throw std::logic_error("Expr::eval on empty expression");
  if (max_coord_ >= u.size())
    throw std::invalid_argument("Expr::eval: expression uses u" + std::to_string(max_coord_) +
                                " but the point has only " + std::to_string(u.size()) +
                                " coordinates");
  return eval_node(root_, u);
}

double Expr::eval_node(int node, const Vec& u) const {
  const Node& n = nodes_[static_cast<std::size_t>(node)];
  switch (n.op) {
    case Op::constant: return n.value;
    case Op::coordinate: return u(n.index);
    case Op::add: return eval_node(n.a, u) + eval_node(n.b, u);
    case Op::sub: return eval_node(n.a, u) - eval_node(n.b, u);
    case Op::mul: return eval_node(n.a, u) * eval_node(n.b, u);
    case Op::div: return eval_node(n.a, u) / eval_node(n.b, u);
    case Op::pow: return std::pow(eval_node(n.a, u), eval_node(n.b, u));
    case Op::neg: return -eval_node(n.a, u);
    case Op::sin: return std::sin(eval_node(n.a, u));
    case Op::cos: return std::cos(eval_node(n.a, u));
    case Op::tan: return std::tan(eval_node(n.a, u));
    case Op::exp: return std::exp(eval_node(n.a, u));
    case Op::log: return std::log(eval_node(n.a, u));
    case Op::sqrt: return std::sqrt(eval_node(n.a, u));
  }
  throw std::logic_error("Expr::eval: corrupt node");
}

}  // namespace ahlab
