#pragma once

#include <string>
#include <vector>

#include "ahlab/linalg.hpp"

namespace ahlab {

// Arithmetic over chart coordinates u0, u1, ...: constants, + - * /, powers
// (^), and sin cos tan exp log sqrt. This is the whole grammar; catalog
// entries live in data files written in it.
class Expr {
 public:
  Expr() = default;

  static Expr parse(const std::string& source);  // throws parse_error
  static Expr constant(double value);

  double eval(const Vec& u) const;
  int max_coordinate() const { return max_coord_; }
  const std::string& source() const { return source_; }

 private:
  enum class Op : std::uint8_t {
    constant, coordinate, add, sub, mul, div, pow, neg,
    sin, cos, tan, exp, log, sqrt
  };
  struct Node {
    Op op;
    double value = 0.0;  // constant
    int index = 0;       // coordinate
    int a = -1, b = -1;  // children
  };

  double eval_node(int node, const Vec& u) const;

  std::vector<Node> nodes_;
  int root_ = -1;
  int max_coord_ = -1;
  std::string source_;

  friend class ExprParser;
};

}  // namespace ahlab
