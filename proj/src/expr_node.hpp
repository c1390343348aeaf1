#pragma once

#include <memory>
#include <string>

#include "cutpoint/scalar_expr.hpp"

namespace cutpoint::detail {

using NodePtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  ExprKind kind = ExprKind::Exact;
  Quadratic exact;
  std::shared_ptr<const DigitGenerator> digits;
  std::string label;
  NodePtr lhs;
  NodePtr rhs;
  long exponent = 0;
};

struct ExprAccess {
  static Expr wrap(NodePtr node) { return Expr(std::move(node)); }
  static const NodePtr& ptr(const Expr& e) { return e.node_; }
};

}  // namespace cutpoint::detail
