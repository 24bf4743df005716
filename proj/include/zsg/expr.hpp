#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>

#include "zsg/game.hpp"

namespace zsg {

// Arithmetic expression language for user-defined absolute payoffs.
//
// Grammar (EBNF, documented in docs/expr-grammar.md):
//   expression     = additive ;
//   additive       = multiplicative { ("+" | "-") multiplicative } ;
//   multiplicative = unary { ("*" | "/") unary } ;
//   unary          = "-" unary | power ;
//   power          = primary [ "^" unary ] ;
//   primary        = number | identifier | "(" expression ")" ;
//
// "^" binds tighter than unary minus and is right-associative; "*", "/",
// "+", "-" are left-associative. Variables are x1..xm (group-1 strategies)
// and y1..yn (group-2); any other identifier must appear in the parameter
// map and is folded into a literal at parse time. Polynomials and rational
// expressions only; no function calls.

enum class BinaryOp { add, sub, mul, div, pow };

struct ExprNode;
using ExprNodePtr = std::shared_ptr<const ExprNode>;

struct Literal {
  double value;
};
struct Var {
  int group;  // 1 (x) or 2 (y)
  int index;  // zero-based within the group
};
struct Negate {
  ExprNodePtr child;
};
struct Binary {
  BinaryOp op;
  ExprNodePtr lhs;
  ExprNodePtr rhs;
};

struct ExprNode {
  std::variant<Literal, Var, Negate, Binary> value;
};

class Expr {
 public:
  // Parses source against the declared group sizes. Throws parse_error
  // (with a byte offset) on syntax errors, unknown identifiers, and
  // variable indices outside 1..m / 1..n. Parameter values must be finite;
  // negative ones fold to a negated positive literal so printed trees
  // re-parse to identical structure.
  static Expr parse(std::string_view source, const GroupSpec& groups,
                    const std::map<std::string, double>& params = {});

  // Standard arithmetic evaluation with IEEE double semantics. Division by
  // zero throws eval_error naming the offending subexpression. The profile
  // must match the group sizes the expression was parsed against.
  double evaluate(const StrategyProfile& profile) const;

  // Evaluation against an arbitrary variable lookup (group, index) ->
  // value; used to instantiate one payoff template for several players.
  template <typename Lookup>
  double evaluate_with(Lookup&& lookup) const;

  // Prints with minimal parentheses; re-parsing yields a structurally
  // identical tree.
  std::string to_string() const;

  bool operator==(const Expr& other) const;

  const ExprNodePtr& root() const { return root_; }
  const GroupSpec& groups() const { return groups_; }

  Expr(ExprNodePtr root, GroupSpec groups)
      : root_(std::move(root)), groups_(groups) {}

 private:
  ExprNodePtr root_;
  GroupSpec groups_;
};

namespace detail {
double eval_node(const ExprNode& node,
                 const std::function<double(int, int)>& lookup);
std::string print_node(const ExprNode& node);
}  // namespace detail

template <typename Lookup>
double Expr::evaluate_with(Lookup&& lookup) const {
  return detail::eval_node(*root_, std::function<double(int, int)>(
                                       std::forward<Lookup>(lookup)));
}

}  // namespace zsg
