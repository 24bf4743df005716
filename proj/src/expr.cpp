#include "zsg/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>

namespace zsg {

namespace {

ExprNodePtr make_literal(double v) {
  // Keep stored literals nonnegative so printing is closed under
  // re-parsing (a leading '-' always parses as negation).
  if (std::signbit(v) && v != 0.0) {
    return std::make_shared<const ExprNode>(
        ExprNode{Negate{make_literal(-v)}});
  }
  return std::make_shared<const ExprNode>(ExprNode{Literal{v}});
}

class Parser {
 public:
  Parser(std::string_view src, const GroupSpec& groups,
         const std::map<std::string, double>& params)
      : src_(src), groups_(groups), params_(params) {}

  ExprNodePtr run() {
    ExprNodePtr e = additive();
    skip_ws();
    if (pos_ != src_.size()) {
      fail(parse_error::kind::syntax, "unexpected trailing input");
    }
    return e;
  }

 private:
  ExprNodePtr additive() {
    ExprNodePtr lhs = multiplicative();
    for (;;) {
      skip_ws();
      if (consume('+')) {
        lhs = binary(BinaryOp::add, lhs, multiplicative());
      } else if (consume('-')) {
        lhs = binary(BinaryOp::sub, lhs, multiplicative());
      } else {
        return lhs;
      }
    }
  }

  ExprNodePtr multiplicative() {
    ExprNodePtr lhs = unary();
    for (;;) {
      skip_ws();
      if (consume('*')) {
        lhs = binary(BinaryOp::mul, lhs, unary());
      } else if (consume('/')) {
        lhs = binary(BinaryOp::div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  ExprNodePtr unary() {
    skip_ws();
    if (consume('-')) {
      return std::make_shared<const ExprNode>(ExprNode{Negate{unary()}});
    }
    return power();
  }

  ExprNodePtr power() {
    ExprNodePtr base = primary();
    skip_ws();
    if (consume('^')) {
      // Right-associative; the exponent may carry its own unary minus.
      return binary(BinaryOp::pow, base, unary());
    }
    return base;
  }

  ExprNodePtr primary() {
    skip_ws();
    if (pos_ >= src_.size()) {
      fail(parse_error::kind::syntax, "unexpected end of input");
    }
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      ExprNodePtr inner = additive();
      skip_ws();
      if (!consume(')')) {
        fail(parse_error::kind::syntax, "expected ')'");
      }
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return number();
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      return identifier();
    }
    fail(parse_error::kind::syntax,
         std::string("unexpected character '") + c + "'");
  }

  ExprNodePtr number() {
    double value = 0.0;
    const char* begin = src_.data() + pos_;
    const char* end = src_.data() + src_.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc()) {
      fail(parse_error::kind::syntax, "malformed number");
    }
    pos_ += static_cast<std::size_t>(ptr - begin);
    return make_literal(value);
  }

  ExprNodePtr identifier() {
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
            src_[pos_] == '_')) {
      ++pos_;
    }
    std::string name(src_.substr(start, pos_ - start));

    if ((name[0] == 'x' || name[0] == 'y') && name.size() > 1 &&
        std::all_of(name.begin() + 1, name.end(), [](char d) {
          return std::isdigit(static_cast<unsigned char>(d));
        })) {
      int group = name[0] == 'x' ? 1 : 2;
      int index = 0;
      std::from_chars(name.data() + 1, name.data() + name.size(), index);
      int limit = group == 1 ? groups_.m : groups_.n;
      if (index == 0) {
        fail_at(parse_error::kind::index_out_of_range,
                "variable indices start at 1: " + name, start);
      }
      if (index > limit) {
        fail_at(parse_error::kind::unknown_identifier,
                "unknown variable " + name + " (group has " +
                    std::to_string(limit) + " players)",
                start);
      }
      return std::make_shared<const ExprNode>(
          ExprNode{Var{group, index - 1}});
    }

    auto it = params_.find(name);
    if (it == params_.end()) {
      fail_at(parse_error::kind::unknown_identifier,
              "unknown identifier '" + name + "'", start);
    }
    if (!std::isfinite(it->second)) {
      fail_at(parse_error::kind::syntax,
              "parameter '" + name + "' must be finite", start);
    }
    return make_literal(it->second);
  }

  static ExprNodePtr binary(BinaryOp op, ExprNodePtr lhs, ExprNodePtr rhs) {
    return std::make_shared<const ExprNode>(
        ExprNode{Binary{op, std::move(lhs), std::move(rhs)}});
  }

  void skip_ws() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      ++pos_;
    }
  }

  bool consume(char c) {
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(parse_error::kind kind, const std::string& msg) {
    fail_at(kind, msg, pos_);
  }

  [[noreturn]] void fail_at(parse_error::kind kind, const std::string& msg,
                            std::size_t offset) {
    throw parse_error(kind, msg, offset);
  }

  std::string_view src_;
  GroupSpec groups_;
  const std::map<std::string, double>& params_;
  std::size_t pos_ = 0;
};

int precedence(const ExprNode& node) {
  if (std::holds_alternative<Literal>(node.value) ||
      std::holds_alternative<Var>(node.value)) {
    return 5;
  }
  if (std::holds_alternative<Negate>(node.value)) return 3;
  switch (std::get<Binary>(node.value).op) {
    case BinaryOp::add:
    case BinaryOp::sub:
      return 1;
    case BinaryOp::mul:
    case BinaryOp::div:
      return 2;
    case BinaryOp::pow:
      return 4;
  }
  return 0;
}

char op_char(BinaryOp op) {
  switch (op) {
    case BinaryOp::add:
      return '+';
    case BinaryOp::sub:
      return '-';
    case BinaryOp::mul:
      return '*';
    case BinaryOp::div:
      return '/';
    case BinaryOp::pow:
      return '^';
  }
  return '?';
}

std::string print_literal(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

bool nodes_equal(const ExprNode& a, const ExprNode& b) {
  if (a.value.index() != b.value.index()) return false;
  if (const auto* la = std::get_if<Literal>(&a.value)) {
    return la->value == std::get<Literal>(b.value).value;
  }
  if (const auto* va = std::get_if<Var>(&a.value)) {
    const auto& vb = std::get<Var>(b.value);
    return va->group == vb.group && va->index == vb.index;
  }
  if (const auto* na = std::get_if<Negate>(&a.value)) {
    return nodes_equal(*na->child, *std::get<Negate>(b.value).child);
  }
  const auto& ba = std::get<Binary>(a.value);
  const auto& bb = std::get<Binary>(b.value);
  return ba.op == bb.op && nodes_equal(*ba.lhs, *bb.lhs) &&
         nodes_equal(*ba.rhs, *bb.rhs);
}

}  // namespace

namespace detail {

double eval_node(const ExprNode& node,
                 const std::function<double(int, int)>& lookup) {
  if (const auto* lit = std::get_if<Literal>(&node.value)) {
    return lit->value;
  }
  if (const auto* var = std::get_if<Var>(&node.value)) {
    return lookup(var->group, var->index);
  }
  if (const auto* neg = std::get_if<Negate>(&node.value)) {
    return -eval_node(*neg->child, lookup);
  }
  const auto& bin = std::get<Binary>(node.value);
  double lhs = eval_node(*bin.lhs, lookup);
  double rhs = eval_node(*bin.rhs, lookup);
  switch (bin.op) {
    case BinaryOp::add:
      return lhs + rhs;
    case BinaryOp::sub:
      return lhs - rhs;
    case BinaryOp::mul:
      return lhs * rhs;
    case BinaryOp::div:
      if (rhs == 0.0) {
        throw eval_error("division by zero in '" + print_node(node) + "'");
      }
      return lhs / rhs;
    case BinaryOp::pow:
      return std::pow(lhs, rhs);
  }
  return 0.0;
}

std::string print_node(const ExprNode& node) {
  if (const auto* lit = std::get_if<Literal>(&node.value)) {
    return print_literal(lit->value);
  }
  if (const auto* var = std::get_if<Var>(&node.value)) {
    return (var->group == 1 ? "x" : "y") + std::to_string(var->index + 1);
  }
  if (const auto* neg = std::get_if<Negate>(&node.value)) {
    std::string inner = print_node(*neg->child);
    if (precedence(*neg->child) < 3) inner = "(" + inner + ")";
    return "-" + inner;
  }
  const auto& bin = std::get<Binary>(node.value);
  const int prec = precedence(node);
  const bool right_assoc = bin.op == BinaryOp::pow;

  std::string lhs = print_node(*bin.lhs);
  if (precedence(*bin.lhs) < prec ||
      (right_assoc && precedence(*bin.lhs) == prec)) {
    lhs = "(" + lhs + ")";
  }
  std::string rhs = print_node(*bin.rhs);
  if (precedence(*bin.rhs) < prec ||
      (!right_assoc && precedence(*bin.rhs) == prec)) {
    rhs = "(" + rhs + ")";
  }
  return lhs + " " + op_char(bin.op) + " " + rhs;
}

}  // namespace detail

Expr Expr::parse(std::string_view source, const GroupSpec& groups,
                 const std::map<std::string, double>& params) {
  if (groups.m < 2 || groups.n < 2) {
    throw construction_error("group sizes must satisfy m >= 2 and n >= 2");
  }
  Parser parser(source, groups, params);
  return Expr(parser.run(), groups);
}

double Expr::evaluate(const StrategyProfile& profile) const {
  if (static_cast<int>(profile.g1.size()) != groups_.m ||
      static_cast<int>(profile.g2.size()) != groups_.n) {
    throw profile_error("profile shape does not match the expression's "
                        "declared group sizes");
  }
  return evaluate_with([&](int group, int index) {
    return group == 1 ? profile.g1[static_cast<std::size_t>(index)]
                      : profile.g2[static_cast<std::size_t>(index)];
  });
}

std::string Expr::to_string() const { return detail::print_node(*root_); }

bool Expr::operator==(const Expr& other) const {
  return groups_ == other.groups_ && nodes_equal(*root_, *other.root_);
}

}  // namespace zsg
