#ifndef LMODEL_EXPR_HPP
#define LMODEL_EXPR_HPP

#include <string>
#include <string_view>
#include <vector>

#include "lmodel/error.hpp"

namespace lmodel {

enum class ExprKind {
  Constant,
  Time,
  Negate,
  Add,
  Sub,
  Mul,
  Div,
  Sin,
  Cos,
  Sqrt,
  Power,  // child raised to a non-negative integer exponent
};

/// Expression tree in the single time variable `t`.
///
/// Nodes own their children by value. Arity is enforced by the factory
/// functions below, so a constructed tree is always well formed.
class Expr {
public:
  static Expr constant(double value);
  static Expr time();
  static Expr negate(Expr operand);
  static Expr add(Expr lhs, Expr rhs);
  static Expr sub(Expr lhs, Expr rhs);
  static Expr mul(Expr lhs, Expr rhs);
  static Expr div(Expr lhs, Expr rhs);
  static Expr sin(Expr operand);
  static Expr cos(Expr operand);
  static Expr sqrt(Expr operand);
  static Expr power(Expr base, unsigned exponent);

  ExprKind kind() const noexcept { return kind_; }
  double value() const noexcept { return value_; }
  unsigned exponent() const noexcept { return exponent_; }
  const std::vector<Expr>& children() const noexcept { return children_; }

  friend bool operator==(const Expr&, const Expr&) = default;

private:
  Expr(ExprKind kind, std::vector<Expr> children) : kind_(kind), children_(std::move(children)) {}

  ExprKind kind_ = ExprKind::Constant;
  double value_ = 0.0;
  unsigned exponent_ = 0;
  std::vector<Expr> children_;
};

/// Raised when evaluation leaves the reals. `subexpression()` is the printed
/// form of the node that failed.
class DomainError : public Error {
public:
  DomainError(const std::string& message, std::string subexpression)
      : Error(ErrorKind::Domain, message), subexpression_(std::move(subexpression)) {}

  const std::string& subexpression() const noexcept { return subexpression_; }

private:
  std::string subexpression_;
};

/// Parses the motion grammar:
///
///   expr    := term { ("+"|"-") term }
///   term    := factor { ("*"|"/") factor }
///   factor  := "-" factor | primary [ "^" integer ]
///   primary := number | "t" | "pi" | ("sin"|"cos"|"sqrt") "(" expr ")" | "(" expr ")"
///
/// `pi` becomes a constant holding std::numbers::pi.
Expr parse_expression(std::string_view text);

/// Prints with the minimum parentheses needed for `parse_expression` to
/// rebuild the same tree. Constants use the shortest round-trip decimal form.
std::string print_expression(const Expr& e);

/// Throws DomainError for sqrt of a negative number, division by zero, or any
/// non-finite intermediate.
double evaluate(const Expr& e, double t);

}  // namespace lmodel

#endif  // LMODEL_EXPR_HPP
