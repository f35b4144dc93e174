#include "lmodel/expr.hpp"

#include <charconv>
#include <cmath>
#include <cctype>
#include <numbers>

namespace lmodel {

Expr Expr::constant(double value) {
  if (!std::isfinite(value) || value < 0.0) {
    throw Error(ErrorKind::Precondition,
                "expression constants must be finite and non-negative (use negate)");
  }
  Expr e(ExprKind::Constant, {});
  e.value_ = value == 0.0 ? 0.0 : value;  // drop the sign of -0.0
  return e;
}

Expr Expr::time() { return Expr(ExprKind::Time, {}); }
Expr Expr::negate(Expr operand) { return Expr(ExprKind::Negate, {std::move(operand)}); }
Expr Expr::add(Expr lhs, Expr rhs) { return Expr(ExprKind::Add, {std::move(lhs), std::move(rhs)}); }
Expr Expr::sub(Expr lhs, Expr rhs) { return Expr(ExprKind::Sub, {std::move(lhs), std::move(rhs)}); }
Expr Expr::mul(Expr lhs, Expr rhs) { return Expr(ExprKind::Mul, {std::move(lhs), std::move(rhs)}); }
Expr Expr::div(Expr lhs, Expr rhs) { return Expr(ExprKind::Div, {std::move(lhs), std::move(rhs)}); }
Expr Expr::sin(Expr operand) { return Expr(ExprKind::Sin, {std::move(operand)}); }
Expr Expr::cos(Expr operand) { return Expr(ExprKind::Cos, {std::move(operand)}); }
Expr Expr::sqrt(Expr operand) { return Expr(ExprKind::Sqrt, {std::move(operand)}); }

Expr Expr::power(Expr base, unsigned exponent) {
  Expr e(ExprKind::Power, {std::move(base)});
  e.exponent_ = exponent;
  return e;
}

namespace {

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse() {
    Expr e = parse_expr();
    skip_space();
    if (pos_ != text_.size()) {
      fail(std::string("unexpected '") + text_[pos_] + "'");
    }
    return e;
  }

private:
  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(pos_, what); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
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
    if (!accept(c)) {
      if (pos_ >= text_.size()) {
        fail(std::string("expected '") + c + "' but input ended");
      }
      fail(std::string("expected '") + c + "'");
    }
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::add(std::move(lhs), parse_term());
      } else if (accept('-')) {
        lhs = Expr::sub(std::move(lhs), parse_term());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_term() {
    Expr lhs = parse_factor();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::mul(std::move(lhs), parse_factor());
      } else if (accept('/')) {
        lhs = Expr::div(std::move(lhs), parse_factor());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_factor() {
    if (accept('-')) {
      return Expr::negate(parse_factor());
    }
    Expr base = parse_primary();
    if (accept('^')) {
      skip_space();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
      if (start == pos_) {
        fail("expected integer exponent");
      }
      unsigned exponent = 0;
      auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, exponent);
      if (ec != std::errc()) {
        pos_ = start;
        fail("exponent out of range");
      }
      return Expr::power(std::move(base), exponent);
    }
    return base;
  }

  Expr parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) {
      fail("unexpected end of input");
    }
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return parse_number();
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
      const std::string_view name = text_.substr(start, pos_ - start);
      if (name == "t") {
        return Expr::time();
      }
      if (name == "pi") {
        return Expr::constant(std::numbers::pi);
      }
      if (name == "sin" || name == "cos" || name == "sqrt") {
        expect('(');
        Expr arg = parse_expr();
        expect(')');
        if (name == "sin") {
          return Expr::sin(std::move(arg));
        }
        if (name == "cos") {
          return Expr::cos(std::move(arg));
        }
        return Expr::sqrt(std::move(arg));
      }
      pos_ = start;
      fail("unknown identifier '" + std::string(name) + "'");
    }
    if (accept('(')) {
      Expr inner = parse_expr();
      expect(')');
      return inner;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      const std::size_t from = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
      return pos_ - from;
    };
    std::size_t count = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      count += digits();
    }
    if (count == 0) {
      pos_ = start;
      fail("malformed number");
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) {
        ++look;
      }
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        digits();
      }
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc() || ptr != text_.data() + pos_ || !std::isfinite(value)) {
      pos_ = start;
      fail("malformed number");
    }
    return Expr::constant(value);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

int precedence(ExprKind kind) {
  switch (kind) {
    case ExprKind::Add:
    case ExprKind::Sub:
      return 1;
    case ExprKind::Mul:
    case ExprKind::Div:
      return 2;
    case ExprKind::Negate:
      return 3;
    case ExprKind::Power:
      return 4;
    default:
      return 5;
  }
}

std::string format_number(double value) {
  if (value == std::numbers::pi) {
    return "pi";
  }
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

void print_into(const Expr& e, int min_prec, std::string& out) {
  const bool wrap = precedence(e.kind()) < min_prec;
  if (wrap) {
    out += '(';
  }
  const auto& ch = e.children();
  auto binary = [&](const char* op, int lhs_prec, int rhs_prec) {
    print_into(ch[0], lhs_prec, out);
    out += op;
    print_into(ch[1], rhs_prec, out);
  };
  auto call = [&](const char* name) {
    out += name;
    out += '(';
    print_into(ch[0], 1, out);
    out += ')';
  };
  switch (e.kind()) {
    case ExprKind::Constant:
      out += format_number(e.value());
      break;
    case ExprKind::Time:
      out += 't';
      break;
    case ExprKind::Negate:
      out += '-';
      print_into(ch[0], 3, out);
      break;
    case ExprKind::Add:
      binary(" + ", 1, 2);
      break;
    case ExprKind::Sub:
      binary(" - ", 1, 2);
      break;
    case ExprKind::Mul:
      binary(" * ", 2, 3);
      break;
    case ExprKind::Div:
      binary(" / ", 2, 3);
      break;
    case ExprKind::Sin:
      call("sin");
      break;
    case ExprKind::Cos:
      call("cos");
      break;
    case ExprKind::Sqrt:
      call("sqrt");
      break;
    case ExprKind::Power:
      print_into(ch[0], 5, out);
      out += '^';
      out += std::to_string(e.exponent());
      break;
  }
  if (wrap) {
    out += ')';
  }
}

double checked(double value, const Expr& node, const char* what) {
  if (!std::isfinite(value)) {
    throw DomainError(std::string(what) + " in '" + print_expression(node) + "'",
                      print_expression(node));
  }
  return value;
}

}  // namespace

Expr parse_expression(std::string_view text) { return Parser(text).parse(); }

std::string print_expression(const Expr& e) {
  std::string out;
  print_into(e, 0, out);
  return out;
}

double evaluate(const Expr& e, double t) {
  const auto& ch = e.children();
  switch (e.kind()) {
    case ExprKind::Constant:
      return e.value();
    case ExprKind::Time:
      return t;
    case ExprKind::Negate:
      return -evaluate(ch[0], t);
    case ExprKind::Add:
      return checked(evaluate(ch[0], t) + evaluate(ch[1], t), e, "overflow");
    case ExprKind::Sub:
      return checked(evaluate(ch[0], t) - evaluate(ch[1], t), e, "overflow");
    case ExprKind::Mul:
      return checked(evaluate(ch[0], t) * evaluate(ch[1], t), e, "overflow");
    case ExprKind::Div: {
      const double num = evaluate(ch[0], t);
      const double den = evaluate(ch[1], t);
      if (den == 0.0) {
        throw DomainError("division by zero in '" + print_expression(e) + "'", print_expression(e));
      }
      return checked(num / den, e, "overflow");
    }
    case ExprKind::Sin:
      return std::sin(evaluate(ch[0], t));
    case ExprKind::Cos:
      return std::cos(evaluate(ch[0], t));
    case ExprKind::Sqrt: {
      const double arg = evaluate(ch[0], t);
      if (arg < 0.0) {
        throw DomainError("square root of negative value " + format_number(arg) + " in '" +
                              print_expression(e) + "'",
                          print_expression(e));
      }
      return std::sqrt(arg);
    }
    case ExprKind::Power: {
      double base = evaluate(ch[0], t);
      double result = 1.0;
      for (unsigned n = e.exponent(); n != 0; n >>= 1) {
        if (n & 1u) {
          result *= base;
        }
        base *= base;
      }
      return checked(result, e, "overflow");
    }
  }
  return 0.0;
}

}  // namespace lmodel
