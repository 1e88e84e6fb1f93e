#include "kolberg/expr.hpp"

#include <cctype>
#include <string>

namespace kolberg {
namespace {

using Node = Expression::Node;
using Kind = Expression::Kind;
using NodePtr = std::shared_ptr<const Node>;

class Parser {
 public:
  Parser(std::string_view text, std::string_view vars) : s_(text), vars_(vars) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, i_); }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool accept(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  static NodePtr binary(Kind k, std::size_t pos, NodePtr a, NodePtr b) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->position = pos;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      skip();
      std::size_t pos = i_;
      if (accept('+'))
        lhs = binary(Kind::add, pos, lhs, term());
      else if (accept('-'))
        lhs = binary(Kind::sub, pos, lhs, term());
      else
        return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    for (;;) {
      skip();
      std::size_t pos = i_;
      if (accept('*'))
        lhs = binary(Kind::mul, pos, lhs, factor());
      else if (accept('/'))
        lhs = binary(Kind::div, pos, lhs, factor());
      else
        return lhs;
    }
  }

  NodePtr factor() {
    skip();
    std::size_t pos = i_;
    if (accept('-')) return binary(Kind::neg, pos, factor(), nullptr);
    NodePtr b = base();
    skip();
    pos = i_;
    if (accept('^')) {
      skip();
      bool neg = accept('-');
      skip();
      std::string digits = integer_digits();
      if (digits.empty()) fail("expected integer exponent");
      if (digits.size() > 9) fail("exponent too large");
      auto n = std::make_shared<Node>();
      n->kind = Kind::pow;
      n->position = pos;
      n->exponent = std::stol(digits) * (neg ? -1 : 1);
      n->lhs = std::move(b);
      return n;
    }
    return b;
  }

  std::string integer_digits() {
    std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    return std::string(s_.substr(start, i_ - start));
  }

  NodePtr base() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of input");
    std::size_t pos = i_;
    char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      auto n = std::make_shared<Node>();
      n->kind = Kind::literal;
      n->position = pos;
      n->value = BigRational(BigInt(integer_digits()));
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      ++i_;
      if (i_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[i_]))) {
        i_ = pos;
        fail("unknown identifier");
      }
      if (vars_.find(c) == std::string_view::npos) {
        i_ = pos;
        fail(std::string("unknown variable '") + c + "'");
      }
      auto n = std::make_shared<Node>();
      n->kind = Kind::variable;
      n->position = pos;
      n->var = c;
      return n;
    }
    if (accept('(')) {
      NodePtr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::string_view vars_;
  std::size_t i_ = 0;
};

std::string node_string(const Node& n) {
  switch (n.kind) {
    case Kind::literal:
      return n.value.to_string();
    case Kind::variable:
      return std::string(1, n.var);
    case Kind::add:
      return "(" + node_string(*n.lhs) + " + " + node_string(*n.rhs) + ")";
    case Kind::sub:
      return "(" + node_string(*n.lhs) + " - " + node_string(*n.rhs) + ")";
    case Kind::mul:
      return "(" + node_string(*n.lhs) + "*" + node_string(*n.rhs) + ")";
    case Kind::div:
      return "(" + node_string(*n.lhs) + "/" + node_string(*n.rhs) + ")";
    case Kind::neg:
      return "(-" + node_string(*n.lhs) + ")";
    case Kind::pow:
      return "(" + node_string(*n.lhs) + "^" + std::to_string(n.exponent) + ")";
  }
  return "?";
}

}  // namespace

std::string Expression::to_string() const { return node_string(*root_); }

Expression parse_expr(std::string_view text, std::string_view variables) {
  return Expression(Parser(text, variables).parse());
}

BigRational parse_rational_expr(std::string_view text) {
  return lower<BigRational>(parse_expr(text, ""), [](char) { return std::optional<BigRational>(); });
}

RatFuncY parse_ratfunc_y(std::string_view text) {
  return lower<RatFuncY>(parse_expr(text, "y"),
                         [](char) { return std::optional<RatFuncY>(RatFuncY::var()); });
}

RatFuncT parse_ratfunc_t(std::string_view text) {
  return lower<RatFuncT>(parse_expr(text, "yt"), [](char c) {
    return std::optional<RatFuncT>(c == 'y' ? RatFuncT(RatFuncY::var()) : RatFuncT::var());
  });
}

RatFuncQ<'t'> parse_ratfunc_q_t(std::string_view text) {
  return lower<RatFuncQ<'t'>>(parse_expr(text, "t"),
                              [](char) { return std::optional<RatFuncQ<'t'>>(RatFuncQ<'t'>::var()); });
}

RatFuncQ<'s'> parse_ratfunc_q_s(std::string_view text) {
  return lower<RatFuncQ<'s'>>(parse_expr(text, "s"),
                              [](char) { return std::optional<RatFuncQ<'s'>>(RatFuncQ<'s'>::var()); });
}

PolyQ<'n'> parse_poly_n(std::string_view text) {
  auto r = lower<RatFuncQ<'n'>>(parse_expr(text, "n"),
                                [](char) { return std::optional<RatFuncQ<'n'>>(RatFuncQ<'n'>::var()); });
  if (!r.is_polynomial()) throw ParseError("expected a polynomial in n", 0);
  return r.num();
}

}  // namespace kolberg
