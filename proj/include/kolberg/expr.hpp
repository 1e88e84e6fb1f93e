#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>

#include "kolberg/errors.hpp"
#include "kolberg/ratfunc.hpp"
#include "kolberg/rational.hpp"

namespace kolberg {

// Immutable parse tree of an arithmetic expression.
//
// Grammar (whitespace ignored):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | base ('^' ['-'] integer)?
//   base   := integer | variable | '(' expr ')'
//   variable in {y, t, s, n, x}
// A rational literal p/q is the quotient of two integer literals.
class Expression {
 public:
  enum class Kind { literal, variable, add, sub, mul, div, neg, pow };

  struct Node {
    Kind kind;
    std::size_t position;
    BigRational value;  // literal
    char var = 0;       // variable
    long exponent = 0;  // pow
    std::shared_ptr<const Node> lhs, rhs;
  };

  explicit Expression(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  const Node& root() const { return *root_; }
  std::string to_string() const;

 private:
  std::shared_ptr<const Node> root_;
};

// Parses `text`, accepting only variables listed in `variables`.
Expression parse_expr(std::string_view text, std::string_view variables = "ystnx");

namespace detail {

template <class F>
F lift(const BigRational& q) {
  if constexpr (std::is_same_v<F, BigRational>) {
    return q;
  } else {
    return F(lift<typename F::coeff_type>(q));
  }
}

template <class F>
F lower_node(const Expression::Node& n, const std::function<std::optional<F>(char)>& bind) {
  using K = Expression::Kind;
  switch (n.kind) {
    case K::literal:
      return lift<F>(n.value);
    case K::variable: {
      auto v = bind(n.var);
      if (!v) throw ParseError(std::string("unknown variable '") + n.var + "'", n.position);
      return *v;
    }
    case K::add:
      return lower_node<F>(*n.lhs, bind) + lower_node<F>(*n.rhs, bind);
    case K::sub:
      return lower_node<F>(*n.lhs, bind) - lower_node<F>(*n.rhs, bind);
    case K::mul:
      return lower_node<F>(*n.lhs, bind) * lower_node<F>(*n.rhs, bind);
    case K::div: {
      F a = lower_node<F>(*n.lhs, bind);
      F b = lower_node<F>(*n.rhs, bind);
      if (b.is_zero()) throw ParseError("division by the zero polynomial", n.position);
      return a / b;
    }
    case K::neg:
      return -lower_node<F>(*n.lhs, bind);
    case K::pow: {
      F b = lower_node<F>(*n.lhs, bind);
      if (n.exponent < 0 && b.is_zero()) throw ParseError("division by the zero polynomial", n.position);
      return b.pow(n.exponent);
    }
  }
  throw ParseError("corrupt expression", n.position);
}

}  // namespace detail

// Evaluates the tree in the field F, resolving variables through `bind`.
template <class F>
F lower(const Expression& e, const std::function<std::optional<F>(char)>& bind) {
  return detail::lower_node<F>(e.root(), bind);
}

// Convenience front ends: parse and lower into one concrete field.
BigRational parse_rational_expr(std::string_view text);
RatFuncY parse_ratfunc_y(std::string_view text);
RatFuncT parse_ratfunc_t(std::string_view text);
RatFuncQ<'t'> parse_ratfunc_q_t(std::string_view text);
RatFuncQ<'s'> parse_ratfunc_q_s(std::string_view text);
// A polynomial in n over Q; rejects genuine fractions in n.
PolyQ<'n'> parse_poly_n(std::string_view text);

}  // namespace kolberg
