#pragma once

// Expression language for binary functions on [0,1]^2.
//
//   expr   := term (("+" | "-") term)*
//   term   := unary (("*" | "/") unary)*
//   unary  := "-" unary | power
//   power  := atom ("^" unary)?              right-associative
//   atom   := number | "x" | "y" | "(" expr ")"
//           | ("min" | "max") "(" expr "," expr ")"
//
// "-x^2" is -(x^2), "a^b^c" is a^(b^c). Implicit multiplication is not
// accepted. Whitespace is insignificant.

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <variant>

#include "tnormlab/errors.hpp"

namespace tnormlab::dsl {

enum class Variable { X, Y };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class Function { Min, Max };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Constant {
  double value;
};
struct VariableRef {
  Variable var;
};
struct Negate {
  NodePtr operand;
};
struct Binary {
  BinaryOp op;
  NodePtr lhs;
  NodePtr rhs;
};
struct Call {
  Function fn;
  NodePtr first;
  NodePtr second;
};

struct Node {
  std::variant<Constant, VariableRef, Negate, Binary, Call> data;
};

/// Immutable expression tree. Copies share structure.
class Expression {
 public:
  explicit Expression(NodePtr root);

  /// Negative values become negate(constant(-value)), the shape the parser
  /// produces. Throws Error for non-finite values.
  static Expression constant(double value);
  static Expression variable(Variable var);
  static Expression negate(const Expression& operand);
  static Expression binary(BinaryOp op, const Expression& lhs, const Expression& rhs);
  static Expression call(Function fn, const Expression& first, const Expression& second);

  const Node& root() const noexcept { return *root_; }
  const NodePtr& root_ptr() const noexcept { return root_; }

  /// Structural equality.
  friend bool operator==(const Expression& a, const Expression& b);

 private:
  NodePtr root_;
};

bool structurally_equal(const Node& a, const Node& b);

class ParseError : public Error {
 public:
  ParseError(std::size_t position, std::string expected, std::string found);

  /// Byte offset into the input; at most input.size().
  std::size_t position() const noexcept { return position_; }
  const std::string& expected() const noexcept { return expected_; }
  const std::string& found() const noexcept { return found_; }

 private:
  std::size_t position_;
  std::string expected_;
  std::string found_;
};

enum class EvalErrorKind { DivisionByZero, ZeroToNegativePower, NotANumber };

class EvalError : public Error {
 public:
  EvalError(EvalErrorKind kind, std::string node);

  EvalErrorKind kind() const noexcept { return kind_; }
  /// Canonical text of the offending sub-expression.
  const std::string& node() const noexcept { return node_; }

 private:
  EvalErrorKind kind_;
  std::string node_;
};

std::string_view to_string(EvalErrorKind kind);

/// Throws ParseError.
Expression parse(std::string_view input);

/// Fully parenthesized canonical form; parse(to_string(e)) == e.
std::string to_string(const Expression& e);
std::string to_string(const Node& n);

/// IEEE evaluation. Throws EvalError on division by zero, zero raised to a
/// negative power, or a NaN at any node.
double evaluate(const Expression& e, double x, double y);

}  // namespace tnormlab::dsl
