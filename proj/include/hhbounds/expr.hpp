#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hhbounds/domain.hpp"
#include "hhbounds/errors.hpp"

// Arithmetic expressions in x and y, used as the CLI's function input.
//
//   expr     := term (('+' | '-') term)*
//   term     := unary (('*' | '/') unary)*
//   unary    := '-' unary | power
//   power    := atom ('^' exponent)?
//   exponent := '-' exponent | NUMBER ('^' exponent)? | '(' exponent ')'
//   atom     := NUMBER | 'x' | 'y' | '(' expr ')'
//             | ('exp' | 'abs') '(' expr ')' | ('max' | 'min') '(' expr ',' expr ')'
//
// Unary minus binds looser than '^', so -x^2 is -(x^2). There is no implicit
// multiplication.
namespace hhb::expr {

enum class NodeKind { Number, Var, Unary, Binary, Call };
enum class Variable { X, Y };
enum class UnaryOp { Neg, Abs, Exp };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class CallOp { Max, Min };

/// Half-open byte range [begin, end) of the source text.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// Immutable syntax tree node. Only the operator field matching `kind` is
/// meaningful. The exponent subtree of a Pow node contains only Number, Neg
/// and Pow nodes.
struct Node {
  NodeKind kind = NodeKind::Number;
  double number = 0;
  Variable var = Variable::X;
  UnaryOp unary_op = UnaryOp::Neg;
  BinaryOp binary_op = BinaryOp::Add;
  CallOp call_op = CallOp::Max;
  std::vector<NodePtr> children;
  Span span;
};

/// First syntax error: byte offset into the source, what the parser wanted,
/// and what it saw.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, std::string expected, std::string found);

  std::size_t position() const noexcept { return position_; }
  const std::string& expected() const noexcept { return expected_; }
  const std::string& found() const noexcept { return found_; }

  /// Source line with a caret under the error position.
  std::string render(std::string_view source) const;

 private:
  std::size_t position_;
  std::string expected_;
  std::string found_;
};

/// Parsed expression together with its source text.
class Expr {
 public:
  Expr(std::string source, NodePtr root) : source_(std::move(source)), root_(std::move(root)) {}

  const std::string& source() const noexcept { return source_; }
  const Node& root() const noexcept { return *root_; }
  NodePtr root_ptr() const noexcept { return root_; }

  /// Throws EvaluationError naming the first subexpression whose value is
  /// not finite.
  double eval(double x, double y) const;

  /// The expression as a bivariate function.
  Fn2D as_function() const;

 private:
  std::string source_;
  NodePtr root_;
};

/// Throws ParseError on the first failure.
Expr parse(std::string_view source);

/// Fully parenthesised infix form that parses back to the same tree.
std::string to_infix(const Node& node);

/// Constructor-style dump, e.g. Binary(Mul, Var X, Var Y).
std::string to_tree_string(const Node& node);

/// Same shape, operators and numbers; spans are ignored.
bool structurally_equal(const Node& lhs, const Node& rhs);

}  // namespace hhb::expr
