#include "hhbounds/expr.hpp"

#include <charconv>
#include <cctype>
#include <cmath>
#include <system_error>

namespace hhb::expr {
namespace {

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
  Tok kind = Tok::End;
  std::size_t begin = 0;
  std::size_t end = 0;
  double number = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    Token t;
    t.begin = pos_;
    if (pos_ >= src_.size()) {
      t.kind = Tok::End;
      t.end = pos_;
      return t;
    }
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number(t);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        ++pos_;
      }
      t.kind = Tok::Ident;
      t.end = pos_;
      return t;
    }
    ++pos_;
    t.end = pos_;
    switch (c) {
      case '+': t.kind = Tok::Plus; break;
      case '-': t.kind = Tok::Minus; break;
      case '*': t.kind = Tok::Star; break;
      case '/': t.kind = Tok::Slash; break;
      case '^': t.kind = Tok::Caret; break;
      case '(': t.kind = Tok::LParen; break;
      case ')': t.kind = Tok::RParen; break;
      case ',': t.kind = Tok::Comma; break;
      default:
        throw ParseError(t.begin, "expression", "'" + std::string(1, c) + "'");
    }
    return t;
  }

 private:
  bool digit_at(std::size_t i) const {
    return i < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i]));
  }

  Token number(Token t) {
    std::size_t p = pos_;
    bool digits = false;
    while (digit_at(p)) ++p, digits = true;
    if (p < src_.size() && src_[p] == '.') {
      ++p;
      while (digit_at(p)) ++p, digits = true;
    }
    if (!digits) throw ParseError(t.begin, "number", "'.'");
    // exponent only when digits follow, so "2e" leaves 'e' to the identifier rule
    if (p < src_.size() && (src_[p] == 'e' || src_[p] == 'E')) {
      std::size_t q = p + 1;
      if (q < src_.size() && (src_[q] == '+' || src_[q] == '-')) ++q;
      if (digit_at(q)) {
        while (digit_at(q)) ++q;
        p = q;
      }
    }
    const std::string_view text = src_.substr(pos_, p - pos_);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), t.number);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(t.number)) {
      throw ParseError(t.begin, "finite number", "'" + std::string(text) + "'");
    }
    pos_ = p;
    t.kind = Tok::Number;
    t.end = p;
    return t;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

NodePtr make_leaf_number(double v, Span span) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Number;
  n->number = v;
  n->span = span;
  return n;
}

NodePtr make_var(Variable v, Span span) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Var;
  n->var = v;
  n->span = span;
  return n;
}

NodePtr make_unary(UnaryOp op, NodePtr child, Span span) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Unary;
  n->unary_op = op;
  n->children.push_back(std::move(child));
  n->span = span;
  return n;
}

NodePtr make_binary(BinaryOp op, NodePtr lhs, NodePtr rhs) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Binary;
  n->binary_op = op;
  n->span = {lhs->span.begin, rhs->span.end};
  n->children.push_back(std::move(lhs));
  n->children.push_back(std::move(rhs));
  return n;
}

NodePtr make_call(CallOp op, NodePtr lhs, NodePtr rhs, Span span) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Call;
  n->call_op = op;
  n->children.push_back(std::move(lhs));
  n->children.push_back(std::move(rhs));
  n->span = span;
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src), lexer_(src) { advance(); }

  NodePtr parse_all() {
    NodePtr root = expression();
    if (cur_.kind != Tok::End) fail("operator or end of input");
    return root;
  }

 private:
  void advance() {
    prev_end_ = cur_.end;
    cur_ = lexer_.next();
  }

  std::string describe(const Token& t) const {
    if (t.kind == Tok::End) return "end of input";
    return "'" + std::string(src_.substr(t.begin, t.end - t.begin)) + "'";
  }

  [[noreturn]] void fail(const std::string& expected) const {
    throw ParseError(cur_.begin, expected, describe(cur_));
  }

  Token expect(Tok kind, const char* what) {
    if (cur_.kind != kind) fail(what);
    Token t = cur_;
    advance();
    return t;
  }

  NodePtr expression() {
    NodePtr lhs = term();
    while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
      const BinaryOp op = cur_.kind == Tok::Plus ? BinaryOp::Add : BinaryOp::Sub;
      advance();
      lhs = make_binary(op, lhs, term());
    }
    return lhs;
  }

  NodePtr term() {
    NodePtr lhs = unary();
    while (cur_.kind == Tok::Star || cur_.kind == Tok::Slash) {
      const BinaryOp op = cur_.kind == Tok::Star ? BinaryOp::Mul : BinaryOp::Div;
      advance();
      lhs = make_binary(op, lhs, unary());
    }
    return lhs;
  }

  NodePtr unary() {
    if (cur_.kind == Tok::Minus) {
      const std::size_t begin = cur_.begin;
      advance();
      NodePtr child = unary();
      const Span span{begin, child->span.end};
      return make_unary(UnaryOp::Neg, std::move(child), span);
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (cur_.kind != Tok::Caret) return base;
    advance();
    return make_binary(BinaryOp::Pow, std::move(base), exponent());
  }

  NodePtr exponent() {
    const std::size_t begin = cur_.begin;
    switch (cur_.kind) {
      case Tok::Minus: {
        advance();
        NodePtr child = exponent();
        const Span span{begin, child->span.end};
        return make_unary(UnaryOp::Neg, std::move(child), span);
      }
      case Tok::Number: {
        NodePtr base = make_leaf_number(cur_.number, {cur_.begin, cur_.end});
        advance();
        if (cur_.kind != Tok::Caret) return base;
        advance();
        return make_binary(BinaryOp::Pow, std::move(base), exponent());
      }
      case Tok::LParen: {
        advance();
        NodePtr inner = exponent();
        expect(Tok::RParen, "')'");
        return inner;
      }
      default:
        fail("numeric exponent");
    }
  }

  // the span widens to cover the parentheses so error excerpts stay balanced
  NodePtr parenthesised() {
    const Token open = expect(Tok::LParen, "'('");
    NodePtr inner = expression();
    expect(Tok::RParen, "')'");
    auto wrapped = std::make_shared<Node>(*inner);
    wrapped->span = {open.begin, prev_end_};
    return wrapped;
  }

  NodePtr atom() {
    const Token t = cur_;
    switch (t.kind) {
      case Tok::Number:
        advance();
        return make_leaf_number(t.number, {t.begin, t.end});
      case Tok::LParen:
        return parenthesised();
      case Tok::Ident:
        return identifier(t);
      default:
        fail("expression");
    }
  }

  NodePtr identifier(const Token& t) {
    const std::string_view name = src_.substr(t.begin, t.end - t.begin);
    if (name == "x" || name == "y") {
      advance();
      return make_var(name == "x" ? Variable::X : Variable::Y, {t.begin, t.end});
    }
    if (name == "exp" || name == "abs") {
      advance();
      NodePtr arg = parenthesised();
      return make_unary(name == "exp" ? UnaryOp::Exp : UnaryOp::Abs, std::move(arg),
                        {t.begin, prev_end_});
    }
    if (name == "max" || name == "min") {
      advance();
      expect(Tok::LParen, "'('");
      NodePtr lhs = expression();
      expect(Tok::Comma, "','");
      NodePtr rhs = expression();
      expect(Tok::RParen, "')'");
      return make_call(name == "max" ? CallOp::Max : CallOp::Min, std::move(lhs), std::move(rhs),
                       {t.begin, prev_end_});
    }
    fail("x, y, exp, abs, max, min or a number");
  }

  std::string_view src_;
  Lexer lexer_;
  Token cur_;
  std::size_t prev_end_ = 0;
};

struct Evaluator {
  std::string_view source;
  double x;
  double y;

  double operator()(const Node& n) const {
    const double v = compute(n);
    if (!std::isfinite(v)) {
      const std::string text(source.substr(n.span.begin, n.span.end - n.span.begin));
      throw EvaluationError("non-finite value of subexpression '" + text + "' at (" +
                                format_number(x) + ", " + format_number(y) + ")",
                            x, y, n.span.begin, n.span.end);
    }
    return v;
  }

  double compute(const Node& n) const {
    switch (n.kind) {
      case NodeKind::Number:
        return n.number;
      case NodeKind::Var:
        return n.var == Variable::X ? x : y;
      case NodeKind::Unary: {
        const double a = (*this)(*n.children[0]);
        switch (n.unary_op) {
          case UnaryOp::Neg: return -a;
          case UnaryOp::Abs: return std::abs(a);
          case UnaryOp::Exp: return std::exp(a);
        }
        break;
      }
      case NodeKind::Binary: {
        const double a = (*this)(*n.children[0]);
        const double b = (*this)(*n.children[1]);
        switch (n.binary_op) {
          case BinaryOp::Add: return a + b;
          case BinaryOp::Sub: return a - b;
          case BinaryOp::Mul: return a * b;
          case BinaryOp::Div: return a / b;
          case BinaryOp::Pow: return std::pow(a, b);
        }
        break;
      }
      case NodeKind::Call: {
        const double a = (*this)(*n.children[0]);
        const double b = (*this)(*n.children[1]);
        return n.call_op == CallOp::Max ? std::max(a, b) : std::min(a, b);
      }
    }
    return 0;
  }
};

const char* unary_name(UnaryOp op) {
  switch (op) {
    case UnaryOp::Neg: return "Neg";
    case UnaryOp::Abs: return "Abs";
    case UnaryOp::Exp: return "Exp";
  }
  return "?";
}

const char* binary_name(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "Add";
    case BinaryOp::Sub: return "Sub";
    case BinaryOp::Mul: return "Mul";
    case BinaryOp::Div: return "Div";
    case BinaryOp::Pow: return "Pow";
  }
  return "?";
}

const char* binary_symbol(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return " + ";
    case BinaryOp::Sub: return " - ";
    case BinaryOp::Mul: return " * ";
    case BinaryOp::Div: return " / ";
    case BinaryOp::Pow: return " ^ ";
  }
  return " ? ";
}

std::string exponent_infix(const Node& n) {
  if (n.kind == NodeKind::Number) return format_number(n.number);
  if (n.kind == NodeKind::Unary) return "-" + exponent_infix(*n.children[0]);
  return "(" + exponent_infix(*n.children[0]) + " ^ " + exponent_infix(*n.children[1]) + ")";
}

}  // namespace

ParseError::ParseError(std::size_t position, std::string expected, std::string found)
    : Error("parse error at offset " + std::to_string(position) + ": expected " + expected +
            ", found " + found),
      position_(position),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

std::string ParseError::render(std::string_view source) const {
  std::string out = "error: expected " + expected_ + ", found " + found_ + "\n";
  out += "  " + std::string(source) + "\n";
  out += "  " + std::string(position_, ' ') + "^\n";
  return out;
}

Expr parse(std::string_view source) {
  Parser parser(source);
  return Expr(std::string(source), parser.parse_all());
}

double Expr::eval(double x, double y) const { return Evaluator{source_, x, y}(*root_); }

Fn2D Expr::as_function() const {
  Fn2D f;
  f.label = source_;
  f.eval = [self = *this](double x, double y) { return self.eval(x, y); };
  return f;
}

std::string to_infix(const Node& n) {
  switch (n.kind) {
    case NodeKind::Number:
      return format_number(n.number);
    case NodeKind::Var:
      return n.var == Variable::X ? "x" : "y";
    case NodeKind::Unary:
      switch (n.unary_op) {
        case UnaryOp::Neg: return "(-" + to_infix(*n.children[0]) + ")";
        case UnaryOp::Abs: return "abs(" + to_infix(*n.children[0]) + ")";
        case UnaryOp::Exp: return "exp(" + to_infix(*n.children[0]) + ")";
      }
      break;
    case NodeKind::Binary:
      if (n.binary_op == BinaryOp::Pow) {
        return "(" + to_infix(*n.children[0]) + " ^ " + exponent_infix(*n.children[1]) + ")";
      }
      return "(" + to_infix(*n.children[0]) + binary_symbol(n.binary_op) +
             to_infix(*n.children[1]) + ")";
    case NodeKind::Call:
      return std::string(n.call_op == CallOp::Max ? "max(" : "min(") + to_infix(*n.children[0]) +
             ", " + to_infix(*n.children[1]) + ")";
  }
  return "";
}

std::string to_tree_string(const Node& n) {
  switch (n.kind) {
    case NodeKind::Number:
      return "Number " + format_number(n.number);
    case NodeKind::Var:
      return n.var == Variable::X ? "Var X" : "Var Y";
    case NodeKind::Unary:
      return std::string("Unary(") + unary_name(n.unary_op) + ", " +
             to_tree_string(*n.children[0]) + ")";
    case NodeKind::Binary:
      return std::string("Binary(") + binary_name(n.binary_op) + ", " +
             to_tree_string(*n.children[0]) + ", " + to_tree_string(*n.children[1]) + ")";
    case NodeKind::Call:
      return std::string("Call(") + (n.call_op == CallOp::Max ? "Max" : "Min") + ", " +
             to_tree_string(*n.children[0]) + ", " + to_tree_string(*n.children[1]) + ")";
  }
  return "";
}

bool structurally_equal(const Node& lhs, const Node& rhs) {
  if (lhs.kind != rhs.kind || lhs.children.size() != rhs.children.size()) return false;
  switch (lhs.kind) {
    case NodeKind::Number:
      if (lhs.number != rhs.number) return false;
      break;
    case NodeKind::Var:
      if (lhs.var != rhs.var) return false;
      break;
    case NodeKind::Unary:
      if (lhs.unary_op != rhs.unary_op) return false;
      break;
    case NodeKind::Binary:
      if (lhs.binary_op != rhs.binary_op) return false;
      break;
    case NodeKind::Call:
      if (lhs.call_op != rhs.call_op) return false;
      break;
  }
  for (std::size_t i = 0; i < lhs.children.size(); ++i) {
    if (!structurally_equal(*lhs.children[i], *rhs.children[i])) return false;
  }
  return true;
}

}  // namespace hhb::expr
