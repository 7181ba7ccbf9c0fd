#include "tnormlab/dsl.hpp"

#include <charconv>
#include <cmath>
#include <optional>
#include <utility>

namespace tnormlab::dsl {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

char op_char(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return '+';
    case BinaryOp::Sub: return '-';
    case BinaryOp::Mul: return '*';
    case BinaryOp::Div: return '/';
    case BinaryOp::Pow: return '^';
  }
  return '?';
}

// ---------------------------------------------------------------------------
// Lexer

enum class TokenKind { Number, Ident, Symbol, End };

struct Token {
  TokenKind kind;
  std::size_t pos;
  std::string_view text;
  double number = 0.0;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case TokenKind::End: return "end of input";
    case TokenKind::Number: return "number '" + std::string(t.text) + "'";
    case TokenKind::Ident: return "identifier '" + std::string(t.text) + "'";
    case TokenKind::Symbol: return "'" + std::string(t.text) + "'";
  }
  return "?";
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && is_space(src_[pos_])) ++pos_;
    const std::size_t start = pos_;
    if (pos_ >= src_.size()) return Token{TokenKind::End, start, {}};

    const char c = src_[pos_];
    if (is_digit(c) || c == '.') return number(start);
    if (is_alpha(c)) {
      while (pos_ < src_.size() && (is_alpha(src_[pos_]) || is_digit(src_[pos_]))) ++pos_;
      return Token{TokenKind::Ident, start, src_.substr(start, pos_ - start)};
    }
    switch (c) {
      case '+': case '-': case '*': case '/': case '^':
      case '(': case ')': case ',':
        ++pos_;
        return Token{TokenKind::Symbol, start, src_.substr(start, 1)};
      default:
        throw ParseError(start, "token", "character '" + std::string(1, c) + "'");
    }
  }

 private:
  Token number(std::size_t start) {
    std::size_t digits = 0;
    while (pos_ < src_.size() && is_digit(src_[pos_])) { ++pos_; ++digits; }
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() && is_digit(src_[pos_])) { ++pos_; ++digits; }
    }
    if (digits == 0) throw ParseError(start, "number", "'.'");
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
      if (p >= src_.size() || !is_digit(src_[p])) {
        throw ParseError(p, "exponent digits",
                         p >= src_.size() ? "end of input" : "'" + std::string(1, src_[p]) + "'");
      }
      while (p < src_.size() && is_digit(src_[p])) ++p;
      pos_ = p;
    }
    const std::string_view text = src_.substr(start, pos_ - start);
    double value = 0.0;
    // from_chars does not accept a leading '.', so parse via a padded copy.
    std::string buf = text.front() == '.' ? "0" + std::string(text) : std::string(text);
    auto [ptr, ec] = std::from_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{} || ptr != buf.data() + buf.size() || !std::isfinite(value)) {
      throw ParseError(start, "finite number", "number '" + std::string(text) + "'");
    }
    return Token{TokenKind::Number, start, text, value};
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Pratt parser

constexpr int kPrefixNegBp = 5;

std::optional<std::pair<int, int>> infix_binding(const Token& t, BinaryOp& op) {
  if (t.kind != TokenKind::Symbol) return std::nullopt;
  switch (t.text.front()) {
    case '+': op = BinaryOp::Add; return std::pair{1, 2};
    case '-': op = BinaryOp::Sub; return std::pair{1, 2};
    case '*': op = BinaryOp::Mul; return std::pair{3, 4};
    case '/': op = BinaryOp::Div; return std::pair{3, 4};
    case '^': op = BinaryOp::Pow; return std::pair{8, 7};
    default: return std::nullopt;
  }
}

bool is_symbol(const Token& t, char c) {
  return t.kind == TokenKind::Symbol && t.text.front() == c;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : lexer_(src) { advance(); }

  Expression parse_all() {
    Expression e = expression(0);
    if (current_.kind != TokenKind::End) {
      throw ParseError(current_.pos, "operator or end of input", describe(current_));
    }
    return e;
  }

 private:
  void advance() { current_ = lexer_.next(); }

  void expect(char c) {
    if (!is_symbol(current_, c)) {
      throw ParseError(current_.pos, "'" + std::string(1, c) + "'", describe(current_));
    }
    advance();
  }

  Expression expression(int min_bp) {
    Expression lhs = prefix();
    for (;;) {
      BinaryOp op{};
      const auto bp = infix_binding(current_, op);
      if (!bp || bp->first < min_bp) break;
      advance();
      Expression rhs = expression(bp->second);
      lhs = Expression::binary(op, lhs, rhs);
    }
    return lhs;
  }

  Expression prefix() {
    const Token t = current_;
    switch (t.kind) {
      case TokenKind::Number:
        advance();
        return Expression::constant(t.number);
      case TokenKind::Ident: {
        advance();
        if (t.text == "x") return Expression::variable(Variable::X);
        if (t.text == "y") return Expression::variable(Variable::Y);
        if (t.text == "min" || t.text == "max") {
          expect('(');
          Expression a = expression(0);
          expect(',');
          Expression b = expression(0);
          expect(')');
          return Expression::call(t.text == "min" ? Function::Min : Function::Max, a, b);
        }
        throw ParseError(t.pos, "x, y, min or max", describe(t));
      }
      case TokenKind::Symbol:
        if (is_symbol(t, '(')) {
          advance();
          Expression inner = expression(0);
          expect(')');
          return inner;
        }
        if (is_symbol(t, '-')) {
          advance();
          return Expression::negate(expression(kPrefixNegBp));
        }
        break;
      case TokenKind::End:
        break;
    }
    throw ParseError(t.pos, "expression", describe(t));
  }

  Lexer lexer_;
  Token current_{TokenKind::End, 0, {}};
};

// ---------------------------------------------------------------------------
// Evaluation

double eval_node(const Node& n, double x, double y) {
  const double r = std::visit(
      Overloaded{
          [](const Constant& c) { return c.value; },
          [&](const VariableRef& v) { return v.var == Variable::X ? x : y; },
          [&](const Negate& neg) { return -eval_node(*neg.operand, x, y); },
          [&](const Binary& b) {
            const double l = eval_node(*b.lhs, x, y);
            const double r = eval_node(*b.rhs, x, y);
            switch (b.op) {
              case BinaryOp::Add: return l + r;
              case BinaryOp::Sub: return l - r;
              case BinaryOp::Mul: return l * r;
              case BinaryOp::Div:
                if (r == 0.0) throw EvalError(EvalErrorKind::DivisionByZero, to_string(n));
                return l / r;
              case BinaryOp::Pow:
                if (l == 0.0 && r < 0.0) {
                  throw EvalError(EvalErrorKind::ZeroToNegativePower, to_string(n));
                }
                return std::pow(l, r);
            }
            return 0.0;
          },
          [&](const Call& c) {
            const double a = eval_node(*c.first, x, y);
            const double b = eval_node(*c.second, x, y);
            if (c.fn == Function::Min) return b < a ? b : a;
            return a < b ? b : a;
          },
      },
      n.data);
  if (std::isnan(r)) throw EvalError(EvalErrorKind::NotANumber, to_string(n));
  return r;
}

void write_node(const Node& n, std::string& out) {
  std::visit(Overloaded{
                 [&](const Constant& c) {
                   if (std::signbit(c.value)) {
                     out += "(-" + format_double(-c.value) + ")";
                   } else {
                     out += format_double(c.value);
                   }
                 },
                 [&](const VariableRef& v) { out += v.var == Variable::X ? 'x' : 'y'; },
                 [&](const Negate& neg) {
                   out += "(-";
                   write_node(*neg.operand, out);
                   out += ')';
                 },
                 [&](const Binary& b) {
                   out += '(';
                   write_node(*b.lhs, out);
                   out += ' ';
                   out += op_char(b.op);
                   out += ' ';
                   write_node(*b.rhs, out);
                   out += ')';
                 },
                 [&](const Call& c) {
                   out += c.fn == Function::Min ? "min(" : "max(";
                   write_node(*c.first, out);
                   out += ", ";
                   write_node(*c.second, out);
                   out += ')';
                 },
             },
             n.data);
}

NodePtr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

}  // namespace

// ---------------------------------------------------------------------------

Expression::Expression(NodePtr root) : root_(std::move(root)) {
  if (!root_) throw Error("null expression root");
}

Expression Expression::constant(double value) {
  if (!std::isfinite(value)) throw Error("non-finite constant");
  if (std::signbit(value)) return negate(Expression(make(Node{Constant{-value}})));
  return Expression(make(Node{Constant{value}}));
}

Expression Expression::variable(Variable var) { return Expression(make(Node{VariableRef{var}})); }

Expression Expression::negate(const Expression& operand) {
  return Expression(make(Node{Negate{operand.root_}}));
}

Expression Expression::binary(BinaryOp op, const Expression& lhs, const Expression& rhs) {
  return Expression(make(Node{Binary{op, lhs.root_, rhs.root_}}));
}

Expression Expression::call(Function fn, const Expression& first, const Expression& second) {
  return Expression(make(Node{Call{fn, first.root_, second.root_}}));
}

bool operator==(const Expression& a, const Expression& b) {
  return structurally_equal(*a.root_, *b.root_);
}

bool structurally_equal(const Node& a, const Node& b) {
  if (a.data.index() != b.data.index()) return false;
  return std::visit(
      Overloaded{
          [&](const Constant& c) { return c.value == std::get<Constant>(b.data).value; },
          [&](const VariableRef& v) { return v.var == std::get<VariableRef>(b.data).var; },
          [&](const Negate& n) {
            return structurally_equal(*n.operand, *std::get<Negate>(b.data).operand);
          },
          [&](const Binary& x) {
            const auto& y = std::get<Binary>(b.data);
            return x.op == y.op && structurally_equal(*x.lhs, *y.lhs) &&
                   structurally_equal(*x.rhs, *y.rhs);
          },
          [&](const Call& x) {
            const auto& y = std::get<Call>(b.data);
            return x.fn == y.fn && structurally_equal(*x.first, *y.first) &&
                   structurally_equal(*x.second, *y.second);
          },
      },
      a.data);
}

ParseError::ParseError(std::size_t position, std::string expected, std::string found)
    : Error("parse error at offset " + std::to_string(position) + ": expected " + expected +
            ", found " + found),
      position_(position),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

EvalError::EvalError(EvalErrorKind kind, std::string node)
    : Error(std::string(to_string(kind)) + " in " + node), kind_(kind), node_(std::move(node)) {}

std::string_view to_string(EvalErrorKind kind) {
  switch (kind) {
    case EvalErrorKind::DivisionByZero: return "division by zero";
    case EvalErrorKind::ZeroToNegativePower: return "zero raised to a negative power";
    case EvalErrorKind::NotANumber: return "NaN";
  }
  return "?";
}

Expression parse(std::string_view input) { return Parser(input).parse_all(); }

std::string to_string(const Expression& e) { return to_string(e.root()); }

std::string to_string(const Node& n) {
  std::string out;
  write_node(n, out);
  return out;
}

double evaluate(const Expression& e, double x, double y) { return eval_node(e.root(), x, y); }

}  // namespace tnormlab::dsl
