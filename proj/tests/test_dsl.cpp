#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <optional>
#include <random>
#include <string>
#include <variant>

#include "tnormlab/dsl.hpp"

using namespace tnormlab;
using namespace tnormlab::dsl;

namespace {

double eval(const std::string& text, double x, double y) { return evaluate(parse(text), x, y); }

ParseError parse_error(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no ParseError for '" << text << "'";
  return ParseError(0, "", "");
}

std::optional<EvalErrorKind> eval_error(const std::string& text, double x, double y) {
  try {
    evaluate(parse(text), x, y);
  } catch (const EvalError& e) {
    return e.kind();
  }
  return std::nullopt;
}

// Reference evaluator: recursive descent straight over the text, evaluating
// while it parses. Shares nothing with the library besides the grammar.
class Reference {
 public:
  struct Failure {
    EvalErrorKind kind;
  };

  Reference(const std::string& s, double x, double y) : s_(s), x_(x), y_(y) {}

  double run() {
    const double v = expr();
    skip();
    if (i_ != s_.size()) throw std::runtime_error("reference: trailing input");
    return v;
  }

 private:
  void skip() {
    while (i_ < s_.size() && s_[i_] == ' ') ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) throw std::runtime_error(std::string("reference: expected ") + c);
  }
  static double check(double v) {
    if (std::isnan(v)) throw Failure{EvalErrorKind::NotANumber};
    return v;
  }

  double expr() {
    double v = term();
    for (;;) {
      if (eat('+')) {
        v = check(v + term());
      } else if (eat('-')) {
        v = check(v - term());
      } else {
        return v;
      }
    }
  }
  double term() {
    double v = unary();
    for (;;) {
      if (eat('*')) {
        v = check(v * unary());
      } else if (eat('/')) {
        const double r = unary();
        if (r == 0.0) throw Failure{EvalErrorKind::DivisionByZero};
        v = check(v / r);
      } else {
        return v;
      }
    }
  }
  double unary() {
    if (eat('-')) return check(-unary());
    return power();
  }
  double power() {
    const double base = atom();
    if (!eat('^')) return base;
    const double e = unary();
    if (base == 0.0 && e < 0.0) throw Failure{EvalErrorKind::ZeroToNegativePower};
    return check(std::pow(base, e));
  }
  double atom() {
    skip();
    if (eat('(')) {
      const double v = expr();
      expect(')');
      return v;
    }
    if (s_.compare(i_, 3, "min") == 0 || s_.compare(i_, 3, "max") == 0) {
      const bool is_min = s_[i_ + 1] == 'i';
      i_ += 3;
      expect('(');
      const double a = expr();
      expect(',');
      const double b = expr();
      expect(')');
      return is_min ? (b < a ? b : a) : (a < b ? b : a);
    }
    if (eat('x')) return x_;
    if (eat('y')) return y_;
    const char* begin = s_.c_str() + i_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) throw std::runtime_error("reference: bad atom");
    i_ += static_cast<std::size_t>(end - begin);
    return v;
  }

  const std::string& s_;
  double x_, y_;
  std::size_t i_ = 0;
};

// Random sentences of the grammar with minimal parentheses.
class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  std::string expr(int depth) {
    std::string s = term(depth);
    for (int k = pick(3); k > 0; --k) s += (pick(2) ? " + " : " - ") + term(depth);
    return s;
  }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  std::string term(int depth) {
    std::string s = unary(depth);
    for (int k = pick(3); k > 0; --k) s += (pick(2) ? "*" : " / ") + unary(depth);
    return s;
  }
  std::string unary(int depth) {
    if (pick(5) == 0) return "-" + unary(depth);
    return power(depth);
  }
  std::string power(int depth) {
    std::string s = atom(depth);
    if (depth > 0 && pick(4) == 0) s += "^" + unary(depth - 1);
    return s;
  }
  std::string atom(int depth) {
    static const char* const numbers[] = {"0", "1", "2", "0.5", ".25", "3", "1.5e-1", "10", "0.75"};
    const int choice = depth > 0 ? pick(7) : pick(4);
    switch (choice) {
      case 0: return "x";
      case 1: return "y";
      case 2:
      case 3: return numbers[pick(9)];
      case 4:
      case 5: return "(" + expr(depth - 1) + ")";
      default:
        return std::string(pick(2) ? "min" : "max") + "(" + expr(depth - 1) + ", " +
               expr(depth - 1) + ")";
    }
  }

  std::mt19937_64 rng_;
};

// Random trees through the factory functions, including negative and
// non-short constants.
Expression random_tree(std::mt19937_64& rng, int depth) {
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  if (depth == 0 || pick(4) == 0) {
    switch (pick(3)) {
      case 0: return Expression::variable(Variable::X);
      case 1: return Expression::variable(Variable::Y);
      default: return Expression::constant(std::uniform_real_distribution<double>(-5.0, 5.0)(rng));
    }
  }
  switch (pick(3)) {
    case 0: return Expression::negate(random_tree(rng, depth - 1));
    case 1:
      return Expression::binary(static_cast<BinaryOp>(pick(5)), random_tree(rng, depth - 1),
                                random_tree(rng, depth - 1));
    default:
      return Expression::call(pick(2) ? Function::Min : Function::Max, random_tree(rng, depth - 1),
                              random_tree(rng, depth - 1));
  }
}

}  // namespace

TEST(DslGolden, Precedence) {
  EXPECT_EQ(to_string(parse("x+y*x")), "(x + (y * x))");
  EXPECT_EQ(to_string(parse("x^y^2")), "(x ^ (y ^ 2))");
  EXPECT_EQ(to_string(parse("-x^2")), "(-(x ^ 2))");
}

TEST(DslGolden, Canonical) {
  EXPECT_EQ(to_string(parse("max(x + y - 1, 0)")), "max(((x + y) - 1), 0)");
  EXPECT_EQ(to_string(parse("x - y - 1")), "((x - y) - 1)");
  EXPECT_EQ(to_string(parse("x / y / 2")), "((x / y) / 2)");
  EXPECT_EQ(to_string(parse("  x*  y ")), "(x * y)");
  EXPECT_EQ(to_string(parse("x^-1")), "(x ^ (-1))");
  EXPECT_EQ(to_string(parse(".5e1")), "5");
}

TEST(DslEval, DocumentedValues) {
  EXPECT_DOUBLE_EQ(eval("max(x + y - 1, 0)", 0.5, 0.7), 0.2);
  EXPECT_EQ(eval("x^2*y", 0.5, 1.0), 0.25);
  EXPECT_NEAR(eval("(x^(-1)+y^(-1)-1)^(-1)", 0.5, 0.5), 1.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(eval("x*y", 0.25, 0.4), 0.1);
  EXPECT_NEAR(eval("max(x+x*y-1,0)", 0.8, 0.8), 0.44, 1e-15);
  EXPECT_EQ(eval("-x^2", 3.0, 0.0), -9.0);
  EXPECT_EQ(eval("2^3^2", 0.0, 0.0), 512.0);
  EXPECT_EQ(eval("min(x, y)", 0.3, 0.2), 0.2);
  EXPECT_EQ(eval("max(x, y)", 0.3, 0.2), 0.3);
}

TEST(DslParseError, TruncatedCall) {
  const ParseError e = parse_error("min(x,");
  EXPECT_EQ(e.position(), 6u);
  EXPECT_EQ(e.expected(), "expression");
  EXPECT_EQ(e.found(), "end of input");
}

TEST(DslParseError, ImplicitMultiplicationRejected) {
  const ParseError e = parse_error("xy");
  EXPECT_EQ(e.position(), 0u);
}

TEST(DslParseError, TrailingInput) {
  const ParseError e = parse_error("x y");
  EXPECT_EQ(e.position(), 2u);
  EXPECT_EQ(e.expected(), "operator or end of input");
}

TEST(DslParseError, Misc) {
  EXPECT_LE(parse_error("(x").position(), 2u);
  EXPECT_EQ(parse_error("").position(), 0u);
  EXPECT_EQ(parse_error("x + * y").position(), 4u);
  EXPECT_EQ(parse_error("z").position(), 0u);
  EXPECT_EQ(parse_error("1e400").position(), 0u);
  EXPECT_EQ(parse_error("min(x y)").position(), 6u);
  for (const char* bad : {"(x", "", "x +", "min(x)", "x $ y", "max(,1)"}) {
    const ParseError e = parse_error(bad);
    EXPECT_LE(e.position(), std::string(bad).size() + 1) << bad;
  }
}

TEST(DslEvalError, Kinds) {
  EXPECT_EQ(eval_error("x/y", 0.1, 0.0), EvalErrorKind::DivisionByZero);
  EXPECT_EQ(eval_error("x^(-1)", 0.0, 0.5), EvalErrorKind::ZeroToNegativePower);
  EXPECT_EQ(eval_error("(x-1)^0.5", 0.5, 0.5), EvalErrorKind::NotANumber);
  EXPECT_EQ(eval_error("x/y", 0.1, 0.5), std::nullopt);
  EXPECT_EQ(eval_error("0^0", 0.0, 0.0), std::nullopt);
}

TEST(DslEvalError, NamesNode) {
  try {
    evaluate(parse("x + x/y"), 0.1, 0.0);
    FAIL();
  } catch (const EvalError& e) {
    EXPECT_EQ(e.node(), "(x / y)");
  }
}

TEST(DslFactory, NegativeConstantMatchesParser) {
  const Expression e = Expression::constant(-2.5);
  EXPECT_EQ(to_string(e), "(-2.5)");
  EXPECT_EQ(parse(to_string(e)), e);
  EXPECT_THROW(Expression::constant(INFINITY), Error);
}

TEST(DslProperty, RoundtripGeneratedSentences) {
  Generator gen(0x5EED);
  for (int k = 0; k < 1000; ++k) {
    const std::string text = gen.expr(6);
    const Expression e = parse(text);
    const std::string canon = to_string(e);
    const Expression back = parse(canon);
    ASSERT_EQ(back, e) << text;
    ASSERT_EQ(to_string(back), canon);
  }
}

TEST(DslProperty, RoundtripFactoryTrees) {
  std::mt19937_64 rng(42);
  for (int k = 0; k < 1000; ++k) {
    const Expression e = random_tree(rng, 6);
    ASSERT_EQ(parse(to_string(e)), e) << to_string(e);
  }
}

TEST(DslProperty, AgreesWithReferenceEvaluator) {
  Generator gen(0xBEEF);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int values = 0;
  int errors = 0;
  for (int k = 0; values < 10000 && k < 200000; ++k) {
    const std::string text = gen.expr(4);
    double x = unit(rng), y = unit(rng);
    if (k % 10 == 0) x = 0.0;
    if (k % 13 == 0) y = 1.0;

    std::optional<double> ref;
    std::optional<EvalErrorKind> ref_err;
    try {
      ref = Reference(text, x, y).run();
    } catch (const Reference::Failure& f) {
      ref_err = f.kind;
    }

    std::optional<double> got;
    std::optional<EvalErrorKind> got_err;
    try {
      got = evaluate(parse(text), x, y);
    } catch (const EvalError& e) {
      got_err = e.kind();
    }

    ASSERT_EQ(ref_err, got_err) << text << " at (" << x << ", " << y << ")";
    if (ref) {
      ASSERT_EQ(std::signbit(*ref), std::signbit(*got)) << text;
      ASSERT_EQ(*ref, *got) << text << " at (" << x << ", " << y << ")";
      ++values;
    } else {
      ++errors;
    }
  }
  EXPECT_EQ(values, 10000);
  EXPECT_GT(errors, 0);
}
