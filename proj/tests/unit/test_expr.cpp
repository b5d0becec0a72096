#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "solvagen/expr.hpp"

namespace ex = solvagen::expr;
using solvagen::ErrorCode;
using ex::Expr;

namespace {

Expr P(const char* text) {
  auto e = ex::parse(text);
  EXPECT_TRUE(e.has_value()) << text << ": " << (e ? "" : e.error().describe());
  return e ? *e : Expr();
}

double at(const Expr& e, double r) { return ex::eval(e, "r", r).value(); }

}  // namespace

TEST(ExprParse, EvaluatesSimpleForms) {
  EXPECT_DOUBLE_EQ(at(P("exp(-2*r)"), 0.0), 1.0);
  EXPECT_DOUBLE_EQ(at(P("r^2 + 1"), 3.0), 10.0);
  EXPECT_DOUBLE_EQ(at(P("tanh(r)*sech(r)"), 0.0), 0.0);
}

TEST(ExprParse, PrecedenceAndAssociativity) {
  EXPECT_DOUBLE_EQ(at(P("2^3^2"), 0.0), 512.0);
  EXPECT_DOUBLE_EQ(at(P("-r^2"), 3.0), -9.0);
  EXPECT_DOUBLE_EQ(at(P("1 - 2 - 3"), 0.0), -4.0);
  EXPECT_DOUBLE_EQ(at(P("8/4/2"), 0.0), 1.0);
  EXPECT_DOUBLE_EQ(at(P("2*r^-1"), 4.0), 0.5);
}

TEST(ExprParse, NamedConstantsAndFunctions) {
  EXPECT_NEAR(at(P("sin(pi/2)"), 0.0), 1.0, 1e-15);
  EXPECT_NEAR(at(P("ln(e)"), 0.0), 1.0, 1e-15);
  EXPECT_NEAR(at(P("sqrt(r)"), 2.25), 1.5, 1e-15);
  EXPECT_NEAR(at(P("sec(r)"), 0.3), 1.0 / std::cos(0.3), 1e-15);
  EXPECT_NEAR(at(P("log(r)"), 2.0), std::log(2.0), 1e-15);
}

TEST(ExprParse, SyntaxErrorsCarryOffsets) {
  auto e = ex::parse("1 + * r");
  ASSERT_FALSE(e);
  EXPECT_EQ(e.error().code, ErrorCode::Syntax);
  EXPECT_EQ(e.error().offset, 4u);

  auto open = ex::parse("sin(r");
  ASSERT_FALSE(open);
  EXPECT_EQ(open.error().code, ErrorCode::Syntax);
}

TEST(ExprParse, UnknownIdentifiersAndFunctions) {
  auto f = ex::parse("foo(r)");
  ASSERT_FALSE(f);
  EXPECT_EQ(f.error().code, ErrorCode::UnknownIdentifier);

  ex::ParseOptions only_r;
  only_r.allowed_variables = std::vector<std::string>{"r"};
  auto v = ex::parse("r + q", only_r);
  ASSERT_FALSE(v);
  EXPECT_EQ(v.error().code, ErrorCode::UnknownIdentifier);
}

TEST(ExprEval, DomainErrorsAreReported) {
  auto pole = ex::eval(P("1/g"), "g", 0.0);
  ASSERT_FALSE(pole);
  EXPECT_EQ(pole.error().code, ErrorCode::Domain);

  auto log0 = ex::eval(P("ln(g)"), "g", -1.0);
  ASSERT_FALSE(log0);
  EXPECT_EQ(log0.error().code, ErrorCode::Domain);

  EXPECT_NEAR(ex::eval(P("ln(g)"), "g", std::numbers::e).value(), 1.0, 1e-15);
  EXPECT_NEAR(ex::eval(P("g^(1/2)"), "g", 2.25).value(), 1.5, 1e-15);
}

TEST(ExprEval, UnboundVariable) {
  auto v = ex::eval(P("r + c"), "r", 1.0);
  ASSERT_FALSE(v);
  EXPECT_EQ(v.error().code, ErrorCode::UnboundVariable);
}

TEST(ExprEval, BitIdenticalOnRepeat) {
  const Expr e = P("exp(-r)*sin(3*r)/(1 + r^2) + tanh(r)^3");
  for (double r : {0.1, 0.7, 2.3}) EXPECT_EQ(at(e, r), at(e, r));
}

TEST(ExprDiff, SpecExamples) {
  EXPECT_DOUBLE_EQ(at(ex::diff(P("r^2"), "r"), 3.0), 6.0);
  const Expr d = ex::diff(P("exp(-c*r)"), "r");
  EXPECT_DOUBLE_EQ(ex::eval(d, ex::Bindings{{"r", 0.0}, {"c", 2.0}}).value(), -2.0);
  EXPECT_NEAR(at(ex::diff(P("sin(2*r)"), "r"), 0.0), 2.0, 1e-12);
}

TEST(ExprDiff, MatchesCentralDifferencesOnEveryFunction) {
  const char* cases[] = {"exp(-2*r)*r^3", "ln(1 + r^2)",  "sin(r)*cos(2*r)", "tan(r/3)",
                         "sinh(r) - cosh(r/2)", "tanh(r)^2", "sech(2*r)", "sqrt(r)/(1 + r)",
                         "r^(-3/2)", "sec(r)*tan(r)"};
  for (const char* text : cases) {
    const Expr e = P(text);
    const Expr de = ex::diff(e, "r");
    oracle::Fn f = [&](double r) { return at(e, r); };
    for (double r = 0.3; r < 1.4; r += 0.1) {
      // Spec contract: central difference with step 1e-5, 1e-6 absolute.
      const double fd = (f(r + 1e-5) - f(r - 1e-5)) / 2e-5;
      EXPECT_NEAR(at(de, r), fd, 1e-6) << text << " at " << r;
    }
  }
}

TEST(ExprDiff, ConstantsAndOtherVariablesVanish) {
  EXPECT_TRUE(ex::simplify(ex::diff(P("3 + c^2"), "r")).is_constant(0.0));
  EXPECT_FALSE(ex::depends_on(ex::simplify(ex::diff(P("c*r"), "r")), "r"));
}

TEST(ExprSimplify, SpecExamples) {
  EXPECT_TRUE(ex::tree_equal(ex::simplify(P("0*r + r^1")), Expr::variable("r")));
  EXPECT_EQ(ex::to_string(ex::simplify(P("(2+3)*g"))), "5*g");
  const Expr sq = ex::simplify(P("exp(-c*r)*exp(-c*r)"));
  const ex::Bindings b{{"r", 0.7}, {"c", 1.3}};
  EXPECT_NEAR(ex::eval(sq, b).value(), std::exp(-2 * 1.3 * 0.7), 1e-15);
  EXPECT_EQ(ex::to_string(sq), ex::to_string(ex::simplify(P("exp(-2*c*r)"))));
}

TEST(ExprPrint, IntegersPrintWithoutExponent) {
  EXPECT_EQ(ex::to_string(ex::pow(Expr::variable("r"), 10.0)), "r^10");
  EXPECT_EQ(ex::to_string(Expr::constant(-0.0)), "0");
  EXPECT_EQ(ex::to_string(Expr::constant(0.25)), "0.25");
}

// Property suites over random trees ------------------------------------------

class RandomExpr : public ::testing::TestWithParam<int> {};

TEST_P(RandomExpr, PrintParseRoundTrip) {
  std::mt19937 rng(1000 + GetParam());
  const Expr e = oracle::random_expr(rng, 3);
  auto back = ex::parse(ex::to_string(e));
  ASSERT_TRUE(back) << ex::to_string(e);
  std::uniform_real_distribution<double> x(-2.0, 2.0);
  for (int k = 0; k < 50; ++k) {
    const double r = x(rng);
    auto a = ex::eval(e, "r", r);
    auto b = ex::eval(*back, "r", r);
    ASSERT_EQ(a.has_value(), b.has_value());
    if (a) {
      EXPECT_NEAR(*b, *a, 1e-12 * std::max(1.0, std::abs(*a)));
    }
  }
}

TEST_P(RandomExpr, SimplifyPreservesValueAndIsIdempotent) {
  std::mt19937 rng(2000 + GetParam());
  const Expr e = oracle::random_expr(rng, 3);
  const Expr s = ex::simplify(e);
  EXPECT_TRUE(ex::tree_equal(ex::simplify(s), s)) << ex::to_string(e);
  std::uniform_real_distribution<double> x(-2.0, 2.0);
  for (int k = 0; k < 50; ++k) {
    const double r = x(rng);
    auto a = ex::eval(e, "r", r);
    auto b = ex::eval(s, "r", r);
    if (!a || !b) continue;  // common domain only
    EXPECT_NEAR(*b, *a, 1e-12 * std::max(1.0, std::abs(*a))) << ex::to_string(e) << " at " << r;
  }
}

TEST_P(RandomExpr, DerivativeIsLinear) {
  std::mt19937 rng(3000 + GetParam());
  const Expr f = oracle::random_expr(rng, 2);
  const Expr g = oracle::random_expr(rng, 2);
  const double a = 1.75;
  const double b = -0.5;
  const Expr lhs = ex::diff(a * f + b * g, "r");
  const Expr df = ex::diff(f, "r");
  const Expr dg = ex::diff(g, "r");
  std::uniform_real_distribution<double> x(-2.0, 2.0);
  for (int k = 0; k < 30; ++k) {
    const double r = x(rng);
    auto l = ex::eval(lhs, "r", r);
    auto p = ex::eval(df, "r", r);
    auto q = ex::eval(dg, "r", r);
    if (!l || !p || !q) continue;
    const double rhs = a * *p + b * *q;
    EXPECT_NEAR(*l, rhs, 1e-10 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_P(RandomExpr, DerivativeMatchesRichardsonOracle) {
  std::mt19937 rng(4000 + GetParam());
  const Expr e = oracle::random_expr(rng, 3);
  const Expr de = ex::diff(e, "r");
  std::uniform_real_distribution<double> x(-1.5, 1.5);
  for (int k = 0; k < 20; ++k) {
    const double r = x(rng);
    bool defined = true;
    oracle::Fn f = [&](double t) {
      auto v = ex::eval(e, "r", t);
      if (!v) defined = false;
      return v ? *v : 0.0;
    };
    const double fd = oracle::d1_rich(f, r, 1e-3);
    auto sym = ex::eval(de, "r", r);
    if (!defined || !sym || !std::isfinite(fd)) continue;
    EXPECT_NEAR(*sym, fd, 1e-6 * std::max(1.0, std::abs(fd))) << ex::to_string(e) << " at " << r;
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomExpr, ::testing::Range(0, 40));

TEST(ExprSubstitute, ReplacesVariable) {
  const Expr e = ex::substitute(P("g^2 + g"), "g", P("exp(-r)"));
  EXPECT_FALSE(ex::depends_on(e, "g"));
  EXPECT_NEAR(at(e, 0.5), std::exp(-1.0) + std::exp(-0.5), 1e-15);
}
