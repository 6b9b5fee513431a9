#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "doctest.h"
#include "majorize/error.hpp"
#include "majorize/expr.hpp"
#include "support.hpp"

using namespace majorize;
using namespace majorize::expr;

namespace {

double eval(std::string_view src, double t = 0.0) { return Expr::parse(src)(t); }

std::size_t parse_offset(std::string_view src) {
  try {
    Expr::parse(src);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::parse);
    return e.offset().value_or(0);
  }
  FAIL("no parse error for " << src);
  return 0;
}

// Direct recursion over the node tree with std math; nullopt on domain errors.
std::optional<double> oracle(const Node& n, const Bindings& b) {
  auto ok = [](double v) -> std::optional<double> {
    if (!std::isfinite(v)) return std::nullopt;
    return v;
  };
  switch (n.kind) {
    case NodeKind::constant: return n.value;
    case NodeKind::variable: return b.at(n.name);
    case NodeKind::negate: {
      auto v = oracle(*n.args[0], b);
      if (!v) return v;
      return -*v;
    }
    case NodeKind::binary: {
      auto l = oracle(*n.args[0], b), r = oracle(*n.args[1], b);
      if (!l || !r) return std::nullopt;
      switch (n.op) {
        case BinaryOp::add: return ok(*l + *r);
        case BinaryOp::sub: return ok(*l - *r);
        case BinaryOp::mul: return ok(*l * *r);
        case BinaryOp::div:
          if (*r == 0.0) return std::nullopt;
          return ok(*l / *r);
        case BinaryOp::pow:
          if (*l == 0.0 && *r < 0.0) return std::nullopt;
          if (*l < 0.0 && std::trunc(*r) != *r) return std::nullopt;
          return ok(std::pow(*l, *r));
      }
      return std::nullopt;
    }
    case NodeKind::call: {
      std::vector<double> a;
      for (const auto& arg : n.args) {
        auto v = oracle(*arg, b);
        if (!v) return std::nullopt;
        a.push_back(*v);
      }
      if (n.name == "exp") return ok(std::exp(a[0]));
      if (n.name == "log") return a[0] <= 0.0 ? std::nullopt : ok(std::log(a[0]));
      if (n.name == "abs") return std::abs(a[0]);
      if (n.name == "sqrt") return a[0] < 0.0 ? std::nullopt : ok(std::sqrt(a[0]));
      if (n.name == "max") return std::max(a[0], a[1]);
      if (n.name == "min") return std::min(a[0], a[1]);
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("precedence and associativity") {
  CHECK(eval("2+3*4") == 14.0);
  CHECK(eval("2^3^2") == 512.0);
  CHECK(eval("-2^2") == -4.0);
  CHECK(eval("(-2)^2") == 4.0);
  CHECK(eval("10-4-3") == 3.0);
  CHECK(eval("12/3/2") == 2.0);
  CHECK(eval("2*t^2+1", 3.0) == 19.0);
  CHECK(eval("--3") == 3.0);
  CHECK(eval("2^-1") == 0.5);
  CHECK(eval("-t*2", 3.0) == -6.0);
}

TEST_CASE("catalog functions") {
  CHECK(eval("exp(t)-1", 0.0) == 0.0);
  CHECK(eval("max(t-1,0)", 0.5) == 0.0);
  CHECK(eval("max(t-1,0)", 3.0) == 2.0);
  CHECK(eval("min(t, 2)", 5.0) == 2.0);
  CHECK(eval("abs(0-t)", 2.0) == 2.0);
  CHECK(eval("sqrt(t)", 9.0) == 3.0);
  CHECK(eval("log(exp(2))") == doctest::Approx(2.0));
  CHECK(eval("0^0") == 1.0);
  CHECK(eval("1e2 + .5") == 100.5);
  double x[] = {1, 2, 3};
  CHECK(Expr::parse("x1^2+x2^2+x3^2").eval_indexed(x) == 14.0);
}

TEST_CASE("ast shape") {
  auto e = Expr::parse("t^2");
  REQUIRE(e.root().kind == NodeKind::binary);
  CHECK(e.root().op == BinaryOp::pow);
  CHECK(e.root().args[0]->name == "t");
  CHECK(e.root().args[1]->value == 2.0);
  CHECK(Expr::parse("x2 + x10 * t").variables() == std::vector<std::string>{"t", "x10", "x2"});
}

TEST_CASE("syntax errors carry offsets") {
  CHECK(parse_offset("max(t-1,0") == 10);
  CHECK(parse_offset("") == 1);
  CHECK(parse_offset("2*") == 3);
  CHECK(parse_offset("2 $ 3") == 3);
  CHECK(parse_offset("foo(t)") == 1);
  CHECK(parse_offset("y + 1") == 1);
  CHECK(parse_offset("x0") == 1);
  CHECK(parse_offset("max(t)") == 1);
  CHECK(parse_offset("exp") == 4);
  CHECK(parse_offset("(1+2))") == 6);
  try {
    Expr::parse("max(t-1,0");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("unclosed parenthesis at offset 10") != std::string::npos);
  }
}

TEST_CASE("domain errors are raised, never NaN") {
  auto domain = [](std::string_view src, double t) {
    try {
      eval(src, t);
    } catch (const Error& e) {
      return e.code() == ErrorCode::domain;
    }
    return false;
  };
  CHECK(domain("1/t", 0.0));
  CHECK(domain("log(t)", 0.0));
  CHECK(domain("log(t)", -1.0));
  CHECK(domain("sqrt(t)", -1.0));
  CHECK(domain("t^-1", 0.0));
  CHECK(domain("t^0.5", -4.0));
  CHECK(domain("exp(t)", 1000.0));
  CHECK_FALSE(domain("t^3", -2.0));
  CHECK_THROWS_AS(Expr::parse("x1+x2").eval({{"x1", 1.0}}), Error);
}

TEST_CASE("evaluation agrees with a direct recursive oracle") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> val(-3.0, 3.0);
  int compared = 0, domain = 0;
  for (int i = 0; i < 1000; ++i) {
    Expr e(testing::random_ast(rng, 4));
    Bindings b{{"t", val(rng)}, {"x1", val(rng)}, {"x2", val(rng)}};
    auto want = oracle(e.root(), b);
    if (want) {
      double got = e.eval(b);
      CHECK(got == doctest::Approx(*want).epsilon(1e-12));
      ++compared;
    } else {
      bool threw = false;
      try {
        e.eval(b);
      } catch (const Error& err) {
        threw = err.code() == ErrorCode::domain;
      }
      CHECK_MESSAGE(threw, e.to_string());
      ++domain;
    }
  }
  CHECK(compared > 300);
  CHECK(domain > 50);
}

TEST_CASE("print then parse reproduces the tree") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 1000; ++i) {
    Expr e(testing::random_ast(rng, 5));
    std::string printed = e.to_string();
    Expr again = Expr::parse(printed);
    CHECK_MESSAGE(same_tree(e.root(), again.root()), printed);
    CHECK(again.to_string() == printed);
  }
  for (const char* src : {"2+3*4", "-2^2", "2^3^2", "max(t-1,0)", "x1*x2/x3", "0.1+1e-7"}) {
    Expr a = Expr::parse(src);
    Expr b = Expr::parse(a.to_string());
    CHECK(same_tree(a.root(), b.root()));
  }
}
