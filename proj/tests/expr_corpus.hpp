#pragma once

#include <cstddef>
#include <vector>

namespace hhb_test {

struct TreeCase {
  const char* source;
  const char* tree;
};

struct MalformedCase {
  const char* source;
  // half-open range of the offending token; begin == end marks end of input
  std::size_t begin;
  std::size_t end;
};

inline const std::vector<TreeCase>& tree_corpus() {
  static const std::vector<TreeCase> cases = {
      {"x*y", "Binary(Mul, Var X, Var Y)"},
      {"exp(x+y)", "Unary(Exp, Binary(Add, Var X, Var Y))"},
      {"x^2 + abs(y-0.5)",
       "Binary(Add, Binary(Pow, Var X, Number 2), Unary(Abs, Binary(Sub, Var Y, Number 0.5)))"},
      {"x", "Var X"},
      {"y", "Var Y"},
      {"0", "Number 0"},
      {"1.5", "Number 1.5"},
      {".25", "Number 0.25"},
      {"3e2", "Number 300"},
      {"2.5E-1", "Number 0.25"},
      {"x+y", "Binary(Add, Var X, Var Y)"},
      {"x-y", "Binary(Sub, Var X, Var Y)"},
      {"x/y", "Binary(Div, Var X, Var Y)"},
      {"x-y-1", "Binary(Sub, Binary(Sub, Var X, Var Y), Number 1)"},
      {"x/y/2", "Binary(Div, Binary(Div, Var X, Var Y), Number 2)"},
      {"1+2*3", "Binary(Add, Number 1, Binary(Mul, Number 2, Number 3))"},
      {"(1+2)*3", "Binary(Mul, Binary(Add, Number 1, Number 2), Number 3)"},
      {"2+3*4^2", "Binary(Add, Number 2, Binary(Mul, Number 3, Binary(Pow, Number 4, Number 2)))"},
      {"-x^2", "Unary(Neg, Binary(Pow, Var X, Number 2))"},
      {"(-x)^2", "Binary(Pow, Unary(Neg, Var X), Number 2)"},
      {"-x*y", "Binary(Mul, Unary(Neg, Var X), Var Y)"},
      {"--x", "Unary(Neg, Unary(Neg, Var X))"},
      {"x*-y", "Binary(Mul, Var X, Unary(Neg, Var Y))"},
      {"2^3^2", "Binary(Pow, Number 2, Binary(Pow, Number 3, Number 2))"},
      {"x^-1", "Binary(Pow, Var X, Unary(Neg, Number 1))"},
      {"x^(2)", "Binary(Pow, Var X, Number 2)"},
      {"x^(-0.5)", "Binary(Pow, Var X, Unary(Neg, Number 0.5))"},
      {"y^2^0.5", "Binary(Pow, Var Y, Binary(Pow, Number 2, Number 0.5))"},
      {"abs(x)", "Unary(Abs, Var X)"},
      {"exp(-x)", "Unary(Exp, Unary(Neg, Var X))"},
      {"max(x,y)", "Call(Max, Var X, Var Y)"},
      {"min(x, 1)", "Call(Min, Var X, Number 1)"},
      {"max(x*y, x+y)",
       "Call(Max, Binary(Mul, Var X, Var Y), Binary(Add, Var X, Var Y))"},
      {"min(max(x,0),1)", "Call(Min, Call(Max, Var X, Number 0), Number 1)"},
      {"abs(x-0.5)+abs(y-0.5)",
       "Binary(Add, Unary(Abs, Binary(Sub, Var X, Number 0.5)), Unary(Abs, Binary(Sub, Var Y, Number 0.5)))"},
      {"x^2+y^2", "Binary(Add, Binary(Pow, Var X, Number 2), Binary(Pow, Var Y, Number 2))"},
      {"exp(x)*exp(y)", "Binary(Mul, Unary(Exp, Var X), Unary(Exp, Var Y))"},
      {"(x+1)*(y+1)", "Binary(Mul, Binary(Add, Var X, Number 1), Binary(Add, Var Y, Number 1))"},
      {"((x))", "Var X"},
      {"  x \t*\n y ", "Binary(Mul, Var X, Var Y)"},
      {"1/(1+x)", "Binary(Div, Number 1, Binary(Add, Number 1, Var X))"},
      {"exp(x^2)", "Unary(Exp, Binary(Pow, Var X, Number 2))"},
      {"abs(x)^3", "Binary(Pow, Unary(Abs, Var X), Number 3)"},
      {"max(x,y)^2", "Binary(Pow, Call(Max, Var X, Var Y), Number 2)"},
      {"2*x*y", "Binary(Mul, Binary(Mul, Number 2, Var X), Var Y)"},
      {"x*(y-2)", "Binary(Mul, Var X, Binary(Sub, Var Y, Number 2))"},
      {"-(x+y)", "Unary(Neg, Binary(Add, Var X, Var Y))"},
      {"x - -y", "Binary(Sub, Var X, Unary(Neg, Var Y))"},
      {"1e-3*x", "Binary(Mul, Number 0.001, Var X)"},
      {"exp(0.5*x+y)*(x^2+1)",
       "Binary(Mul, Unary(Exp, Binary(Add, Binary(Mul, Number 0.5, Var X), Var Y)), "
       "Binary(Add, Binary(Pow, Var X, Number 2), Number 1))"},
  };
  return cases;
}

inline const std::vector<MalformedCase>& malformed_corpus() {
  static const std::vector<MalformedCase> cases = {
      {"", 0, 0},
      {"x*(y", 4, 4},
      {"x+", 2, 2},
      {"x y", 2, 3},
      {"2x", 1, 2},
      {"x^y", 2, 3},
      {"x^(y)", 3, 4},
      {"foo(x)", 0, 3},
      {"exp x", 4, 5},
      {"max(x)", 5, 6},
      {"min(x,y", 7, 7},
      {"x $ y", 2, 3},
      {"x**y", 2, 3},
      {")", 0, 1},
      {"abs()", 4, 5},
      {"x+*y", 2, 3},
      {"max(x,,y)", 6, 7},
      {"1e999", 0, 5},
      {"x + .", 4, 5},
      {"(x+y))", 5, 6},
  };
  return cases;
}

}  // namespace hhb_test
