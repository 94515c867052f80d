#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "robinson/expr.hpp"

using namespace robinson;

namespace {
const std::vector<std::string> kCoords = {"x", "y"};
}

TEST_CASE("precedence and literals") {
  Point p = {0.0, 0.0};
  CHECK(parseExpr("1+2*3^2", kCoords)->evalValue(p) == Complex(19.0));
  CHECK(parseExpr("(1+2)*3", kCoords)->evalValue(p) == Complex(9.0));
  CHECK(parseExpr("-2^2", kCoords)->evalValue(p) == Complex(-4.0));
  CHECK(parseExpr("1.5e-2", kCoords)->evalValue(p) == Complex(0.015));
  CHECK(parseExpr("i*i", kCoords)->evalValue(p) == Complex(-1.0));
  CHECK(std::abs(parseExpr("exp(log(pi))", kCoords)->evalValue(p) -
                 Complex(3.14159265358979323846)) < 1e-15);
}

TEST_CASE("coordinates and functions evaluate as jets") {
  Point p = {0.4, -0.2};
  ExprPtr e = parseExpr("exp(x*y)/(2+x) + sqrt(4+y)", kCoords);
  Jet j = e->eval(p, 3);
  double x = p[0], y = p[1];
  double want = std::exp(x * y) / (2 + x) + std::sqrt(4 + y);
  CHECK(std::abs(j.value() - Complex(want)) < 1e-15);
  // d/dx of the same expression
  double wx = std::exp(x * y) * (y * (2 + x) - 1) / ((2 + x) * (2 + x));
  CHECK(std::abs(j.partial({1, 0}) - Complex(wx)) < 1e-13);
}

TEST_CASE("symbolic derivative agrees with jet derivative") {
  Point p = {0.3, 0.7};
  ExprPtr e = parseExpr("log(2+x*y) * sqrt(1+x^2) + exp(y)/x - x^-2", kCoords);
  for (int ax = 0; ax < 2; ++ax) {
    Jet sym = e->diff(ax)->eval(p, 2);
    Jet num = e->eval(p, 3).derivative(ax);
    CHECK((sym - num).maxAbs() < 1e-11);
  }
}

TEST_CASE("conjugation flips i on a real chart") {
  Point p = {0.2, -0.5};
  ExprPtr e = parseExpr("(x+i*y)^3 * exp(i*x) / (2+i)", kCoords);
  Complex v = e->evalValue(p);
  CHECK(std::abs(e->conjugate()->evalValue(p) - std::conj(v)) < 1e-15);
  Jet j = e->eval(p, 2);
  Jet jc = e->conjugate()->eval(p, 2);
  CHECK((jc - j.conj()).maxAbs() < 1e-13);
}

TEST_CASE("toString round-trips through the parser") {
  Point p = {0.9, 0.1};
  ExprPtr e = parseExpr("exp((1/3)*x) - i*sqrt(2+y)*x^4 + 0.12345678901234567",
                        kCoords);
  ExprPtr back = parseExpr(e->toString(kCoords), kCoords);
  CHECK(back->evalValue(p) == e->evalValue(p));
  CHECK((back->eval(p, 3) - e->eval(p, 3)).maxAbs() == 0.0);
}

TEST_CASE("parse failures throw") {
  CHECK_THROWS_AS(parseExpr("x+", kCoords), ParseError);
  CHECK_THROWS_AS(parseExpr("z", kCoords), ParseError);
  CHECK_THROWS_AS(parseExpr("exp x", kCoords), ParseError);
  CHECK_THROWS_AS(parseExpr("x^y", kCoords), ParseError);
  CHECK_THROWS_AS(parseExpr("(x", kCoords), ParseError);
  CHECK_THROWS_AS(parseExpr("x)", kCoords), ParseError);
}
