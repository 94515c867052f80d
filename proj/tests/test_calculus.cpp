#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "robinson/calculus.hpp"
#include "robinson/expr.hpp"

using namespace robinson;

namespace {

const std::vector<std::string> kCoords = {"u", "v", "x", "y"};

JVec fieldAt(const std::vector<std::string>& comps, const Point& p, int order) {
  JVec out;
  for (const auto& c : comps) out.push_back(parseExpr(c, kCoords)->eval(p, order));
  return out;
}

double maxAbs(const JVec& v) {
  double m = 0;
  for (const auto& j : v) m = std::max(m, j.maxAbs());
  return m;
}

}  // namespace

TEST_CASE("brackets of coordinate fields vanish; rotation bracket") {
  Point p = {0.1, 0.2, 0.3, 0.4};
  JVec ex = fieldAt({"0", "0", "1", "0"}, p, 3);
  JVec ey = fieldAt({"0", "0", "0", "1"}, p, 3);
  CHECK(maxAbs(bracket(ex, ey)) == 0.0);
  // [x d/dy, d/dx] = -d/dy
  JVec X = fieldAt({"0", "0", "0", "x"}, p, 3);
  JVec want = fieldAt({"0", "0", "0", "-1"}, p, 2);
  CHECK(maxAbs(vdiff(bracket(X, ex), want)) < 1e-14);
}

TEST_CASE("flat and metric pairing are adjoint") {
  Point p = {0.1, -0.2, 0.5, 0.3};
  std::vector<Jet> g;
  const char* entries[16] = {"0", "1", "0",     "0",  "1", "0", "0", "0",
                             "0", "0", "2+x*x", "0",  "0", "0", "0", "2+x*x"};
  for (int k = 0; k < 16; ++k) g.push_back(parseExpr(entries[k], kCoords)->eval(p, 3));
  JVec X = fieldAt({"u", "1", "y", "exp(x)"}, p, 3);
  JVec Y = fieldAt({"0", "v", "x*y", "1"}, p, 3);
  CHECK((pairForm(flat(g, X), Y) - metricPair(g, X, Y)).maxAbs() < 1e-12);
  CHECK((metricPair(g, X, Y) - metricPair(g, Y, X)).maxAbs() < 1e-12);
}

TEST_CASE("exterior derivative of a 1-form: field vs coordinate recipe") {
  Point p = {0.4, 0.1, -0.3, 0.2};
  JVec alpha = fieldAt({"x*y", "0", "u*u", "exp(x)"}, p, 3);
  JVec X = fieldAt({"1", "y", "0", "u"}, p, 3);
  JVec Y = fieldAt({"x", "0", "1", "v"}, p, 3);
  Jet lhs = dOneForm(alpha, X, Y);
  std::vector<Jet> da = dOneFormCoord(alpha);
  Jet rhs = evalTwoForm(da, vtrunc(X, 2), vtrunc(Y, 2));
  CHECK((lhs - rhs.truncated(lhs.order())).maxAbs() < 1e-12);
}

TEST_CASE("d squared is zero") {
  Point p = {0.4, 0.1, -0.3, 0.2};
  JVec alpha = fieldAt({"x*y*v", "u", "u*u+y", "exp(x)*v"}, p, 4);
  std::vector<Jet> da = dOneFormCoord(alpha);
  std::vector<Jet> dda = dTwoFormCoord(da);
  double m = 0;
  for (const auto& j : dda) m = std::max(m, j.maxAbs());
  CHECK(m < 1e-12);
}

TEST_CASE("Lie derivative of the metric vanishes along a Killing field") {
  Point p = {0.4, 0.1, -0.3, 0.2};
  std::vector<Jet> g;
  const char* entries[16] = {"0", "1", "0", "0", "1", "0", "0", "0",
                             "0", "0", "2", "0", "0", "0", "0", "2"};
  for (int k = 0; k < 16; ++k) g.push_back(parseExpr(entries[k], kCoords)->eval(p, 3));
  JVec K = fieldAt({"0", "0", "-y", "x"}, p, 3);  // rotation in the x-y plane
  JVec Y = fieldAt({"1", "u", "y", "x"}, p, 3);
  JVec Z = fieldAt({"v", "0", "1", "exp(u)"}, p, 3);
  CHECK(lieMetric(g, K, Y, Z).maxAbs() < 1e-12);
  // and it is nonzero for a non-Killing field
  JVec X = fieldAt({"0", "0", "x", "0"}, p, 3);
  CHECK(lieMetric(g, X, Y, Z).maxAbs() > 0.1);
}

TEST_CASE("Cartan formula for the Lie derivative of a 1-form") {
  Point p = {0.4, 0.1, -0.3, 0.2};
  JVec alpha = fieldAt({"x*y", "v", "u*u", "exp(x)"}, p, 3);
  JVec X = fieldAt({"1", "y", "x", "u"}, p, 3);
  JVec Y = fieldAt({"x", "0", "1", "v"}, p, 3);
  // (L_X alpha)(Y) = d alpha(X,Y) + Y(alpha(X))
  Jet lhs = pairForm(lieOneForm(X, alpha), Y);
  Jet rhs = dOneForm(alpha, X, Y) + dirDeriv(Y, pairForm(alpha, X));
  CHECK((lhs - rhs).maxAbs() < 1e-12);
}

TEST_CASE("jet-valued linear solve reproduces the right-hand side") {
  Point p = {0.4, 0.1, -0.3, 0.2};
  auto E = [&](const std::string& s) { return parseExpr(s, kCoords)->eval(p, 3); };
  std::vector<std::vector<Jet>> M = {
      {E("2+x"), E("i*y"), E("1")},
      {E("u"), E("3"), E("exp(x)")},
      {E("0"), E("1+i"), E("v-5")},
  };
  std::vector<Jet> rhs = {E("1+x*y"), E("i"), E("u*v")};
  std::vector<Jet> x = solveLinear(M, rhs);
  for (int r = 0; r < 3; ++r) {
    Jet acc = mulT(M[r][0], x[0]);
    for (int c = 1; c < 3; ++c) acc += mulT(M[r][c], x[c]);
    CHECK((acc - rhs[r]).maxAbs() < 1e-11);
  }
  // rank-deficient system is rejected
  std::vector<std::vector<Jet>> S = {{E("1"), E("2")}, {E("2"), E("4")}};
  std::vector<Jet> r2 = {E("1"), E("1")};
  CHECK_THROWS_AS(solveLinear(S, r2), SingularSystem);
}
