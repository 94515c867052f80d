#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>

#include "robinson/jet.hpp"

using namespace robinson;

namespace {

using Fn = std::function<Complex(const Point&)>;

// nested 5-point central differences; accurate to ~1e-8 for |alpha| <= 3
Complex finiteDiff(const Fn& f, Point p, std::vector<int> alpha, double h = 2e-3) {
  for (std::size_t ax = 0; ax < alpha.size(); ++ax) {
    if (alpha[ax] == 0) continue;
    alpha[ax] -= 1;
    auto shift = [&](double s) {
      Point q = p;
      q[ax] += s;
      return finiteDiff(f, q, alpha, h);
    };
    return (-shift(2 * h) + 8.0 * shift(h) - 8.0 * shift(-h) + shift(-2 * h)) /
           (12.0 * h);
  }
  return f(p);
}

double relErr(Complex got, Complex want) {
  double scale = std::max(1.0, std::abs(want));
  return std::abs(got - want) / scale;
}

}  // namespace

TEST_CASE("seed and constant coefficients") {
  Point p = {0.3, -0.7};
  Jet x = Jet::seed(p, 0, 3);
  Jet c = Jet::constant(p, Complex(2.0, 1.0), 3);
  CHECK(x.value() == Complex(0.3, 0.0));
  CHECK(x.partial({1, 0}) == Complex(1.0, 0.0));
  CHECK(x.partial({0, 1}) == Complex(0.0, 0.0));
  CHECK(x.partial({2, 0}) == Complex(0.0, 0.0));
  CHECK(c.value() == Complex(2.0, 1.0));
  CHECK(c.partial({1, 0}) == Complex(0.0, 0.0));
}

TEST_CASE("ring identities hold coefficientwise") {
  Point p = {0.4, 0.2};
  Jet x = Jet::seed(p, 0, 4);
  Jet y = Jet::seed(p, 1, 4);
  Jet a = exp(x) + y * y;
  Jet b = x * y + Complex(1.5);
  Jet c = sqrt(Complex(2.0) + x);
  CHECK(((a + b) * c - (a * c + b * c)).maxAbs() < 1e-14);
  CHECK((a * b - b * a).maxAbs() < 1e-14);
  CHECK((a * (b * c) - (a * b) * c).maxAbs() < 1e-13);
}

TEST_CASE("analytic inverses round-trip") {
  Point p = {0.25, -0.1, 0.6};
  Jet x = Jet::seed(p, 0, 3);
  Jet y = Jet::seed(p, 1, 3);
  Jet z = Jet::seed(p, 2, 3);
  Jet a = Complex(1.2) + x * y + z;
  CHECK((log(exp(a)) - a).maxAbs() < 1e-12);
  CHECK((exp(log(a)) - a).maxAbs() < 1e-12);
  CHECK((sqrt(a) * sqrt(a) - a).maxAbs() < 1e-12);
  CHECK((inverse(a) * a - Jet::constant(p, Complex(1.0), 3)).maxAbs() < 1e-12);
  CHECK((pow_int(a, 3) - a * a * a).maxAbs() < 1e-12);
  CHECK((pow_int(a, -2) * a * a - Jet::constant(p, Complex(1.0), 3)).maxAbs() < 1e-12);
}

TEST_CASE("derivative shifts multi-indices") {
  Point p = {0.5, 0.3};
  Jet x = Jet::seed(p, 0, 4);
  Jet y = Jet::seed(p, 1, 4);
  Jet f = exp(x * y) + pow_int(y, 3);
  Jet fx = f.derivative(0);
  CHECK(fx.order() == 3);
  CHECK(relErr(fx.partial({0, 0}), f.partial({1, 0})) < 1e-14);
  CHECK(relErr(fx.partial({1, 1}), f.partial({2, 1})) < 1e-13);
  CHECK(relErr(fx.partial({0, 3}), f.partial({1, 3})) < 1e-13);
}

TEST_CASE("truncation keeps low-order coefficients") {
  Point p = {0.5, 0.3};
  Jet f = exp(Jet::seed(p, 0, 4) * Jet::seed(p, 1, 4));
  Jet t = f.truncated(2);
  CHECK(t.order() == 2);
  CHECK(t.partial({0, 0}) == f.partial({0, 0}));
  CHECK(t.partial({1, 1}) == f.partial({1, 1}));
  CHECK(t.partial({2, 0}) == f.partial({2, 0}));
}

TEST_CASE("all third-order partials match finite differences") {
  Point p = {0.2, -0.4, 0.7};
  const int order = 3;
  auto build = [order](const Point& q) {
    Jet x = Jet::seed(q, 0, order);
    Jet y = Jet::seed(q, 1, order);
    Jet z = Jet::seed(q, 2, order);
    return exp(x * y) / (Complex(2.0) + z) +
           sqrt(Complex(4.0) + x + y * z) * log(Complex(3.0) + x * z);
  };
  Fn scalar = [&](const Point& q) { return build(q).value(); };
  Jet f = build(p);
  const JetSpace& sp = f.space();
  for (int i = 0; i < sp.count; ++i) {
    Complex want = finiteDiff(scalar, p, sp.alpha[i]);
    CHECK(relErr(f.partial(sp.alpha[i]), want) < 1e-6);
  }
}

TEST_CASE("conjugation commutes with arithmetic on a real chart") {
  Point p = {0.3, 0.1};
  Jet x = Jet::seed(p, 0, 3);
  Jet y = Jet::seed(p, 1, 3);
  Jet f = (x + Complex(0.0, 1.0) * y) * exp(Complex(0.0, 2.0) * x);
  Jet g = Complex(1.5, -0.5) + y;
  CHECK(((f * g).conj() - f.conj() * g.conj()).maxAbs() < 1e-14);
  CHECK(((f + g).conj() - (f.conj() + g.conj())).maxAbs() < 1e-14);
  CHECK((f.conj().conj() - f).maxAbs() == 0.0);
}

TEST_CASE("strict compatibility and domain errors") {
  Point p = {0.1, 0.2};
  Point q = {0.1, 0.3};
  Jet a = Jet::seed(p, 0, 3);
  Jet b = Jet::seed(p, 0, 2);
  Jet c = Jet::seed(q, 0, 3);
  CHECK_THROWS_AS(a + b, OrderMismatch);
  CHECK_THROWS_AS(a * c, OrderMismatch);
  CHECK_THROWS_AS(a / Jet::constant(p, Complex(0.0), 3), DivisionByZeroJet);
  CHECK_THROWS_AS(log(Jet::constant(p, Complex(-1.0), 3)), BranchCut);
  CHECK_THROWS_AS(sqrt(Jet::constant(p, Complex(0.0), 3)), BranchCut);
  CHECK_THROWS_AS(a.partial({4, 0}), OrderExceeded);
  CHECK_THROWS_AS(a.truncated(5), OrderExceeded);
  CHECK_THROWS_AS(Jet::constant(p, Complex(1.0), 0).derivative(0), OrderExceeded);
}

TEST_CASE("mixed-order helpers truncate to the smaller order") {
  Point p = {0.4, 0.6};
  Jet a = exp(Jet::seed(p, 0, 3));
  Jet b = a.derivative(1) + Jet::seed(p, 1, 2);
  Jet prod = mulT(a, b);
  CHECK(prod.order() == 2);
  CHECK((prod - a.truncated(2) * b).maxAbs() == 0.0);
}
