#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "robinson/catalog.hpp"
#include "robinson/frame.hpp"

using namespace robinson;

namespace {

double maxAbs(const JVec& v) {
  double m = 0;
  for (const auto& j : v) m = std::max(m, j.maxAbs());
  return m;
}

}  // namespace

TEST_CASE("flat frame: Witt pairing, coframe duality, projections") {
  ManifoldSpec spec = getCatalog("flat4");
  Point p = {0.2, -0.3, 0.5, 0.1};
  Frame F = evaluateFrame(spec, p, 3);
  CHECK(F.gram_residual < 1e-13);
  for (int a = 0; a < F.n; ++a)
    for (int b = 0; b < F.n; ++b) {
      Complex want(a == b ? 1.0 : 0.0);
      CHECK(std::abs(F.coeff(a, F.e[b]).value() - want) < 1e-13);
    }
  // pairing labels: g(e_a, e_pair(a)) = 1
  CHECK(F.pair(0) == 1);
  CHECK(F.pair(2) == 3);
  CHECK(std::abs(F.pairG(F.e[2], F.e[3]).value() - Complex(1.0)) < 1e-13);
  // X = nu* + 2 Z_1 has sigma = 0, sigma* = 1
  JVec X = vsum(F.e[1], scaled(Jet::constant(p, Complex(2.0), 3), F.e[2]));
  CHECK(std::abs(F.sigma(X).value()) < 1e-13);
  CHECK(std::abs(F.sigmaStar(X).value() - Complex(1.0)) < 1e-13);
  Projection pr = project(F, X);
  CHECK(maxAbs(vdiff(pr.part10, scaled(Jet::constant(p, Complex(2.0), 3), F.e[2]))) <
        1e-13);
  CHECK(maxAbs(pr.part01) < 1e-13);
}

TEST_CASE("Heisenberg frame is orthonormal for the Witt pattern") {
  ManifoldSpec spec = getCatalog("heis_fefferman", {{"m", "1"}});
  Point p = {0.3, 0.1, 0.5, -0.2};
  Frame F = evaluateFrame(spec, p, 3);
  CHECK(F.gram_residual < 1e-12);
}

TEST_CASE("null completion recovers a dropped pairing field") {
  for (const char* name : {"flat4", "heis_fefferman"}) {
    ManifoldSpec spec = getCatalog(name);
    ManifoldSpec stripped = spec;
    stripped.nu_star.reset();
    for (const Point& p : samplePoints(spec, 4, 11)) {
      JVec v = completePairing(stripped, p, 3);
      Frame F = evaluateFrame(spec, p, 3);
      CHECK(maxAbs(vdiff(v, F.e[1])) < 1e-10);
    }
  }
}

TEST_CASE("completion output always passes the Gram validation") {
  ManifoldSpec spec = getCatalog("warped_heis", {{"m", "2"}});
  for (const Point& p : samplePoints(spec, 4, 5)) {
    Frame F = evaluateFrame(spec, p, 3);
    CHECK(F.gram_residual < 1e-10);
  }
}

TEST_CASE("a mis-scaled screen field is rejected") {
  ManifoldSpec spec = getCatalog("heis_fefferman");
  ManifoldSpec bad = spec;
  ExprPtr two = Expr::constant(Complex(2.0));
  for (auto& comp : bad.screen[0]) {
    if (comp.expr) comp = Field::fromExpr(two * comp.expr);
  }
  Point p = {0.3, 0.1, 0.5, -0.2};
  CHECK_THROWS_AS(evaluateFrame(bad, p, 3), GramViolation);
}

TEST_CASE("points outside the chart are rejected") {
  ManifoldSpec spec = getCatalog("flat4");
  CHECK_THROWS_AS(evaluateFrame(spec, {5.0, 0.0, 0.0, 0.0}, 3), OutOfChart);
}

TEST_CASE("classification of the flat model") {
  ManifoldSpec spec = getCatalog("flat4");
  ClassifyResult r = classify(spec, samplePoints(spec, 6, 3));
  CHECK(r.geodetic);
  CHECK(r.strongly_geodetic);
  CHECK(r.partially_integrable);
  CHECK(r.integrable);
  CHECK(r.twistfree);
  CHECK_FALSE(r.maximally_twisted);
  CHECK_FALSE(r.fefferman_robinson);
}

TEST_CASE("classification of the Heisenberg model") {
  for (int m : {1, 2}) {
    ManifoldSpec spec = getCatalog("heis_fefferman", {{"m", std::to_string(m)}});
    ClassifyResult r = classify(spec, samplePoints(spec, 6, 3));
    CHECK(r.strongly_geodetic);
    CHECK(r.integrable);
    CHECK(r.maximally_twisted);
    CHECK(r.fefferman_robinson);
    CHECK_FALSE(r.twistfree);
    CHECK(r.r_prop_consequences < 1e-9);
  }
}

TEST_CASE("flipped complex structure on one screen direction breaks the pattern") {
  ManifoldSpec spec = getCatalog("heis_fefferman", {{"m", "2"}});
  ManifoldSpec bad = spec;
  // swap Z_2 with its conjugate: the pairing Gram survives but the twist
  // two-form is no longer positive against the swapped splitting
  for (auto& comp : bad.screen[1]) {
    if (comp.expr) comp = Field::fromExpr(comp.expr->conjugate());
  }
  ClassifyResult r = classify(bad, samplePoints(bad, 6, 3));
  CHECK_FALSE(r.fefferman_robinson);
}
