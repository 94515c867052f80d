#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "robinson/catalog.hpp"
#include "robinson/connection.hpp"

using namespace robinson;

namespace {

// a reproducible valued 2-form with nonconstant coefficients
FrameTensor randomTwoForm(const Frame& F, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  FrameTensor phi(F.point, F.n, 2, true, F.order);
  for (int a = 0; a < F.n; ++a)
    for (int b = a + 1; b < F.n; ++b)
      for (int c = 0; c < F.n; ++c) {
        Jet val = Jet::constant(F.point, Complex(uni(rng), uni(rng)), F.order);
        for (int mu = 0; mu < F.n; ++mu)
          val += Jet::seed(F.point, mu, F.order) * Complex(uni(rng), uni(rng));
        phi.at({a, b, c}) = val;
        phi.at({b, a, c}) = -val;
      }
  return phi;
}

}  // namespace

TEST_CASE("flat model: torsion and coefficients vanish") {
  ManifoldSpec spec = getCatalog("flat4");
  for (const Point& p : samplePoints(spec, 3, 17)) {
    Connection C = buildConnection(spec, p, 3);
    CHECK(C.T.maxAbs() < 1e-13);
    CHECK(C.gamma.maxAbs() < 1e-13);
    CHECK(C.witt_residual < 1e-13);
  }
}

TEST_CASE("torsion is antisymmetric") {
  for (const std::string& name : catalogNames()) {
    ManifoldSpec spec = getCatalog(name);
    Point p = samplePoints(spec, 1, 23)[0];
    Connection C = buildConnection(spec, p, 3);
    double res = 0;
    for (int a = 0; a < C.F.n; ++a)
      for (int b = 0; b < C.F.n; ++b)
        for (int c = 0; c < C.F.n; ++c)
          res = std::max(res, (C.T.at({a, b, c}) + C.T.at({b, a, c})).maxAbs());
    CHECK(res < 1e-10);
  }
}

TEST_CASE("Heisenberg torsion: T(Z,Zbar) = i nu*") {
  ManifoldSpec spec = getCatalog("heis_fefferman", {{"m", "1"}});
  Point p = {0.3, 0.1, 0.5, -0.2};
  Connection C = buildConnection(spec, p, 3);
  for (int c = 0; c < 4; ++c) {
    Complex want = (c == 1) ? Complex(0.0, 1.0) : Complex(0.0);
    CHECK((C.T.at({2, 3, c}) - Jet::constant(p, want, 2)).maxAbs() < 1e-12);
  }
}

TEST_CASE("general and simplified torsion agree on twisted structures") {
  for (const std::string& name : {std::string("heis_fefferman"),
                                  std::string("warped_heis")}) {
    ManifoldSpec spec = getCatalog(name, {{"m", "2"}});
    for (const Point& p : samplePoints(spec, 3, 31)) {
      Connection Cg = buildConnection(spec, p, 3, TorsionMode::General);
      Connection Cf = buildConnection(spec, p, 3, TorsionMode::Fefferman);
      double res = 0;
      for (std::size_t k = 0; k < Cg.T.comp.size(); ++k)
        res = std::max(res, subT(Cg.T.comp[k], Cf.T.comp[k]).maxAbs());
      CHECK(res < 1e-9);
    }
  }
}

TEST_CASE("simplified mode rejected off the twisted family") {
  ManifoldSpec spec = getCatalog("flat4");
  Point p = {0.1, 0.1, 0.1, 0.1};
  CHECK_THROWS_AS(buildConnection(spec, p, 3, TorsionMode::Fefferman), ModeMismatch);
}

TEST_CASE("coefficients reproduce the prescribed torsion and kill the metric") {
  for (const std::string& name : catalogNames()) {
    ManifoldSpec spec = getCatalog(name);
    for (const Point& p : samplePoints(spec, 4, 41)) {
      Connection C = buildConnection(spec, p, 3);
      CHECK(torsionReconstructionResidual(C) < 1e-10);
      CHECK(metricCompatibilityResidual(C) < 1e-11);
      CHECK(C.witt_residual < 1e-10);
    }
  }
}

TEST_CASE("covariant derivative of the frame Kaehler form vanishes") {
  ManifoldSpec spec = getCatalog("heis_fefferman", {{"m", "2"}});
  Point p = samplePoints(spec, 1, 3)[0];
  Connection C = buildConnection(spec, p, 3);
  const int n = C.F.n, m = C.F.m;
  FrameTensor om(p, n, 2, false, 2);
  for (int i = 0; i < m; ++i) {
    om.at({2 + i, 2 + m + i}) = Jet::constant(p, Complex(0.0, 1.0), 2);
    om.at({2 + m + i, 2 + i}) = Jet::constant(p, Complex(0.0, -1.0), 2);
  }
  CHECK(covariantDerivative(C, om).maxAbs() < 1e-11);
}

TEST_CASE("covariant derivative of the frame metric vanishes") {
  ManifoldSpec spec = getCatalog("warped_heis");
  Point p = samplePoints(spec, 1, 5)[0];
  Connection C = buildConnection(spec, p, 3);
  const int n = C.F.n;
  FrameTensor gf(p, n, 2, false, 3);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) gf.at({a, b}) = C.F.pairG(C.F.e[a], C.F.e[b]);
  CHECK(covariantDerivative(C, gf).maxAbs() < 1e-11);
}

TEST_CASE("both exterior covariant derivative expansions agree") {
  for (const std::string& name : {std::string("heis_fefferman"),
                                  std::string("bundle_general")}) {
    ManifoldSpec spec = getCatalog(name);
    Point p = samplePoints(spec, 1, 7)[0];
    Connection C = buildConnection(spec, p, 3);
    FrameTensor phi = randomTwoForm(C.F, 99);
    FrameTensor d1 = exteriorDerivativeViaNabla(C, phi);
    FrameTensor d2 = exteriorDerivativeViaBrackets(C, phi);
    double res = 0;
    for (std::size_t k = 0; k < d1.comp.size(); ++k)
      res = std::max(res, subT(d1.comp[k], d2.comp[k]).maxAbs());
    CHECK(res < 1e-10);
  }
}

TEST_CASE("contorsion values and defining symmetry") {
  ManifoldSpec spec = getCatalog("heis_fefferman", {{"m", "1"}});
  Point p = {0.3, 0.1, 0.5, -0.2};
  Connection C = buildConnection(spec, p, 3);
  // K(nu, Z, Zbar) = -dsigma*(Z,Zbar)/2 = -i/2 here
  CHECK((contorsion(C, 0, 2, 3) - Jet::constant(p, Complex(0.0, -0.5), 2)).maxAbs() <
        1e-12);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        // antisymmetric in the last two slots by construction
        Jet lhs = contorsion(C, a, b, c) + contorsion(C, a, c, b);
        CHECK(lhs.maxAbs() < 1e-12);
      }
}

TEST_CASE("real-form torsion assembly matches the complex torsion") {
  ManifoldSpec flat = getCatalog("flat4");
  Point p0 = {0.1, 0.2, 0.3, 0.4};
  Connection C0 = buildConnection(flat, p0, 3);
  RealTorsionReport r0 = realTorsionPieces(C0);
  CHECK(r0.nj_max < 1e-13);
  CHECK(r0.dc_omega_max < 1e-13);
  CHECK(r0.tu_max < 1e-13);
  CHECK(r0.residual < 1e-12);

  for (const std::string& name : {std::string("heis_fefferman"),
                                  std::string("warped_heis")}) {
    ManifoldSpec spec = getCatalog(name, {{"m", "2"}});
    Point p = samplePoints(spec, 1, 19)[0];
    Connection C = buildConnection(spec, p, 3);
    RealTorsionReport r = realTorsionPieces(C);
    CHECK(r.residual < 1e-10);
    if (name == "heis_fefferman") {
      CHECK(r.nj_max < 1e-12);       // integrable structure
      CHECK(r.dc_omega_max < 1e-12); // closed Kaehler form
      CHECK(r.tu_max < 1e-12);       // no screen shear
    }
  }
}
