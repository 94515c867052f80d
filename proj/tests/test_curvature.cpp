#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "robinson/catalog.hpp"
#include "robinson/curvature.hpp"

using namespace robinson;

namespace {

// five-point central difference of a scalar-valued function of one coordinate
template <typename Fn>
Complex fd5(Fn f, double h) {
  return (-f(2 * h) + 8.0 * f(h) - 8.0 * f(-h) + f(-2 * h)) / (12.0 * h);
}

// lowered curvature component from finite differences of the connection
// coefficients: independent of the jet propagation of gamma
Complex riemannOracle(const ManifoldSpec& spec, const Point& p, int a, int b,
                      int c, int dlow) {
  const int n = spec.n();
  const int d = Frame::pairLabel(spec.m, dlow);  // value index of g(R(.,.)., e_dlow)
  const double h = 2e-3;
  Connection C0 = buildConnection(spec, p, 2);
  auto gammaAt = [&](const Point& q, int x, int y, int z) {
    return buildConnection(spec, q, 2).gamma.at({x, y, z}).value();
  };
  auto dGamma = [&](int mu, int x, int y, int z) {
    return fd5(
        [&](double t) {
          Point q = p;
          q[mu] += t;
          return gammaAt(q, x, y, z);
        },
        h);
  };
  auto frameDeriv = [&](int lbl, int x, int y, int z) {
    Complex acc(0.0);
    for (int mu = 0; mu < n; ++mu)
      acc += C0.F.e[lbl][mu].value() * dGamma(mu, x, y, z);
    return acc;
  };
  Complex acc = frameDeriv(a, b, c, d) - frameDeriv(b, a, c, d);
  for (int e = 0; e < n; ++e) {
    acc += C0.gamma.at({b, c, e}).value() * C0.gamma.at({a, e, d}).value();
    acc -= C0.gamma.at({a, c, e}).value() * C0.gamma.at({b, e, d}).value();
    acc -= C0.F.coeff(e, C0.brackets[a][b]).value() *
           C0.gamma.at({e, c, d}).value();
  }
  return acc;
}

FrameTensor randomPairForm(const Point& p, int m, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const int m2 = 2 * m;
  FrameTensor Q(p, m2, 4, false, 1);
  for (int a = 0; a < m2; ++a)
    for (int b = a + 1; b < m2; ++b)
      for (int c = 0; c < m2; ++c)
        for (int d = c + 1; d < m2; ++d) {
          Jet v = Jet::constant(p, Complex(uni(rng), uni(rng)), 1);
          for (std::size_t mu = 0; mu < p.size(); ++mu)
            v += Jet::seed(p, static_cast<int>(mu), 1) * Complex(uni(rng), uni(rng));
          Q.at({a, b, c, d}) = v;
          Q.at({b, a, c, d}) = -v;
          Q.at({a, b, d, c}) = -v;
          Q.at({b, a, d, c}) = v;
        }
  return Q;
}

}  // namespace

TEST_CASE("flat model: curvature and whole hierarchy vanish") {
  ManifoldSpec spec = getCatalog("flat4");
  for (const Point& p : samplePoints(spec, 3, 11)) {
    Curvature R = buildCurvature(buildConnection(spec, p, 3));
    CHECK(R.rm.maxAbs() < 1e-12);
    Hierarchy H = buildHierarchy(R);
    CHECK(H.Rc.maxAbs() < 1e-12);
    CHECK(H.scalar.maxAbs() < 1e-12);
    CHECK(H.cm.maxAbs() < 1e-12);
  }
}

TEST_CASE("curvature is antisymmetric in the first pair") {
  for (const std::string& name : catalogNames()) {
    ManifoldSpec spec = getCatalog(name);
    Point p = samplePoints(spec, 1, 13)[0];
    Curvature R = buildCurvature(buildConnection(spec, p, 3));
    double res = 0;
    const int n = spec.n();
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d)
            res = std::max(res,
                           (R.rm.at({a, b, c, d}) + R.rm.at({b, a, c, d})).maxAbs());
    CHECK(res < 1e-10);
  }
}

TEST_CASE("Heisenberg model has flat screen curvature") {
  ManifoldSpec spec = getCatalog("heis_fefferman", {{"m", "1"}});
  Point p = {0.3, 0.1, 0.5, -0.2};
  Curvature R = buildCurvature(buildConnection(spec, p, 3));
  CHECK(std::abs(R.rm.at({2, 3, 2, 3}).value()) < 1e-12);
  Hierarchy H = buildHierarchy(R);
  for (const Jet& r : H.ric) CHECK(r.maxAbs() < 1e-11);
  CHECK(H.scalar.maxAbs() < 1e-11);
  for (const Jet& a : H.a_nustar) CHECK(a.maxAbs() < 1e-11);
}

TEST_CASE("finite-difference oracle confirms the curvature jets") {
  ManifoldSpec spec = getCatalog("warped_heis", {{"m", "1"}});
  Point p = samplePoints(spec, 1, 29)[0];
  Curvature R = buildCurvature(buildConnection(spec, p, 3));
  // the all-screen component: nonzero once the warp is on
  Complex jet = R.rm.at({2, 3, 2, 3}).value();
  Complex fd = riemannOracle(spec, p, 2, 3, 2, 3);
  CHECK(std::abs(jet) > 1e-6);
  CHECK(std::abs(jet - fd) <= 1e-6 * std::max(1.0, std::abs(jet)));
  // a null-row component as well
  Complex jet2 = R.rm.at({0, 2, 2, 3}).value();
  Complex fd2 = riemannOracle(spec, p, 0, 2, 2, 3);
  CHECK(std::abs(jet2 - fd2) <= 1e-6 * std::max(1.0, std::abs(jet2)));
}

TEST_CASE("projection produces a Kaehler-like tensor and fixes its image") {
  Point p = {0.2, 0.4, 0.1, 0.3, 0.5, 0.7};  // any 6d chart point
  const int m = 2;
  FrameTensor Q = randomPairForm(p, m, 77);
  FrameTensor K = kahlerLikeProjection(Q, m);
  CHECK(bianchiSymmetrization(K) < 1e-12);
  double pairsym = 0, plusfix = 0, idem = 0, pure = 0;
  FrameTensor K2 = kahlerLikeProjection(K, m);
  for (int a = 0; a < 2 * m; ++a)
    for (int b = 0; b < 2 * m; ++b)
      for (int c = 0; c < 2 * m; ++c)
        for (int d = 0; d < 2 * m; ++d) {
          pairsym = std::max(
              pairsym, (K.at({a, b, c, d}) - K.at({c, d, a, b})).maxAbs());
          idem = std::max(idem,
                          (K.at({a, b, c, d}) - K2.at({a, b, c, d})).maxAbs());
          bool mixed1 = (a < m) != (b < m);
          bool mixed2 = (c < m) != (d < m);
          if (!mixed1 || !mixed2)
            pure = std::max(pure, K.at({a, b, c, d}).maxAbs());
        }
  CHECK(pairsym < 1e-12);
  CHECK(idem < 1e-12);
  CHECK(pure < 1e-13);
  (void)plusfix;

  // non-antisymmetric input is rejected
  FrameTensor bad(p, 2 * m, 4, false, 1);
  bad.at({0, 0, 1, 2}) = Jet::constant(p, Complex(1.0), 1);
  CHECK_THROWS_AS(kahlerLikeProjection(bad, m), SymmetryViolation);
}

TEST_CASE("four-term average agrees with the ten-term projection") {
  for (const std::string& name : catalogNames()) {
    ManifoldSpec spec = getCatalog(name);
    for (const Point& p : samplePoints(spec, 3, 43)) {
      Curvature R = buildCurvature(buildConnection(spec, p, 3));
      FrameTensor simple = chernCurvatureSimple(R);
      FrameTensor proj = kahlerLikeProjection(screenRestriction(R), spec.m);
      double res = 0;
      for (std::size_t k = 0; k < simple.comp.size(); ++k)
        res = std::max(res, subT(simple.comp[k], proj.comp[k]).maxAbs());
      CHECK(res < 1e-10);
    }
  }
}

TEST_CASE("hierarchy trace relations and reality") {
  ManifoldSpec spec = getCatalog("warped_heis", {{"m", "2"}});
  Point p = samplePoints(spec, 1, 53)[0];
  const int m = spec.m;
  Curvature R = buildCurvature(buildConnection(spec, p, 3));
  Hierarchy H = buildHierarchy(R);
  CHECK(H.ricci_forms_residual < 1e-11);
  CHECK(H.schouten_forms_residual < 1e-12);
  // scalar is the adapted trace
  Jet tr = Jet::constant(p, Complex(0.0), H.scalar.order());
  for (int i = 0; i < m; ++i) tr += H.ric[i * m + i];
  CHECK((tr - H.scalar).maxAbs() == 0.0);
  // the Moser-type tensor is trace-free and pair symmetric
  double trace = 0, pairsym = 0, reality = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Jet t = Jet::constant(p, Complex(0.0), H.scalar.order());
      for (int k = 0; k < m; ++k) t += H.cm.at({i, m + k, k, m + j});
      trace = std::max(trace, t.maxAbs());
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          pairsym = std::max(pairsym, (H.cm.at({i, m + j, k, m + l}) -
                                       H.cm.at({k, m + l, i, m + j}))
                                          .maxAbs());
          Complex lhs = std::conj(H.Rc.at({i, m + j, k, m + l}).value());
          Complex rhs = H.Rc.at({j, m + i, l, m + k}).value();
          reality = std::max(reality, std::abs(lhs - rhs));
        }
    }
  CHECK(trace < 1e-10);
  CHECK(pairsym < 1e-10);
  CHECK(reality < 1e-10);
}

TEST_CASE("Einstein-type predicate on the catalog") {
  auto pts = [](const ManifoldSpec& s) { return samplePoints(s, 3, 61); };
  ManifoldSpec flat = getCatalog("flat4");
  EinsteinCheck ef = einsteinCheck(flat, pts(flat), 3, 1e-8);
  CHECK(ef.is_einstein);
  for (Complex f : ef.f_samples) CHECK(std::abs(f) < 1e-10);

  ManifoldSpec heis = getCatalog("heis_fefferman", {{"m", "2"}});
  EinsteinCheck eh = einsteinCheck(heis, pts(heis), 3, 1e-8);
  CHECK(eh.is_einstein);
  for (Complex f : eh.f_samples) CHECK(std::abs(f) < 1e-10);
  CHECK(eh.f_formula_residual < 1e-10);
  CHECK(eh.schouten_formula_residual < 1e-10);
}
