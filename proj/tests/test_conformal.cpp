#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "robinson/catalog.hpp"
#include "robinson/conformal.hpp"

using namespace robinson;

namespace {

void checkTableBelow(const ResidualTable& tab, double tol) {
  for (const ResidualRow& r : tab.rows) {
    INFO(r.label << " residual " << r.residual << " scale " << r.scale);
    CHECK(r.residual <= tol * std::max(1.0, r.scale));
  }
}

}  // namespace

TEST_CASE("zero factor reproduces the base structure") {
  ManifoldSpec spec = getCatalog("warped_heis", {{"m", "1"}});
  ConformalFactor cf = ConformalFactor::zero(spec);
  ManifoldSpec rs = rescale(spec, cf);
  for (const Point& p : samplePoints(spec, 3, 17)) {
    Frame F = evaluateFrame(spec, p, 3);
    Frame Fl = evaluateFrame(rs, p, 3);
    double res = 0;
    for (int a = 0; a < F.n; ++a)
      for (int mu = 0; mu < F.n; ++mu)
        res = std::max(res, subT(F.e[a][mu], Fl.e[a][mu]).maxAbs());
    for (std::size_t k = 0; k < F.g.size(); ++k)
      res = std::max(res, subT(F.g[k], Fl.g[k]).maxAbs());
    CHECK(res < 1e-13);
  }
}

TEST_CASE("rescaled specs satisfy the Witt pairing on the catalog") {
  struct Case {
    std::string name;
    Params params;
    std::string lambda;
  };
  const std::vector<Case> cases = {
      {"flat4", {}, "(1/5)*(x+u)"},
      {"heis_fefferman", {{"m", "1"}}, "(1/5)*x1"},
      {"heis_fefferman", {{"m", "2"}}, "(1/10)*(x1*y2+u)"},
      {"warped_heis", {{"m", "2"}}, "(1/10)*(y1+x2)"},
      {"bundle_general", {{"m", "2"}}, "(1/10)*x1"},
  };
  for (const Case& c : cases) {
    ManifoldSpec spec = getCatalog(c.name, c.params);
    ConformalFactor cf = ConformalFactor::parse(c.lambda, spec);
    ManifoldSpec rs = rescale(spec, cf);
    for (const Point& p : samplePoints(spec, 3, 19)) {
      Frame Fl = evaluateFrame(rs, p, 3);
      CHECK(Fl.gram_residual < 1e-10);
    }
  }
}

TEST_CASE("factors varying along the null direction are rejected") {
  ManifoldSpec spec = getCatalog("heis_fefferman", {{"m", "1"}});
  std::vector<Point> pts = samplePoints(spec, 2, 23);
  ConformalFactor bad = ConformalFactor::parse("(1/5)*r", spec);
  CHECK_THROWS_AS(requireOptical(spec, bad, pts), NotInCInfinityNu);
  CHECK_THROWS_AS(checkRescaledStructure(spec, bad, pts, 3), NotInCInfinityNu);
  ConformalFactor imag = ConformalFactor::parse("i*x1", spec);
  CHECK_THROWS_AS(requireOptical(spec, imag, pts), NotInCInfinityNu);
  ConformalFactor good = ConformalFactor::parse("(1/5)*x1", spec);
  requireOptical(spec, good, pts);  // no throw
}

TEST_CASE("rescaled Kaehler form laws") {
  struct Case {
    std::string name;
    Params params;
    std::string lambda;
  };
  const std::vector<Case> cases = {
      {"heis_fefferman", {{"m", "2"}}, "(1/5)*x1"},
      {"warped_heis", {{"m", "2"}}, "(1/10)*(x1*y1+u)"},
      {"bundle_general", {{"m", "1"}}, "(1/10)*(x1+y1)"},
  };
  for (const Case& c : cases) {
    ManifoldSpec spec = getCatalog(c.name, c.params);
    ConformalFactor cf = ConformalFactor::parse(c.lambda, spec);
    ResidualTable tab =
        checkRescaledStructure(spec, cf, samplePoints(spec, 3, 29), 3);
    checkTableBelow(tab, 1e-9);
  }
}

TEST_CASE("covariant derivative transformation on geodetic structures") {
  struct Case {
    std::string name;
    Params params;
    std::string lambda;
  };
  const std::vector<Case> cases = {
      {"heis_fefferman", {{"m", "1"}}, "(1/5)*x1"},
      {"warped_heis", {{"m", "2"}}, "(1/10)*(y1+x2*y2)"},
  };
  for (const Case& c : cases) {
    ManifoldSpec spec = getCatalog(c.name, c.params);
    ConformalFactor cf = ConformalFactor::parse(c.lambda, spec);
    ResidualTable tab = checkConnectionLaw(spec, cf, samplePoints(spec, 3, 31), 3);
    checkTableBelow(tab, 1e-8);
  }
}

TEST_CASE("screen derivative transformation on strongly geodetic structures") {
  struct Case {
    std::string name;
    Params params;
    std::string lambda;
  };
  const std::vector<Case> cases = {
      {"heis_fefferman", {{"m", "2"}}, "(1/5)*y2"},
      {"warped_heis", {{"m", "1"}}, "(1/10)*(x1+y1)"},
  };
  for (const Case& c : cases) {
    ManifoldSpec spec = getCatalog(c.name, c.params);
    ConformalFactor cf = ConformalFactor::parse(c.lambda, spec);
    ResidualTable tab =
        checkScreenConnectionLaw(spec, cf, samplePoints(spec, 3, 37), 3);
    checkTableBelow(tab, 1e-8);
  }
}

TEST_CASE("curvature hierarchy transformation and conformal invariance") {
  struct Case {
    std::string name;
    Params params;
    std::string lambda;
  };
  const std::vector<Case> cases = {
      {"heis_fefferman", {{"m", "2"}}, "(1/5)*x1"},
      {"heis_fefferman", {{"m", "2"}}, "(1/10)*(x1*y2+u)"},
      {"heis_fefferman", {{"m", "2"}}, "(1/20)*(u+y1)"},
      {"warped_heis", {{"m", "2"}}, "(1/5)*x1"},
      {"warped_heis", {{"m", "2"}}, "(1/10)*(x2*y1+u)"},
      {"warped_heis", {{"m", "2"}}, "(1/20)*(u+y2)"},
  };
  for (const Case& c : cases) {
    ManifoldSpec spec = getCatalog(c.name, c.params);
    ConformalFactor cf = ConformalFactor::parse(c.lambda, spec);
    ResidualTable tab = checkCurvatureLaws(spec, cf, samplePoints(spec, 3, 41), 3);
    checkTableBelow(tab, 1e-8);
    // invariance row present for m >= 2
    CHECK(tab.row("trace-free tensor invariance").residual <=
          1e-8 * std::max(1.0, tab.row("trace-free tensor invariance").scale));
  }
}

TEST_CASE("deformation tensor transformation") {
  struct Case {
    std::string name;
    Params params;
    std::string lambda;
  };
  const std::vector<Case> cases = {
      {"heis_fefferman", {{"m", "1"}}, "(1/5)*x1"},
      {"warped_heis", {{"m", "2"}}, "(1/10)*(x1+y2)"},
  };
  for (const Case& c : cases) {
    ManifoldSpec spec = getCatalog(c.name, c.params);
    ConformalFactor cf = ConformalFactor::parse(c.lambda, spec);
    ResidualTable tab = checkDeformationLaw(spec, cf, samplePoints(spec, 3, 43), 3);
    checkTableBelow(tab, 1e-9);
  }
}

TEST_CASE("contorsion identities under rescaling") {
  struct Case {
    std::string name;
    Params params;
    std::string lambda;
  };
  const std::vector<Case> cases = {
      {"flat4", {}, "(1/5)*x"},
      {"heis_fefferman", {{"m", "1"}}, "(1/5)*x1"},
      {"warped_heis", {{"m", "2"}}, "(1/10)*(y1+x2)"},
  };
  for (const Case& c : cases) {
    ManifoldSpec spec = getCatalog(c.name, c.params);
    ConformalFactor cf = ConformalFactor::parse(c.lambda, spec);
    ResidualTable tab = checkContorsionLaws(spec, cf, samplePoints(spec, 2, 47), 3);
    checkTableBelow(tab, 1e-8);
  }
}

TEST_CASE("rescaling composes additively") {
  ManifoldSpec spec = getCatalog("warped_heis", {{"m", "1"}});
  ConformalFactor la = ConformalFactor::parse("(1/5)*x1", spec);
  ConformalFactor mu = ConformalFactor::parse("(1/10)*(u+y1)", spec);
  ConformalFactor sum = ConformalFactor::parse("(1/5)*x1+(1/10)*(u+y1)", spec);
  ManifoldSpec two = rescale(rescale(spec, la), mu);
  ManifoldSpec one = rescale(spec, sum);
  for (const Point& p : samplePoints(spec, 3, 53)) {
    const int n = spec.n();
    std::vector<Jet> g2 = two.metricJets(p, 2), g1 = one.metricJets(p, 2);
    double res = 0;
    for (int k = 0; k < n * n; ++k) res = std::max(res, subT(g2[k], g1[k]).maxAbs());
    // the null coframes sigma* = g(nu, .) agree as well
    Frame F2 = evaluateFrame(two, p, 2);
    Frame F1 = evaluateFrame(one, p, 2);
    JVec s2 = flat(g2, F2.e[0]), s1 = flat(g1, F1.e[0]);
    for (int mu_ = 0; mu_ < n; ++mu_)
      res = std::max(res, subT(s2[mu_], s1[mu_]).maxAbs());
    CHECK(res < 1e-11);
  }
}
