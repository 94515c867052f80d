#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>

#include "robinson/catalog.hpp"

using namespace robinson;

TEST_CASE("every catalog entry yields a valid frame at sampled points") {
  for (const std::string& name : catalogNames()) {
    ManifoldSpec spec = getCatalog(name);
    for (const Point& p : samplePoints(spec, 5, 42)) {
      Frame F = evaluateFrame(spec, p, 3);
      CHECK(F.gram_residual < 1e-9);
    }
  }
}

TEST_CASE("higher screen dimensions stay valid") {
  for (const std::string& name : {std::string("heis_fefferman"),
                                  std::string("warped_heis")}) {
    ManifoldSpec spec = getCatalog(name, {{"m", "3"}});
    CHECK(spec.n() == 8);
    for (const Point& p : samplePoints(spec, 3, 7)) {
      Frame F = evaluateFrame(spec, p, 3);
      CHECK(F.gram_residual < 1e-9);
    }
  }
}

TEST_CASE("bundle entry accepts nontrivial Hermitian data") {
  Params params = {{"m", "2"},
                   {"h12", "(1/10)*(x1+i*y2)"},
                   {"h22", "1+(1/5)*x2^2"},
                   {"A2", "(i/2)*(x2-i*y2)"},
                   {"B1", "(1/10)*u"},
                   {"Q", "(1/5)*(u+x1)"}};
  ManifoldSpec spec = getCatalog("bundle_general", params);
  for (const Point& p : samplePoints(spec, 5, 9)) {
    Frame F = evaluateFrame(spec, p, 3);
    CHECK(F.gram_residual < 1e-9);
  }
}

TEST_CASE("manifold argument parsing") {
  ManifoldSpec spec = parseManifoldArg("warped_heis:m=1,f=(1/5)*x1");
  CHECK(spec.m == 1);
  CHECK(spec.notes.find("(1/5)*x1") != std::string::npos);
  CHECK_THROWS_AS(parseManifoldArg("no_such_manifold"), CatalogError);
  CHECK_THROWS_AS(parseManifoldArg("warped_heis:m"), CatalogError);
  CHECK_THROWS_AS(parseManifoldArg("warped_heis:m=zebra"), CatalogError);
  CHECK_THROWS_AS(getCatalog("heis_fefferman", {{"m", "9"}}), CatalogError);
}

TEST_CASE("warped entry keeps the twisted structure of its base") {
  ManifoldSpec spec = getCatalog("warped_heis", {{"m", "2"}});
  ClassifyResult r = classify(spec, samplePoints(spec, 5, 13));
  CHECK(r.maximally_twisted);
  CHECK(r.fefferman_robinson);
  CHECK(r.strongly_geodetic);
}

TEST_CASE("JSON round-trip preserves all fields numerically") {
  Params params = {{"m", "2"}, {"f", "(1/10)*(x1+y2+u)"}};
  ManifoldSpec spec = getCatalog("warped_heis", params);
  ManifoldSpec back = specFromJson(specToJson(spec));
  CHECK(back.name == spec.name);
  CHECK(back.m == spec.m);
  CHECK(back.coords == spec.coords);
  CHECK_FALSE(back.nu_star.has_value());
  for (const Point& p : samplePoints(spec, 3, 21)) {
    auto g1 = spec.metricJets(p, 3);
    auto g2 = back.metricJets(p, 3);
    for (std::size_t k = 0; k < g1.size(); ++k)
      CHECK((g1[k] - g2[k]).maxAbs() < 1e-15);
    for (int i = 0; i < spec.m; ++i)
      for (int mu = 0; mu < spec.n(); ++mu)
        CHECK((spec.screen[i][mu](p, 3) - back.screen[i][mu](p, 3)).maxAbs() < 1e-15);
  }
}

TEST_CASE("spec files save and load") {
  ManifoldSpec spec = getCatalog("bundle_general");
  std::string path = "catalog_roundtrip.json";
  saveSpecFile(spec, path);
  ManifoldSpec back = loadSpecFile(path);
  Point p = samplePoints(spec, 1, 2)[0];
  Frame F1 = evaluateFrame(spec, p, 3);
  Frame F2 = evaluateFrame(back, p, 3);
  for (int a = 0; a < F1.n; ++a)
    for (int mu = 0; mu < F1.n; ++mu)
      CHECK((F1.e[a][mu] - F2.e[a][mu]).maxAbs() < 1e-12);
  std::remove(path.c_str());
  CHECK_THROWS_AS(loadSpecFile("missing_file.json"), CatalogError);
}
