#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "robinson/catalog.hpp"
#include "robinson/forms.hpp"

using namespace robinson;

namespace {

Jet randomJet(const Point& p, int order, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Jet j = Jet::constant(p, Complex(uni(rng), uni(rng)), order);
  for (std::size_t mu = 0; mu < p.size(); ++mu) {
    Jet s = Jet::seed(p, static_cast<int>(mu), order);
    j = j + s * Complex(uni(rng), uni(rng));
    for (std::size_t nu = mu; nu < p.size(); ++nu)
      j = j + mulT(s, Jet::seed(p, static_cast<int>(nu), order)) *
                  Complex(uni(rng), uni(rng));
  }
  return j;
}

int permSign(const std::vector<int>& v) {
  int inv = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (v[i] > v[j]) ++inv;
  return (inv % 2 == 0) ? 1 : -1;
}

// random form of pure bidegree (pp, qq) in the form slots (v extra value
// slots filled without symmetry), antisymmetric in the form slots
SForm randomPQForm(const Point& pt, int m, int pp, int qq, int v, int order,
                   unsigned seed) {
  std::mt19937_64 rng(seed);
  const int k = pp + qq;
  SForm out(pt, m, k, v, order);
  std::vector<int> base(k);
  std::function<void(int, int)> rec = [&](int pos, int start) {
    if (pos == k) {
      // value-slot sweep
      std::vector<int> vidx(v, 0);
      while (true) {
        Jet val = randomJet(pt, order, rng);
        std::vector<int> perm = base;
        std::sort(perm.begin(), perm.end());
        do {
          std::vector<int> rel(k);
          for (int t = 0; t < k; ++t)
            rel[t] = static_cast<int>(
                std::find(base.begin(), base.end(), perm[t]) - base.begin());
          std::vector<int> idx = perm;
          idx.insert(idx.end(), vidx.begin(), vidx.end());
          out.at(idx) = val * Complex(static_cast<double>(permSign(rel)));
        } while (std::next_permutation(perm.begin(), perm.end()));
        int t = v - 1;
        while (t >= 0 && ++vidx[t] == 2 * m) vidx[t--] = 0;
        if (t < 0) break;
      }
      return;
    }
    int lo = pos < pp ? start : (pos == pp ? m : start);
    int hi = pos < pp ? m : 2 * m;
    for (int a = std::max(lo, start); a < hi; ++a) {
      base[pos] = a;
      rec(pos + 1, a + 1);
    }
  };
  rec(0, 0);
  out.declare(pp, qq, v > 0 ? -1 : 0, v > 0 ? -1 : 0);
  return out;
}

double diff(const SForm& a, const SForm& b) { return sub(a, b).maxAbs(); }

}  // namespace

TEST_CASE("wedge: antisymmetry, associativity, interior Leibniz rule") {
  Point pt = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  const int m = 2;
  SForm a = randomPQForm(pt, m, 1, 0, 0, 1, 1);
  SForm b = randomPQForm(pt, m, 0, 1, 0, 1, 2);
  SForm c = randomPQForm(pt, m, 1, 1, 0, 1, 3);
  // 1-forms anticommute
  CHECK(diff(wedge(a, b), scale(wedge(b, a), Complex(-1.0))) < 1e-14);
  // a 1-form squares to zero
  CHECK(wedge(a, a).maxAbs() < 1e-14);
  // associativity
  CHECK(diff(wedge(wedge(a, b), c), wedge(a, wedge(b, c))) < 1e-13);
  // interior product is an antiderivation
  for (int x = 0; x < 2 * m; ++x) {
    SForm lhs = interiorForm(wedge(a, c), x);
    SForm rhs = add(wedge(interiorForm(a, x), c),
                    scale(wedge(a, interiorForm(c, x)), Complex(-1.0)));
    CHECK(diff(lhs, rhs) < 1e-13);
  }
}

TEST_CASE("elementary contraction pairs dual labels only") {
  Point pt = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  const int m = 2;
  const int ord = 1;
  // form slot 0 contracts against the value covector dual to Zbar_0 only
  SForm hit = wedge(covectorForm(pt, m, 0, ord), covectorValue(pt, m, m, ord));
  SForm miss = wedge(covectorForm(pt, m, 0, ord), covectorValue(pt, m, 1, ord));
  CHECK(std::abs(cShift(hit).comp[0].value() - Complex(1.0)) < 1e-14);
  CHECK(cShift(miss).maxAbs() < 1e-14);
  // disjointly supported factors contract to zero at every degree
  SForm a = wedge(covectorForm(pt, m, 0, ord), covectorValue(pt, m, 2, ord));
  SForm b = wedge(covectorForm(pt, m, 1, ord), covectorValue(pt, m, 3, ord));
  CHECK(circ(a, b, 1).maxAbs() < 1e-14);
}

TEST_CASE("shift maps: errors and the Kaehler-form shifts") {
  Point pt = {0.1, 0.2, 0.3, 0.4};
  const int m = 1;
  SForm beta = randomPQForm(pt, m, 0, 1, 0, 1, 5);
  CHECK_THROWS_AS(tShift(beta), BidegreeUnderflow);
  CHECK_THROWS_AS(tbarShift(randomPQForm(pt, m, 1, 0, 0, 1, 6)),
                  BidegreeUnderflow);
  SForm undeclared = beta;
  undeclared.declare(-1, -1, -1, -1);
  CHECK_THROWS_AS(tShift(undeclared), DegreeMismatch);

  SForm om = omegaForm(pt, m, 1);
  SForm om10 = tbarShift(om);  // i on the (Z_0 form, Zbar_0 value) pair
  SForm om01 = tShift(om);     // -i on the (Zbar_0 form, Z_0 value) pair
  CHECK(std::abs(om10.at({0, 1}).value() - Complex(0.0, 1.0)) < 1e-14);
  CHECK(std::abs(om01.at({1, 0}).value() - Complex(0.0, -1.0)) < 1e-14);
  CHECK(om10.maxAbs() == doctest::Approx(1.0));
  CHECK(om01.maxAbs() == doctest::Approx(1.0));
}

TEST_CASE("degree-two contraction with the Kaehler form is the trace operator") {
  Point pt = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  const int m = 2;
  SForm om = omegaForm(pt, m, 2);
  for (unsigned seed : {11u, 12u}) {
    SForm phi = randomPQForm(pt, m, 1, 1, 2, 2, seed);
    SForm lhs = circ(om, phi, 2);
    SForm rhs = LambdaS(phi);
    CHECK(diff(lhs, rhs) < 1e-13);
  }
}

TEST_CASE("degree-one bracket identities with the shifted Kaehler form") {
  Point pt = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  const int m = 2;
  const int ord = 2;
  SForm om = omegaForm(pt, m, ord);
  SForm om10 = tbarShift(om);
  SForm om01 = tShift(om);

  SForm Om = randomPQForm(pt, m, 1, 1, 0, ord, 21);
  SForm Om10 = tbarShift(Om);
  SForm Om01 = tShift(Om);
  CHECK(diff(flatten11(bracketComm(om10, Om01, 1)),
             scale(Om, Complex(0.0, 1.0))) < 1e-12);
  CHECK(diff(flatten11(bracketComm(om01, Om10, 1)),
             scale(Om, Complex(0.0, -1.0))) < 1e-12);

  // degree-one bracket of shifted factors reproduces the trace of the wedge
  SForm phi = randomPQForm(pt, m, 1, 1, 0, ord, 22);
  SForm psi = randomPQForm(pt, m, 1, 1, 0, ord, 23);
  SForm lhs = flatten11(bracketComm(tbarShift(phi), tShift(psi), 1));
  SForm rhs = scale(valueAsForm(LambdaS(wedge(tbarShift(phi), tShift(psi)))),
                    Complex(0.0, 1.0));
  CHECK(diff(lhs, rhs) < 1e-12);

  // brackets of a form with itself vanish
  CHECK(bracketComm(Om10, Om10, 1).maxAbs() < 1e-13);
  CHECK(bracketComm(om, Om, 2).maxAbs() < 1e-13);
}

TEST_CASE("trace contraction of the shifted-form wedge scales the input") {
  for (int m : {2, 3}) {
    Point pt(2 * m + 2, 0.0);
    for (int i = 0; i < 2 * m + 2; ++i) pt[i] = 0.05 * (i + 1);
    SForm om10 = tbarShift(omegaForm(pt, m, 1));
    SForm A = randomPQForm(pt, m, 1, 0, 0, 1, 31);
    // promote to a holomorphic-valued tensor: A(X)(Y), antisymmetric not
    // required for this identity; build from two random covectors
    SForm B = randomPQForm(pt, m, 1, 0, 0, 1, 32);
    SForm AB(pt, m, 1, 1, 1);
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y)
        AB.at({x, y}) = mulT(A.at({x}), B.at({y}));
    AB.declare(1, 0, 1, 0);
    SForm lhs = cShift(wedge(om10, AB));
    SForm rhs = scale(AB, Complex(0.0, m - 1.0));
    CHECK(diff(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("trace operator on a wedge with the shifted Kaehler form") {
  Point pt = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  const int m = 2;
  SForm om10 = tbarShift(omegaForm(pt, m, 1));
  SForm gamma = randomPQForm(pt, m, 1, 1, 0, 1, 41);
  SForm lhs = LambdaS(wedge(om10, gamma));
  SForm rhs = add(scale(tbarShift(gamma), Complex(-1.0)),
                  wedge(om10, LambdaS(gamma)));
  CHECK(diff(lhs, rhs) < 1e-12);
}

TEST_CASE("Lefschetz commutator counts the bidegree") {
  Point pt = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  const int m = 2;
  auto commLL = [&](const SForm& f) {
    return sub(LambdaS(LS(f)), LS(LambdaS(f)));
  };
  SForm f11 = randomPQForm(pt, m, 1, 1, 0, 1, 51);
  CHECK(commLL(f11).maxAbs() < 1e-13);  // m - p - q = 0
  SForm f10 = randomPQForm(pt, m, 1, 0, 0, 1, 52);
  CHECK(diff(commLL(f10), f10) < 1e-13);  // factor 1
  SForm f21 = randomPQForm(pt, m, 2, 1, 0, 1, 53);
  CHECK(diff(commLL(f21), scale(f21, Complex(-1.0))) < 1e-13);  // factor -1
}

TEST_CASE("adapted connection is compatible with the screen Kaehler form") {
  for (const std::string& name : catalogNames()) {
    ManifoldSpec spec = getCatalog(name);
    Point p = samplePoints(spec, 1, 61)[0];
    Connection C = buildConnection(spec, p, 3);
    SForm om = omegaForm(p, spec.m, 3);
    for (int a = 0; a < spec.n(); ++a)
      CHECK(covDeriv(C, om, a).maxAbs() < 1e-10);
  }
}

TEST_CASE("operator commutation relations on random fields") {
  ManifoldSpec spec = getCatalog("warped_heis", {{"m", "2"}});
  Point p = samplePoints(spec, 1, 71)[0];
  const int m = spec.m;
  Connection C = buildConnection(spec, p, 5);
  auto I = [](Complex z) { return z; };
  (void)I;

  std::vector<SForm> fields;
  fields.push_back(randomPQForm(p, m, 1, 1, 0, 3, 81));
  fields.push_back(randomPQForm(p, m, 2, 1, 0, 3, 82));
  fields.push_back(randomPQForm(p, m, 1, 1, 1, 3, 83));

  for (const SForm& f : fields) {
    // degree operators commute with the compatible ones
    CHECK(diff(del(C, LS(f)), LS(del(C, f))) < 1e-9);
    CHECK(diff(delBar(C, LS(f)), LS(delBar(C, f))) < 1e-9);
    CHECK(diff(delStar(C, LambdaS(f)), LambdaS(delStar(C, f))) < 1e-9);
    CHECK(diff(delBarStar(C, LambdaS(f)), LambdaS(delBarStar(C, f))) < 1e-9);
    // mixed commutators produce the adjoint operators
    CHECK(diff(sub(del(C, LambdaS(f)), LambdaS(del(C, f))),
               scale(delBarStar(C, f), Complex(0.0, -1.0))) < 1e-9);
    CHECK(diff(sub(delBar(C, LambdaS(f)), LambdaS(delBar(C, f))),
               scale(delStar(C, f), Complex(0.0, 1.0))) < 1e-9);
    CHECK(diff(sub(delStar(C, LS(f)), LS(delStar(C, f))),
               scale(delBar(C, f), Complex(0.0, -1.0))) < 1e-9);
    CHECK(diff(sub(delBarStar(C, LS(f)), LS(delBarStar(C, f))),
               scale(del(C, f), Complex(0.0, 1.0))) < 1e-9);
  }

  // second-order consequences
  const SForm& f = fields[0];
  auto anti = [&](auto op1, auto op2, const SForm& g) {
    return add(op1(op2(g)), op2(op1(g)));
  };
  auto dS = [&](const SForm& g) { return del(C, g); };
  auto dbS = [&](const SForm& g) { return delBar(C, g); };
  auto dsS = [&](const SForm& g) { return delStar(C, g); };
  auto dbsS = [&](const SForm& g) { return delBarStar(C, g); };

  SForm lhs1 = sub(anti(dS, dbS, LambdaS(f)), LambdaS(anti(dS, dbS, f)));
  SForm rhs1 = scale(sub(boxS(C, f), boxBarS(C, f)), Complex(0.0, 1.0));
  CHECK(diff(lhs1, rhs1) < 1e-9);

  SForm lhs2 = sub(boxS(C, LambdaS(f)), LambdaS(boxS(C, f)));
  SForm rhs2 = scale(anti(dsS, dbsS, f), Complex(0.0, -1.0));
  CHECK(diff(lhs2, rhs2) < 1e-9);

  SForm lhs3 = anti(dS, dbsS, f);
  SForm d2 = dS(dS(f));
  SForm rhs3 = scale(sub(dS(dS(LambdaS(f))), LambdaS(d2)), Complex(0.0, 1.0));
  CHECK(diff(lhs3, rhs3) < 1e-9);
}

TEST_CASE("derivative operators demand jet fields and declared degrees") {
  Point pt = {0.1, 0.2, 0.3, 0.4};
  ManifoldSpec spec = getCatalog("flat4");
  Connection C = buildConnection(spec, pt, 2);
  SForm f = randomPQForm(pt, 1, 1, 0, 0, 1, 91);
  for (Jet& j : f.comp) j = j.truncated(0);  // value-only components
  CHECK_THROWS_AS(del(C, f), FieldRequired);
  CHECK_THROWS_AS(covDeriv(C, f, 0), FieldRequired);
}

TEST_CASE("flat model: every named tensor vanishes") {
  ManifoldSpec spec = getCatalog("flat4");
  Point p = samplePoints(spec, 1, 101)[0];
  Connection C = buildConnection(spec, p, 4);
  Curvature R = buildCurvature(C);
  Hierarchy H = buildHierarchy(R);
  NamedTensors N = namedTensors(C, R, H);
  CHECK(N.rho.maxAbs() < 1e-12);
  CHECK(N.c_y.maxAbs() < 1e-12);
  CHECK(N.c_y0.maxAbs() < 1e-12);
  CHECK(N.c_ybar.maxAbs() < 1e-12);
  CHECK(N.c_ybar0.maxAbs() < 1e-12);
  CHECK(N.q_c.maxAbs() < 1e-12);
  CHECK(N.b_c.maxAbs() < 1e-12);
  CHECK(N.b_c0.maxAbs() < 1e-12);
}

TEST_CASE("Heisenberg model: shear-free and Einstein, so the tensors vanish") {
  ManifoldSpec spec = getCatalog("heis_fefferman", {{"m", "2"}});
  Point p = samplePoints(spec, 1, 103)[0];
  Connection C = buildConnection(spec, p, 4);
  Curvature R = buildCurvature(C);
  Hierarchy H = buildHierarchy(R);
  HierarchyForms hf = hierarchyForms(C, R, H);
  CHECK(hf.a10.maxAbs() < 1e-11);
  CHECK(hf.ric10.maxAbs() < 1e-11);
  NamedTensors N = namedTensors(C, R, H);
  CHECK(N.rho.maxAbs() < 1e-10);
  CHECK(N.c_y.maxAbs() < 1e-10);
  CHECK(N.c_y0.maxAbs() < 1e-10);
  CHECK(N.q_c.maxAbs() < 1e-10);
  CHECK(N.b_c.maxAbs() < 1e-10);
  CHECK(N.b_c0.maxAbs() < 1e-10);
}

TEST_CASE("warped model: structure relations of the packaged hierarchy") {
  ManifoldSpec spec = getCatalog("warped_heis", {{"m", "2"}});
  Point p = samplePoints(spec, 1, 107)[0];
  const int m = spec.m;
  Connection C = buildConnection(spec, p, 4);
  Curvature R = buildCurvature(C);
  Hierarchy H = buildHierarchy(R);
  HierarchyForms hf = hierarchyForms(C, R, H);

  // the deformation tensor is parallel along the null direction and
  // holomorphic in the operator sense
  CHECK(covDeriv(C, hf.a10, 0).maxAbs() < 1e-9);
  CHECK(covDeriv(C, hf.rc11, 0).maxAbs() < 1e-9);
  CHECK(del(C, hf.a10).maxAbs() < 1e-9);

  // the all-holomorphic curvature block is the wedge of the shifted
  // Kaehler form with the deformation tensor
  SForm om10 = tbarShift(omegaForm(p, m, hf.a10.order()));
  CHECK(diff(hf.r20, scale(wedge(om10, hf.a10), Complex(-1.0))) < 1e-9);

  // trace of the projected curvature reproduces the Ricci-type tensor
  SForm tr = LambdaS(hf.rc11);
  double res = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      res = std::max(res, (tr.at({i, m + j}) * Complex(0.0, 1.0) -
                           H.ric[i * m + j])
                              .maxAbs());
  CHECK(res < 1e-10);

  // offset between the trace-adjusted and plain Cotton-type tensors
  NamedTensors N = namedTensors(C, R, H);
  SForm rho10 = N.rho;
  for (int x = m; x < 2 * m; ++x)
    rho10.at({x}) = Jet::constant(p, Complex(0.0), rho10.order());
  SForm expect = scale(wedge(omegaForm(p, m, rho10.order()),
                             formAsValue(rho10)),
                       Complex(2.0 / (m + 2)));
  CHECK(diff(sub(N.c_y0, N.c_y), expect) < 1e-12);
}
