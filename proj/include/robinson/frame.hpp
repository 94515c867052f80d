#pragma once

// Manifold descriptions and adapted (Witt) frames.  A ManifoldSpec carries
// the metric and the optical/screen frame fields as jet-valued functions of
// a chart point; Frame is their evaluation at one point together with the
// constant Witt Gram pairing, the coframe, and projection helpers.
//
// Frame label convention: 0 = nu, 1 = nu*, 2..m+1 = Z_i, m+2..2m+1 = Zbar_i.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "robinson/calculus.hpp"
#include "robinson/expr.hpp"
#include "robinson/jet.hpp"

namespace robinson {

struct GramViolation : JetError {
  explicit GramViolation(const std::string& msg) : JetError(msg) {}
};
struct OutOfChart : JetError {
  explicit OutOfChart(const std::string& msg) : JetError(msg) {}
};
struct NoNullCompletion : JetError {
  explicit NoNullCompletion(const std::string& msg) : JetError(msg) {}
};

// A scalar field evaluated in jet arithmetic; the expression tree is kept
// when available so catalog entries stay serializable.
struct Field {
  std::function<Jet(const Point&, int)> fn;
  ExprPtr expr;  // may be null for derived fields

  Jet operator()(const Point& p, int order) const { return fn(p, order); }
  static Field fromExpr(ExprPtr e);
  static Field zero();
  static Field constant(Complex v);
};

using VField = std::vector<Field>;  // coordinate components of a vector field

struct ManifoldSpec {
  std::string name;
  int m = 1;  // screen complex dimension; chart dimension n = 2m+2
  std::vector<std::string> coords;
  std::vector<double> lo, hi;  // chart domain box
  std::vector<std::vector<Field>> metric;  // n x n, real symmetric
  VField nu;
  std::optional<VField> nu_star;           // completed per point when absent
  std::vector<VField> screen;              // m complex fields Z_i
  std::string notes;

  int n() const { return 2 * m + 2; }
  bool inDomain(const Point& p) const;
  // evaluate all metric components as jets (row-major n*n)
  std::vector<Jet> metricJets(const Point& p, int order) const;
};

struct Frame {
  int m = 0, n = 0, order = 0;
  Point point;
  std::vector<JVec> e;    // n frame vectors
  std::vector<JVec> co;   // coframe: co[a](e_b) = delta_ab; co[0]=sigma, co[1]=sigma*
  std::vector<Jet> g;     // metric jets, row-major
  double gram_residual = 0.0;

  static int pairLabel(int m, int a);
  int pair(int a) const { return pairLabel(m, a); }
  int conjLabel(int a) const;
  bool isScreen(int a) const { return a >= 2; }
  bool isHolo(int a) const { return a >= 2 && a < 2 + m; }
  bool isAntiHolo(int a) const { return a >= 2 + m; }
  // J acting on frame labels: +i on Z, -i on Zbar, 0 on nu/nu*
  Complex jEigen(int a) const;
  double witt(int a, int b) const { return b == pair(a) ? 1.0 : 0.0; }

  Jet pairG(const JVec& X, const JVec& Y) const { return metricPair(g, X, Y); }
  // frame expansion coefficient of X along e_a
  Jet coeff(int a, const JVec& X) const { return pairForm(co[a], X); }

  // sigma(X) = nu-coefficient of X, sigma*(X) = nu*-coefficient
  Jet sigma(const JVec& X) const { return coeff(0, X); }
  Jet sigmaStar(const JVec& X) const { return coeff(1, X); }

  // graded projections: X^{1,0}, X^{0,1}, screen part
  JVec proj10(const JVec& X) const;
  JVec proj01(const JVec& X) const;
  JVec projScreen(const JVec& X) const;
};

// Evaluate the frame at a point; completes nu* when the spec omits it and
// validates the Witt Gram pairing (tolerance on every jet coefficient).
Frame evaluateFrame(const ManifoldSpec& spec, const Point& p, int order,
                    double gram_tol = 1e-9);

// Null completion: solves g(v,nu)=1, g(v,Z_i)=g(v,Zbar_i)=0, g(v,v)=0.
JVec completePairing(const ManifoldSpec& spec, const Point& p, int order);

struct Projection {
  Jet sigma, sigma_star;  // sigma(X), sigma*(X)
  JVec part10, part01;
};
Projection project(const Frame& F, const JVec& X);

struct ClassifyResult {
  bool geodetic = false;           // [nu, R-perp] stays in R-perp
  bool strongly_geodetic = false;  // [nu, N] stays in N
  bool partially_integrable = false;
  bool integrable = false;
  bool twistfree = false;
  bool maximally_twisted = false;
  bool fefferman_robinson = false;  // maximally twisted, dsigma* = omega, adapted pairing
  double r_geodetic = 0, r_strong = 0, r_partial = 0, r_integrable = 0;
  double r_twist = 0, r_max_twist = 0, r_fr = 0;
  double r_prop_consequences = 0;  // L_nu omega, L_nu* omega, [nu,nu*]_S when FR
};
ClassifyResult classify(const ManifoldSpec& spec, const std::vector<Point>& samples,
                        int order = 2, double tol = 1e-9);

// seeded sample points inside the domain box
std::vector<Point> samplePoints(const ManifoldSpec& spec, int count, unsigned seed);

}  // namespace robinson
