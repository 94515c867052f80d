#include "robinson/frame.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace robinson {

Field Field::fromExpr(ExprPtr e) {
  Field f;
  f.expr = e;
  f.fn = [e](const Point& p, int order) { return e->eval(p, order); };
  return f;
}

Field Field::zero() { return constant(Complex(0.0)); }

Field Field::constant(Complex v) {
  Field f;
  f.expr = Expr::constant(v);
  f.fn = [v](const Point& p, int order) { return Jet::constant(p, v, order); };
  return f;
}

bool ManifoldSpec::inDomain(const Point& p) const {
  if (static_cast<int>(p.size()) != n()) return false;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] < lo[k] || p[k] > hi[k]) return false;
  }
  return true;
}

std::vector<Jet> ManifoldSpec::metricJets(const Point& p, int order) const {
  const int nn = n();
  std::vector<Jet> g;
  g.reserve(static_cast<std::size_t>(nn) * nn);
  for (int a = 0; a < nn; ++a)
    for (int b = 0; b < nn; ++b) g.push_back(metric[a][b](p, order));
  return g;
}

int Frame::pairLabel(int m, int a) {
  if (a == 0) return 1;
  if (a == 1) return 0;
  if (a < 2 + m) return a + m;
  return a - m;
}

int Frame::conjLabel(int a) const {
  if (a < 2) return a;  // nu, nu* are real fields
  return pair(a);
}

Complex Frame::jEigen(int a) const {
  if (isHolo(a)) return Complex(0.0, 1.0);
  if (isAntiHolo(a)) return Complex(0.0, -1.0);
  return Complex(0.0);
}

JVec Frame::proj10(const JVec& X) const {
  JVec out = vzero(point, n, X[0].order());
  for (int i = 0; i < m; ++i) {
    Jet ci = coeff(2 + i, X);
    out = vsum(out, scaled(ci, vtrunc(e[2 + i], ci.order())));
  }
  return out;
}

JVec Frame::proj01(const JVec& X) const {
  JVec out = vzero(point, n, X[0].order());
  for (int i = 0; i < m; ++i) {
    Jet ci = coeff(2 + m + i, X);
    out = vsum(out, scaled(ci, vtrunc(e[2 + m + i], ci.order())));
  }
  return out;
}

JVec Frame::projScreen(const JVec& X) const { return vsum(proj10(X), proj01(X)); }

JVec completePairing(const ManifoldSpec& spec, const Point& p, int order) {
  const int n = spec.n();
  std::vector<Jet> g;
  g.reserve(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g.push_back(spec.metric[a][b](p, order));

  auto evalVec = [&](const VField& vf) {
    JVec v;
    v.reserve(n);
    for (int k = 0; k < n; ++k) v.push_back(vf[k](p, order));
    return v;
  };
  JVec nu = evalVec(spec.nu);
  std::vector<std::vector<Jet>> rows;
  std::vector<Jet> rhs;
  rows.push_back(flat(g, nu));
  rhs.push_back(Jet::constant(p, Complex(1.0), order));
  for (const auto& zf : spec.screen) {
    JVec z = evalVec(zf);
    rows.push_back(flat(g, z));
    rhs.push_back(Jet::constant(p, Complex(0.0), order));
    rows.push_back(flat(g, vconj(z)));
    rhs.push_back(Jet::constant(p, Complex(0.0), order));
  }
  JVec v0;
  try {
    v0 = solveLinear(rows, rhs);
  } catch (const SingularSystem& err) {
    throw NoNullCompletion(std::string("completePairing: ") + err.what());
  }
  // residual family is v0 + t*nu; the null condition is linear in t because
  // nu is null and orthogonal to the other constraints
  Jet t = metricPair(g, v0, v0) * Complex(-0.5);
  return vsum(v0, scaled(t, nu));
}

Frame evaluateFrame(const ManifoldSpec& spec, const Point& p, int order,
                    double gram_tol) {
  if (!spec.inDomain(p)) {
    std::ostringstream os;
    os << "evaluateFrame(" << spec.name << "): point outside chart domain";
    throw OutOfChart(os.str());
  }
  Frame F;
  F.m = spec.m;
  F.n = spec.n();
  F.order = order;
  F.point = p;
  F.g = spec.metricJets(p, order);

  auto evalVec = [&](const VField& vf) {
    JVec v;
    v.reserve(F.n);
    for (int k = 0; k < F.n; ++k) v.push_back(vf[k](p, order));
    return v;
  };

  F.e.resize(F.n);
  F.e[0] = evalVec(spec.nu);
  if (spec.nu_star) {
    F.e[1] = evalVec(*spec.nu_star);
  } else {
    F.e[1] = completePairing(spec, p, order);
  }
  for (int i = 0; i < F.m; ++i) {
    F.e[2 + i] = evalVec(spec.screen[i]);
    F.e[2 + F.m + i] = vconj(F.e[2 + i]);
  }

  // coframe: co[a] = (e_{pair(a)})^flat
  F.co.resize(F.n);
  for (int a = 0; a < F.n; ++a) F.co[a] = flat(F.g, F.e[F.pair(a)]);

  // Gram validation on full jets: g(e_a,e_b) must be the constant Witt matrix
  double worst = 0.0;
  int wa = 0, wb = 0;
  for (int a = 0; a < F.n; ++a) {
    for (int b = a; b < F.n; ++b) {
      Jet pr = F.pairG(F.e[a], F.e[b]);
      pr.coeffs()[0] -= Complex(F.witt(a, b));
      double r = pr.maxAbs();
      if (r > worst) {
        worst = r;
        wa = a;
        wb = b;
      }
    }
  }
  F.gram_residual = worst;
  if (worst > gram_tol) {
    std::ostringstream os;
    os << "GramViolation(" << spec.name << "): pair (" << wa << "," << wb
       << ") deviates by " << worst;
    throw GramViolation(os.str());
  }
  return F;
}

Projection project(const Frame& F, const JVec& X) {
  Projection pr{F.sigma(X), F.sigmaStar(X), F.proj10(X), F.proj01(X)};
  return pr;
}

namespace {

double smallPfaffian(const std::vector<std::vector<Complex>>& B, std::vector<int> idx,
                     Complex& out) {
  // recursive Pfaffian over the sub-index set idx (even size)
  if (idx.empty()) {
    out = Complex(1.0);
    return 0.0;
  }
  Complex acc(0.0);
  int i0 = idx[0];
  for (std::size_t k = 1; k < idx.size(); ++k) {
    std::vector<int> rest;
    for (std::size_t t = 1; t < idx.size(); ++t)
      if (t != k) rest.push_back(idx[t]);
    Complex sub;
    smallPfaffian(B, rest, sub);
    double sign = (k % 2 == 1) ? 1.0 : -1.0;
    acc += sign * B[i0][idx[k]] * sub;
  }
  out = acc;
  return 0.0;
}

}  // namespace

ClassifyResult classify(const ManifoldSpec& spec, const std::vector<Point>& samples,
                        int order, double tol) {
  ClassifyResult R;
  const int m = spec.m;
  double min_max_twist = 1e300;

  for (const Point& p : samples) {
    Frame F = evaluateFrame(spec, p, order);
    const int n = F.n;

    // brackets among frame fields
    std::vector<std::vector<JVec>> br(n, std::vector<JVec>(n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) br[a][b] = bracket(F.e[a], F.e[b]);

    auto cval = [&](int a, const JVec& X) { return std::abs(F.coeff(a, X).value()); };

    // geodetic: [nu, Z_i] has no nu*-component ([nu,nu]=0 trivially)
    for (int i = 0; i < m; ++i) {
      R.r_geodetic = std::max(R.r_geodetic, cval(1, br[0][2 + i]));
      R.r_geodetic = std::max(R.r_geodetic, cval(1, br[0][2 + m + i]));
      // strongly geodetic additionally kills the anti-holomorphic part
      R.r_strong = std::max(R.r_strong, cval(1, br[0][2 + i]));
      for (int k = 0; k < m; ++k)
        R.r_strong = std::max(R.r_strong, cval(2 + m + k, br[0][2 + i]));
    }
    // partial integrability / integrability over N = span(nu, Z_i)
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        R.r_partial = std::max(R.r_partial, cval(1, br[2 + i][2 + j]));
        R.r_integrable = std::max(R.r_integrable, cval(1, br[2 + i][2 + j]));
        for (int k = 0; k < m; ++k)
          R.r_integrable = std::max(R.r_integrable, cval(2 + m + k, br[2 + i][2 + j]));
      }
      R.r_partial = std::max(R.r_partial, cval(1, br[0][2 + i]));
      R.r_integrable = std::max(R.r_integrable, cval(1, br[0][2 + i]));
      for (int k = 0; k < m; ++k)
        R.r_integrable = std::max(R.r_integrable, cval(2 + m + k, br[0][2 + i]));
    }

    // dsigma* on frame pairs (sigma* = co[1] = nu^flat)
    std::vector<std::vector<Complex>> D(n, std::vector<Complex>(n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        D[a][b] = dOneForm(F.co[1], F.e[a], F.e[b]).value();

    // twistfree: dsigma* vanishes on R-perp = span(nu, Z, Zbar)
    std::vector<int> rperp{0};
    for (int a = 2; a < n; ++a) rperp.push_back(a);
    for (int a : rperp)
      for (int b : rperp) R.r_twist = std::max(R.r_twist, std::abs(D[a][b]));

    // maximally twisted: dsigma* has full rank 2m on R-perp; witnessed by a
    // nonzero Pfaffian of some 2m x 2m principal block
    double best_pf = 0.0;
    for (std::size_t omit = 0; omit < rperp.size(); ++omit) {
      std::vector<int> idx;
      for (std::size_t t = 0; t < rperp.size(); ++t)
        if (t != omit) idx.push_back(rperp[t]);
      Complex pf;
      smallPfaffian(D, idx, pf);
      best_pf = std::max(best_pf, std::abs(pf));
    }
    min_max_twist = std::min(min_max_twist, best_pf);

    // Fefferman-Robinson: dsigma* = omega (the extension by zero of the
    // screen Kaehler form) and the pairing is adapted
    double rfr = 0.0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        rfr = std::max(rfr, std::abs(D[2 + i][2 + j]));  // (2,0) part
        Complex want = (i == j) ? Complex(0.0, 1.0) : Complex(0.0);
        rfr = std::max(rfr, std::abs(D[2 + i][2 + m + j] - want));
      }
    for (int a = 0; a < n; ++a) {
      rfr = std::max(rfr, std::abs(D[0][a]));  // nu contraction
      rfr = std::max(rfr, std::abs(D[1][a]));  // nu* contraction (adapted)
    }
    R.r_fr = std::max(R.r_fr, rfr);

    // Prop-2.1-type consequences, reported when FR holds: L_nu omega,
    // L_nu* omega on screen pairs and screen part of [nu,nu*]
    {
      // omega = i sum_k (Zbar_k^flat (x) Z_k^flat - Z_k^flat (x) Zbar_k^flat)
      std::vector<Jet> om(static_cast<std::size_t>(n) * n,
                          Jet::constant(p, Complex(0.0), order));
      for (int k = 0; k < m; ++k) {
        JVec fz = flat(F.g, F.e[2 + k]);
        JVec fzb = flat(F.g, F.e[2 + m + k]);
        for (int mu = 0; mu < n; ++mu)
          for (int nuI = 0; nuI < n; ++nuI)
            om[mu * n + nuI] += Complex(0.0, 1.0) * (mulT(fzb[mu], fz[nuI]) -
                                                     mulT(fz[mu], fzb[nuI]));
      }
      auto lieTwo = [&](const JVec& X, const JVec& Y, const JVec& Z) {
        Jet byz = evalTwoForm(om, Y, Z);
        int o = byz.order() - 1;
        return dirDeriv(X, byz) - evalTwoForm(om, bracket(X, Y), Z).truncated(o) -
               evalTwoForm(om, Y, bracket(X, Z)).truncated(o);
      };
      double rp = 0.0;
      for (int a = 2; a < n; ++a)
        for (int b = 2; b < n; ++b) {
          rp = std::max(rp, std::abs(lieTwo(F.e[0], F.e[a], F.e[b]).value()));
          rp = std::max(rp, std::abs(lieTwo(F.e[1], F.e[a], F.e[b]).value()));
        }
      for (int k = 0; k < 2 * m; ++k) rp = std::max(rp, cval(2 + k, br[0][1]));
      R.r_prop_consequences = std::max(R.r_prop_consequences, rp);
    }
  }

  R.r_max_twist = min_max_twist;
  R.geodetic = R.r_geodetic <= tol;
  R.strongly_geodetic = R.r_strong <= tol;
  R.partially_integrable = R.r_partial <= tol;
  R.integrable = R.r_integrable <= tol;
  R.twistfree = R.r_twist <= tol;
  R.maximally_twisted = min_max_twist > 1e-6;
  R.fefferman_robinson = R.maximally_twisted && R.r_fr <= tol;
  return R;
}

std::vector<Point> samplePoints(const ManifoldSpec& spec, int count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.1, 0.9);
  std::vector<Point> pts;
  pts.reserve(count);
  const int n = spec.n();
  for (int k = 0; k < count; ++k) {
    Point p(n);
    for (int d = 0; d < n; ++d) {
      double t = uni(rng);
      p[d] = spec.lo[d] + t * (spec.hi[d] - spec.lo[d]);
    }
    pts.push_back(p);
  }
  return pts;
}

}  // namespace robinson
