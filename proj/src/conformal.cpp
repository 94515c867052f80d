#include "robinson/conformal.hpp"

#include <algorithm>
#include <memory>
#include <mutex>

namespace robinson {

namespace {

Jet zeroJet(const Point& p, int order) {
  return Jet::constant(p, Complex(0.0), order);
}

// chart components of d lambda, exact at the requested order
JVec chartDl(const ConformalFactor& cf, const Point& p, int order) {
  const int n = static_cast<int>(p.size());
  JVec dl(n);
  for (int mu = 0; mu < n; ++mu) dl[mu] = cf.expr->diff(mu)->eval(p, order);
  return dl;
}

// J as a chart matrix [kappa*n+mu]: +i on the holomorphic screen, -i on the
// anti-holomorphic screen, 0 on the null pair
std::vector<Jet> chartJmat(const Frame& F) {
  const int n = F.n, m = F.m;
  std::vector<Jet> J(n * n, zeroJet(F.point, F.order));
  for (int i = 0; i < m; ++i)
    for (int kappa = 0; kappa < n; ++kappa)
      for (int mu = 0; mu < n; ++mu) {
        J[kappa * n + mu] += Complex(0.0, 1.0) *
                             mulT(F.e[2 + i][kappa], F.co[2 + i][mu]);
        J[kappa * n + mu] -= Complex(0.0, 1.0) *
                             mulT(F.e[2 + m + i][kappa], F.co[2 + m + i][mu]);
      }
  return J;
}

// omega_{mu nu} = g(J d_mu, d_nu)
std::vector<Jet> chartKaehler(const Frame& F, const std::vector<Jet>& g) {
  const int n = F.n;
  std::vector<Jet> Jm = chartJmat(F);
  std::vector<Jet> om(n * n, zeroJet(F.point, F.order));
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu)
      for (int kappa = 0; kappa < n; ++kappa)
        om[mu * n + nu] += mulT(Jm[kappa * n + mu], g[kappa * n + nu]);
  return om;
}

// (alpha ^ beta)_{mu nu} for 1-forms
std::vector<Jet> oneWedgeOne(const JVec& a, const JVec& b) {
  const int n = static_cast<int>(a.size());
  std::vector<Jet> out(n * n, zeroJet(a[0].basePoint(), a[0].order()));
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu)
      out[mu * n + nu] = subT(mulT(a[mu], b[nu]), mulT(a[nu], b[mu]));
  return out;
}

// (alpha ^ B)_{mu nu rho} for a 1-form and a 2-form
std::vector<Jet> oneWedgeTwo(const JVec& a, const std::vector<Jet>& B) {
  const int n = static_cast<int>(a.size());
  std::vector<Jet> out(n * n * n);
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu)
      for (int rho = 0; rho < n; ++rho)
        out[(mu * n + nu) * n + rho] =
            addT(subT(mulT(a[mu], B[nu * n + rho]), mulT(a[nu], B[mu * n + rho])),
                 mulT(a[rho], B[mu * n + nu]));
  return out;
}

// (L_X B)_{mu nu} for a 2-form given by chart components
std::vector<Jet> lieTwoFormCoord(const JVec& X, const std::vector<Jet>& B) {
  const int n = static_cast<int>(X.size());
  const Point& p = X[0].basePoint();
  const int oo = std::min(X[0].order(), B[0].order()) - 1;
  std::vector<Jet> out(n * n, zeroJet(p, oo));
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu) {
      Jet acc = zeroJet(p, oo);
      for (int kappa = 0; kappa < n; ++kappa) {
        acc = addT(acc, mulT(X[kappa], B[mu * n + nu].derivative(kappa)));
        acc = addT(acc, mulT(X[kappa].derivative(mu), B[kappa * n + nu]));
        acc = addT(acc, mulT(X[kappa].derivative(nu), B[mu * n + kappa]));
      }
      out[mu * n + nu] = acc;
    }
  return out;
}

std::vector<Jet> scaleAll(const Jet& f, const std::vector<Jet>& v) {
  std::vector<Jet> out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = mulT(f, v[k]);
  return out;
}

// nabla_X Y in chart components, with Y a jet field given by its chart
// components; uses the frame expansion and the connection coefficients
JVec covDerivVecAlong(const Connection& C, const JVec& X, const JVec& Y) {
  const Frame& F = C.F;
  const int n = F.n;
  std::vector<Jet> y(n), x(n);
  for (int a = 0; a < n; ++a) {
    y[a] = F.coeff(a, Y);
    x[a] = F.coeff(a, X);
  }
  JVec out = vzero(F.point, n, F.order - 1);
  for (int c = 0; c < n; ++c) {
    Jet coef = zeroJet(F.point, F.order - 1);
    for (int a = 0; a < n; ++a) {
      Jet t = dirDeriv(F.e[a], y[c]);
      for (int b = 0; b < n; ++b) t = addT(t, mulT(y[b], C.gamma.at({a, b, c})));
      coef = addT(coef, mulT(x[a], t));
    }
    for (int mu = 0; mu < n; ++mu) out[mu] = addT(out[mu], mulT(coef, F.e[c][mu]));
  }
  return out;
}

// T(U,V) in chart components by tensorial expansion of the frame torsion
JVec torsionVecOn(const Connection& C, const JVec& U, const JVec& V) {
  const Frame& F = C.F;
  const int n = F.n;
  std::vector<Jet> u(n), v(n);
  for (int a = 0; a < n; ++a) {
    u[a] = F.coeff(a, U);
    v[a] = F.coeff(a, V);
  }
  JVec out = vzero(F.point, n, F.order - 1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Jet uv = mulT(u[a], v[b]);
      if (uv.maxAbs() == 0.0) continue;
      for (int c = 0; c < n; ++c) {
        Jet t = mulT(uv, C.T.at({a, b, c}));
        for (int mu = 0; mu < n; ++mu) out[mu] = addT(out[mu], mulT(t, F.e[c][mu]));
      }
    }
  return out;
}

// contorsion of C evaluated tensorially, paired with the given chart metric
Jet contorsionOn(const Connection& C, const std::vector<Jet>& g, const JVec& U,
                 const JVec& V, const JVec& W) {
  Jet a = metricPair(g, torsionVecOn(C, U, V), W);
  Jet b = metricPair(g, torsionVecOn(C, U, W), V);
  Jet c = metricPair(g, torsionVecOn(C, V, W), U);
  return subT(subT(a, b), c) * Complex(0.5);
}

// shared per-point evaluation state for the checks
struct Ws {
  int m = 0, n = 0;
  Point p;
  Connection C, Cl;  // adapted connections of the base and rescaled specs
  Jet lj, e2l, em2l;
  JVec dl;                // chart d lambda
  std::vector<Jet> w;     // d lambda on the base frame
  std::vector<JVec> sh;   // transformed frame directions in base normalization
  JVec dlsharp;           // screen gradient of lambda (base metric)
  Jet dlsn;               // squared screen norm of d lambda
  std::vector<Jet> gch, glch;
  JVec sigma, sigmaStar, sigmaStar_l;
  std::vector<Jet> dsigma, dsigmaStar, dsigmaStar_l;
  std::vector<Jet> omega, omega_l;  // omega_l from the transformation formula
  std::vector<Jet> domega;
  std::vector<Jet> lieNuOmega, lieNuOmega_l;

  const Frame& F() const { return C.F; }
  const Frame& Fl() const { return Cl.F; }
  Jet dls(const JVec& X) const { return pairForm(dl, X); }
};

Ws makeWs(const ManifoldSpec& spec, const ManifoldSpec& rs,
          const ConformalFactor& cf, const Point& p, int order) {
  Ws ws;
  ws.m = spec.m;
  ws.n = spec.n();
  ws.p = p;
  ws.C = buildConnection(spec, p, order);
  ws.Cl = buildConnection(rs, p, order);
  const Frame& F = ws.C.F;
  const int n = ws.n, m = ws.m;

  ws.lj = cf.lambda(p, order);
  ws.e2l = exp(ws.lj * Complex(2.0));
  ws.em2l = exp(ws.lj * Complex(-2.0));
  ws.dl = chartDl(cf, p, order);
  ws.w.resize(n);
  for (int a = 0; a < n; ++a) ws.w[a] = pairForm(ws.dl, F.e[a]);

  ws.dlsharp = vzero(p, n, order);
  ws.dlsn = zeroJet(p, order);
  JVec jsharp = vzero(p, n, order);
  for (int i = 0; i < m; ++i) {
    const Jet& wi = ws.w[2 + i];
    const Jet& wbi = ws.w[2 + m + i];
    ws.dlsn += Complex(2.0) * mulT(wi, wbi);
    for (int mu = 0; mu < n; ++mu) {
      ws.dlsharp[mu] += addT(mulT(wbi, F.e[2 + i][mu]), mulT(wi, F.e[2 + m + i][mu]));
      jsharp[mu] += Complex(0.0, 1.0) * subT(mulT(wbi, F.e[2 + i][mu]),
                                             mulT(wi, F.e[2 + m + i][mu]));
    }
  }

  ws.sh.assign(n, JVec());
  ws.sh[0] = F.e[0];
  {
    JVec v = vzero(p, n, order);
    for (int mu = 0; mu < n; ++mu)
      v[mu] = mulT(ws.em2l, F.e[1][mu] - Complex(2.0) * jsharp[mu] -
                                Complex(2.0) * mulT(ws.dlsn, F.e[0][mu]));
    ws.sh[1] = v;
  }
  for (int i = 0; i < m; ++i) {
    JVec a = vzero(p, n, order), b = vzero(p, n, order);
    for (int mu = 0; mu < n; ++mu) {
      a[mu] = F.e[2 + i][mu] -
              Complex(0.0, 2.0) * mulT(ws.w[2 + i], F.e[0][mu]);
      b[mu] = F.e[2 + m + i][mu] +
              Complex(0.0, 2.0) * mulT(ws.w[2 + m + i], F.e[0][mu]);
    }
    ws.sh[2 + i] = a;
    ws.sh[2 + m + i] = b;
  }

  ws.gch = spec.metricJets(p, order);
  ws.glch = rs.metricJets(p, order);
  ws.sigma = flat(ws.gch, F.e[1]);
  ws.sigmaStar = flat(ws.gch, F.e[0]);
  ws.sigmaStar_l = scaleAll(ws.e2l, ws.sigmaStar);
  ws.dsigma = dOneFormCoord(ws.sigma);
  ws.dsigmaStar = dOneFormCoord(ws.sigmaStar);
  ws.dsigmaStar_l = dOneFormCoord(ws.sigmaStar_l);
  ws.omega = chartKaehler(F, ws.gch);
  {
    std::vector<Jet> corr = oneWedgeOne(ws.dl, ws.sigmaStar);
    ws.omega_l.resize(n * n);
    for (int k = 0; k < n * n; ++k)
      ws.omega_l[k] = mulT(ws.e2l, ws.omega[k] + Complex(2.0) * corr[k]);
  }
  ws.domega = dTwoFormCoord(ws.omega);
  ws.lieNuOmega = lieTwoFormCoord(F.e[0], ws.omega);
  ws.lieNuOmega_l = lieTwoFormCoord(F.e[0], ws.omega_l);
  return ws;
}

// residual accumulator keyed by row label, max over points and slots
struct Acc {
  ResidualTable* tab;
  explicit Acc(ResidualTable* t) : tab(t) {}

  void take(const std::string& label, const Jet& lhs, const Jet& rhs) {
    update(label, subT(lhs, rhs).maxAbs(), std::max(lhs.maxAbs(), rhs.maxAbs()));
  }
  void takeVec(const std::string& label, const JVec& lhs, const JVec& rhs) {
    for (std::size_t k = 0; k < lhs.size(); ++k) take(label, lhs[k], rhs[k]);
  }
  void update(const std::string& label, double res, double sc) {
    for (ResidualRow& r : tab->rows)
      if (r.label == label) {
        r.residual = std::max(r.residual, res);
        r.scale = std::max(r.scale, sc);
        return;
      }
    tab->rows.push_back({label, res, sc});
  }
};

// (nabla_{e_a} dlambda_S)(e_b) for screen labels
Jet nablaDlS(const Ws& ws, int a, int b) {
  const Frame& F = ws.F();
  Jet out = dirDeriv(F.e[a], ws.w[b]);
  for (int c = 2; c < ws.n; ++c)
    out = subT(out, mulT(ws.C.gamma.at({a, b, c}), ws.w[c]));
  return out;
}

void requireFlags(const ManifoldSpec& spec, const std::vector<Point>& pts,
                  bool strong, bool fr) {
  ClassifyResult cl = classify(spec, pts);
  if (!cl.geodetic)
    throw PreconditionFlag(spec.name + ": structure is not geodetic");
  if (strong && !cl.strongly_geodetic)
    throw PreconditionFlag(spec.name + ": structure is not strongly geodetic");
  if (fr && !cl.fefferman_robinson)
    throw PreconditionFlag(spec.name + ": adapted exact-potential structure required");
}

}  // namespace

void ResidualTable::add(const std::string& label, double residual, double scale) {
  rows.push_back({label, residual, scale});
}

double ResidualTable::maxResidual() const {
  double r = 0;
  for (const ResidualRow& row : rows) r = std::max(r, row.residual);
  return r;
}

const ResidualRow& ResidualTable::row(const std::string& label) const {
  for (const ResidualRow& r : rows)
    if (r.label == label) return r;
  throw JetError("no residual row labelled '" + label + "'");
}

ConformalFactor ConformalFactor::parse(const std::string& text,
                                       const ManifoldSpec& spec) {
  ConformalFactor cf;
  cf.expr = parseExpr(text, spec.coords);
  cf.lambda = Field::fromExpr(cf.expr);
  cf.text = text;
  return cf;
}

ConformalFactor ConformalFactor::zero(const ManifoldSpec& spec) {
  return parse("0", spec);
}

void requireOptical(const ManifoldSpec& spec, const ConformalFactor& cf,
                    const std::vector<Point>& pts, double tol) {
  for (const Point& p : pts) {
    Jet lj = cf.lambda(p, 1);
    double im = 0;
    for (Complex c : lj.coeffs()) im = std::max(im, std::abs(c.imag()));
    if (im > tol)
      throw NotInCInfinityNu("conformal factor '" + cf.text + "' is not real");
    Frame F = evaluateFrame(spec, p, 1);
    JVec dl = chartDl(cf, p, 1);
    if (pairForm(dl, F.e[0]).maxAbs() > tol)
      throw NotInCInfinityNu("conformal factor '" + cf.text +
                             "' varies along the null direction");
  }
}

namespace {

// per-(point,order) evaluation of the rescaled frame, shared by the field
// closures of the rescaled spec
struct RescaleCache {
  ManifoldSpec base;
  ExprPtr lam;
  std::mutex mu;
  Point pt;
  int ord = -1;
  std::vector<JVec> vec;  // nu*, Z_i of the rescaled structure
  std::vector<Jet> gl;

  void ensure(const Point& p, int order) {
    if (ord == order && pt == p) return;
    Frame F = evaluateFrame(base, p, order);
    const int n = F.n, m = F.m;
    Jet lj = lam->eval(p, order);
    JVec dl(n);
    for (int mu_ = 0; mu_ < n; ++mu_) dl[mu_] = lam->diff(mu_)->eval(p, order);
    if (pairForm(dl, F.e[0]).maxAbs() > 1e-10)
      throw NotInCInfinityNu("conformal factor varies along the null direction");
    Jet eml = exp(-lj), em2l = exp(lj * Complex(-2.0)), e2l = exp(lj * Complex(2.0));
    std::vector<Jet> w(n);
    for (int a = 0; a < n; ++a) w[a] = pairForm(dl, F.e[a]);
    Jet dlsn = Jet::constant(p, Complex(0.0), order);
    JVec jsharp = vzero(p, n, order);
    for (int i = 0; i < m; ++i) {
      dlsn += Complex(2.0) * mulT(w[2 + i], w[2 + m + i]);
      for (int k = 0; k < n; ++k)
        jsharp[k] += Complex(0.0, 1.0) *
                     subT(mulT(w[2 + m + i], F.e[2 + i][k]),
                          mulT(w[2 + i], F.e[2 + m + i][k]));
    }
    vec.assign(1 + m, JVec());
    {
      JVec v = vzero(p, n, order);
      for (int k = 0; k < n; ++k)
        v[k] = mulT(em2l, F.e[1][k] - Complex(2.0) * jsharp[k] -
                              Complex(2.0) * mulT(dlsn, F.e[0][k]));
      vec[0] = v;
    }
    for (int i = 0; i < m; ++i) {
      JVec v = vzero(p, n, order);
      for (int k = 0; k < n; ++k)
        v[k] = mulT(eml, F.e[2 + i][k] -
                             Complex(0.0, 2.0) * mulT(w[2 + i], F.e[0][k]));
      vec[1 + i] = v;
    }
    gl = base.metricJets(p, order);
    for (Jet& c : gl) c = mulT(e2l, c);
    pt = p;
    ord = order;
  }
};

}  // namespace

ManifoldSpec rescale(const ManifoldSpec& spec, const ConformalFactor& cf) {
  if (!cf.expr) throw JetError("conformal factor has no expression");
  auto cache = std::make_shared<RescaleCache>();
  cache->base = spec;
  cache->lam = cf.expr;

  const int n = spec.n();
  auto cachedField = [cache](int which, int mu) {
    Field f;
    f.fn = [cache, which, mu](const Point& p, int order) {
      std::lock_guard<std::mutex> lock(cache->mu);
      cache->ensure(p, order);
      return which < 0 ? cache->gl[mu] : cache->vec[which][mu];
    };
    return f;
  };

  ManifoldSpec out;
  out.name = spec.name + "#rescaled";
  out.m = spec.m;
  out.coords = spec.coords;
  out.lo = spec.lo;
  out.hi = spec.hi;
  out.metric.assign(n, std::vector<Field>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) out.metric[a][b] = cachedField(-1, a * n + b);
  out.nu = spec.nu;
  VField ns(n);
  for (int mu = 0; mu < n; ++mu) ns[mu] = cachedField(0, mu);
  out.nu_star = ns;
  for (int i = 0; i < spec.m; ++i) {
    VField z(n);
    for (int mu = 0; mu < n; ++mu) z[mu] = cachedField(1 + i, mu);
    out.screen.push_back(z);
  }
  out.notes = "conformal rescale of " + spec.name + " by factor " + cf.text;
  return out;
}

ResidualTable checkRescaledStructure(const ManifoldSpec& spec,
                                     const ConformalFactor& cf,
                                     const std::vector<Point>& pts, int order) {
  requireOptical(spec, cf, pts);
  ManifoldSpec rs = rescale(spec, cf);
  ResidualTable tab;
  Acc acc(&tab);
  for (const Point& p : pts) {
    Ws ws = makeWs(spec, rs, cf, p, order);
    const int n = ws.n;
    const Frame& F = ws.F();
    const Frame& Fl = ws.Fl();

    acc.update("witt pairing of the rescaled frame", Fl.gram_residual, 1.0);

    // interior products of the rescaled Kaehler form with the null pair
    for (int mu = 0; mu < n; ++mu) {
      Jet a = zeroJet(p, order), b = zeroJet(p, order);
      for (int nu = 0; nu < n; ++nu) {
        a = addT(a, mulT(Fl.e[0][nu], ws.omega_l[nu * n + mu]));
        b = addT(b, mulT(Fl.e[1][nu], ws.omega_l[nu * n + mu]));
      }
      acc.take("null contractions of the rescaled Kaehler form", a, zeroJet(p, order));
      acc.take("null contractions of the rescaled Kaehler form", b, zeroJet(p, order));
    }

    // the transformation formula matches the rescaled metric and J
    std::vector<Jet> omf = chartKaehler(Fl, ws.glch);
    for (int k = 0; k < n * n; ++k)
      acc.take("rescaled Kaehler form matches the rescaled structure",
               ws.omega_l[k], omf[k]);

    // d omega_l = e^{2l}(d omega + 2 dl ^ (omega - d sigma*))
    {
      std::vector<Jet> lhs = dTwoFormCoord(ws.omega_l);
      std::vector<Jet> diff(n * n);
      for (int k = 0; k < n * n; ++k) diff[k] = subT(ws.omega[k], ws.dsigmaStar[k]);
      std::vector<Jet> wdg = oneWedgeTwo(ws.dl, diff);
      for (int k = 0; k < n * n * n; ++k) {
        Jet rhs = mulT(ws.e2l, addT(ws.domega[k], Complex(2.0) * wdg[k]));
        acc.take("exterior derivative of the rescaled Kaehler form", lhs[k], rhs);
      }
    }

    // L_nu omega_l = e^{2l}(L_nu omega + 2 dl ^ L_nu sigma*)
    {
      std::vector<Jet> wdg = oneWedgeOne(ws.dl, lieOneForm(F.e[0], ws.sigmaStar));
      for (int k = 0; k < n * n; ++k) {
        Jet rhs = mulT(ws.e2l, addT(ws.lieNuOmega[k], Complex(2.0) * wdg[k]));
        acc.take("Lie derivative of the rescaled Kaehler form along the null direction",
                 ws.lieNuOmega_l[k], rhs);
      }
    }

    // sigma_l = sigma + 2 J* dlambda_S - 2 |dlambda_S|^2 sigma*
    {
      JVec lhs = flat(ws.glch, Fl.e[1]);
      std::vector<Jet> Jm = chartJmat(F);
      for (int mu = 0; mu < n; ++mu) {
        Jet jdl = zeroJet(p, order);
        for (int kappa = 0; kappa < n; ++kappa)
          jdl = addT(jdl, mulT(Jm[kappa * n + mu], ws.dl[kappa]));
        Jet rhs = ws.sigma[mu] + Complex(2.0) * jdl -
                  Complex(2.0) * mulT(ws.dlsn, ws.sigmaStar[mu]);
        acc.take("transformed dual coframe", lhs[mu], rhs);
      }
      acc.takeVec("transformed null coframe", flat(ws.glch, Fl.e[0]), ws.sigmaStar_l);
    }

    // when omega = d sigma*, the rescaled potential stays exact
    {
      double exact = 0;
      for (int k = 0; k < n * n; ++k)
        exact = std::max(exact, subT(ws.omega[k], ws.dsigmaStar[k]).maxAbs());
      if (exact < 1e-8) {
        for (int k = 0; k < n * n; ++k)
          acc.take("exact potential persists", ws.omega_l[k], ws.dsigmaStar_l[k]);
      }
    }
  }
  return tab;
}

ResidualTable checkConnectionLaw(const ManifoldSpec& spec,
                                 const ConformalFactor& cf,
                                 const std::vector<Point>& pts, int order) {
  requireOptical(spec, cf, pts);
  requireFlags(spec, pts, false, false);
  ManifoldSpec rs = rescale(spec, cf);
  ResidualTable tab;
  Acc acc(&tab);
  const Complex I(0.0, 1.0);
  for (const Point& p : pts) {
    Ws ws = makeWs(spec, rs, cf, p, order);
    const int m = ws.m;
    const Frame& F = ws.F();
    std::vector<Jet> lieDlOmega = lieTwoFormCoord(ws.dlsharp, ws.omega);

    auto lieGl = [&](const JVec& X, const JVec& Y) {
      return lieMetric(ws.glch, F.e[0], X, Y);
    };
    auto lieOl = [&](const JVec& X, const JVec& Y) {
      return evalTwoForm(ws.lieNuOmega_l, X, Y);
    };
    auto baseFlat = [&](const JVec& U, const JVec& Y, const JVec& Z) {
      return mulT(ws.e2l, metricPair(ws.gch, covDerivVecAlong(ws.C, U, Y), Z));
    };

    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        const JVec& Y = ws.sh[2 + j];
        const JVec& Zb = ws.sh[2 + m + k];
        Jet wY = ws.dls(Y), wZb = ws.dls(Zb);
        Jet glYZ = metricPair(ws.glch, Y, Zb);

        // along holomorphic directions
        for (int i = 0; i < m; ++i) {
          const JVec& X = ws.sh[2 + i];
          Jet lhs = metricPair(ws.glch, covDerivVecAlong(ws.Cl, X, Y), Zb);
          Jet wX = ws.dls(X);
          Jet rhs = baseFlat(X, Y, Zb);
          rhs = addT(rhs, Complex(2.0) * addT(mulT(wX, glYZ),
                                              mulT(wY, -I * evalTwoForm(ws.dsigmaStar_l, X, Zb))));
          rhs = subT(rhs, mulT(wX, lieOl(Y, Zb)));
          rhs = addT(rhs, mulT(-I * wZb, addT(lieGl(X, Y), I * lieOl(X, Y))));
          acc.take("covariant derivative along holomorphic directions", lhs, rhs);
        }

        // along anti-holomorphic directions
        for (int i = 0; i < m; ++i) {
          const JVec& Xb = ws.sh[2 + m + i];
          Jet lhs = metricPair(ws.glch, covDerivVecAlong(ws.Cl, Xb, Y), Zb);
          Jet wXb = ws.dls(Xb);
          Jet rhs = baseFlat(Xb, Y, Zb);
          rhs = subT(rhs, Complex(2.0) * mulT(wZb, -I * evalTwoForm(ws.dsigmaStar_l, Y, Xb)));
          rhs = subT(rhs, mulT(wXb, lieOl(Y, Zb)));
          rhs = subT(rhs, mulT(I * wY, subT(lieGl(Xb, Zb), I * lieOl(Xb, Zb))));
          acc.take("covariant derivative along anti-holomorphic directions", lhs, rhs);
        }

        // along the null direction
        {
          Jet lhs = metricPair(ws.glch, covDerivVecAlong(ws.Cl, F.e[0], Y), Zb);
          acc.take("covariant derivative along the null direction", lhs,
                   baseFlat(F.e[0], Y, Zb));
        }

        // along the transformed dual direction
        {
          const JVec& Ns = ws.sh[1];
          Jet lhs = metricPair(ws.glch, covDerivVecAlong(ws.Cl, Ns, Y), Zb);
          Jet rhs = baseFlat(Ns, Y, Zb);
          rhs = addT(rhs, mulT(glYZ, ws.dls(Ns)));
          Jet jy = I * wY, jz = -I * wZb;  // dlambda on J_l Y, J_l Zb
          rhs = subT(rhs, Complex(2.0) * subT(mulT(jy, wZb), mulT(jz, wY)));
          JVec lieNs = lieOneForm(Ns, ws.sigmaStar_l);
          Projection br = project(ws.Fl(), bracket(F.e[0], Ns));
          rhs = subT(rhs, mulT(jy, subT(pairForm(lieNs, Zb),
                                        metricPair(ws.glch, br.part10, Zb))));
          rhs = addT(rhs, mulT(jz, subT(pairForm(lieNs, Y),
                                        metricPair(ws.glch, br.part01, Y))));
          rhs = addT(rhs, evalTwoForm(lieDlOmega, Y, Zb));
          rhs = addT(rhs, Complex(2.0) * mulT(jy, evalTwoForm(lieDlOmega, F.e[0], Zb)));
          rhs = subT(rhs, Complex(2.0) * mulT(jz, evalTwoForm(lieDlOmega, F.e[0], Y)));
          acc.take("covariant derivative along the transformed dual direction", lhs, rhs);
        }
      }
  }
  return tab;
}

ResidualTable checkScreenConnectionLaw(const ManifoldSpec& spec,
                                       const ConformalFactor& cf,
                                       const std::vector<Point>& pts, int order) {
  requireOptical(spec, cf, pts);
  requireFlags(spec, pts, true, true);
  ManifoldSpec rs = rescale(spec, cf);
  ResidualTable tab;
  Acc acc(&tab);
  for (const Point& p : pts) {
    Ws ws = makeWs(spec, rs, cf, p, order);
    const int m = ws.m, n = ws.n;
    const Frame& F = ws.F();
    const Frame& Fl = ws.Fl();
    JVec sharp10 = project(Fl, ws.dlsharp).part10;

    for (int j = 0; j < m; ++j) {
      const JVec& Y = ws.sh[2 + j];
      Jet wY = ws.dls(Y);

      for (int i = 0; i < m; ++i) {
        const JVec& X = ws.sh[2 + i];
        JVec lhs = covDerivVecAlong(ws.Cl, X, Y);
        JVec rhs = project(Fl, covDerivVecAlong(ws.C, X, Y)).part10;
        Jet wX = ws.dls(X);
        for (int mu = 0; mu < n; ++mu)
          rhs[mu] = addT(rhs[mu], Complex(2.0) * addT(mulT(wX, Y[mu]), mulT(wY, X[mu])));
        acc.takeVec("screen derivative along holomorphic directions", lhs, rhs);
      }

      for (int i = 0; i < m; ++i) {
        const JVec& Xb = ws.sh[2 + m + i];
        JVec lhs = covDerivVecAlong(ws.Cl, Xb, Y);
        JVec rhs = project(Fl, covDerivVecAlong(ws.C, Xb, Y)).part10;
        Jet gXY = metricPair(ws.gch, Xb, Y);
        for (int mu = 0; mu < n; ++mu)
          rhs[mu] = subT(rhs[mu], Complex(2.0) * mulT(gXY, sharp10[mu]));
        acc.takeVec("screen derivative along anti-holomorphic directions", lhs, rhs);
      }

      {
        JVec lhs = covDerivVecAlong(ws.Cl, F.e[0], Y);
        JVec rhs = project(Fl, covDerivVecAlong(ws.C, F.e[0], Y)).part10;
        acc.takeVec("screen derivative along the null direction", lhs, rhs);
      }

      {
        const JVec& Ns = ws.sh[1];
        JVec lhs = covDerivVecAlong(ws.Cl, Ns, Y);
        JVec rhs = project(Fl, covDerivVecAlong(ws.C, Ns, Y)).part10;
        JVec G = scaled(Jet::constant(p, Complex(0.0, 1.0), order), sharp10);
        JVec dG = covDerivVecAlong(ws.C, Y, G);
        JVec corr(n);
        for (int mu = 0; mu < n; ++mu)
          corr[mu] = subT(dG[mu], Complex(2.0) * mulT(wY, G[mu]));
        // only the holomorphic screen part of the correction is constrained:
        // the law is an identity of pairings against anti-holomorphic fields
        corr = project(Fl, corr).part10;
        for (int mu = 0; mu < n; ++mu)
          rhs[mu] = addT(rhs[mu], Complex(2.0) * mulT(ws.em2l, corr[mu]));
        acc.takeVec("screen derivative along the transformed dual direction", lhs, rhs);
      }
    }
  }
  return tab;
}

ResidualTable checkCurvatureLaws(const ManifoldSpec& spec,
                                 const ConformalFactor& cf,
                                 const std::vector<Point>& pts, int order) {
  requireOptical(spec, cf, pts);
  requireFlags(spec, pts, true, true);
  ManifoldSpec rs = rescale(spec, cf);
  ResidualTable tab;
  Acc acc(&tab);
  for (const Point& p : pts) {
    Ws ws = makeWs(spec, rs, cf, p, order);
    const int m = ws.m;
    Curvature R = buildCurvature(ws.C);
    Curvature Rl = buildCurvature(ws.Cl);
    Hierarchy H = buildHierarchy(R);
    Hierarchy Hl = buildHierarchy(Rl);

    auto nd = [&](int a, int b) { return nablaDlS(ws, a, b); };
    auto nsym = [&](int a, int b) { return addT(nd(a, b), nd(b, a)); };
    Jet tr = zeroJet(p, order - 1);
    for (int i = 0; i < m; ++i) tr = addT(tr, nsym(2 + i, 2 + m + i));

    auto kron = [](int a, int b) { return a == b ? Complex(1.0) : Complex(0.0); };

    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        for (int k = 0; k < m; ++k)
          for (int l = 0; l < m; ++l) {
            // full lowered curvature on transformed screen slots (base pairing)
            {
              Jet lhs = mulT(ws.e2l, Rl.rm.at({2 + i, 2 + m + j, 2 + k, 2 + m + l}));
              Jet rhs = R.rm.at({2 + i, 2 + m + j, 2 + k, 2 + m + l});
              rhs = subT(rhs, Complex(2.0) *
                                  addT(addT(nd(2 + m + j, 2 + i) * kron(k, l),
                                            nd(2 + k, 2 + m + l) * kron(i, j)),
                                       addT(nd(2 + m + j, 2 + k) * kron(i, l),
                                            nd(2 + i, 2 + m + l) * kron(k, j))));
              rhs = subT(rhs, Complex(2.0) * (kron(i, j) * kron(k, l) +
                                              kron(k, j) * kron(i, l)) *
                                  ws.dlsn);
              acc.take("lowered curvature", lhs, rhs);
            }
            // projected curvature
            {
              Jet lhs = mulT(ws.e2l, Hl.Rc.at({i, m + j, k, m + l}));
              Jet rhs = H.Rc.at({i, m + j, k, m + l});
              rhs = subT(rhs, addT(addT(nsym(2 + i, 2 + m + j) * kron(k, l),
                                        nsym(2 + k, 2 + m + l) * kron(i, j)),
                                   addT(nsym(2 + m + j, 2 + k) * kron(i, l),
                                        nsym(2 + i, 2 + m + l) * kron(k, j))));
              rhs = subT(rhs, Complex(2.0) * (kron(i, j) * kron(k, l) +
                                              kron(k, j) * kron(i, l)) *
                                  ws.dlsn);
              acc.take("projected curvature", lhs, rhs);
              if (m >= 2)
                acc.take("trace-free tensor invariance",
                         mulT(ws.e2l, Hl.cm.at({i, m + j, k, m + l})),
                         H.cm.at({i, m + j, k, m + l}));
            }
          }
        // Ricci trace and Schouten-type tensor
        {
          Jet lhs = mulT(ws.e2l, Hl.ric[i * m + j]);
          Jet rhs = H.ric[i * m + j];
          rhs = subT(rhs, Complex(m + 2) * nsym(2 + i, 2 + m + j));
          rhs = subT(rhs, kron(i, j) * addT(tr, Complex(2.0 * (m + 1)) * ws.dlsn));
          acc.take("Ricci trace", lhs, rhs);

          Jet plhs = mulT(ws.e2l, Hl.schouten[i * m + j]);
          Jet prhs = subT(subT(H.schouten[i * m + j], nsym(2 + i, 2 + m + j)),
                          kron(i, j) * ws.dlsn);
          acc.take("Schouten-type tensor", plhs, prhs);
        }
      }
    // adapted scalar
    {
      Jet rhs = subT(H.scalar, Complex(2.0 * (m + 1)) * tr);
      rhs = subT(rhs, Complex(2.0 * m * (m + 1)) * ws.dlsn);
      acc.take("adapted scalar", Hl.scalar, mulT(ws.em2l, rhs));
    }
  }
  return tab;
}

ResidualTable checkDeformationLaw(const ManifoldSpec& spec,
                                  const ConformalFactor& cf,
                                  const std::vector<Point>& pts, int order) {
  requireOptical(spec, cf, pts);
  requireFlags(spec, pts, true, true);
  ManifoldSpec rs = rescale(spec, cf);
  ResidualTable tab;
  Acc acc(&tab);
  const Complex I(0.0, 1.0);
  for (const Point& p : pts) {
    Ws ws = makeWs(spec, rs, cf, p, order);
    const int m = ws.m;
    Hierarchy H = buildHierarchy(buildCurvature(ws.C));
    Hierarchy Hl = buildHierarchy(buildCurvature(ws.Cl));
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y) {
        Jet lhs = mulT(ws.e2l, Hl.a_nustar[x * 2 * m + y]);
        Jet nsym = addT(nablaDlS(ws, 2 + x, 2 + y), nablaDlS(ws, 2 + y, 2 + x));
        Jet pair = Complex(4.0) * mulT(ws.w[2 + x], ws.w[2 + y]);
        Jet rhs = addT(H.a_nustar[x * 2 * m + y], I * subT(nsym, pair));
        acc.take("deformation tensor along the transformed dual direction", lhs, rhs);
      }
  }
  return tab;
}

ResidualTable checkContorsionLaws(const ManifoldSpec& spec,
                                  const ConformalFactor& cf,
                                  const std::vector<Point>& pts, int order) {
  requireOptical(spec, cf, pts);
  requireFlags(spec, pts, false, false);
  ManifoldSpec rs = rescale(spec, cf);
  ResidualTable tab;
  Acc acc(&tab);
  const Complex I(0.0, 1.0);
  for (const Point& p : pts) {
    Ws ws = makeWs(spec, rs, cf, p, order);
    const int m = ws.m, n = ws.n;
    const Frame& F = ws.F();

    // general rescaling formula on all frame triples
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        JVec nab = covDerivVecAlong(ws.Cl, F.e[a], F.e[b]);
        JVec nabBase = covDerivVecAlong(ws.C, F.e[a], F.e[b]);
        Jet gab = Jet::constant(p, Complex(F.witt(a, b)), order);
        for (int c = 0; c < n; ++c) {
          Jet lhs = metricPair(ws.glch, nab, F.e[c]);
          Jet kl = contorsionOn(ws.Cl, ws.gch, F.e[a], F.e[b], F.e[c]);
          Jet rhs = metricPair(ws.gch, nabBase, F.e[c]);
          rhs = addT(rhs, subT(kl, contorsion(ws.C, a, b, c)));
          rhs = addT(rhs, mulT(ws.w[a], Jet::constant(p, Complex(F.witt(b, c)), order)));
          rhs = addT(rhs, mulT(ws.w[b], Jet::constant(p, Complex(F.witt(a, c)), order)));
          rhs = subT(rhs, mulT(gab, ws.w[c]));
          acc.take("general rescaling formula", lhs, mulT(ws.e2l, rhs));
        }
      }

    // closed-form contorsion values on the transformed directions
    auto dss = [&](const JVec& X, const JVec& Y) {
      return evalTwoForm(ws.dsigmaStar, X, Y);
    };
    auto lnw = [&](const JVec& X, const JVec& Y) {
      return evalTwoForm(ws.lieNuOmega, X, Y);
    };
    auto lng = [&](const JVec& X, const JVec& Y) {
      return lieMetric(ws.gch, F.e[0], X, Y);
    };
    JVec lieNsSigmaStar = lieOneForm(F.e[1], ws.sigmaStar);
    Projection br = project(ws.Fl(), bracket(F.e[0], F.e[1]));

    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        const JVec& Y = ws.sh[2 + j];
        const JVec& Zb = ws.sh[2 + m + k];
        Jet wY = ws.dls(Y), wZb = ws.dls(Zb);

        for (int i = 0; i < m; ++i) {
          const JVec& X = ws.sh[2 + i];
          Jet lhs = contorsionOn(ws.C, ws.gch, X, Y, Zb);
          Jet rhs = Complex(-0.5) * I * evalThreeForm(ws.domega, X, Y, Zb);
          rhs = addT(rhs, mulT(ws.dls(X), addT(lnw(Y, Zb), I * dss(Y, Zb))));
          rhs = addT(rhs, I * mulT(wY, dss(X, Zb)));
          rhs = addT(rhs, mulT(I * wZb, addT(addT(dss(X, Y), lng(X, Y)), I * lnw(X, Y))));
          acc.take("holomorphic pair", lhs, rhs);
        }

        for (int i = 0; i < m; ++i) {
          const JVec& Xb = ws.sh[2 + m + i];
          Jet lhs = contorsionOn(ws.C, ws.gch, Xb, Y, Zb);
          Jet rhs = Complex(-0.5) * I * evalThreeForm(ws.domega, Xb, Zb, Y);
          rhs = addT(rhs, mulT(ws.dls(Xb), subT(lnw(Y, Zb), I * dss(Y, Zb))));
          rhs = addT(rhs, mulT(I * wY, subT(addT(dss(Xb, Zb), lng(Xb, Zb)),
                                            I * lnw(Xb, Zb))));
          rhs = subT(rhs, I * mulT(wZb, dss(Y, Xb)));
          acc.take("mixed pair", lhs, rhs);
        }

        {
          Jet lhs = contorsionOn(ws.C, ws.gch, F.e[0], Y, Zb);
          acc.take("null direction", lhs, Complex(-0.5) * dss(Y, Zb));
        }

        {
          Jet lhs = contorsionOn(ws.C, ws.gch, F.e[1], Y, Zb);
          Jet rhs = Complex(-0.5) * evalTwoForm(ws.dsigma, Y, Zb);
          rhs = addT(rhs, mulT(I * wY, subT(pairForm(lieNsSigmaStar, Zb),
                                            metricPair(ws.gch, br.part10, Zb))));
          rhs = addT(rhs, mulT(I * wZb, subT(pairForm(lieNsSigmaStar, Y),
                                             metricPair(ws.gch, br.part01, Y))));
          acc.take("dual direction", lhs, rhs);
        }
      }
  }
  return tab;
}

}  // namespace robinson
