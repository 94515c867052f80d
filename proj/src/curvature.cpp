#include "robinson/curvature.hpp"

#include <cmath>

namespace robinson {

namespace {

// J eigenvalue on a screen slot: +i on the first m labels, -i on the rest
Complex jfac(int s, int m) { return s < m ? Complex(0.0, 1.0) : Complex(0.0, -1.0); }

}  // namespace

Curvature buildCurvature(const Connection& C) {
  const Frame& F = C.F;
  const int n = F.n, q = F.order;
  const int ro = q - 2;
  if (ro < 0) throw OrderExceeded("curvature needs frame jets of order >= 2");
  Curvature R;
  R.C = C;
  R.riem = FrameTensor(F.point, n, 3, true, ro);

  // frame coefficients of the brackets
  std::vector<Jet> cab;
  cab.reserve(static_cast<std::size_t>(n) * n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int e = 0; e < n; ++e) cab.push_back(F.coeff(e, C.brackets[a][b]));
  auto cc = [&](int a, int b, int e) -> const Jet& {
    return cab[(static_cast<std::size_t>(a) * n + b) * n + e];
  };

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          Jet acc = subT(dirDeriv(F.e[a], C.gamma.at({b, c, d})),
                         dirDeriv(F.e[b], C.gamma.at({a, c, d})));
          for (int e = 0; e < n; ++e) {
            acc = addT(acc, mulT(C.gamma.at({b, c, e}), C.gamma.at({a, e, d})));
            acc = subT(acc, mulT(C.gamma.at({a, c, e}), C.gamma.at({b, e, d})));
            acc = subT(acc, mulT(cc(a, b, e), C.gamma.at({e, c, d})));
          }
          R.riem.at({a, b, c, d}) = acc;
        }

  R.rm = FrameTensor(F.point, n, 4, false, ro);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          R.rm.at({a, b, c, d}) = R.riem.at({a, b, c, F.pair(d)});
  return R;
}

FrameTensor screenRestriction(const Curvature& R) {
  const Frame& F = R.C.F;
  const int m2 = 2 * F.m;
  FrameTensor Q(F.point, m2, 4, false, F.order - 2);
  for (int a = 0; a < m2; ++a)
    for (int b = 0; b < m2; ++b)
      for (int c = 0; c < m2; ++c)
        for (int d = 0; d < m2; ++d)
          Q.at({a, b, c, d}) = R.rm.at({2 + a, 2 + b, 2 + c, 2 + d});
  return Q;
}

FrameTensor kahlerLikeProjection(const FrameTensor& Q, int m) {
  const int m2 = 2 * m;
  double asym = 0;
  for (int a = 0; a < m2; ++a)
    for (int b = 0; b < m2; ++b)
      for (int c = 0; c < m2; ++c)
        for (int d = 0; d < m2; ++d) {
          asym = std::max(asym, addT(Q.at({a, b, c, d}), Q.at({b, a, c, d})).maxAbs());
          asym = std::max(asym, addT(Q.at({a, b, c, d}), Q.at({a, b, d, c})).maxAbs());
        }
  if (asym > 1e-10)
    throw SymmetryViolation("projection input not antisymmetric in slot pairs");

  const Point& p = Q.comp[0].basePoint();
  const int o = Q.comp[0].order();
  // Q with J inserted on a subset of slots: each insertion scales by the
  // eigenvalue of the corresponding label
  auto QJ = [&](int a, int b, int c, int d, unsigned mask) {
    Complex f(1.0);
    if (mask & 1u) f *= jfac(a, m);
    if (mask & 2u) f *= jfac(b, m);
    if (mask & 4u) f *= jfac(c, m);
    if (mask & 8u) f *= jfac(d, m);
    return Q.at({a, b, c, d}) * f;
  };
  auto Qp = [&](int a, int b, int c, int d) {
    return (QJ(a, b, c, d, 0u) + QJ(a, b, c, d, 3u) + QJ(a, b, c, d, 12u) +
            QJ(a, b, c, d, 15u)) *
           Complex(0.25);
  };
  FrameTensor out(p, m2, 4, false, o);
  for (int a = 0; a < m2; ++a)
    for (int b = 0; b < m2; ++b)
      for (int c = 0; c < m2; ++c)
        for (int d = 0; d < m2; ++d) {
          Complex jab = jfac(a, m) * jfac(b, m);
          Jet acc = Qp(a, b, c, d) * Complex(2.0) + Qp(c, d, a, b) * Complex(2.0) +
                    Qp(a, c, b, d) - Qp(b, c, a, d) - Qp(a, d, b, c) +
                    Qp(b, d, a, c) + Qp(a, c, b, d) * jab - Qp(b, c, a, d) * jab -
                    Qp(a, d, b, c) * jab + Qp(b, d, a, c) * jab;
          out.at({a, b, c, d}) = acc * Complex(0.125);
        }
  return out;
}

FrameTensor chernCurvatureSimple(const Curvature& R) {
  const Frame& F = R.C.F;
  const int m = F.m, m2 = 2 * m;
  FrameTensor Q = screenRestriction(R);
  FrameTensor out(F.point, m2, 4, false, F.order - 2);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          Jet M = (Q.at({i, m + j, k, m + l}) + Q.at({k, m + j, i, m + l}) +
                   Q.at({i, m + l, k, m + j}) + Q.at({k, m + l, i, m + j})) *
                  Complex(0.25);
          out.at({i, m + j, k, m + l}) = M;
          out.at({m + j, i, k, m + l}) = -M;
          out.at({i, m + j, m + l, k}) = -M;
          out.at({m + j, i, m + l, k}) = M;
        }
  return out;
}

double bianchiSymmetrization(const FrameTensor& Q) {
  const int m2 = Q.n;
  double res = 0;
  for (int a = 0; a < m2; ++a)
    for (int b = 0; b < m2; ++b)
      for (int c = 0; c < m2; ++c)
        for (int d = 0; d < m2; ++d) {
          Jet s = Q.at({a, b, c, d}) + Q.at({c, a, b, d}) + Q.at({b, c, a, d});
          res = std::max(res, s.maxAbs());
        }
  return res;
}

Hierarchy buildHierarchy(const Curvature& R) {
  const Frame& F = R.C.F;
  const int m = F.m, m2 = 2 * m;
  const int ro = F.order - 2;
  Hierarchy H;
  H.m = m;
  H.Rc = chernCurvatureSimple(R);

  // the two displayed traces
  H.ric.assign(static_cast<std::size_t>(m) * m, Jet::constant(F.point, Complex(0.0), ro));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Jet t1 = Jet::constant(F.point, Complex(0.0), ro);
      Jet t2 = t1;
      for (int k = 0; k < m; ++k) {
        t1 += H.Rc.at({i, m + k, k, m + j});
        t2 += H.Rc.at({k, m + k, i, m + j});
      }
      H.ric[i * m + j] = t1;
      H.ricci_forms_residual = std::max(H.ricci_forms_residual, (t1 - t2).maxAbs());
    }
  H.scalar = Jet::constant(F.point, Complex(0.0), ro);
  for (int i = 0; i < m; ++i) H.scalar += H.ric[i * m + i];

  // pairing and Kaehler-form values on the adapted basis
  std::vector<Jet> gm(static_cast<std::size_t>(m) * m,
                      Jet::constant(F.point, Complex(0.0), ro));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      gm[i * m + j] = F.pairG(F.e[2 + i], F.e[2 + m + j]).truncated(ro);

  const Complex inv_mp2(1.0 / (m + 2));
  const Complex half_tr(1.0 / (2.0 * (m + 1)));
  H.schouten.assign(static_cast<std::size_t>(m) * m,
                    Jet::constant(F.point, Complex(0.0), ro));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Jet p1 = (H.ric[i * m + j] - mulT(H.scalar, gm[i * m + j]) * half_tr) * inv_mp2;
      // Kaehler-form display: omega = i g on (1,0) x (0,1)
      Jet om = gm[i * m + j] * Complex(0.0, 1.0);
      Jet p2 = (H.ric[i * m + j] + mulT(H.scalar, om) * (Complex(0.0, 1.0) * half_tr)) *
               inv_mp2;
      H.schouten[i * m + j] = p1;
      H.schouten_forms_residual =
          std::max(H.schouten_forms_residual, (p1 - p2).maxAbs());
    }

  H.cm = FrameTensor(F.point, m2, 4, false, ro);
  auto P = [&](int i, int j) -> const Jet& { return H.schouten[i * m + j]; };
  auto G = [&](int i, int j) -> const Jet& { return gm[i * m + j]; };
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          Jet M = H.Rc.at({i, m + j, k, m + l}) -
                  (mulT(P(i, j), G(k, l)) + mulT(P(k, l), G(i, j)) +
                   mulT(P(k, j), G(i, l)) + mulT(P(i, l), G(k, j)));
          H.cm.at({i, m + j, k, m + l}) = M;
          H.cm.at({m + j, i, k, m + l}) = -M;
          H.cm.at({i, m + j, m + l, k}) = -M;
          H.cm.at({m + j, i, m + l, k}) = M;
        }

  H.a_nu.assign(static_cast<std::size_t>(m2) * m2,
                Jet::constant(F.point, Complex(0.0), F.order - 1));
  H.a_nustar = H.a_nu;
  for (int s = 0; s < m2; ++s)
    for (int t = 0; t < m2; ++t) {
      H.a_nu[s * m2 + t] =
          lieMetric(F.g, F.e[0], F.e[2 + s], F.e[2 + t]) * Complex(0.5);
      H.a_nustar[s * m2 + t] =
          lieMetric(F.g, F.e[1], F.e[2 + s], F.e[2 + t]) * Complex(0.5);
    }
  return H;
}

EinsteinCheck einsteinCheck(const ManifoldSpec& spec,
                            const std::vector<Point>& points, int order,
                            double tol) {
  EinsteinCheck out;
  out.is_einstein = true;
  const int m = spec.m;
  for (const Point& p : points) {
    Connection C = buildConnection(spec, p, order);
    Curvature R = buildCurvature(C);
    Hierarchy H = buildHierarchy(R);
    // omega values on the adapted basis
    std::vector<Complex> om(static_cast<std::size_t>(m) * m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        om[i * m + j] = Complex(0.0, 1.0) *
                        C.F.pairG(C.F.e[2 + i], C.F.e[2 + m + j]).value();
    // least-squares factor in Ric = f omega
    Complex num(0.0), den(0.0);
    for (std::size_t k = 0; k < om.size(); ++k) {
      num += std::conj(om[k]) * H.ric[k].value();
      den += std::conj(om[k]) * om[k];
    }
    Complex f = num / den;
    out.f_samples.push_back(f);
    double res = 0;
    for (std::size_t k = 0; k < om.size(); ++k)
      res = std::max(res, std::abs(H.ric[k].value() - f * om[k]));
    out.residual = std::max(out.residual, res);
    if (res >= tol) out.is_einstein = false;

    Complex s = H.scalar.value();
    out.f_formula_residual =
        std::max(out.f_formula_residual, std::abs(f + Complex(0.0, 1.0) * s / double(m)));
    Complex pf = -Complex(0.0, 1.0) * s / (2.0 * m * (m + 1));
    for (std::size_t k = 0; k < om.size(); ++k)
      out.schouten_formula_residual = std::max(
          out.schouten_formula_residual, std::abs(H.schouten[k].value() - pf * om[k]));
  }
  if (!out.is_einstein) {
    out.f_formula_residual = 0;
    out.schouten_formula_residual = 0;
  }
  return out;
}

}  // namespace robinson
