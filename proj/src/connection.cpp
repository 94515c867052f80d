#include "robinson/connection.hpp"

#include <algorithm>

namespace robinson {

FrameTensor::FrameTensor(const Point& p, int n_, int rank_, bool valued_, int order) {
  n = n_;
  rank = rank_;
  valued = valued_;
  std::size_t total = 1;
  for (int s = 0; s < slots(); ++s) total *= static_cast<std::size_t>(n);
  comp.assign(total, Jet::constant(p, Complex(0.0), order));
}

std::size_t FrameTensor::index(const std::vector<int>& idx) const {
  std::size_t lin = 0;
  for (int v : idx) lin = lin * static_cast<std::size_t>(n) + static_cast<std::size_t>(v);
  return lin;
}

double FrameTensor::maxAbs() const {
  double m = 0;
  for (const auto& j : comp) m = std::max(m, j.maxAbs());
  return m;
}

void FrameTensor::forEach(const std::function<void(const std::vector<int>&)>& fn) const {
  std::vector<int> idx(slots(), 0);
  const int k = slots();
  if (k == 0) {
    fn(idx);
    return;
  }
  while (true) {
    fn(idx);
    int s = k - 1;
    while (s >= 0 && ++idx[s] == n) idx[s--] = 0;
    if (s < 0) break;
  }
}

int Connection::typeOf(int label) const {
  if (label == 0) return 0;
  if (label == 1) return 1;
  return label < 2 + F.m ? 2 : 3;
}

namespace {

int conjOf(const Frame& F, int a) { return F.conjLabel(a); }

// copy the conjugated row: T(conj a, conj b)^{conj c} = conj(T(a,b)^c)
void conjugateRow(const Frame& F, FrameTensor& T, int a, int b) {
  const int n = F.n;
  for (int c = 0; c < n; ++c) {
    T.at({conjOf(F, a), conjOf(F, b), conjOf(F, c)}) = T.at({a, b, c}).conj();
  }
}

void negateRow(FrameTensor& T, int a, int b) {
  const int n = T.n;
  for (int c = 0; c < n; ++c) T.at({b, a, c}) = -T.at({a, b, c});
}

}  // namespace

FrameTensor torsionTensor(const Frame& F,
                          const std::vector<std::vector<JVec>>& br,
                          TorsionMode mode) {
  const int n = F.n, m = F.m;
  const int q = F.order;
  const Point& p = F.point;
  FrameTensor T(p, n, 2, true, q - 1);

  auto hol = [&](int i) { return 2 + i; };
  auto ahol = [&](int i) { return 2 + m + i; };
  auto dsig = [&](const JVec& X, const JVec& Y) { return dOneForm(F.co[0], X, Y); };
  auto dsigs = [&](const JVec& X, const JVec& Y) { return dOneForm(F.co[1], X, Y); };
  auto lieg = [&](const JVec& X, const JVec& Y, const JVec& Z) {
    return lieMetric(F.g, X, Y, Z);
  };
  auto cf = [&](int c, const JVec& X) { return F.coeff(c, X).truncated(q - 1); };
  const JVec& nu = F.e[0];
  const JVec& nus = F.e[1];

  if (mode == TorsionMode::General) {
    // screen-screen holomorphic pairs
    for (int i = 0; i < m; ++i) {
      JVec flatZi = flat(F.g, F.e[hol(i)]);
      for (int j = 0; j < m; ++j) {
        const JVec& bij = br[hol(i)][hol(j)];
        for (int k = 0; k < m; ++k) {
          T.at({hol(i), hol(j), ahol(k)}) = -cf(ahol(k), bij);
          T.at({hol(i), hol(j), hol(k)}) =
              lieg(F.e[hol(i)], F.e[ahol(k)], F.e[hol(j)]) +
              dOneForm(flatZi, F.e[ahol(k)], F.e[hol(j)]);
        }
        T.at({hol(i), hol(j), 0}) = dsig(F.e[hol(i)], F.e[hol(j)]);
        T.at({hol(i), hol(j), 1}) = dsigs(F.e[hol(i)], F.e[hol(j)]);
        conjugateRow(F, T, hol(i), hol(j));
      }
    }
    // mixed screen pairs
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        T.at({hol(i), ahol(j), 0}) = dsig(F.e[hol(i)], F.e[ahol(j)]);
        T.at({hol(i), ahol(j), 1}) = dsigs(F.e[hol(i)], F.e[ahol(j)]);
        negateRow(T, hol(i), ahol(j));
      }
    // null directions against the holomorphic screen
    for (int i = 0; i < m; ++i) {
      const JVec& b0 = br[0][hol(i)];
      const JVec& b1 = br[1][hol(i)];
      Jet half_pair = lieg(F.e[hol(i)], nu, nus) * Complex(0.5);
      for (int k = 0; k < m; ++k) {
        T.at({0, hol(i), ahol(k)}) = -cf(ahol(k), b0);
        T.at({1, hol(i), ahol(k)}) = -cf(ahol(k), b1);
        T.at({0, hol(i), hol(k)}) =
            lieg(nu, F.e[hol(i)], F.e[ahol(k)]) * Complex(0.5);
        T.at({1, hol(i), hol(k)}) =
            lieg(nus, F.e[hol(i)], F.e[ahol(k)]) * Complex(0.5);
      }
      T.at({0, hol(i), 1}) = pairForm(lieOneForm(nu, F.co[1]), F.e[hol(i)]).truncated(q - 1);
      T.at({0, hol(i), 0}) = -half_pair;
      T.at({1, hol(i), 0}) = pairForm(lieOneForm(nus, F.co[0]), F.e[hol(i)]).truncated(q - 1);
      T.at({1, hol(i), 1}) = -half_pair;
      conjugateRow(F, T, 0, hol(i));
      conjugateRow(F, T, 1, hol(i));
      negateRow(T, 0, hol(i));
      negateRow(T, 1, hol(i));
      negateRow(T, 0, ahol(i));
      negateRow(T, 1, ahol(i));
    }
  } else {
    // simplified set valid when the twist equals the screen Kaehler form
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        const JVec& bij = br[hol(i)][hol(j)];
        for (int k = 0; k < m; ++k)
          T.at({hol(i), hol(j), ahol(k)}) = -cf(ahol(k), bij);
        T.at({hol(i), hol(j), 0}) = dsig(F.e[hol(i)], F.e[hol(j)]);
        conjugateRow(F, T, hol(i), hol(j));
        T.at({hol(i), ahol(j), 0}) = dsig(F.e[hol(i)], F.e[ahol(j)]);
        T.at({hol(i), ahol(j), 1}) =
            Jet::constant(p, i == j ? Complex(0.0, 1.0) : Complex(0.0), q - 1);
        negateRow(T, hol(i), ahol(j));
      }
      const JVec& b0 = br[0][hol(i)];
      const JVec& b1 = br[1][hol(i)];
      Jet lnsig = pairForm(lieOneForm(nu, F.co[0]), F.e[hol(i)]).truncated(q - 1);
      for (int k = 0; k < m; ++k) {
        T.at({0, hol(i), ahol(k)}) = -cf(ahol(k), b0);
        T.at({1, hol(i), ahol(k)}) = -cf(ahol(k), b1);
      }
      T.at({0, hol(i), 0}) = lnsig * Complex(0.5);
      T.at({1, hol(i), 0}) =
          pairForm(lieOneForm(nus, F.co[0]), F.e[hol(i)]).truncated(q - 1);
      T.at({1, hol(i), 1}) = lnsig * Complex(0.5);
      conjugateRow(F, T, 0, hol(i));
      conjugateRow(F, T, 1, hol(i));
      negateRow(T, 0, hol(i));
      negateRow(T, 1, hol(i));
      negateRow(T, 0, ahol(i));
      negateRow(T, 1, ahol(i));
    }
  }
  // null-null pair: minus the screen part of the bracket
  if (mode == TorsionMode::General) {
    const JVec& b01 = br[0][1];
    for (int c = 2; c < n; ++c) T.at({0, 1, c}) = -cf(c, b01);
  }
  negateRow(T, 0, 1);
  return T;
}

Connection buildConnection(const ManifoldSpec& spec, const Point& p, int order,
                           TorsionMode mode, bool fefferman_checked) {
  if (mode == TorsionMode::Fefferman && !fefferman_checked) {
    ClassifyResult r = classify(spec, {p}, std::min(order, 2));
    if (!r.fefferman_robinson)
      throw ModeMismatch("simplified torsion requested on a point where the "
                         "twist is not the screen Kaehler form");
  }
  Connection C;
  C.F = evaluateFrame(spec, p, order);
  C.mode = mode;
  const int n = C.F.n;
  C.brackets.assign(n, std::vector<JVec>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) C.brackets[a][b] = bracket(C.F.e[a], C.F.e[b]);
  C.T = torsionTensor(C.F, C.brackets, mode);

  const int q = order;
  const Frame& F = C.F;
  // frame metric coefficients and their directional derivatives
  std::vector<Jet> gf;
  gf.reserve(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) gf.push_back(F.pairG(F.e[a], F.e[b]));
  auto gfr = [&](int a, int b) -> const Jet& { return gf[a * n + b]; };
  auto gbr = [&](int a, int b, int c) {
    return metricPair(F.g, C.brackets[a][b], F.e[c]).truncated(q - 1);
  };
  auto gT = [&](int a, int b, int c) { return C.T.at({a, b, F.pair(c)}); };

  C.gamma = FrameTensor(p, n, 2, true, q - 1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int cc = 0; cc < n; ++cc) {
        int c = F.pair(cc);  // gamma_{ab}^{cc} = theta_{ab,c}
        Jet th = (dirDeriv(F.e[a], gfr(b, c)) + dirDeriv(F.e[b], gfr(a, c)) -
                  dirDeriv(F.e[c], gfr(a, b)) + gbr(a, b, c) - gbr(a, c, b) -
                  gbr(b, c, a)) *
                 Complex(0.5);
        Jet K = (gT(a, b, c) - gT(a, c, b) - gT(b, c, a)) * Complex(0.5);
        C.gamma.at({a, b, cc}) = th + K;
      }

  // the connection preserves each graded piece: gamma_{ab}^c vanishes unless
  // e_b and e_c sit in the same piece; record and remove the residue
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (C.typeOf(b) == C.typeOf(c)) continue;
        Jet& g = C.gamma.at({a, b, c});
        C.witt_residual = std::max(C.witt_residual, g.maxAbs());
        g = Jet::constant(p, Complex(0.0), q - 1);
      }
  return C;
}

Jet torsionLower(const Connection& C, int a, int b, int c) {
  return C.T.at({a, b, C.F.pair(c)});
}

Jet contorsion(const Connection& C, int a, int b, int c) {
  return (torsionLower(C, a, b, c) - torsionLower(C, a, c, b) -
          torsionLower(C, b, c, a)) *
         Complex(0.5);
}

FrameTensor covariantDerivative(const Connection& C, const FrameTensor& S) {
  const Frame& F = C.F;
  const int n = F.n;
  const int sord = S.comp.empty() ? 0 : S.comp[0].order();
  const int gord = C.gamma.comp[0].order();
  const int oord = std::min(sord - 1, gord);
  FrameTensor out(F.point, n, S.rank + 1, S.valued, oord);
  out.forEach([&](const std::vector<int>& idx) {
    const int a = idx[0];
    std::vector<int> inner(idx.begin() + 1, idx.end());
    Jet acc = dirDeriv(F.e[a], S.at(inner)).truncated(oord);
    std::vector<int> tmp = inner;
    for (int slot = 0; slot < S.rank; ++slot) {
      const int b = inner[slot];
      for (int e = 0; e < n; ++e) {
        tmp[slot] = e;
        acc -= mulT(C.gamma.at({a, b, e}), S.at(tmp)).truncated(oord);
      }
      tmp[slot] = b;
    }
    if (S.valued) {
      const int c = inner.back();
      for (int e = 0; e < n; ++e) {
        tmp.back() = e;
        acc += mulT(C.gamma.at({a, e, c}), S.at(tmp)).truncated(oord);
      }
    }
    out.at(idx) = acc;
  });
  return out;
}

namespace {

std::vector<int> removeSlots(const std::vector<int>& args, int i, int j = -1) {
  std::vector<int> out;
  for (int t = 0; t < static_cast<int>(args.size()); ++t)
    if (t != i && t != j) out.push_back(args[t]);
  return out;
}

}  // namespace

FrameTensor exteriorDerivativeViaNabla(const Connection& C, const FrameTensor& phi) {
  const Frame& F = C.F;
  const int n = F.n;
  const int k1 = phi.rank + 1;
  FrameTensor nab = covariantDerivative(C, phi);
  const int oord = nab.comp[0].order();
  FrameTensor out(F.point, n, k1, phi.valued, oord);
  out.forEach([&](const std::vector<int>& idx) {
    std::vector<int> args(idx.begin(), idx.begin() + k1);
    std::vector<int> value(idx.begin() + k1, idx.end());
    Jet acc = Jet::constant(F.point, Complex(0.0), oord);
    for (int i = 0; i < k1; ++i) {
      std::vector<int> rest = removeSlots(args, i);
      std::vector<int> slot = {args[i]};
      slot.insert(slot.end(), rest.begin(), rest.end());
      slot.insert(slot.end(), value.begin(), value.end());
      Jet term = nab.at(slot);
      acc += (i % 2 == 0) ? term : -term;
    }
    for (int i = 0; i < k1; ++i)
      for (int j = i + 1; j < k1; ++j) {
        std::vector<int> rest = removeSlots(args, i, j);
        double sign = ((i + j + 1) % 2 == 0) ? 1.0 : -1.0;
        for (int e = 0; e < n; ++e) {
          std::vector<int> slot = {e};
          slot.insert(slot.end(), rest.begin(), rest.end());
          slot.insert(slot.end(), value.begin(), value.end());
          acc += mulT(C.T.at({args[i], args[j], e}), phi.at(slot)).truncated(oord) *
                 Complex(sign);
        }
      }
    out.at(idx) = acc;
  });
  return out;
}

FrameTensor exteriorDerivativeViaBrackets(const Connection& C, const FrameTensor& phi) {
  const Frame& F = C.F;
  const int n = F.n;
  const int k1 = phi.rank + 1;
  const int pord = phi.comp[0].order();
  const int gord = C.gamma.comp[0].order();
  const int oord = std::min(pord - 1, gord);
  FrameTensor out(F.point, n, k1, phi.valued, oord);
  out.forEach([&](const std::vector<int>& idx) {
    std::vector<int> args(idx.begin(), idx.begin() + k1);
    std::vector<int> value(idx.begin() + k1, idx.end());
    Jet acc = Jet::constant(F.point, Complex(0.0), oord);
    for (int i = 0; i < k1; ++i) {
      std::vector<int> rest = removeSlots(args, i);
      std::vector<int> slot = rest;
      slot.insert(slot.end(), value.begin(), value.end());
      // nabla^E along e_{args[i]} of the E-valued function phi(rest)
      Jet term = dirDeriv(F.e[args[i]], phi.at(slot)).truncated(oord);
      if (phi.valued) {
        const int c = value[0];
        std::vector<int> tmp = rest;
        tmp.push_back(0);
        for (int e = 0; e < n; ++e) {
          tmp.back() = e;
          term += mulT(C.gamma.at({args[i], e, c}), phi.at(tmp)).truncated(oord);
        }
      }
      acc += (i % 2 == 0) ? term : -term;
    }
    for (int i = 0; i < k1; ++i)
      for (int j = i + 1; j < k1; ++j) {
        std::vector<int> rest = removeSlots(args, i, j);
        double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
        const JVec& br = C.brackets[args[i]][args[j]];
        for (int e = 0; e < n; ++e) {
          std::vector<int> slot = {e};
          slot.insert(slot.end(), rest.begin(), rest.end());
          slot.insert(slot.end(), value.begin(), value.end());
          acc += mulT(F.coeff(e, br), phi.at(slot)).truncated(oord) * Complex(sign);
        }
      }
    out.at(idx) = acc;
  });
  return out;
}

double torsionReconstructionResidual(const Connection& C) {
  const Frame& F = C.F;
  const int n = F.n;
  double res = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        Jet rec = subT(C.gamma.at({a, b, c}) - C.gamma.at({b, a, c}),
                       F.coeff(c, C.brackets[a][b]));
        res = std::max(res, subT(rec, C.T.at({a, b, c})).maxAbs());
      }
  return res;
}

double metricCompatibilityResidual(const Connection& C) {
  const Frame& F = C.F;
  const int n = F.n;
  std::vector<Jet> gf;
  gf.reserve(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) gf.push_back(F.pairG(F.e[a], F.e[b]));
  double res = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        Jet acc = dirDeriv(F.e[a], gf[b * n + c]);
        for (int e = 0; e < n; ++e) {
          acc -= mulT(C.gamma.at({a, b, e}), gf[e * n + c]);
          acc -= mulT(C.gamma.at({a, c, e}), gf[b * n + e]);
        }
        res = std::max(res, acc.maxAbs());
      }
  return res;
}

RealTorsionReport realTorsionPieces(const Connection& C) {
  const Frame& F = C.F;
  const int n = F.n, m = F.m, q = F.order;
  const Point& p = F.point;
  RealTorsionReport rep;

  // real screen basis u_k = Z_k + Zbar_k, v_k = i(Z_k - Zbar_k); J u = v
  std::vector<JVec> B;
  for (int k = 0; k < m; ++k) {
    B.push_back(vsum(F.e[2 + k], F.e[2 + m + k]));
    B.push_back(scaled(Jet::constant(p, Complex(0.0, 1.0), q),
                       vdiff(F.e[2 + k], F.e[2 + m + k])));
  }
  auto Jv = [&](const JVec& X) {
    JVec out = vzero(p, n, X[0].order());
    for (int k = 0; k < m; ++k) {
      Jet ch = F.coeff(2 + k, X);
      Jet ca = F.coeff(2 + m + k, X);
      out = vsum(out, scaled(ch * Complex(0.0, 1.0), vtrunc(F.e[2 + k], ch.order())));
      out = vsum(out,
                 scaled(ca * Complex(0.0, -1.0), vtrunc(F.e[2 + m + k], ca.order())));
    }
    return out;
  };

  // Kaehler two-form in coordinates and its exterior derivative
  std::vector<Jet> om(static_cast<std::size_t>(n) * n,
                      Jet::constant(p, Complex(0.0), q));
  for (int k = 0; k < m; ++k) {
    JVec fz = flat(F.g, F.e[2 + k]);
    JVec fzb = flat(F.g, F.e[2 + m + k]);
    for (int mu = 0; mu < n; ++mu)
      for (int nuI = 0; nuI < n; ++nuI)
        om[mu * n + nuI] +=
            Complex(0.0, 1.0) * (mulT(fzb[mu], fz[nuI]) - mulT(fz[mu], fzb[nuI]));
  }
  std::vector<Jet> dom = dTwoFormCoord(om);

  auto dcomega = [&](const JVec& X, const JVec& Y, const JVec& Z) {
    return -evalThreeForm(dom, Jv(X), Jv(Y), Jv(Z));
  };
  auto beta_plus = [&](const JVec& X, const JVec& Y, const JVec& Z) {
    return (dcomega(X, Y, Z) * Complex(3.0) + dcomega(X, Jv(Y), Jv(Z)) +
            dcomega(Jv(X), Y, Jv(Z)) + dcomega(Jv(X), Jv(Y), Z)) *
           Complex(0.25);
  };
  auto gamma3 = [&](const JVec& X, const JVec& Y, const JVec& Z) {
    // beta^+ - M(beta^+), M acting on the first two slots
    return beta_plus(X, Y, Z) - beta_plus(Jv(X), Jv(Y), Z);
  };
  auto screenSharp2 = [&](const std::function<Jet(const JVec&)>& alpha_last) {
    // vector V in the screen with g(V, W) = alpha(..., W)
    JVec V = vzero(p, n, q - 1);
    for (int k = 0; k < m; ++k) {
      V = vsum(V, scaled(alpha_last(F.e[2 + m + k]), vtrunc(F.e[2 + k], q - 1)));
      V = vsum(V, scaled(alpha_last(F.e[2 + k]), vtrunc(F.e[2 + m + k], q - 1)));
    }
    return V;
  };
  auto lieTwo = [&](const JVec& X, const JVec& Y, const JVec& Z) {
    Jet byz = evalTwoForm(om, Y, Z);
    int o = byz.order() - 1;
    return dirDeriv(X, byz) - evalTwoForm(om, bracket(X, Y), Z).truncated(o) -
           evalTwoForm(om, Y, bracket(X, Z)).truncated(o);
  };
  auto complexT = [&](int a, int b) {
    JVec V = vzero(p, n, q - 1);
    for (int c = 0; c < n; ++c)
      V = vsum(V, scaled(C.T.at({a, b, c}), vtrunc(F.e[c], q - 1)));
    return V;
  };
  auto expandT = [&](const std::vector<std::pair<int, Complex>>& xa,
                     const std::vector<std::pair<int, Complex>>& yb) {
    JVec V = vzero(p, n, q - 1);
    for (const auto& [a, ca] : xa)
      for (const auto& [b, cb] : yb)
        V = vsum(V, scaled(Jet::constant(p, ca * cb, q - 1), complexT(a, b)));
    return V;
  };
  auto basisLabels = [&](int t) -> std::vector<std::pair<int, Complex>> {
    int k = t / 2;
    if (t % 2 == 0)
      return {{2 + k, Complex(1.0)}, {2 + m + k, Complex(1.0)}};
    return {{2 + k, Complex(0.0, 1.0)}, {2 + m + k, Complex(0.0, -1.0)}};
  };
  auto maxv = [](const JVec& V) {
    double s = 0;
    for (const auto& j : V) s = std::max(s, j.maxAbs());
    return s;
  };

  // screen-screen components
  for (int s = 0; s < 2 * m; ++s)
    for (int t = 0; t < 2 * m; ++t) {
      const JVec& X = B[s];
      const JVec& Y = B[t];
      // N_J
      auto scr = [&](const JVec& V) { return F.projScreen(vtrunc(V, q - 1)); };
      JVec nj = vsum(vdiff(scr(bracket(X, Y)), scr(bracket(Jv(X), Jv(Y)))),
                     vsum(Jv(scr(bracket(Jv(X), Y))), Jv(scr(bracket(X, Jv(Y))))));
      rep.nj_max = std::max(rep.nj_max, maxv(nj));
      JVec sharp = screenSharp2(
          [&](const JVec& W) { return gamma3(X, Y, vtrunc(W, q - 1)); });
      rep.dc_omega_max =
          std::max(rep.dc_omega_max, std::abs(dcomega(X, Y, B[(t + 1) % (2 * m)]).value()));
      JVec Tr = vsum(scaled(Jet::constant(p, Complex(-0.25), q - 1), nj),
                     scaled(Jet::constant(p, Complex(0.5), q - 1), sharp));
      Tr = vsum(Tr, scaled(dOneForm(F.co[0], X, Y), vtrunc(F.e[0], q - 1)));
      Tr = vsum(Tr, scaled(dOneForm(F.co[1], X, Y), vtrunc(F.e[1], q - 1)));
      JVec Tc = expandT(basisLabels(s), basisLabels(t));
      rep.residual = std::max(rep.residual, maxv(vdiff(Tr, Tc)));
    }

  // rows along the null directions
  for (int which = 0; which < 2; ++which) {
    const JVec& nud = F.e[which];          // nu or nu*
    const JVec& codual = F.co[1 - which];  // sigma* for nu, sigma for nu*
    for (int t = 0; t < 2 * m; ++t) {
      const JVec& X = B[t];
      JVec tu = screenSharp2([&](const JVec& W) {
        return lieMetric(F.g, nud, X, vtrunc(W, q - 1)) * Complex(0.5);
      });
      rep.tu_max = std::max(rep.tu_max, maxv(tu));
      JVec JX = Jv(X);
      JVec lterm = screenSharp2([&](const JVec& W) {
        JVec Wq = vtrunc(W, q - 1);
        return (lieTwo(nud, JX, Wq) - lieTwo(nud, Jv(JX), Jv(Wq))) * Complex(0.25);
      });
      Jet lead = pairForm(lieOneForm(nud, codual), X).truncated(q - 1);
      Jet pairc = lieMetric(F.g, X, F.e[0], F.e[1]) * Complex(-0.5);
      JVec Tr = vsum(scaled(lead, vtrunc(F.e[1 - which], q - 1)),
                     scaled(pairc, vtrunc(nud, q - 1)));
      Tr = vsum(Tr, vsum(tu, lterm));
      JVec Tc = expandT({{which, Complex(1.0)}}, basisLabels(t));
      rep.residual = std::max(rep.residual, maxv(vdiff(Tr, Tc)));
    }
  }
  // the null-null component: minus the screen part of the bracket
  {
    JVec Tr = vneg(F.projScreen(vtrunc(C.brackets[0][1], q - 1)));
    JVec Tc = expandT({{0, Complex(1.0)}}, {{1, Complex(1.0)}});
    rep.residual = std::max(rep.residual, maxv(vdiff(Tr, Tc)));
  }
  return rep;
}

}  // namespace robinson
