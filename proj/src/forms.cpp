#include "robinson/forms.hpp"

#include <cmath>

namespace robinson {

namespace {

int conjLbl(int a, int m) { return a < m ? a + m : a - m; }

// enumerate all index tuples of length len with digits in [0, base)
void odometer(int len, int base, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(len, 0);
  while (true) {
    fn(idx);
    int t = len - 1;
    while (t >= 0 && ++idx[t] == base) idx[t--] = 0;
    if (t < 0) break;
  }
}

// sign of the shuffle moving the selected positions to the front
int shuffleSign(const std::vector<int>& sel, int /*total*/) {
  int jumps = 0;
  for (std::size_t j = 0; j < sel.size(); ++j)
    jumps += sel[j] - static_cast<int>(j);
  return (jumps % 2 == 0) ? 1 : -1;
}

void requireSameShape(const SForm& a, const SForm& b) {
  if (a.m != b.m || a.k != b.k || a.v != b.v)
    throw DegreeMismatch("form shapes differ");
}

}  // namespace

SForm::SForm(const Point& pt, int m_, int k_, int v_, int order) {
  m = m_;
  k = k_;
  v = v_;
  point = pt;
  std::size_t sz = 1;
  for (int t = 0; t < k + v; ++t) sz *= static_cast<std::size_t>(2 * m);
  comp.assign(sz, Jet::constant(pt, Complex(0.0), order));
}

std::size_t SForm::index(const std::vector<int>& idx) const {
  std::size_t out = 0;
  for (int t = 0; t < k + v; ++t)
    out = out * static_cast<std::size_t>(2 * m) + static_cast<std::size_t>(idx[t]);
  return out;
}

double SForm::maxAbs() const {
  double r = 0;
  for (const Jet& j : comp) r = std::max(r, j.maxAbs());
  return r;
}

SForm& SForm::declare(int p_, int q_, int r_, int s_) {
  p = p_;
  q = q_;
  r = r_;
  s = s_;
  return *this;
}

SForm add(const SForm& a, const SForm& b) {
  if (a.null) return b;
  if (b.null) return a;
  requireSameShape(a, b);
  SForm out = a;
  for (std::size_t i = 0; i < out.comp.size(); ++i)
    out.comp[i] = addT(a.comp[i], b.comp[i]);
  if (a.p != b.p || a.q != b.q || a.r != b.r || a.s != b.s)
    out.declare(-1, -1, -1, -1);
  return out;
}

SForm sub(const SForm& a, const SForm& b) {
  if (b.null) return a;
  if (a.null) return scale(b, Complex(-1.0));
  requireSameShape(a, b);
  SForm out = a;
  for (std::size_t i = 0; i < out.comp.size(); ++i)
    out.comp[i] = subT(a.comp[i], b.comp[i]);
  if (a.p != b.p || a.q != b.q || a.r != b.r || a.s != b.s)
    out.declare(-1, -1, -1, -1);
  return out;
}

SForm scale(const SForm& a, Complex c) {
  SForm out = a;
  for (Jet& j : out.comp) j = j * c;
  return out;
}

SForm scaleJet(const SForm& a, const Jet& c) {
  SForm out = a;
  for (Jet& j : out.comp) j = mulT(j, c);
  return out;
}

SForm wedge(const SForm& a, const SForm& b) {
  if (a.null) return a;
  if (b.null) return b;
  if (a.m != b.m) throw DegreeMismatch("wedge over different screens");
  const int m2 = 2 * a.m;
  const int K = a.k + b.k, V = a.v + b.v;
  int o = std::min(a.comp.empty() ? 0 : a.order(), b.comp.empty() ? 0 : b.order());
  SForm out(a.point, a.m, K, V, o);

  // precompute subsets of form and value positions assigned to `a`
  std::vector<std::vector<int>> fsel, vsel;
  {
    std::vector<int> cur;
    std::function<void(int, int, int, std::vector<std::vector<int>>&)> rec =
        [&](int start, int need, int total, std::vector<std::vector<int>>& dst) {
          if (need == 0) {
            dst.push_back(cur);
            return;
          }
          for (int i = start; i <= total - need; ++i) {
            cur.push_back(i);
            rec(i + 1, need - 1, total, dst);
            cur.pop_back();
          }
        };
    rec(0, a.k, K, fsel);
    cur.clear();
    rec(0, a.v, V, vsel);
  }

  odometer(K + V, m2, [&](const std::vector<int>& idx) {
    Jet acc = Jet::constant(a.point, Complex(0.0), o);
    std::vector<int> ia(a.k + a.v), ib(b.k + b.v);
    for (const auto& fs : fsel)
      for (const auto& vs : vsel) {
        int sgn = shuffleSign(fs, K) * shuffleSign(vs, V);
        std::vector<bool> inf(K, false), inv(V, false);
        for (int x : fs) inf[x] = true;
        for (int x : vs) inv[x] = true;
        int pa = 0, pb = 0;
        for (int t = 0; t < K; ++t)
          (inf[t] ? ia[pa++] : ib[pb++]) = idx[t];
        int qa = a.k, qb = b.k;
        for (int t = 0; t < V; ++t)
          (inv[t] ? ia[qa++] : ib[qb++]) = idx[K + t];
        Jet term = mulT(a.at(ia), b.at(ib));
        acc = sgn > 0 ? addT(acc, term) : subT(acc, term);
      }
    out.at(idx) = acc;
  });
  if (a.p >= 0 && b.p >= 0)
    out.declare(a.p + b.p, a.q + b.q, a.r + b.r, a.s + b.s);
  return out;
}

SForm interiorForm(const SForm& a, int label) {
  if (a.k == 0) throw BidegreeUnderflow("no form slot to contract");
  SForm out(a.point, a.m, a.k - 1, a.v, a.order());
  odometer(a.k - 1 + a.v, 2 * a.m, [&](const std::vector<int>& idx) {
    std::vector<int> full;
    full.reserve(a.k + a.v);
    full.push_back(label);
    full.insert(full.end(), idx.begin(), idx.end());
    out.at(idx) = a.at(full);
  });
  return out;
}

SForm interiorValue(const SForm& a, int label) {
  if (a.v == 0) throw BidegreeUnderflow("no value slot to contract");
  SForm out(a.point, a.m, a.k, a.v - 1, a.order());
  odometer(a.k + a.v - 1, 2 * a.m, [&](const std::vector<int>& idx) {
    std::vector<int> full(idx.begin(), idx.begin() + a.k);
    full.push_back(label);
    full.insert(full.end(), idx.begin() + a.k, idx.end());
    out.at(idx) = a.at(full);
  });
  return out;
}

SForm covectorForm(const Point& pt, int m, int a, int order) {
  SForm out(pt, m, 1, 0, order);
  out.at({a}) = Jet::constant(pt, Complex(1.0), order);
  out.declare(a < m ? 1 : 0, a < m ? 0 : 1, 0, 0);
  return out;
}

SForm covectorValue(const Point& pt, int m, int a, int order) {
  SForm out(pt, m, 0, 1, order);
  out.at({a}) = Jet::constant(pt, Complex(1.0), order);
  out.declare(0, 0, a < m ? 1 : 0, a < m ? 0 : 1);
  return out;
}

SForm omegaForm(const Point& pt, int m, int order) {
  SForm out(pt, m, 2, 0, order);
  for (int i = 0; i < m; ++i) {
    out.at({i, m + i}) = Jet::constant(pt, Complex(0.0, 1.0), order);
    out.at({m + i, i}) = Jet::constant(pt, Complex(0.0, -1.0), order);
  }
  out.declare(1, 1, 0, 0);
  return out;
}

SForm tShift(const SForm& a) {
  if (a.p < 0) throw DegreeMismatch("shift needs a declared bidegree");
  if (a.p == 0) throw BidegreeUnderflow("no holomorphic form slot for the shift");
  SForm out(a.point, a.m, a.k - 1, a.v + 1, a.order());
  for (int i = 0; i < a.m; ++i)
    out = add(out, wedge(covectorValue(a.point, a.m, i, a.order()),
                         interiorForm(a, i)));
  out = scale(out, Complex(-1.0));
  out.declare(a.p - 1, a.q, a.r + 1, a.s);
  return out;
}

SForm tbarShift(const SForm& a) {
  if (a.q < 0) throw DegreeMismatch("shift needs a declared bidegree");
  if (a.q == 0) throw BidegreeUnderflow("no anti-holomorphic form slot for the shift");
  SForm out(a.point, a.m, a.k - 1, a.v + 1, a.order());
  for (int i = 0; i < a.m; ++i)
    out = add(out, wedge(covectorValue(a.point, a.m, a.m + i, a.order()),
                         interiorForm(a, a.m + i)));
  out = scale(out, Complex(-1.0));
  out.declare(a.p, a.q - 1, a.r, a.s + 1);
  return out;
}

SForm cShift(const SForm& a) {
  if (a.k == 0 || a.v == 0)
    throw BidegreeUnderflow("contraction needs one slot of each kind");
  SForm out(a.point, a.m, a.k - 1, a.v - 1, a.order());
  for (int i = 0; i < 2 * a.m; ++i)
    out = add(out, interiorValue(interiorForm(a, i), conjLbl(i, a.m)));
  return out;
}

SForm circ(const SForm& a, const SForm& b, int k) {
  if (a.k != k || b.k != k) throw DegreeMismatch("contraction product degree");
  if (a.m != b.m) throw DegreeMismatch("different screens");
  const int m2 = 2 * a.m;
  int o = std::min(a.order(), b.order());
  SForm out(a.point, a.m, a.v, b.v, o);
  double kfact = 1.0;
  for (int t = 2; t <= k; ++t) kfact *= t;
  odometer(a.v + b.v, m2, [&](const std::vector<int>& idx) {
    std::vector<int> F(idx.begin(), idx.begin() + a.v);
    std::vector<int> V(idx.begin() + a.v, idx.end());
    Jet acc = Jet::constant(a.point, Complex(0.0), o);
    odometer(k, m2, [&](const std::vector<int>& x) {
      std::vector<int> ia = x, ib(k);
      ia.insert(ia.end(), F.begin(), F.end());
      for (int t = 0; t < k; ++t) ib[t] = conjLbl(x[t], a.m);
      ib.insert(ib.end(), V.begin(), V.end());
      acc = addT(acc, mulT(a.at(ia), b.at(ib)));
    });
    out.at(idx) = acc * Complex(1.0 / kfact);
  });
  return out;
}

SForm bracketComm(const SForm& a, const SForm& b, int k) {
  return sub(circ(a, b, k), circ(b, a, k));
}

SForm bracketAnti(const SForm& a, const SForm& b, int k) {
  return add(circ(a, b, k), circ(b, a, k));
}

SForm conjSwap(const SForm& a) {
  SForm out = a;
  odometer(a.k + a.v, 2 * a.m, [&](const std::vector<int>& idx) {
    std::vector<int> jdx(idx.size());
    for (std::size_t t = 0; t < idx.size(); ++t) jdx[t] = conjLbl(idx[t], a.m);
    out.comp[out.index(jdx)] = a.comp[a.index(idx)].conj();
  });
  out.declare(a.q, a.p, a.s, a.r);
  return out;
}

SForm valueAsForm(const SForm& a) {
  if (a.k != 0) throw DegreeMismatch("value-to-form needs no form slots");
  SForm out = a;
  out.k = a.v;
  out.v = 0;
  out.declare(a.r, a.s, 0, 0);
  return out;
}

SForm formAsValue(const SForm& a) {
  if (a.v != 0) throw DegreeMismatch("form-to-value needs no value slots");
  SForm out = a;
  out.v = a.k;
  out.k = 0;
  out.declare(0, 0, a.p, a.q);
  return out;
}

SForm asValues(const SForm& a) {
  if (a.k != 1 || a.v != 1) throw DegreeMismatch("expected one slot of each kind");
  SForm out = a;
  out.k = 0;
  out.v = 2;
  out.declare(0, 0, -1, -1);
  return out;
}

SForm flatten11(const SForm& a) {
  if (a.k != 1 || a.v != 1) throw DegreeMismatch("expected one slot of each kind");
  SForm out(a.point, a.m, 2, 0, a.order());
  for (int x = 0; x < 2 * a.m; ++x)
    for (int y = 0; y < 2 * a.m; ++y)
      out.at({x, y}) = subT(a.at({x, y}), a.at({y, x})) * Complex(0.5);
  return out;
}

Jet traceValue(const SForm& a) {
  if (a.v != 2 || a.k != 0) throw DegreeMismatch("trace needs two value slots");
  Jet acc = Jet::constant(a.point, Complex(0.0), a.order());
  for (int i = 0; i < a.m; ++i) acc += a.at({i, a.m + i});
  return acc;
}

SForm traceValueForm(const SForm& a) {
  if (a.v != 2) throw DegreeMismatch("trace needs two value slots");
  SForm out(a.point, a.m, a.k, 0, a.order());
  odometer(a.k, 2 * a.m, [&](const std::vector<int>& idx) {
    Jet acc = Jet::constant(a.point, Complex(0.0), a.order());
    for (int i = 0; i < a.m; ++i) {
      std::vector<int> full = idx;
      full.push_back(i);
      full.push_back(a.m + i);
      acc += a.at(full);
    }
    out.at(idx) = acc;
  });
  out.declare(a.p, a.q, 0, 0);
  return out;
}

Jet trace2Form(const SForm& a) {
  if (a.k != 2 || a.v != 0) throw DegreeMismatch("trace needs a 2-form");
  Jet acc = Jet::constant(a.point, Complex(0.0), a.order());
  for (int i = 0; i < a.m; ++i) acc += a.at({i, a.m + i});
  return acc;
}

SForm LS(const SForm& a) {
  if (a.null) return a;
  SForm out = wedge(omegaForm(a.point, a.m, a.order()), a);
  if (a.p >= 0) out.declare(a.p + 1, a.q + 1, a.r, a.s);
  return out;
}

SForm LambdaS(const SForm& a) {
  if (a.null) return a;
  SForm out(a.point, a.m, a.k - 2 >= 0 ? a.k - 2 : 0, a.v, a.order());
  if (a.k < 2) {  // the result lives in negative degree: a propagating zero
    out.null = true;
    return out;
  }
  for (int i = 0; i < a.m; ++i)
    out = add(out, interiorForm(interiorForm(a, i), a.m + i));
  out = scale(out, Complex(0.0, -1.0));
  if (a.p >= 0) out.declare(a.p - 1 >= 0 ? a.p - 1 : -1,
                            a.q - 1 >= 0 ? a.q - 1 : -1, a.r, a.s);
  return out;
}

SForm covDeriv(const Connection& C, const SForm& a, int frameLabel) {
  if (a.null) return a;
  if (a.order() < 1)
    throw FieldRequired("covariant derivative needs jet components of order >= 1");
  const Frame& F = C.F;
  const int m2 = 2 * a.m;
  SForm out(a.point, a.m, a.k, a.v, a.order() - 1);
  odometer(a.k + a.v, m2, [&](const std::vector<int>& idx) {
    Jet acc = dirDeriv(F.e[frameLabel], a.at(idx));
    for (int t = 0; t < a.k + a.v; ++t)
      for (int c = 0; c < m2; ++c) {
        std::vector<int> alt = idx;
        alt[t] = c;
        acc = subT(acc, mulT(C.gamma.at({frameLabel, 2 + idx[t], 2 + c}), a.at(alt)));
      }
    out.at(idx) = acc;
  });
  out.declare(a.p, a.q, a.r, a.s);
  return out;
}

namespace {
void requireField(const SForm& a) {
  if (a.order() < 1)
    throw FieldRequired("derivative operators need jet components of order >= 1");
}
}  // namespace

SForm del(const Connection& C, const SForm& a) {
  if (a.null) return a;
  requireField(a);
  SForm out(a.point, a.m, a.k + 1, a.v, a.order() - 1);
  for (int i = 0; i < a.m; ++i)
    out = add(out, wedge(covectorForm(a.point, a.m, i, a.order() - 1),
                         covDeriv(C, a, 2 + i)));
  if (a.p >= 0) out.declare(a.p + 1, a.q, a.r, a.s);
  return out;
}

SForm delBar(const Connection& C, const SForm& a) {
  if (a.null) return a;
  requireField(a);
  SForm out(a.point, a.m, a.k + 1, a.v, a.order() - 1);
  for (int i = 0; i < a.m; ++i)
    out = add(out, wedge(covectorForm(a.point, a.m, a.m + i, a.order() - 1),
                         covDeriv(C, a, 2 + a.m + i)));
  if (a.p >= 0) out.declare(a.p, a.q + 1, a.r, a.s);
  return out;
}

SForm delStar(const Connection& C, const SForm& a) {
  if (a.null) return a;
  if (a.k == 0) {
    SForm out(a.point, a.m, 0, a.v, a.order());
    out.null = true;
    return out;
  }
  requireField(a);
  SForm out(a.point, a.m, a.k - 1, a.v, a.order() - 1);
  for (int i = 0; i < a.m; ++i)
    out = add(out, interiorForm(covDeriv(C, a, 2 + a.m + i), i));
  out = scale(out, Complex(-1.0));
  if (a.p >= 0) out.declare(a.p - 1, a.q, a.r, a.s);
  return out;
}

SForm delBarStar(const Connection& C, const SForm& a) {
  if (a.null) return a;
  if (a.k == 0) {
    SForm out(a.point, a.m, 0, a.v, a.order());
    out.null = true;
    return out;
  }
  requireField(a);
  SForm out(a.point, a.m, a.k - 1, a.v, a.order() - 1);
  for (int i = 0; i < a.m; ++i)
    out = add(out, interiorForm(covDeriv(C, a, 2 + i), a.m + i));
  out = scale(out, Complex(-1.0));
  if (a.p >= 0) out.declare(a.p, a.q - 1, a.r, a.s);
  return out;
}

SForm boxS(const Connection& C, const SForm& a) {
  return add(del(C, delStar(C, a)), delStar(C, del(C, a)));
}

SForm boxBarS(const Connection& C, const SForm& a) {
  return add(delBar(C, delBarStar(C, a)), delBarStar(C, delBar(C, a)));
}

HierarchyForms hierarchyForms(const Connection& C, const Curvature& R,
                              const Hierarchy& H) {
  const Frame& F = C.F;
  const int m = F.m, m2 = 2 * m;
  const Point& p = F.point;
  const int oa = F.order - 1, oc = F.order - 2;
  HierarchyForms out;

  out.a10 = SForm(p, m, 1, 1, oa);
  out.a01 = SForm(p, m, 1, 1, oa);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      out.a10.at({x, y}) = H.a_nustar[x * m2 + y];
      out.a01.at({m + x, m + y}) = H.a_nustar[(m + x) * m2 + (m + y)];
    }
  out.a10.declare(1, 0, 1, 0);
  out.a01.declare(0, 1, 0, 1);
  out.a20 = asValues(out.a10);
  out.a02 = asValues(out.a01);

  auto pack = [&](const std::vector<Jet>& tab, bool holoForm) {
    SForm f(p, m, 1, 1, oc);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        if (holoForm)
          f.at({i, m + j}) = tab[i * m + j];   // T^{1,0}(X)(Ybar) = T(X, Ybar)
        else
          f.at({m + j, i}) = tab[i * m + j];   // T^{0,1}(Ybar)(X) = T(X, Ybar)
      }
    f.declare(holoForm ? 1 : 0, holoForm ? 0 : 1, holoForm ? 0 : 1,
              holoForm ? 1 : 0);
    return f;
  };
  out.ric10 = pack(H.ric, true);
  out.ric01 = pack(H.ric, false);
  out.p10 = pack(H.schouten, true);
  out.p01 = pack(H.schouten, false);

  out.pForm = SForm(p, m, 2, 0, oc);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      out.pForm.at({i, m + j}) = H.schouten[i * m + j];
      out.pForm.at({m + j, i}) = -H.schouten[i * m + j];
    }
  out.pForm.declare(1, 1, 0, 0);

  out.rc11 = SForm(p, m, 2, 2, oc);
  out.rc11.comp = H.Rc.comp;
  out.rc11.declare(1, 1, 1, 1);
  out.cm11 = SForm(p, m, 2, 2, oc);
  out.cm11.comp = H.cm.comp;
  out.cm11.declare(1, 1, 1, 1);

  out.r20 = SForm(p, m, 2, 2, oc);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      for (int c = 0; c < m2; ++c)
        for (int d = 0; d < m2; ++d)
          out.r20.at({x, y, c, d}) = R.rm.at({2 + x, 2 + y, 2 + c, 2 + d});
  out.r20.declare(2, 0, -1, -1);

  out.scalar = H.scalar;
  return out;
}

NamedTensors namedTensors(const Connection& C, const Curvature& R,
                          const Hierarchy& H) {
  const Frame& F = C.F;
  const int m = F.m;
  const Point& p = F.point;
  HierarchyForms hf = hierarchyForms(C, R, H);
  NamedTensors out;

  // screen differential of the scalar
  SForm dss(p, m, 1, 0, F.order - 3);
  for (int x = 0; x < 2 * m; ++x)
    dss.at({x}) = dirDeriv(F.e[2 + x], H.scalar).truncated(F.order - 3);

  SForm dsA = valueAsForm(delStar(C, hf.a10));      // (1,0)-form
  SForm dbsA = valueAsForm(delBarStar(C, hf.a01));  // (0,1)-form
  out.rho = add(scale(dss, Complex(1.0 / (2.0 * (m + 1)))),
                scale(sub(dsA, dbsA), Complex(0.0, 1.0)));

  auto typePart = [&](const SForm& f, bool holo) {
    SForm g = f;
    for (int x = 0; x < 2 * m; ++x)
      if ((x < m) != holo) g.at({x}) = Jet::constant(p, Complex(0.0), f.order());
    g.declare(holo ? 1 : 0, holo ? 0 : 1, 0, 0);
    return g;
  };
  SForm rho10 = typePart(out.rho, true);
  SForm rho01 = typePart(out.rho, false);

  SForm om = omegaForm(p, m, F.order - 1);
  SForm om10 = tbarShift(om);
  SForm om01 = tShift(om);

  const Complex invMp2(1.0 / (m + 2));
  out.c_ybar =
      add(add(del(C, hf.a01), scale(delBar(C, hf.p10), Complex(0.0, 1.0))),
          scale(wedge(om10, rho01), invMp2));
  out.c_ybar0 = add(out.c_ybar,
                    scale(wedge(om, formAsValue(rho01)), Complex(2.0) * invMp2));
  // the deformation and Schouten data are real, so the holomorphic side is
  // the conjugate-swap of the anti-holomorphic side
  out.c_y = conjSwap(out.c_ybar);
  out.c_y0 = conjSwap(out.c_ybar0);

  // symmetrized screen derivative of a 1-form, per type
  auto symNabla = [&](const SForm& r1, bool holo) {
    SForm g(p, m, 0, 2, r1.order() - 1);
    int base = holo ? 0 : m;
    for (int x = 0; x < m; ++x) {
      SForm dx = covDeriv(C, r1, 2 + base + x);
      for (int y = 0; y < m; ++y) {
        SForm dy = covDeriv(C, r1, 2 + base + y);
        g.at({base + x, base + y}) = addT(dx.at({base + y}), dy.at({base + x}));
      }
    }
    return g;
  };
  SForm qc = sub(SForm(p, m, 0, 2, F.order - 2),
                 add(covDeriv(C, hf.a20, 1), covDeriv(C, hf.a02, 1)));
  // the value-pair orientation of the contraction bracket flips the sign of
  // the holomorphic block relative to the anti-holomorphic one
  qc = add(qc, scale(sub(asValues(bracketAnti(hf.a10, hf.p01, 1)),
                         asValues(bracketAnti(hf.a01, hf.p10, 1))),
                     Complex(0.0, 1.0)));
  qc = add(qc, scale(add(symNabla(rho10, true), symNabla(rho01, false)), invMp2));
  out.q_c = qc;

  out.b_c = scale(sub(del(C, rho01), delBar(C, rho10)), invMp2);
  out.b_c = sub(out.b_c, flatten11(bracketComm(hf.a10, hf.a01, 1)));
  out.b_c = sub(out.b_c, flatten11(bracketComm(hf.p10, hf.p01, 1)));

  Jet corr = (delBarStar(C, rho01).comp[0] + delStar(C, rho10).comp[0]) * invMp2;
  corr = addT(corr, trace2Form(flatten11(bracketComm(hf.a10, hf.a01, 1))));
  corr = addT(corr, trace2Form(flatten11(bracketComm(hf.p10, hf.p01, 1))));
  out.b_c0 = sub(out.b_c,
                 scaleJet(omegaForm(p, m, corr.order()),
                          corr * (Complex(0.0, 1.0) / double(m))));

  out.c_y.declare(1, 1, 1, 0);
  out.c_y0.declare(1, 1, 1, 0);
  out.c_ybar.declare(1, 1, 0, 1);
  out.c_ybar0.declare(1, 1, 0, 1);
  out.b_c.declare(1, 1, 0, 0);
  out.b_c0.declare(1, 1, 0, 0);
  return out;
}

}  // namespace robinson
