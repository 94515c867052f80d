#include "robinson/calculus.hpp"

#include <cmath>

namespace robinson {

Jet dirDeriv(const JVec& X, const Jet& f) {
  Jet acc = mulT(X[0], f.derivative(0));
  for (std::size_t k = 1; k < X.size(); ++k) acc += mulT(X[k], f.derivative(k));
  return acc;
}

JVec bracket(const JVec& X, const JVec& Y) {
  JVec out;
  out.reserve(X.size());
  for (std::size_t k = 0; k < X.size(); ++k)
    out.push_back(subT(dirDeriv(X, Y[k]), dirDeriv(Y, X[k])));
  return out;
}

Jet metricPair(const std::vector<Jet>& g, const JVec& X, const JVec& Y) {
  const std::size_t n = X.size();
  int o = std::min(X[0].order(), Y[0].order());
  o = std::min(o, g[0].order());
  Jet acc = Jet::constant(X[0].basePoint(), Complex(0.0), o);
  for (std::size_t mu = 0; mu < n; ++mu)
    for (std::size_t nu = 0; nu < n; ++nu)
      acc += mulT(mulT(g[mu * n + nu], X[mu]), Y[nu]).truncated(o);
  return acc;
}

Jet pairForm(const JVec& alpha, const JVec& X) {
  int o = std::min(alpha[0].order(), X[0].order());
  Jet acc = Jet::constant(X[0].basePoint(), Complex(0.0), o);
  for (std::size_t mu = 0; mu < alpha.size(); ++mu)
    acc += mulT(alpha[mu], X[mu]).truncated(o);
  return acc;
}

JVec flat(const std::vector<Jet>& g, const JVec& X) {
  const std::size_t n = X.size();
  JVec out;
  out.reserve(n);
  for (std::size_t mu = 0; mu < n; ++mu) {
    Jet acc = mulT(g[mu * n + 0], X[0]);
    for (std::size_t nu = 1; nu < n; ++nu) acc += mulT(g[mu * n + nu], X[nu]);
    out.push_back(acc);
  }
  return out;
}

Jet dOneForm(const JVec& alpha, const JVec& X, const JVec& Y) {
  Jet aY = pairForm(alpha, Y);
  Jet aX = pairForm(alpha, X);
  JVec br = bracket(X, Y);
  return subT(subT(dirDeriv(X, aY), dirDeriv(Y, aX)), pairForm(alpha, br));
}

std::vector<Jet> dOneFormCoord(const JVec& alpha) {
  const std::size_t n = alpha.size();
  std::vector<Jet> out;
  out.reserve(n * n);
  for (std::size_t mu = 0; mu < n; ++mu)
    for (std::size_t nu = 0; nu < n; ++nu)
      out.push_back(alpha[nu].derivative(static_cast<int>(mu)) -
                    alpha[mu].derivative(static_cast<int>(nu)));
  return out;
}

Jet evalTwoForm(const std::vector<Jet>& beta, const JVec& X, const JVec& Y) {
  const std::size_t n = X.size();
  int o = std::min(beta[0].order(), std::min(X[0].order(), Y[0].order()));
  Jet acc = Jet::constant(X[0].basePoint(), Complex(0.0), o);
  for (std::size_t mu = 0; mu < n; ++mu)
    for (std::size_t nu = 0; nu < n; ++nu)
      acc += mulT(mulT(beta[mu * n + nu], X[mu]), Y[nu]).truncated(o);
  return acc;
}

std::vector<Jet> dTwoFormCoord(const std::vector<Jet>& beta) {
  const std::size_t n2 = beta.size();
  const std::size_t n = static_cast<std::size_t>(std::lround(std::sqrt(double(n2))));
  std::vector<Jet> out;
  out.reserve(n * n * n);
  auto B = [&](std::size_t a, std::size_t b) -> const Jet& { return beta[a * n + b]; };
  for (std::size_t mu = 0; mu < n; ++mu)
    for (std::size_t nu = 0; nu < n; ++nu)
      for (std::size_t rho = 0; rho < n; ++rho)
        out.push_back(B(nu, rho).derivative(static_cast<int>(mu)) -
                      B(mu, rho).derivative(static_cast<int>(nu)) +
                      B(mu, nu).derivative(static_cast<int>(rho)));
  return out;
}

Jet evalThreeForm(const std::vector<Jet>& gamma, const JVec& X, const JVec& Y,
                  const JVec& Z) {
  const std::size_t n = X.size();
  int o = std::min(std::min(gamma[0].order(), X[0].order()),
                   std::min(Y[0].order(), Z[0].order()));
  Jet acc = Jet::constant(X[0].basePoint(), Complex(0.0), o);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        const Jet& gabc = gamma[(a * n + b) * n + c];
        acc += mulT(mulT(mulT(gabc, X[a]), Y[b]), Z[c]).truncated(o);
      }
  return acc;
}

Jet lieMetric(const std::vector<Jet>& g, const JVec& X, const JVec& Y, const JVec& Z) {
  Jet gyz = metricPair(g, Y, Z);
  JVec bxy = bracket(X, Y);
  JVec bxz = bracket(X, Z);
  return subT(subT(dirDeriv(X, gyz), metricPair(g, bxy, Z)),
              metricPair(g, Y, bxz));
}

JVec lieOneForm(const JVec& X, const JVec& alpha) {
  const std::size_t n = X.size();
  JVec out;
  out.reserve(n);
  for (std::size_t mu = 0; mu < n; ++mu) {
    Jet acc = dirDeriv(X, alpha[mu]);
    for (std::size_t rho = 0; rho < n; ++rho)
      acc += mulT(alpha[rho], X[rho].derivative(static_cast<int>(mu)));
    out.push_back(acc);
  }
  return out;
}

JVec scaled(const Jet& f, const JVec& X) {
  JVec out;
  out.reserve(X.size());
  for (const auto& x : X) out.push_back(mulT(f, x));
  return out;
}
JVec vsum(const JVec& a, const JVec& b) {
  JVec out;
  out.reserve(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out.push_back(addT(a[k], b[k]));
  return out;
}
JVec vdiff(const JVec& a, const JVec& b) {
  JVec out;
  out.reserve(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out.push_back(subT(a[k], b[k]));
  return out;
}
JVec vneg(const JVec& a) {
  JVec out;
  out.reserve(a.size());
  for (const auto& x : a) out.push_back(-x);
  return out;
}
JVec vconj(const JVec& a) {
  JVec out;
  out.reserve(a.size());
  for (const auto& x : a) out.push_back(x.conj());
  return out;
}
JVec vtrunc(const JVec& a, int order) {
  JVec out;
  out.reserve(a.size());
  for (const auto& x : a) out.push_back(x.truncated(order));
  return out;
}
JVec vzero(const Point& p, int n, int order) {
  return JVec(static_cast<std::size_t>(n), Jet::constant(p, Complex(0.0), order));
}

std::vector<Jet> solveLinear(std::vector<std::vector<Jet>> M, std::vector<Jet> rhs) {
  const std::size_t rows = M.size();
  const std::size_t cols = M.empty() ? 0 : M[0].size();
  std::vector<int> pivot_col(rows, -1);
  std::vector<bool> used(cols, false);
  for (std::size_t r = 0; r < rows; ++r) {
    // pick pivot: unused column with max |constant term| in this row,
    // over remaining rows to allow swaps
    std::size_t best_r = r;
    std::size_t best_c = 0;
    double best = -1.0;
    for (std::size_t rr = r; rr < rows; ++rr) {
      for (std::size_t c = 0; c < cols; ++c) {
        if (used[c]) continue;
        double mag = std::abs(M[rr][c].value());
        if (mag > best) {
          best = mag;
          best_r = rr;
          best_c = c;
        }
      }
    }
    if (best < 1e-12) throw SingularSystem("solveLinear: rank deficient system");
    std::swap(M[r], M[best_r]);
    std::swap(rhs[r], rhs[best_r]);
    used[best_c] = true;
    pivot_col[r] = static_cast<int>(best_c);
    Jet inv = inverse(M[r][best_c]);
    for (std::size_t c = 0; c < cols; ++c) M[r][c] = mulT(M[r][c], inv);
    rhs[r] = mulT(rhs[r], inv);
    for (std::size_t rr = 0; rr < rows; ++rr) {
      if (rr == r) continue;
      Jet factor = M[rr][best_c];
      if (factor.maxAbs() == 0.0) continue;
      for (std::size_t c = 0; c < cols; ++c)
        M[rr][c] = subT(M[rr][c], mulT(factor, M[r][c]));
      rhs[rr] = subT(rhs[rr], mulT(factor, rhs[r]));
    }
  }
  std::vector<Jet> x(cols, Jet::constant(rhs[0].basePoint(), Complex(0.0), rhs[0].order()));
  for (std::size_t r = 0; r < rows; ++r) x[pivot_col[r]] = rhs[r];
  return x;
}

}  // namespace robinson
