#pragma once

// Coordinate-level differential operations on jet-valued vector/covector
// components: directional derivatives, Lie brackets, Lie derivatives,
// exterior derivatives, metric pairings and a small jet-valued linear
// solver.  Everything is pointwise against jets; no symbolic layer.

#include <vector>

#include "robinson/jet.hpp"

namespace robinson {

using JVec = std::vector<Jet>;  // coordinate components of a vector/covector

// X(f): directional derivative; drops the jet order by one.
Jet dirDeriv(const JVec& X, const Jet& f);

// [X,Y]^k = X^j d_j Y^k - Y^j d_j X^k (order drops by one)
JVec bracket(const JVec& X, const JVec& Y);

// g(X,Y) with g given as n*n row-major coordinate components
Jet metricPair(const std::vector<Jet>& g, const JVec& X, const JVec& Y);

// alpha(X) for a coordinate 1-form
Jet pairForm(const JVec& alpha, const JVec& X);

// X^flat: (g X)_mu
JVec flat(const std::vector<Jet>& g, const JVec& X);

// d of a 1-form evaluated on vector fields:
// d alpha(X,Y) = X(alpha(Y)) - Y(alpha(X)) - alpha([X,Y])
Jet dOneForm(const JVec& alpha, const JVec& X, const JVec& Y);

// coordinate components of d alpha for a 1-form: (dalpha)_{mu nu}
std::vector<Jet> dOneFormCoord(const JVec& alpha);

// evaluate an antisymmetric coordinate 2-form (row-major n*n) on vectors
Jet evalTwoForm(const std::vector<Jet>& beta, const JVec& X, const JVec& Y);

// coordinate components of d beta for a 2-form (n^3, index (mu,nu,rho))
std::vector<Jet> dTwoFormCoord(const std::vector<Jet>& beta);

Jet evalThreeForm(const std::vector<Jet>& gamma, const JVec& X, const JVec& Y,
                  const JVec& Z);

// (L_X g)(Y,Z) = X(g(Y,Z)) - g([X,Y],Z) - g(Y,[X,Z])
Jet lieMetric(const std::vector<Jet>& g, const JVec& X, const JVec& Y, const JVec& Z);

// coordinate components of L_X alpha for a 1-form
JVec lieOneForm(const JVec& X, const JVec& alpha);

// component helpers
JVec scaled(const Jet& f, const JVec& X);
JVec vsum(const JVec& a, const JVec& b);
JVec vdiff(const JVec& a, const JVec& b);
JVec vneg(const JVec& a);
JVec vconj(const JVec& a);
JVec vtrunc(const JVec& a, int order);
JVec vzero(const Point& p, int n, int order);

// Solve M x = rhs where M is rows x cols of jets (rows <= cols); free
// variables are set to zero.  Pivoting on constant-term magnitude.
struct SingularSystem : JetError {
  explicit SingularSystem(const std::string& msg) : JetError(msg) {}
};
std::vector<Jet> solveLinear(std::vector<std::vector<Jet>> M, std::vector<Jet> rhs);

}  // namespace robinson
