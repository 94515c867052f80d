#pragma once

// Curvature of the adapted connection and the screen curvature hierarchy:
// Kaehler-like projection, the projected curvature tensor, its Ricci trace,
// scalar, Schouten-type and Moser-type tensors, the Lie-derivative A-tensors,
// and the Einstein-type predicate.

#include "robinson/connection.hpp"

namespace robinson {

struct SymmetryViolation : JetError {
  explicit SymmetryViolation(const std::string& msg) : JetError(msg) {}
};

struct Curvature {
  Connection C;
  FrameTensor riem;  // R_{ab c}^d = coeff of R(e_a,e_b)e_c (rank 3, valued)
  FrameTensor rm;    // lowered R(e_a,e_b,e_c,e_d) = g(R(e_a,e_b)e_c, e_d)
};

// R(X,Y)Z = [nabla_X, nabla_Y] Z - nabla_{[X,Y]} Z on the frame
Curvature buildCurvature(const Connection& C);

// restriction of the lowered curvature to screen labels; slot index s in
// [0, 2m) maps to frame label 2+s
FrameTensor screenRestriction(const Curvature& R);

// Kaehler-like projection of a screen 4-tensor antisymmetric in the slot
// pairs (1,2) and (3,4); the frame diagonalises J so J-insertions act as
// +/- i scalings.  Throws SymmetryViolation if the input pairs are not
// antisymmetric.
FrameTensor kahlerLikeProjection(const FrameTensor& Q, int m);

// mixed-slot four-term average, extended by pair antisymmetry; the
// independent route to the projected curvature tensor
FrameTensor chernCurvatureSimple(const Curvature& R);

// b(Q)(X,Y,Z,W) = Q(X,Y,Z,W)+Q(Z,X,Y,W)+Q(Y,Z,X,W), max residual
double bianchiSymmetrization(const FrameTensor& Q);

struct Hierarchy {
  int m = 0;
  FrameTensor Rc;          // projected curvature over screen labels (2m)^4
  std::vector<Jet> ric;    // m*m: Ric(Z_i, Zbar_j)
  Jet scalar;              // adapted trace of ric
  std::vector<Jet> schouten;  // m*m: metric-displayed form
  double schouten_forms_residual = 0;  // metric form vs Kaehler-form form
  double ricci_forms_residual = 0;     // the two displayed Ricci traces
  FrameTensor cm;          // trace-free Moser-type tensor, (2m)^4
  std::vector<Jet> a_nu;       // 2m x 2m: (1/2)(L_nu g) on the screen
  std::vector<Jet> a_nustar;   // 2m x 2m: (1/2)(L_nu* g) on the screen
};
Hierarchy buildHierarchy(const Curvature& R);

struct EinsteinCheck {
  bool is_einstein = false;
  std::vector<Complex> f_samples;  // fitted factor in Ric = f * omega
  double residual = 0;             // max |Ric - f omega| over points
  double f_formula_residual = 0;   // |f + i s / m| when Einstein
  double schouten_formula_residual = 0;  // |P + i s omega / (2m(m+1))|
};
EinsteinCheck einsteinCheck(const ManifoldSpec& spec,
                            const std::vector<Point>& points, int order,
                            double tol);

}  // namespace robinson
