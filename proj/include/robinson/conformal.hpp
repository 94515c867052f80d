#pragma once

// Optical conformal rescaling: g -> e^{2 lambda} g with the adapted frame
// transformation (the null direction is fixed, its dual picks up screen and
// null corrections, screen vectors shear into the null line), plus verifiers
// for the transformation laws of the connection, the curvature hierarchy,
// the deformation tensor and the contorsion under such rescalings.

#include "robinson/curvature.hpp"

namespace robinson {

struct NotInCInfinityNu : JetError {
  explicit NotInCInfinityNu(const std::string& msg) : JetError(msg) {}
};
struct PreconditionFlag : JetError {
  explicit PreconditionFlag(const std::string& msg) : JetError(msg) {}
};

// A real scalar factor with d lambda(nu) = 0; expression-backed so that all
// chart derivatives stay exact.
struct ConformalFactor {
  Field lambda;
  ExprPtr expr;
  std::string text;

  static ConformalFactor parse(const std::string& text, const ManifoldSpec& spec);
  static ConformalFactor zero(const ManifoldSpec& spec);
};

// Throws NotInCInfinityNu when lambda is not real or d lambda(nu) != 0 at a
// sample point.
void requireOptical(const ManifoldSpec& spec, const ConformalFactor& cf,
                    const std::vector<Point>& pts, double tol = 1e-10);

// New spec over the same chart with metric e^{2 lambda} g and the
// transformed optical pairing and screen frame; the screen vectors are
// renormalized by e^{-lambda} so the Witt pairing stays exact.
ManifoldSpec rescale(const ManifoldSpec& spec, const ConformalFactor& cf);

struct ResidualRow {
  std::string label;
  double residual = 0;
  double scale = 0;  // largest summand entering the comparison
};
struct ResidualTable {
  std::vector<ResidualRow> rows;
  void add(const std::string& label, double residual, double scale);
  double maxResidual() const;
  const ResidualRow& row(const std::string& label) const;
};

// Rescaled Kaehler form: null contractions, compatibility with the rescaled
// structure, the exterior-derivative and Lie-derivative laws, and the
// transformed coframe.
ResidualTable checkRescaledStructure(const ManifoldSpec& spec,
                                     const ConformalFactor& cf,
                                     const std::vector<Point>& pts, int order);

// Transformation law of (nabla Y^flat) on the four frame directions; needs a
// geodetic structure.
ResidualTable checkConnectionLaw(const ManifoldSpec& spec,
                                 const ConformalFactor& cf,
                                 const std::vector<Point>& pts, int order);

// Vector-level transformation of nabla on holomorphic screen fields; needs a
// strongly geodetic structure with exact Kaehler potential.
ResidualTable checkScreenConnectionLaw(const ManifoldSpec& spec,
                                       const ConformalFactor& cf,
                                       const std::vector<Point>& pts, int order);

// Transformation of the lowered curvature, the projected curvature, its
// Ricci trace, scalar, Schouten-type tensor, and the conformal invariance of
// the trace-free Moser-type tensor (screen dimension >= 2).
ResidualTable checkCurvatureLaws(const ManifoldSpec& spec,
                                 const ConformalFactor& cf,
                                 const std::vector<Point>& pts, int order);

// Transformation of the shear/deformation tensor along the dual direction.
ResidualTable checkDeformationLaw(const ManifoldSpec& spec,
                                  const ConformalFactor& cf,
                                  const std::vector<Point>& pts, int order);

// Contorsion identities: the general rescaling formula for metric
// connections with torsion, and the four closed-form contorsion evaluations
// on the transformed frame directions.
ResidualTable checkContorsionLaws(const ManifoldSpec& spec,
                                  const ConformalFactor& cf,
                                  const std::vector<Point>& pts, int order);

}  // namespace robinson
