#pragma once

// Executable residual checks for the torsion/curvature identities of the
// adapted connection: the torsion-twisted first Bianchi identity and its
// graded block decomposition, the second Bianchi identity, the operator-form
// restatements through the screen Dolbeault calculus, the Cotton/Cartan/Bach
// derived-tensor identities, the structural consequences of an adapted
// pairing, and the closed curvature formula for Einstein-type structures
// with parallel deformation tensor.  Each suite returns a CheckReport of
// labelled residual rows with pass/fail against absolute+relative tolerances.

#include "robinson/conformal.hpp"
#include "robinson/forms.hpp"

namespace robinson {

struct CheckRecord {
  std::string label;  // human-readable identity name
  std::string ref;    // stable machine id of the check
  Point point;        // sample point (empty for aggregate rows)
  double residual = 0;
  double scale = 0;  // largest summand entering the comparison
  bool pass = false;
};

struct CheckReport {
  std::string suite;
  std::string spec_name;
  unsigned seed = 0;
  int jet_order = 0;
  double tol_abs = 1e-8;
  double tol_rel = 1e-6;
  std::string not_applicable;  // non-empty: hypotheses failed, named here
  std::vector<CheckRecord> records;

  void add(const std::string& label, const std::string& ref, const Point& p,
           double residual, double scale);
  bool allPass() const;
  double worstResidual() const;
};

struct SuiteOptions {
  unsigned seed = 1;
  int jet_order = 3;
  double tol_abs = 1e-8;
  double tol_rel = 1e-6;
  int threads = 1;
};

// Torsion-twisted cyclic symmetrization of the curvature against the
// exterior covariant derivative of the torsion on all frame triples, plus
// (when the structure flags allow) the graded block formulas expressing the
// curvature through the integrability, deformation and twist tensors, and
// the three torsion-only alternating-derivative identities.
CheckReport firstBianchiSuite(const ManifoldSpec& spec,
                              const std::vector<Point>& pts,
                              const SuiteOptions& opts);

// The four differential consequences of d^nabla R = 0 on a maximally
// twisted shear-free structure; throws PreconditionFlag otherwise.
CheckReport secondBianchiSuite(const ManifoldSpec& spec,
                               const std::vector<Point>& pts,
                               const SuiteOptions& opts);

// The same hierarchy restated through the screen Dolbeault operators acting
// on the packaged curvature forms; throws PreconditionFlag when the
// structure is not maximally twisted shear-free.
CheckReport operatorBianchiSuite(const ManifoldSpec& spec,
                                 const std::vector<Point>& pts,
                                 const SuiteOptions& opts);

// Derivative identities of the Cotton-, Cartan- and Bach-type tensors built
// from the trace-free curvature form, including the trace-adjusted variant.
CheckReport cottonCartanBachSuite(const ManifoldSpec& spec,
                                  const std::vector<Point>& pts,
                                  const SuiteOptions& opts);

// Structural consequences of an adapted optical pairing: partial
// integrability, invariance of the screen Kaehler form along both null
// directions, screen-flatness of their bracket, and the graded decomposition
// of the metric Lie derivative.  Runs leniently so a deliberately broken
// pairing reports nonzero residuals instead of crashing; throws
// PreconditionFlag when the structure is not maximally twisted.
CheckReport pairingConsequencesSuite(const ManifoldSpec& spec,
                                     const std::vector<Point>& pts,
                                     const SuiteOptions& opts);

// Guarded evaluator for the closed-form curvature of Einstein-type
// structures with screen-parallel deformation tensor.  Hypothesis detectors
// run first; when one fails the report carries `not_applicable` plus the
// detector residuals.  A synthetic one-point substitution check of the two
// closed forms against the trace-adjustment pipeline always runs.
CheckReport einsteinFormulaSuite(const ManifoldSpec& spec,
                                 const std::vector<Point>& pts,
                                 const SuiteOptions& opts);

// Commutator and contraction identities of the screen Dolbeault calculus on
// seeded random bigraded forms over the given manifold.
CheckReport kahlerIdentitiesSuite(const ManifoldSpec& spec,
                                  const std::vector<Point>& pts,
                                  const SuiteOptions& opts);

// Classification flags as informational residual rows (always passing).
CheckReport classifySuite(const ManifoldSpec& spec,
                          const std::vector<Point>& pts,
                          const SuiteOptions& opts);

// Conformal-rescaling law suites wrapped as reports; `lambda_text` is the
// scalar factor expression (empty selects a zero factor).
CheckReport conformalSuite(const ManifoldSpec& spec,
                           const std::string& lambda_text,
                           const std::vector<Point>& pts,
                           const SuiteOptions& opts);
CheckReport appendixSuite(const ManifoldSpec& spec,
                          const std::string& lambda_text,
                          const std::vector<Point>& pts,
                          const SuiteOptions& opts);

}  // namespace robinson
