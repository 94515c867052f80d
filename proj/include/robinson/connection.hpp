#pragma once

// The canonical metric connection adapted to the null structure: torsion
// prescribed on the graded frame (general recipe or the simplified twisted
// form), connection coefficients via the Koszul rearrangement with
// contorsion, covariant and exterior covariant derivatives on frame-indexed
// tensors, and the real-form torsion pieces.

#include "robinson/frame.hpp"

namespace robinson {

struct ModeMismatch : JetError {
  explicit ModeMismatch(const std::string& msg) : JetError(msg) {}
};

enum class TorsionMode { General, Fefferman };

// Dense tensor over adapted-frame labels: `rank` covariant slots, plus one
// trailing contravariant (value) slot when `valued`.
class FrameTensor {
public:
  int n = 0;
  int rank = 0;
  bool valued = false;
  std::vector<Jet> comp;

  FrameTensor() = default;
  FrameTensor(const Point& p, int n_, int rank_, bool valued_, int order);

  int slots() const { return rank + (valued ? 1 : 0); }
  std::size_t index(const std::vector<int>& idx) const;
  Jet& at(const std::vector<int>& idx) { return comp[index(idx)]; }
  const Jet& at(const std::vector<int>& idx) const { return comp[index(idx)]; }
  double maxAbs() const;

  // iterate over all index tuples
  void forEach(const std::function<void(const std::vector<int>&)>& fn) const;
};

struct Connection {
  Frame F;
  TorsionMode mode = TorsionMode::General;
  std::vector<std::vector<JVec>> brackets;  // frame-field brackets
  FrameTensor T;      // torsion T_{ab}^c (rank 2, valued)
  FrameTensor gamma;  // coefficients Gamma_{ab}^c (rank 2, valued)
  double witt_residual = 0.0;  // off-pattern magnitude removed from gamma

  // graded piece of a frame label: 0 = null line, 1 = dual line,
  // 2 = holomorphic screen, 3 = anti-holomorphic screen
  int typeOf(int label) const;
};

// Build frame, torsion and connection coefficients at a point.  `order` is
// the frame jet order; gamma is carried at order-1.  Fefferman mode checks
// the structure flags at the point unless `fefferman_checked` is set.
Connection buildConnection(const ManifoldSpec& spec, const Point& p, int order,
                           TorsionMode mode = TorsionMode::General,
                           bool fefferman_checked = false);

// Torsion alone on an existing frame.
FrameTensor torsionTensor(const Frame& F,
                          const std::vector<std::vector<JVec>>& brackets,
                          TorsionMode mode);

// g(T(e_a,e_b), e_c)
Jet torsionLower(const Connection& C, int a, int b, int c);

// contorsion K(a,b,c) = (g(T(a,b),c) - g(T(a,c),b) - g(T(b,c),a)) / 2
Jet contorsion(const Connection& C, int a, int b, int c);

// (nabla_a S)_{b...}^{(c)}: new covariant slot in front
FrameTensor covariantDerivative(const Connection& C, const FrameTensor& S);

// exterior covariant derivative of an antisymmetric valued k-form, both
// textbook expansions; their difference is a diagnostic for tests
FrameTensor exteriorDerivativeViaNabla(const Connection& C, const FrameTensor& phi);
FrameTensor exteriorDerivativeViaBrackets(const Connection& C, const FrameTensor& phi);

// residual of re-deriving T from gamma: Gamma_{ab}^c - Gamma_{ba}^c - [a,b]^c
double torsionReconstructionResidual(const Connection& C);
// max |(nabla_a g)(e_b, e_c)|
double metricCompatibilityResidual(const Connection& C);

struct RealTorsionReport {
  double nj_max = 0;        // Nijenhuis-type screen tensor
  double dc_omega_max = 0;  // twisted exterior derivative of the Kaehler form
  double tu_max = 0;        // screen shear pieces
  double residual = 0;      // assembled real torsion vs complex torsion
};
RealTorsionReport realTorsionPieces(const Connection& C);

}  // namespace robinson
