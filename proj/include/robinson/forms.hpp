#pragma once

// Screen-form calculus: bigraded forms over the complexified screen with
// form slots and value slots, shift maps, contraction products, the wedge
// and Lefschetz-type operators, screen Dolbeault-type operators built from
// the adapted connection, and the named curvature tensors derived from them.

#include "robinson/curvature.hpp"

namespace robinson {

struct BidegreeUnderflow : JetError {
  explicit BidegreeUnderflow(const std::string& msg) : JetError(msg) {}
};
struct DegreeMismatch : JetError {
  explicit DegreeMismatch(const std::string& msg) : JetError(msg) {}
};
struct FieldRequired : JetError {
  explicit FieldRequired(const std::string& msg) : JetError(msg) {}
};

// A dense tensor over screen labels 0..2m-1 (0..m-1 holomorphic, m..2m-1
// anti-holomorphic) with k antisymmetric form slots and v antisymmetric
// value slots.  Declared bidegrees (p,q) / (r,s) are bookkeeping; -1 marks a
// mixed-type object.  Components are jets, all at one order.
class SForm {
public:
  int m = 0, k = 0, v = 0;
  int p = -1, q = -1, r = -1, s = -1;
  bool null = false;  // marks a zero of negative form degree
  Point point;
  std::vector<Jet> comp;

  SForm() = default;
  SForm(const Point& pt, int m_, int k_, int v_, int order);

  int order() const { return comp.empty() ? 0 : comp[0].order(); }
  std::size_t index(const std::vector<int>& idx) const;  // k+v labels
  Jet& at(const std::vector<int>& idx) { return comp[index(idx)]; }
  const Jet& at(const std::vector<int>& idx) const { return comp[index(idx)]; }
  double maxAbs() const;

  SForm& declare(int p_, int q_, int r_, int s_);
};

// linear operations (orders reconciled by truncation)
SForm add(const SForm& a, const SForm& b);
SForm sub(const SForm& a, const SForm& b);
SForm scale(const SForm& a, Complex c);
SForm scaleJet(const SForm& a, const Jet& c);

// wedge on the form slots and on the value slots (shuffle convention)
SForm wedge(const SForm& a, const SForm& b);

// plug a screen label into the first form / value slot
SForm interiorForm(const SForm& a, int label);
SForm interiorValue(const SForm& a, int label);

// elementary covectors as forms: dual basis label a (holomorphic for a < m)
SForm covectorForm(const Point& pt, int m, int a, int order);
SForm covectorValue(const Point& pt, int m, int a, int order);

// the screen Kaehler form (adapted basis: i on (Z_i, Zbar_i) pairs), k=2
SForm omegaForm(const Point& pt, int m, int order);

// shift maps between form and value slots; declared bidegrees required
SForm tShift(const SForm& a);     // (p,q) -> (p-1,q), value (r+1,s)
SForm tbarShift(const SForm& a);  // (p,q) -> (p,q-1), value (r,s+1)
SForm cShift(const SForm& a);     // contract first form slot with first value slot

// full k-fold contraction product: form part of the result carries a's value
// slots, value part carries b's value slots
SForm circ(const SForm& a, const SForm& b, int k);
SForm bracketComm(const SForm& a, const SForm& b, int k);   // a o b - b o a
SForm bracketAnti(const SForm& a, const SForm& b, int k);   // a o b + b o a

// complex conjugation composed with the holomorphic/anti-holomorphic label
// swap on every slot; exchanges the declared bidegrees
SForm conjSwap(const SForm& a);

// reinterpretations (dense layout unchanged, slot roles swapped)
SForm valueAsForm(const SForm& a);          // requires k == 0
SForm formAsValue(const SForm& a);          // requires v == 0
SForm asValues(const SForm& a);             // (k=1,v=1) -> (k=0,v=2), no sign
// (k=1,v=1) -> 2-form via (x,y) -> (a(x;y) - a(y;x)) / 2; the normalization
// makes the degree-one contraction bracket of shifted forms reproduce the
// Kaehler-form pairing identities
SForm flatten11(const SForm& a);
Jet traceValue(const SForm& a);             // v=2: sum over (Z_i, Zbar_i) value pairs
SForm traceValueForm(const SForm& a);       // same, keeping the form slots
Jet trace2Form(const SForm& a);             // k=2,v=0: sum over (Z_i, Zbar_i)

// Lefschetz-type operators
SForm LS(const SForm& a);        // omega wedge a
SForm LambdaS(const SForm& a);   // -i sum Zbar_i . (Z_i . a)

// covariant derivative along a frame label (corrections on all screen slots)
SForm covDeriv(const Connection& C, const SForm& a, int frameLabel);

// Dolbeault-type operators; throw FieldRequired when the components carry no
// derivative information (jet order 0)
SForm del(const Connection& C, const SForm& a);        // sum Z_i* ^ nabla_{Z_i}
SForm delBar(const Connection& C, const SForm& a);     // sum Zbar_i* ^ nabla_{Zbar_i}
SForm delStar(const Connection& C, const SForm& a);    // -sum Z_i . nabla_{Zbar_i}
SForm delBarStar(const Connection& C, const SForm& a); // -sum Zbar_i . nabla_{Z_i}
SForm boxS(const Connection& C, const SForm& a);       // del delStar + delStar del
SForm boxBarS(const Connection& C, const SForm& a);

// curvature-hierarchy objects packaged as SForms
struct HierarchyForms {
  SForm a10, a01;          // A_{nu*} restricted to (1,0)^2 / (0,1)^2, k=1,v=1
  SForm a20, a02;          // same data as pure value tensors, k=0,v=2
  SForm ric10, ric01;      // Ricci as (1,0)- and (0,1)-forms with values
  SForm p10, p01;          // Schouten-type, same typing
  SForm pForm;             // Schouten-type as a (1,1)-form, k=2
  SForm rc11, cm11;        // projected and Moser-type curvature, k=2,v=2
  SForm r20;               // curvature (2,0)-part with screen values, k=2,v=2
  Jet scalar;              // adapted scalar
};
HierarchyForms hierarchyForms(const Connection& C, const Curvature& R,
                              const Hierarchy& H);

struct NamedTensors {
  SForm rho;               // screen 1-form
  SForm c_y, c_y0;         // Omega^{1,1}(M; (S^{1,0})^*)
  SForm c_ybar, c_ybar0;   // conjugate versions
  SForm q_c;               // k=0, v=2 (both pure-type blocks)
  SForm b_c, b_c0;         // (1,1)-forms
};
NamedTensors namedTensors(const Connection& C, const Curvature& R,
                          const Hierarchy& H);

}  // namespace robinson
