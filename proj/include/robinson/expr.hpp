#pragma once

// Tiny expression language for manifold definition files and conformal
// factors: arithmetic, exp/log/sqrt, integer powers via ^, the complex
// literal i, and named chart coordinates.  Parsed once into a tree that is
// evaluated in jet arithmetic; symbolic differentiation is provided so
// derived frame fields stay serializable.

#include <memory>
#include <string>
#include <vector>

#include "robinson/jet.hpp"

namespace robinson {

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

class Expr {
public:
  enum class Kind { Const, Coord, Add, Sub, Mul, Div, Neg, Pow, Exp, Log, Sqrt };

  Kind kind;
  Complex cval{0.0, 0.0};  // Const
  int coord = -1;          // Coord
  int ipow = 0;            // Pow exponent
  ExprPtr a, b;

  static ExprPtr constant(Complex v);
  static ExprPtr coordinate(int idx);
  static ExprPtr make(Kind k, ExprPtr x, ExprPtr y = nullptr);
  static ExprPtr power(ExprPtr x, int k);

  Jet eval(const Point& p, int order) const;
  Complex evalValue(const Point& p) const;
  // symbolic d/dx_axis
  ExprPtr diff(int axis) const;
  // complex conjugate (valid because chart coordinates are real)
  ExprPtr conjugate() const;
  std::string toString(const std::vector<std::string>& coords) const;

  bool isZero() const { return kind == Kind::Const && cval == Complex(0.0); }
};

// Parse with the given coordinate names in scope.  "i" is the imaginary
// unit unless shadowed by a coordinate name.
ExprPtr parseExpr(const std::string& text, const std::vector<std::string>& coords);

ExprPtr operator+(ExprPtr x, ExprPtr y);
ExprPtr operator-(ExprPtr x, ExprPtr y);
ExprPtr operator*(ExprPtr x, ExprPtr y);
ExprPtr operator/(ExprPtr x, ExprPtr y);
ExprPtr operator-(ExprPtr x);

}  // namespace robinson
