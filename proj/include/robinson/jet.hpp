#pragma once

// Truncated multivariate Taylor arithmetic over complex scalars.
// A Jet carries the value and all partial derivatives (scaled by 1/alpha!)
// of a function at a chart point, up to a fixed total order.  All downstream
// differential geometry is built on top of this type; derivatives are exact
// up to floating round-off.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace robinson {

using Complex = std::complex<double>;
using Point = std::vector<double>;

struct JetError : std::runtime_error {
  explicit JetError(const std::string& msg) : std::runtime_error(msg) {}
};
struct OrderMismatch : JetError {
  explicit OrderMismatch(const std::string& msg) : JetError(msg) {}
};
struct DivisionByZeroJet : JetError {
  explicit DivisionByZeroJet(const std::string& msg) : JetError(msg) {}
};
struct BranchCut : JetError {
  explicit BranchCut(const std::string& msg) : JetError(msg) {}
};
struct OrderExceeded : JetError {
  explicit OrderExceeded(const std::string& msg) : JetError(msg) {}
};

// Shared multi-index tables for a fixed (dim, order).  Cached globally;
// lookup is cheap and thread-safe after first construction.
class JetSpace {
public:
  static const JetSpace& get(int dim, int order);

  int dim = 0;
  int order = 0;
  int count = 0;                          // number of multi-indices |alpha| <= order
  std::vector<std::vector<int>> alpha;    // count x dim exponent rows
  std::vector<int> degree;                // |alpha| per row
  std::vector<double> factorial;          // alpha! per row

  struct MulTerm {
    int a, b, out;
  };
  std::vector<MulTerm> mul_plan;          // all products that stay within order

  // raise[idx*dim + axis] = row of alpha + e_axis, or -1 if that exceeds order
  std::vector<int> raise_idx;

  int indexOf(const std::vector<int>& a) const;  // -1 if absent

private:
  JetSpace(int dim_, int order_);
};

class Jet {
public:
  Jet() = default;
  Jet(Point base, int order)
      : base_(std::move(base)), order_(order),
        space_(&JetSpace::get(static_cast<int>(base_.size()), order)),
        c_(space_->count, Complex(0.0, 0.0)) {}

  // Jet of the coordinate function x^axis.
  static Jet seed(const Point& p, int axis, int order);
  // Constant function.
  static Jet constant(const Point& p, Complex value, int order);

  int order() const { return order_; }
  int dim() const { return static_cast<int>(base_.size()); }
  const Point& basePoint() const { return base_; }
  const JetSpace& space() const { return *space_; }
  const std::vector<Complex>& coeffs() const { return c_; }
  std::vector<Complex>& coeffs() { return c_; }

  Complex value() const { return c_.empty() ? Complex(0) : c_[0]; }
  // d^alpha f at the base point (= alpha! * stored coefficient).
  Complex partial(const std::vector<int>& alpha) const;

  Jet truncated(int new_order) const;   // drop coefficients above new_order
  // Partial derivative along one chart axis; result order drops by one.
  Jet derivative(int axis) const;

  Jet operator-() const;
  Jet conj() const;

  friend Jet operator+(const Jet& a, const Jet& b);
  friend Jet operator-(const Jet& a, const Jet& b);
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator+(const Jet& a, Complex s);
  friend Jet operator+(Complex s, const Jet& a);
  friend Jet operator-(const Jet& a, Complex s);
  friend Jet operator-(Complex s, const Jet& a);
  friend Jet operator*(const Jet& a, Complex s);
  friend Jet operator*(Complex s, const Jet& a);
  friend Jet operator/(const Jet& a, Complex s);

  Jet& operator+=(const Jet& b);
  Jet& operator-=(const Jet& b);

  friend Jet exp(const Jet& a);
  friend Jet log(const Jet& a);
  friend Jet sqrt(const Jet& a);
  friend Jet inverse(const Jet& a);
  friend Jet pow_int(const Jet& a, int k);

  // max |coefficient|
  double maxAbs() const;

private:
  void requireCompatible(const Jet& other) const;
  // f(c0 + h) with series coefficients series[k] on h^k, h = this minus c0.
  Jet compose(const std::vector<Complex>& series) const;

  Point base_;
  int order_ = -1;
  const JetSpace* space_ = nullptr;
  std::vector<Complex> c_;
};

// Multiply after truncating both operands to the smaller order.  Internal
// helper for mixed-order pipelines (a derivative drops the order by one).
Jet mulT(const Jet& a, const Jet& b);
Jet addT(const Jet& a, const Jet& b);
Jet subT(const Jet& a, const Jet& b);

}  // namespace robinson
