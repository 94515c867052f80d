#include "robinson/jet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace robinson {

namespace {

// all compositions of `deg` into `dim` parts, lexicographic by position
void compositions(int dim, int deg, int pos, std::vector<int>& cur,
                  std::vector<std::vector<int>>& out) {
  if (pos == dim - 1) {
    cur[pos] = deg;
    out.push_back(cur);
    return;
  }
  for (int v = deg; v >= 0; --v) {
    cur[pos] = v;
    compositions(dim, deg - v, pos + 1, cur, out);
  }
}

// graded enumeration of all alpha with |alpha| <= order
void enumerate(int dim, int order, std::vector<std::vector<int>>& out) {
  std::vector<int> cur(dim, 0);
  for (int deg = 0; deg <= order; ++deg) compositions(dim, deg, 0, cur, out);
}

std::uint64_t keyOf(const std::vector<int>& a, int order) {
  std::uint64_t key = 0;
  const std::uint64_t radix = static_cast<std::uint64_t>(order) + 1;
  for (int v : a) key = key * radix + static_cast<std::uint64_t>(v);
  return key;
}

}  // namespace

JetSpace::JetSpace(int dim_, int order_) : dim(dim_), order(order_) {
  if (dim < 1) throw JetError("JetSpace: dimension must be positive");
  if (order < 0) throw JetError("JetSpace: negative order");
  if (dim == 1) {
    for (int d = 0; d <= order; ++d) alpha.push_back({d});
  } else {
    enumerate(dim, order, alpha);
  }
  count = static_cast<int>(alpha.size());
  degree.resize(count);
  factorial.resize(count);
  std::map<std::uint64_t, int> lut;
  for (int i = 0; i < count; ++i) {
    int deg = 0;
    double fact = 1.0;
    for (int v : alpha[i]) {
      deg += v;
      for (int t = 2; t <= v; ++t) fact *= t;
    }
    degree[i] = deg;
    factorial[i] = fact;
    lut[keyOf(alpha[i], order)] = i;
  }
  raise_idx.assign(static_cast<std::size_t>(count) * dim, -1);
  std::vector<int> tmp(dim);
  for (int i = 0; i < count; ++i) {
    for (int ax = 0; ax < dim; ++ax) {
      if (degree[i] + 1 > order) continue;
      tmp = alpha[i];
      tmp[ax] += 1;
      auto it = lut.find(keyOf(tmp, order));
      if (it != lut.end()) raise_idx[static_cast<std::size_t>(i) * dim + ax] = it->second;
    }
  }
  for (int i = 0; i < count; ++i) {
    for (int j = 0; j < count; ++j) {
      if (degree[i] + degree[j] > order) continue;
      for (int ax = 0; ax < dim; ++ax) tmp[ax] = alpha[i][ax] + alpha[j][ax];
      auto it = lut.find(keyOf(tmp, order));
      mul_plan.push_back({i, j, it->second});
    }
  }
}

const JetSpace& JetSpace::get(int dim, int order) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<JetSpace>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(dim, order);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, std::unique_ptr<JetSpace>(new JetSpace(dim, order))).first;
  }
  return *it->second;
}

int JetSpace::indexOf(const std::vector<int>& a) const {
  for (int i = 0; i < count; ++i) {
    if (alpha[i] == a) return i;
  }
  return -1;
}

Jet Jet::seed(const Point& p, int axis, int order) {
  if (axis < 0 || axis >= static_cast<int>(p.size()))
    throw JetError("seed: axis out of range");
  if (order < 1) throw JetError("seed: order must be >= 1");
  Jet j(p, order);
  j.c_[0] = Complex(p[axis], 0.0);
  std::vector<int> e(p.size(), 0);
  e[axis] = 1;
  j.c_[j.space_->indexOf(e)] = Complex(1.0, 0.0);
  return j;
}

Jet Jet::constant(const Point& p, Complex value, int order) {
  Jet j(p, order);
  j.c_[0] = value;
  return j;
}

Complex Jet::partial(const std::vector<int>& alpha) const {
  int deg = 0;
  for (int v : alpha) deg += v;
  if (deg > order_) throw OrderExceeded("partial: multi-index degree exceeds jet order");
  int idx = space_->indexOf(alpha);
  if (idx < 0) throw JetError("partial: bad multi-index");
  return c_[idx] * space_->factorial[idx];
}

Jet Jet::truncated(int new_order) const {
  if (new_order > order_) throw OrderExceeded("truncated: cannot raise jet order");
  if (new_order == order_) return *this;
  if (new_order < 0) throw OrderExceeded("truncated: order underflow");
  Jet out(base_, new_order);
  const JetSpace& tgt = *out.space_;
  // both enumerations are graded, and rows of equal degree agree in order
  for (int i = 0; i < tgt.count; ++i) out.c_[i] = c_[i];
  return out;
}

Jet Jet::derivative(int axis) const {
  if (order_ < 1) throw OrderExceeded("derivative: jet order underflow");
  if (axis < 0 || axis >= dim()) throw JetError("derivative: axis out of range");
  Jet out(base_, order_ - 1);
  const JetSpace& tgt = *out.space_;
  for (int i = 0; i < tgt.count; ++i) {
    int up = space_->raise_idx[static_cast<std::size_t>(i) * dim() + axis];
    // row i has the same multi-index in both spaces (graded enumeration)
    out.c_[i] = c_[up] * static_cast<double>(space_->alpha[up][axis]);
  }
  return out;
}

void Jet::requireCompatible(const Jet& other) const {
  if (order_ != other.order_)
    throw OrderMismatch("jet arithmetic: operand orders differ");
  if (base_ != other.base_)
    throw OrderMismatch("jet arithmetic: operand base points differ");
}

Jet Jet::operator-() const {
  Jet out = *this;
  for (auto& v : out.c_) v = -v;
  return out;
}

Jet Jet::conj() const {
  Jet out = *this;
  for (auto& v : out.c_) v = std::conj(v);
  return out;
}

Jet operator+(const Jet& a, const Jet& b) {
  a.requireCompatible(b);
  Jet out = a;
  for (int i = 0; i < out.space_->count; ++i) out.c_[i] += b.c_[i];
  return out;
}

Jet operator-(const Jet& a, const Jet& b) {
  a.requireCompatible(b);
  Jet out = a;
  for (int i = 0; i < out.space_->count; ++i) out.c_[i] -= b.c_[i];
  return out;
}

Jet operator*(const Jet& a, const Jet& b) {
  a.requireCompatible(b);
  Jet out(a.base_, a.order_);
  for (const auto& t : a.space_->mul_plan) out.c_[t.out] += a.c_[t.a] * b.c_[t.b];
  return out;
}

Jet operator+(const Jet& a, Complex s) {
  Jet out = a;
  out.c_[0] += s;
  return out;
}
Jet operator+(Complex s, const Jet& a) { return a + s; }
Jet operator-(const Jet& a, Complex s) { return a + (-s); }
Jet operator-(Complex s, const Jet& a) { return (-a) + s; }
Jet operator*(const Jet& a, Complex s) {
  Jet out = a;
  for (auto& v : out.c_) v *= s;
  return out;
}
Jet operator*(Complex s, const Jet& a) { return a * s; }
Jet operator/(const Jet& a, Complex s) { return a * (Complex(1.0) / s); }

Jet& Jet::operator+=(const Jet& b) {
  requireCompatible(b);
  for (int i = 0; i < space_->count; ++i) c_[i] += b.c_[i];
  return *this;
}
Jet& Jet::operator-=(const Jet& b) {
  requireCompatible(b);
  for (int i = 0; i < space_->count; ++i) c_[i] -= b.c_[i];
  return *this;
}

Jet Jet::compose(const std::vector<Complex>& series) const {
  // series[k] multiplies h^k where h = *this with constant part removed
  Jet h = *this;
  h.c_[0] = Complex(0.0);
  Jet out = Jet::constant(base_, series[0], order_);
  Jet hpow = Jet::constant(base_, Complex(1.0), order_);
  for (int k = 1; k <= order_ && k < static_cast<int>(series.size()); ++k) {
    hpow = hpow * h;
    out += hpow * series[k];
  }
  return out;
}

Jet inverse(const Jet& a) {
  Complex c0 = a.value();
  if (std::abs(c0) == 0.0) throw DivisionByZeroJet("inverse: zero constant term");
  // 1/(c0+h) = sum (-1)^k h^k / c0^{k+1}
  std::vector<Complex> s(a.order() + 1);
  for (int k = 0; k <= a.order(); ++k) {
    s[k] = (k % 2 == 0 ? Complex(1.0) : Complex(-1.0));
    for (int t = 0; t <= k; ++t) s[k] /= c0;
  }
  return a.compose(s);
}

Jet operator/(const Jet& a, const Jet& b) { return a * inverse(b); }

Jet exp(const Jet& a) {
  Complex e0 = std::exp(a.value());
  std::vector<Complex> s(a.order() + 1);
  double kfact = 1.0;
  for (int k = 0; k <= a.order(); ++k) {
    if (k > 0) kfact *= k;
    s[k] = e0 / kfact;
  }
  return a.compose(s);
}

Jet log(const Jet& a) {
  Complex c0 = a.value();
  if (c0.real() <= 0.0 && std::abs(c0.imag()) < 1e-300)
    throw BranchCut("log: constant term on branch cut");
  std::vector<Complex> s(a.order() + 1);
  s[0] = std::log(c0);
  Complex p = Complex(1.0);
  for (int k = 1; k <= a.order(); ++k) {
    p /= c0;
    s[k] = p / static_cast<double>(k) * ((k % 2 == 1) ? 1.0 : -1.0);
  }
  return a.compose(s);
}

Jet sqrt(const Jet& a) {
  Complex c0 = a.value();
  if (c0.real() <= 0.0 && std::abs(c0.imag()) < 1e-300)
    throw BranchCut("sqrt: constant term on branch cut");
  std::vector<Complex> s(a.order() + 1);
  Complex r = std::sqrt(c0);
  s[0] = r;
  // binomial series (c0+h)^{1/2} = r * sum binom(1/2,k) (h/c0)^k
  Complex binom = Complex(1.0);
  Complex cpow = Complex(1.0);
  for (int k = 1; k <= a.order(); ++k) {
    binom *= (Complex(0.5) - static_cast<double>(k - 1)) / static_cast<double>(k);
    cpow /= c0;
    s[k] = r * binom * cpow;
  }
  return a.compose(s);
}

Jet pow_int(const Jet& a, int k) {
  if (k == 0) return Jet::constant(a.basePoint(), Complex(1.0), a.order());
  if (k < 0) return inverse(pow_int(a, -k));
  Jet out = a;
  for (int t = 1; t < k; ++t) out = out * a;
  return out;
}

double Jet::maxAbs() const {
  double m = 0.0;
  for (const auto& v : c_) m = std::max(m, std::abs(v));
  return m;
}

Jet mulT(const Jet& a, const Jet& b) {
  int o = std::min(a.order(), b.order());
  return a.truncated(o) * b.truncated(o);
}
Jet addT(const Jet& a, const Jet& b) {
  int o = std::min(a.order(), b.order());
  return a.truncated(o) + b.truncated(o);
}
Jet subT(const Jet& a, const Jet& b) {
  int o = std::min(a.order(), b.order());
  return a.truncated(o) - b.truncated(o);
}

}  // namespace robinson
