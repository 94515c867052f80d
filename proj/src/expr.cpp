#include "robinson/expr.hpp"

#include <cctype>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace robinson {

ExprPtr Expr::constant(Complex v) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Const;
  e->cval = v;
  return e;
}

ExprPtr Expr::coordinate(int idx) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Coord;
  e->coord = idx;
  return e;
}

ExprPtr Expr::make(Kind k, ExprPtr x, ExprPtr y) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->a = std::move(x);
  e->b = std::move(y);
  return e;
}

ExprPtr Expr::power(ExprPtr x, int k) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Pow;
  e->a = std::move(x);
  e->ipow = k;
  return e;
}

ExprPtr operator+(ExprPtr x, ExprPtr y) {
  if (x->isZero()) return y;
  if (y->isZero()) return x;
  return Expr::make(Expr::Kind::Add, std::move(x), std::move(y));
}
ExprPtr operator-(ExprPtr x, ExprPtr y) {
  if (y->isZero()) return x;
  return Expr::make(Expr::Kind::Sub, std::move(x), std::move(y));
}
ExprPtr operator*(ExprPtr x, ExprPtr y) {
  if (x->isZero() || y->isZero()) return Expr::constant(Complex(0.0));
  return Expr::make(Expr::Kind::Mul, std::move(x), std::move(y));
}
ExprPtr operator/(ExprPtr x, ExprPtr y) {
  return Expr::make(Expr::Kind::Div, std::move(x), std::move(y));
}
ExprPtr operator-(ExprPtr x) {
  if (x->isZero()) return x;
  return Expr::make(Expr::Kind::Neg, std::move(x));
}

Jet Expr::eval(const Point& p, int order) const {
  switch (kind) {
    case Kind::Const: return Jet::constant(p, cval, order);
    case Kind::Coord: return Jet::seed(p, coord, order);
    case Kind::Add: return a->eval(p, order) + b->eval(p, order);
    case Kind::Sub: return a->eval(p, order) - b->eval(p, order);
    case Kind::Mul: return a->eval(p, order) * b->eval(p, order);
    case Kind::Div: return a->eval(p, order) / b->eval(p, order);
    case Kind::Neg: return -a->eval(p, order);
    case Kind::Pow: return pow_int(a->eval(p, order), ipow);
    case Kind::Exp: return exp(a->eval(p, order));
    case Kind::Log: return log(a->eval(p, order));
    case Kind::Sqrt: return sqrt(a->eval(p, order));
  }
  throw ParseError("eval: bad node");
}

Complex Expr::evalValue(const Point& p) const {
  switch (kind) {
    case Kind::Const: return cval;
    case Kind::Coord: return Complex(p[coord], 0.0);
    case Kind::Add: return a->evalValue(p) + b->evalValue(p);
    case Kind::Sub: return a->evalValue(p) - b->evalValue(p);
    case Kind::Mul: return a->evalValue(p) * b->evalValue(p);
    case Kind::Div: return a->evalValue(p) / b->evalValue(p);
    case Kind::Neg: return -a->evalValue(p);
    case Kind::Pow: return std::pow(a->evalValue(p), ipow);
    case Kind::Exp: return std::exp(a->evalValue(p));
    case Kind::Log: return std::log(a->evalValue(p));
    case Kind::Sqrt: return std::sqrt(a->evalValue(p));
  }
  throw ParseError("evalValue: bad node");
}

ExprPtr Expr::diff(int axis) const {
  auto self = [this] {
    auto e = std::make_shared<Expr>(*this);
    return ExprPtr(e);
  };
  switch (kind) {
    case Kind::Const: return constant(Complex(0.0));
    case Kind::Coord: return constant(coord == axis ? Complex(1.0) : Complex(0.0));
    case Kind::Add: return a->diff(axis) + b->diff(axis);
    case Kind::Sub: return a->diff(axis) - b->diff(axis);
    case Kind::Mul: return a->diff(axis) * b + a * b->diff(axis);
    case Kind::Div:
      return (a->diff(axis) * b - a * b->diff(axis)) / power(b, 2);
    case Kind::Neg: return -a->diff(axis);
    case Kind::Pow:
      if (ipow == 0) return constant(Complex(0.0));
      return constant(Complex(static_cast<double>(ipow))) * power(a, ipow - 1) *
             a->diff(axis);
    case Kind::Exp: return self() * a->diff(axis);
    case Kind::Log: return a->diff(axis) / a;
    case Kind::Sqrt:
      return a->diff(axis) / (constant(Complex(2.0)) * self());
  }
  throw ParseError("diff: bad node");
}

ExprPtr Expr::conjugate() const {
  switch (kind) {
    case Kind::Const: return constant(std::conj(cval));
    case Kind::Coord: return coordinate(coord);
    case Kind::Add: return a->conjugate() + b->conjugate();
    case Kind::Sub: return a->conjugate() - b->conjugate();
    case Kind::Mul: return a->conjugate() * b->conjugate();
    case Kind::Div: return a->conjugate() / b->conjugate();
    case Kind::Neg: return -a->conjugate();
    case Kind::Pow: return power(a->conjugate(), ipow);
    case Kind::Exp: return make(Kind::Exp, a->conjugate());
    case Kind::Log: return make(Kind::Log, a->conjugate());
    case Kind::Sqrt: return make(Kind::Sqrt, a->conjugate());
  }
  throw ParseError("conjugate: bad node");
}

std::string Expr::toString(const std::vector<std::string>& coords) const {
  std::ostringstream os;
  os << std::setprecision(17);  // lossless numeric round-trip
  switch (kind) {
    case Kind::Const: {
      if (cval.imag() == 0.0) {
        os << cval.real();
      } else if (cval.real() == 0.0 && cval.imag() == 1.0) {
        os << "i";
      } else if (cval.real() == 0.0) {
        os << "(" << cval.imag() << "*i)";
      } else {
        os << "(" << cval.real() << "+" << cval.imag() << "*i)";
      }
      break;
    }
    case Kind::Coord: os << coords[coord]; break;
    case Kind::Add: os << "(" << a->toString(coords) << "+" << b->toString(coords) << ")"; break;
    case Kind::Sub: os << "(" << a->toString(coords) << "-" << b->toString(coords) << ")"; break;
    case Kind::Mul: os << "(" << a->toString(coords) << "*" << b->toString(coords) << ")"; break;
    case Kind::Div: os << "(" << a->toString(coords) << "/" << b->toString(coords) << ")"; break;
    case Kind::Neg: os << "(-" << a->toString(coords) << ")"; break;
    case Kind::Pow: os << "(" << a->toString(coords) << "^" << ipow << ")"; break;
    case Kind::Exp: os << "exp(" << a->toString(coords) << ")"; break;
    case Kind::Log: os << "log(" << a->toString(coords) << ")"; break;
    case Kind::Sqrt: os << "sqrt(" << a->toString(coords) << ")"; break;
  }
  return os.str();
}

namespace {

struct Parser {
  const std::string& s;
  const std::vector<std::string>& coords;
  std::size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  char peek() {
    skip();
    return pos < s.size() ? s[pos] : '\0';
  }

  ExprPtr parse() {
    ExprPtr e = sum();
    skip();
    if (pos != s.size()) throw ParseError("trailing input at '" + s.substr(pos) + "'");
    return e;
  }

  ExprPtr sum() {
    ExprPtr e = term();
    while (true) {
      if (eat('+')) e = e + term();
      else if (eat('-')) e = e - term();
      else return e;
    }
  }

  ExprPtr term() {
    ExprPtr e = unary();
    while (true) {
      if (eat('*')) e = e * unary();
      else if (eat('/')) e = e / unary();
      else return e;
    }
  }

  ExprPtr unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  ExprPtr power() {
    ExprPtr e = atom();
    if (eat('^')) {
      bool neg = eat('-');
      skip();
      std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (start == pos) throw ParseError("expected integer exponent after ^");
      int k = std::stoi(s.substr(start, pos - start));
      e = Expr::power(e, neg ? -k : k);
    }
    return e;
  }

  ExprPtr atom() {
    skip();
    if (pos >= s.size()) throw ParseError("unexpected end of expression");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      ExprPtr e = sum();
      if (!eat(')')) throw ParseError("missing ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos;
      while (pos < s.size() &&
             (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.'))
        ++pos;
      // scientific notation
      if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
        std::size_t mark = pos + 1;
        if (mark < s.size() && (s[mark] == '+' || s[mark] == '-')) ++mark;
        if (mark < s.size() && std::isdigit(static_cast<unsigned char>(s[mark]))) {
          pos = mark;
          while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        }
      }
      return Expr::constant(Complex(std::stod(s.substr(start, pos - start)), 0.0));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos;
      while (pos < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
        ++pos;
      std::string name = s.substr(start, pos - start);
      for (std::size_t k = 0; k < coords.size(); ++k) {
        if (coords[k] == name) return Expr::coordinate(static_cast<int>(k));
      }
      if (name == "i") return Expr::constant(Complex(0.0, 1.0));
      if (name == "pi") return Expr::constant(Complex(3.14159265358979323846, 0.0));
      if (name == "exp" || name == "log" || name == "sqrt") {
        if (!eat('(')) throw ParseError(name + ": expected '('");
        ExprPtr arg = sum();
        if (!eat(')')) throw ParseError(name + ": missing ')'");
        if (name == "exp") return Expr::make(Expr::Kind::Exp, arg);
        if (name == "log") return Expr::make(Expr::Kind::Log, arg);
        return Expr::make(Expr::Kind::Sqrt, arg);
      }
      throw ParseError("unknown identifier '" + name + "'");
    }
    throw ParseError(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

ExprPtr parseExpr(const std::string& text, const std::vector<std::string>& coords) {
  Parser p{text, coords};
  return p.parse();
}

}  // namespace robinson
