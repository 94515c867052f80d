#include "robinson/catalog.hpp"

#include <fstream>
#include <sstream>

namespace robinson {

namespace {

using EMat = std::vector<std::vector<ExprPtr>>;  // metric coefficient matrix
using EVec = std::vector<ExprPtr>;               // coordinate components

ExprPtr c0() { return Expr::constant(Complex(0.0)); }
ExprPtr cnum(double re, double im = 0.0) { return Expr::constant(Complex(re, im)); }

EMat zeroMat(int n) { return EMat(n, EVec(n, c0())); }
EVec zeroVec(int n) { return EVec(n, c0()); }

// g += c * (alpha (*) beta + beta (*) alpha), the unnormalized symmetric
// product of two coordinate 1-forms
void addSymProd(EMat& g, const EVec& alpha, const EVec& beta, ExprPtr c) {
  const int n = static_cast<int>(g.size());
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu)
      g[mu][nu] = g[mu][nu] + c * (alpha[mu] * beta[nu] + beta[mu] * alpha[nu]);
}

std::vector<std::vector<Field>> toFields(const EMat& g) {
  std::vector<std::vector<Field>> out;
  for (const auto& row : g) {
    std::vector<Field> frow;
    for (const auto& e : row) frow.push_back(Field::fromExpr(e));
    out.push_back(std::move(frow));
  }
  return out;
}

VField toVField(const EVec& v) {
  VField out;
  for (const auto& e : v) out.push_back(Field::fromExpr(e));
  return out;
}

std::string getParam(const Params& params, const std::string& key,
                     const std::string& fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

int getIntParam(const Params& params, const std::string& key, int fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  try {
    return std::stoi(it->second);
  } catch (const std::exception&) {
    throw CatalogError("parameter '" + key + "' must be an integer, got '" +
                       it->second + "'");
  }
}

// chart names r,u,x1,y1,...,xm,ym
std::vector<std::string> heisCoords(int m) {
  std::vector<std::string> coords = {"r", "u"};
  for (int j = 1; j <= m; ++j) {
    coords.push_back("x" + std::to_string(j));
    coords.push_back("y" + std::to_string(j));
  }
  return coords;
}

// Minkowski metric in double-null coordinates with a parallel null
// structure; every curvature quantity vanishes identically.
ManifoldSpec makeFlat4() {
  ManifoldSpec spec;
  spec.name = "flat4";
  spec.m = 1;
  spec.coords = {"u", "v", "x", "y"};
  spec.lo = {-1, -1, -1, -1};
  spec.hi = {1, 1, 1, 1};
  EMat g = zeroMat(4);
  g[0][1] = g[1][0] = cnum(1.0);
  g[2][2] = g[3][3] = cnum(2.0);
  spec.metric = toFields(g);
  EVec nu = zeroVec(4), nu_star = zeroVec(4), Z = zeroVec(4);
  nu[1] = cnum(1.0);       // d/dv
  nu_star[0] = cnum(1.0);  // d/du
  Z[2] = cnum(0.5);        // d/dz = (d/dx - i d/dy)/2
  Z[3] = cnum(0.0, -0.5);
  spec.nu = toVField(nu);
  spec.nu_star = toVField(nu_star);
  spec.screen = {toVField(Z)};
  spec.notes = "flat model: all curvature and torsion quantities vanish";
  return spec;
}

// Trivial line bundle over the Heisenberg group with its standard contact
// form theta = du + sum(x dy - y dx): g = theta (*) dr + 2 sum(dx^2+dy^2).
// Maximally twisted with an adapted pairing.
ManifoldSpec makeHeisFefferman(const Params& params) {
  const int m = getIntParam(params, "m", 1);
  if (m < 1 || m > 4) throw CatalogError("heis_fefferman: m must be in 1..4");
  ManifoldSpec spec;
  spec.name = "heis_fefferman";
  spec.m = m;
  spec.coords = heisCoords(m);
  const int n = spec.n();
  spec.lo.assign(n, -1.0);
  spec.hi.assign(n, 1.0);
  EMat g = zeroMat(n);
  g[0][1] = g[1][0] = cnum(1.0);
  for (int j = 0; j < m; ++j) {
    const int xj = 2 + 2 * j, yj = 3 + 2 * j;
    ExprPtr x = Expr::coordinate(xj), y = Expr::coordinate(yj);
    g[0][xj] = g[xj][0] = -y;
    g[0][yj] = g[yj][0] = x;
    g[xj][xj] = g[yj][yj] = cnum(2.0);
  }
  spec.metric = toFields(g);
  EVec nu = zeroVec(n), nu_star = zeroVec(n);
  nu[0] = cnum(1.0);       // d/dr, spans the null line
  nu_star[1] = cnum(1.0);  // d/du
  spec.nu = toVField(nu);
  spec.nu_star = toVField(nu_star);
  for (int j = 0; j < m; ++j) {
    const int xj = 2 + 2 * j, yj = 3 + 2 * j;
    ExprPtr x = Expr::coordinate(xj), y = Expr::coordinate(yj);
    EVec Z = zeroVec(n);
    // Z_j = d/dz_j + (i/2) conj(z_j) d/du; the u-component makes Z_j
    // orthogonal to nu (checked by the Gram validation at every point)
    Z[1] = cnum(0.0, 0.5) * (x - cnum(0.0, 1.0) * y);
    Z[xj] = cnum(0.5);
    Z[yj] = cnum(0.0, -0.5);
    spec.screen.push_back(toVField(Z));
  }
  spec.notes = "Heisenberg contact metric; maximally twisted, adapted pairing";
  return spec;
}

// Conformally warped Heisenberg metric e^{2f} g_heis with f a real
// function of the chart.  The screen frame carries a d/dr correction so
// the null pairing completed per point stays adapted to the structure.
ManifoldSpec makeWarpedHeis(const Params& params) {
  const int m = getIntParam(params, "m", 2);
  if (m < 1 || m > 4) throw CatalogError("warped_heis: m must be in 1..4");
  ManifoldSpec spec;
  spec.name = "warped_heis";
  spec.m = m;
  spec.coords = heisCoords(m);
  const int n = spec.n();
  spec.lo.assign(n, -1.0);
  spec.hi.assign(n, 1.0);
  const std::string ftext = getParam(params, "f", "(1/10)*(x1+y1)");
  ExprPtr f = parseExpr(ftext, spec.coords);
  ExprPtr e2f = Expr::make(Expr::Kind::Exp, cnum(2.0) * f);
  ExprPtr emf = Expr::make(Expr::Kind::Exp, -f);
  EMat g = zeroMat(n);
  g[0][1] = g[1][0] = e2f;
  for (int j = 0; j < m; ++j) {
    const int xj = 2 + 2 * j, yj = 3 + 2 * j;
    ExprPtr x = Expr::coordinate(xj), y = Expr::coordinate(yj);
    g[0][xj] = g[xj][0] = -(e2f * y);
    g[0][yj] = g[yj][0] = e2f * x;
    g[xj][xj] = g[yj][yj] = cnum(2.0) * e2f;
  }
  spec.metric = toFields(g);
  EVec nu = zeroVec(n);
  nu[0] = cnum(1.0);
  spec.nu = toVField(nu);
  // nu* is completed per point from the metric
  for (int j = 0; j < m; ++j) {
    const int xj = 2 + 2 * j, yj = 3 + 2 * j;
    ExprPtr x = Expr::coordinate(xj), y = Expr::coordinate(yj);
    // Z_j(f): full screen directional derivative, including the d/du part
    ExprPtr fz = cnum(0.5) * (f->diff(xj) - cnum(0.0, 1.0) * f->diff(yj)) +
                 cnum(0.0, 0.5) * (x - cnum(0.0, 1.0) * y) * f->diff(1);
    EVec W = zeroVec(n);
    W[0] = emf * (cnum(0.0, -2.0) * fz);
    W[1] = emf * (cnum(0.0, 0.5) * (x - cnum(0.0, 1.0) * y));
    W[xj] = emf * cnum(0.5);
    W[yj] = emf * cnum(0.0, -0.5);
    spec.screen.push_back(toVField(W));
  }
  spec.notes = "conformally warped Heisenberg metric, warp factor f = " + ftext;
  return spec;
}

// General two-parameter-family bundle metric
//   g = P h_{ij} dz^i (*) dzbar^j + sigma* (*) sigma,
//   sigma* = du + A_i dz^i + conj(A_i) dzbar^i,
//   sigma  = dr + B_i dz^i + conj(B_i) dzbar^i + Q sigma*,
// with h Hermitian positive definite on the chart, P > 0 and Q real.
// The screen frame is obtained by a symbolic Cholesky factor of P h.
ManifoldSpec makeBundleGeneral(const Params& params) {
  const int m = getIntParam(params, "m", 1);
  if (m < 1 || m > 3) throw CatalogError("bundle_general: m must be in 1..3");
  ManifoldSpec spec;
  spec.name = "bundle_general";
  spec.m = m;
  spec.coords = heisCoords(m);
  const int n = spec.n();
  spec.lo.assign(n, -0.5);
  spec.hi.assign(n, 0.5);
  spec.lo[0] = spec.lo[1] = -0.4;
  spec.hi[0] = spec.hi[1] = 0.4;

  auto parse = [&](const std::string& key, const std::string& fallback) {
    std::string text = getParam(params, key, fallback);
    try {
      return parseExpr(text, spec.coords);
    } catch (const ParseError& err) {
      throw CatalogError("bundle_general: bad expression for '" + key +
                         "': " + err.what());
    }
  };

  ExprPtr P = parse("P", "1+(1/2)*r");
  ExprPtr Q = parse("Q", "(1/10)*u");
  std::vector<ExprPtr> A(m), B(m);
  for (int i = 0; i < m; ++i) {
    std::string idx = std::to_string(i + 1);
    A[i] = parse("A" + idx,
                 i == 0 ? "(i/2)*(x1-i*y1)" : "0");  // Heisenberg-like twist
    B[i] = parse("B" + idx, "0");
  }
  std::vector<std::vector<ExprPtr>> h(m, std::vector<ExprPtr>(m, c0()));
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      std::string key = "h" + std::to_string(i + 1) + std::to_string(j + 1);
      h[i][j] = parse(key, i == j ? "1" : "0");
      if (j > i) h[j][i] = h[i][j]->conjugate();
    }
  }

  // coordinate components of dz^i and dzbar^i
  std::vector<EVec> dz(m, zeroVec(n)), dzb(m, zeroVec(n));
  for (int i = 0; i < m; ++i) {
    const int xi = 2 + 2 * i, yi = 3 + 2 * i;
    dz[i][xi] = cnum(1.0);
    dz[i][yi] = cnum(0.0, 1.0);
    dzb[i][xi] = cnum(1.0);
    dzb[i][yi] = cnum(0.0, -1.0);
  }
  EVec du = zeroVec(n), dr = zeroVec(n);
  du[1] = cnum(1.0);
  dr[0] = cnum(1.0);

  EVec sigma_star = du, sigma = dr;
  for (int i = 0; i < m; ++i) {
    for (int mu = 0; mu < n; ++mu) {
      sigma_star[mu] = sigma_star[mu] + A[i] * dz[i][mu] +
                       A[i]->conjugate() * dzb[i][mu];
      sigma[mu] =
          sigma[mu] + B[i] * dz[i][mu] + B[i]->conjugate() * dzb[i][mu];
    }
  }
  for (int mu = 0; mu < n; ++mu) sigma[mu] = sigma[mu] + Q * sigma_star[mu];

  EMat g = zeroMat(n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (!h[i][j]->isZero()) addSymProd(g, dz[i], dzb[j], P * h[i][j]);
  addSymProd(g, sigma_star, sigma, cnum(1.0));
  spec.metric = toFields(g);

  EVec nu = zeroVec(n);
  nu[0] = cnum(1.0);  // vertical direction; sigma(nu)=1, sigma*(nu)=0
  spec.nu = toVField(nu);

  // raw screen fields V_i = d/dz_i - A_i d/du - B_i d/dr annihilate both
  // sigma and sigma*; their pairwise pairing is G_{ij} = P h_{ij}
  std::vector<EVec> V(m, zeroVec(n));
  for (int i = 0; i < m; ++i) {
    const int xi = 2 + 2 * i, yi = 3 + 2 * i;
    V[i][0] = -B[i];
    V[i][1] = -A[i];
    V[i][xi] = cnum(0.5);
    V[i][yi] = cnum(0.0, -0.5);
  }
  // Cholesky G = L L^H, then Z = L^{-1} V is unitary for the pairing
  std::vector<std::vector<ExprPtr>> L(m, std::vector<ExprPtr>(m, c0()));
  for (int i = 0; i < m; ++i) {
    ExprPtr diag = P * h[i][i];
    for (int k = 0; k < i; ++k) diag = diag - L[i][k] * L[i][k]->conjugate();
    L[i][i] = Expr::make(Expr::Kind::Sqrt, diag);
    for (int j = i + 1; j < m; ++j) {
      ExprPtr acc = P * h[j][i];
      for (int k = 0; k < i; ++k) acc = acc - L[j][k] * L[i][k]->conjugate();
      L[j][i] = acc / L[i][i];
    }
  }
  std::vector<std::vector<ExprPtr>> Linv(m, std::vector<ExprPtr>(m, c0()));
  for (int i = 0; i < m; ++i) {
    Linv[i][i] = cnum(1.0) / L[i][i];
    for (int j = i + 1; j < m; ++j) {
      ExprPtr acc = c0();
      for (int k = i; k < j; ++k) acc = acc - L[j][k] * Linv[k][i];
      Linv[j][i] = acc / L[j][j];
    }
  }
  for (int i = 0; i < m; ++i) {
    EVec Z = zeroVec(n);
    for (int j = 0; j <= i; ++j)
      for (int mu = 0; mu < n; ++mu) Z[mu] = Z[mu] + Linv[i][j] * V[j][mu];
    spec.screen.push_back(toVField(Z));
  }
  spec.notes =
      "general bundle metric; h must stay Hermitian positive definite and "
      "P positive on the chart";
  return spec;
}

}  // namespace

std::vector<std::string> catalogNames() {
  return {"flat4", "heis_fefferman", "warped_heis", "bundle_general"};
}

ManifoldSpec getCatalog(const std::string& name, const Params& params) {
  if (name == "flat4") return makeFlat4();
  if (name == "heis_fefferman") return makeHeisFefferman(params);
  if (name == "warped_heis") return makeWarpedHeis(params);
  if (name == "bundle_general") return makeBundleGeneral(params);
  throw CatalogError("unknown manifold '" + name + "'");
}

ManifoldSpec parseManifoldArg(const std::string& arg) {
  std::string name = arg;
  Params params;
  auto colon = arg.find(':');
  if (colon != std::string::npos) {
    name = arg.substr(0, colon);
    std::string rest = arg.substr(colon + 1);
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos)
        throw CatalogError("bad manifold parameter '" + item +
                           "', expected key=value");
      params[item.substr(0, eq)] = item.substr(eq + 1);
    }
  }
  return getCatalog(name, params);
}

namespace {

std::string fieldText(const Field& f, const std::vector<std::string>& coords) {
  if (!f.expr) throw CatalogError("cannot serialize a non-symbolic field");
  return f.expr->toString(coords);
}

}  // namespace

nlohmann::json specToJson(const ManifoldSpec& spec) {
  nlohmann::json j;
  j["name"] = spec.name;
  j["m"] = spec.m;
  j["coords"] = spec.coords;
  j["lo"] = spec.lo;
  j["hi"] = spec.hi;
  auto vec = [&](const VField& v) {
    std::vector<std::string> out;
    for (const auto& f : v) out.push_back(fieldText(f, spec.coords));
    return out;
  };
  std::vector<std::vector<std::string>> gtext;
  for (const auto& row : spec.metric) {
    std::vector<std::string> rtext;
    for (const auto& f : row) rtext.push_back(fieldText(f, spec.coords));
    gtext.push_back(std::move(rtext));
  }
  j["metric"] = gtext;
  j["nu"] = vec(spec.nu);
  if (spec.nu_star) j["nu_star"] = vec(*spec.nu_star);
  else j["nu_star"] = nullptr;
  std::vector<std::vector<std::string>> ztext;
  for (const auto& z : spec.screen) ztext.push_back(vec(z));
  j["screen"] = ztext;
  j["notes"] = spec.notes;
  return j;
}

ManifoldSpec specFromJson(const nlohmann::json& j) {
  ManifoldSpec spec;
  spec.name = j.at("name").get<std::string>();
  spec.m = j.at("m").get<int>();
  spec.coords = j.at("coords").get<std::vector<std::string>>();
  spec.lo = j.at("lo").get<std::vector<double>>();
  spec.hi = j.at("hi").get<std::vector<double>>();
  const int n = spec.n();
  if (static_cast<int>(spec.coords.size()) != n)
    throw CatalogError("coords size does not match 2m+2");
  auto field = [&](const std::string& text) {
    return Field::fromExpr(parseExpr(text, spec.coords));
  };
  auto vec = [&](const nlohmann::json& arr) {
    VField out;
    for (const auto& s : arr) out.push_back(field(s.get<std::string>()));
    if (static_cast<int>(out.size()) != n)
      throw CatalogError("vector field has wrong component count");
    return out;
  };
  for (const auto& row : j.at("metric")) {
    std::vector<Field> frow;
    for (const auto& s : row) frow.push_back(field(s.get<std::string>()));
    spec.metric.push_back(std::move(frow));
  }
  spec.nu = vec(j.at("nu"));
  if (!j.at("nu_star").is_null()) spec.nu_star = vec(j.at("nu_star"));
  for (const auto& z : j.at("screen")) spec.screen.push_back(vec(z));
  if (static_cast<int>(spec.screen.size()) != spec.m)
    throw CatalogError("screen frame has wrong field count");
  spec.notes = j.value("notes", std::string());
  return spec;
}

ManifoldSpec loadSpecFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CatalogError("cannot open manifold file '" + path + "'");
  nlohmann::json j;
  in >> j;
  return specFromJson(j);
}

void saveSpecFile(const ManifoldSpec& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw CatalogError("cannot write manifold file '" + path + "'");
  out << specToJson(spec).dump(2) << "\n";
}

}  // namespace robinson
