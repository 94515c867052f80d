// Batch runner: select or load a manifold, run residual check suites, emit
// JSON/CSV reports.  Exit status: 0 all checks pass, 2 at least one check
// failed, 1 configuration or precondition errors.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "robinson/catalog.hpp"
#include "robinson/curvature.hpp"
#include "robinson/report.hpp"

using namespace robinson;

namespace {

const std::vector<std::string> kSuites = {
    "classify",       "first_bianchi",     "second_bianchi",
    "operator_bianchi", "cotton_cartan_bach", "prop21",
    "conformal",      "appendix",          "einstein_formula",
    "kahler_identities"};

int minJetOrder(const std::string& suite) {
  if (suite == "classify") return 2;
  return 3;
}

bool looksLikeFile(const std::string& arg) {
  if (arg.find(".json") != std::string::npos) return true;
  std::ifstream in(arg);
  return in.good() && arg.find('/') != std::string::npos;
}

ManifoldSpec resolveManifold(const std::string& arg) {
  if (looksLikeFile(arg)) return loadSpecFile(arg);
  return parseManifoldArg(arg);
}

CheckReport runSuite(const std::string& suite, const ManifoldSpec& spec,
                     const std::string& lambda, const std::vector<Point>& pts,
                     const SuiteOptions& opts) {
  if (suite == "classify") return classifySuite(spec, pts, opts);
  if (suite == "first_bianchi") return firstBianchiSuite(spec, pts, opts);
  if (suite == "second_bianchi") return secondBianchiSuite(spec, pts, opts);
  if (suite == "operator_bianchi") return operatorBianchiSuite(spec, pts, opts);
  if (suite == "cotton_cartan_bach")
    return cottonCartanBachSuite(spec, pts, opts);
  if (suite == "prop21") return pairingConsequencesSuite(spec, pts, opts);
  if (suite == "conformal") return conformalSuite(spec, lambda, pts, opts);
  if (suite == "appendix") return appendixSuite(spec, lambda, pts, opts);
  if (suite == "einstein_formula") return einsteinFormulaSuite(spec, pts, opts);
  if (suite == "kahler_identities")
    return kahlerIdentitiesSuite(spec, pts, opts);
  throw CatalogError("unknown suite: " + suite);
}

std::string stripExt(const std::string& path) {
  std::size_t dot = path.rfind('.');
  std::size_t slash = path.rfind('/');
  if (dot == std::string::npos) return path;
  if (slash != std::string::npos && dot < slash) return path;
  return path.substr(0, dot);
}

void writeFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CatalogError("cannot write report file: " + path);
  out << text;
}

int runCommand(const std::string& manifold, std::vector<std::string> suites,
               int points, unsigned seed, int jet_order, double tol_abs,
               double tol_rel, std::vector<std::string> lambdas,
               const std::string& report_path, const std::string& format,
               int threads) {
  ManifoldSpec spec = resolveManifold(manifold);
  if (suites.empty()) suites = kSuites;
  for (const std::string& s : suites) {
    bool known = false;
    for (const std::string& k : kSuites) known = known || k == s;
    if (!known) throw CatalogError("unknown suite: " + s);
    if (jet_order < minJetOrder(s))
      throw CatalogError("suite " + s + " needs jet order >= " +
                         std::to_string(minJetOrder(s)));
  }
  if (lambdas.empty()) lambdas.push_back("");

  std::vector<Point> pts = samplePoints(spec, points, seed);
  SuiteOptions opts;
  opts.seed = seed;
  opts.jet_order = jet_order;
  opts.tol_abs = tol_abs;
  opts.tol_rel = tol_rel;
  opts.threads = threads;

  std::vector<CheckReport> reports;
  for (const std::string& s : suites) {
    if (s == "conformal" || s == "appendix") {
      for (const std::string& lam : lambdas)
        reports.push_back(runSuite(s, spec, lam, pts, opts));
    } else {
      reports.push_back(runSuite(s, spec, "", pts, opts));
    }
  }

  bool all_pass = true;
  std::printf("%-20s %-14s %-14s %s\n", "suite", "worst", "status", "note");
  for (const CheckReport& r : reports) {
    bool pass = r.allPass();
    all_pass = all_pass && pass;
    std::printf("%-20s %-14.3e %-14s %s\n", r.suite.c_str(),
                r.worstResidual(), pass ? "pass" : "FAIL",
                r.not_applicable.empty()
                    ? ""
                    : ("not applicable: " + r.not_applicable).c_str());
  }

  if (!report_path.empty()) {
    if (format == "json") {
      writeFile(report_path, jsonText(reportsToJson(reports)));
    } else if (format == "csv") {
      writeFile(report_path, reportsToCsv(reports));
    } else if (format == "both") {
      writeFile(stripExt(report_path) + ".json",
                jsonText(reportsToJson(reports)));
      writeFile(stripExt(report_path) + ".csv", reportsToCsv(reports));
    } else {
      throw CatalogError("unknown report format: " + format);
    }
  }
  return all_pass ? 0 : 2;
}

int describeCommand(const std::string& manifold) {
  ManifoldSpec spec = resolveManifold(manifold);
  std::printf("name: %s\n", spec.name.c_str());
  std::printf("dimension: %d (screen complex dimension m = %d)\n", spec.n(),
              spec.m);
  std::printf("coordinates:");
  for (const std::string& c : spec.coords) std::printf(" %s", c.c_str());
  std::printf("\ndomain box:");
  for (std::size_t i = 0; i < spec.lo.size(); ++i)
    std::printf(" [%g,%g]", spec.lo[i], spec.hi[i]);
  std::printf("\nnotes: %s\n", spec.notes.c_str());

  std::vector<Point> pts = samplePoints(spec, 5, 1);
  ClassifyResult cls = classify(spec, pts, 2, 1e-9);
  auto yn = [](bool v) { return v ? "yes" : "no"; };
  std::printf("geodetic: %s\n", yn(cls.geodetic));
  std::printf("strongly geodetic: %s\n", yn(cls.strongly_geodetic));
  std::printf("partially integrable: %s\n", yn(cls.partially_integrable));
  std::printf("integrable: %s\n", yn(cls.integrable));
  std::printf("twist-free: %s\n", yn(cls.twistfree));
  std::printf("maximally twisted: %s\n", yn(cls.maximally_twisted));
  std::printf("adapted shear-free pairing: %s\n", yn(cls.fefferman_robinson));

  // magnitudes of the main tensors at the first sample point
  Connection C = buildConnection(spec, pts[0], 3);
  Curvature R = buildCurvature(C);
  Hierarchy H = buildHierarchy(R);
  double tmax = C.T.maxAbs();
  double amax = 0;
  for (const Jet& j : H.a_nustar) amax = std::max(amax, j.maxAbs());
  std::printf("torsion: %s (%.3e)\n", tmax < 1e-11 ? "0" : "nonzero", tmax);
  std::printf("curvature: %s (%.3e)\n",
              R.rm.maxAbs() < 1e-11 ? "0" : "nonzero", R.rm.maxAbs());
  std::printf("deformation tensor: %s (%.3e)\n",
              amax < 1e-11 ? "0" : "nonzero", amax);
  std::printf("scalar: %s (%.3e)\n",
              H.scalar.maxAbs() < 1e-11 ? "0" : "nonzero", H.scalar.maxAbs());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"residual verification suites for optical geometries"};
  app.require_subcommand(1);

  std::string manifold, report_path, format = "json";
  std::vector<std::string> suites, lambdas;
  int points = 5, jet_order = 3, threads = 0;
  unsigned seed = 1;
  double tol_abs = 1e-8, tol_rel = 1e-6;

  CLI::App* run = app.add_subcommand("run", "run check suites");
  run->add_option("--manifold", manifold,
                  "catalog name[:k=v,...] or spec file path")
      ->required();
  run->add_option("--suite", suites, "suite name (repeatable; default: all)");
  run->add_option("--points", points, "number of sample points");
  run->add_option("--seed", seed, "sampling seed");
  run->add_option("--jet-order", jet_order, "truncation order of the jets");
  run->add_option("--tol-abs", tol_abs, "absolute tolerance");
  run->add_option("--tol-rel", tol_rel, "relative tolerance");
  run->add_option("--lambda", lambdas,
                  "conformal factor expression (repeatable)");
  run->add_option("--report", report_path, "report output path");
  run->add_option("--format", format, "report format: json, csv or both");
  run->add_option("--threads", threads,
                  "worker threads (0: ROBINSON_CALC_THREADS or 1)");

  CLI::App* describe = app.add_subcommand("describe", "describe a manifold");
  std::string dmanifold;
  describe->add_option("manifold", dmanifold, "catalog name or file path")
      ->required();

  CLI11_PARSE(app, argc, argv);

  if (threads <= 0) {
    const char* env = std::getenv("ROBINSON_CALC_THREADS");
    threads = env ? std::atoi(env) : 1;
    if (threads <= 0) threads = 1;
  }

  try {
    if (run->parsed())
      return runCommand(manifold, suites, points, seed, jet_order, tol_abs,
                        tol_rel, lambdas, report_path, format, threads);
    return describeCommand(dmanifold);
  } catch (const PreconditionFlag& e) {
    std::fprintf(stderr, "precondition not met: %s\n", e.what());
    return 1;
  } catch (const NotInCInfinityNu& e) {
    std::fprintf(stderr, "invalid conformal factor: %s\n", e.what());
    return 1;
  } catch (const CatalogError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 1;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "expression parse error: %s\n", e.what());
    return 1;
  } catch (const JetError& e) {
    std::fprintf(stderr, "computation error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
