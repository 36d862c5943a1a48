// Command-line front door: validates catalog files, runs axiom scans and
// theorem checks on chart points, and runs the Schur constancy scan.
//
// Exit codes: 0 = pass, 1 = mathematical failure, 2 = usage/parse failure.

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "ahlab/axiom.hpp"
#include "ahlab/chart.hpp"
#include "ahlab/report.hpp"

namespace {

using namespace ahlab;

constexpr int kExitPass = 0;
constexpr int kExitMathFailure = 1;
constexpr int kExitUsage = 2;

// "sphere(1)" / "fubini_study(4)" / "flat" / a path to a catalog JSON file
ChartMetric resolve_space(const std::string& spec) {
  if (std::filesystem::exists(spec)) return ChartMetric::load_file(spec);
  const auto open = spec.find('(');
  if (open == std::string::npos) return catalog(spec);
  if (spec.back() != ')') throw parse_error("space '" + spec + "': missing ')'");
  const std::string name = spec.substr(0, open);
  const std::string args = spec.substr(open + 1, spec.size() - open - 2);
  char* end = nullptr;
  const double c = std::strtod(args.c_str(), &end);
  if (end != args.c_str() + args.size() || args.empty())
    throw parse_error("space '" + spec + "': bad parameter '" + args + "'");
  return catalog(name, c);
}

Vec parse_point(const std::string& csv, int dim) {
  std::vector<double> vals;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    const auto comma = csv.find(',', pos);
    const std::string tok = csv.substr(pos, comma == std::string::npos ? csv.size() - pos
                                                                       : comma - pos);
    char* end = nullptr;
    vals.push_back(std::strtod(tok.c_str(), &end));
    if (end != tok.c_str() + tok.size() || tok.empty())
      throw parse_error("--at: bad coordinate '" + tok + "'");
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (static_cast<int>(vals.size()) != dim)
    throw parse_error("--at: expected " + std::to_string(dim) + " coordinates");
  return Eigen::Map<const Vec>(vals.data(), dim);
}

void write_record(JsonBuilder& jb, const ResidualRecord& rec) {
  jb.begin_object();
  jb.key("theta").value(rec.theta);
  jb.key("eq1").value(rec.eq1);
  jb.key("eq2").value(rec.eq2);
  jb.key("eq3").value(rec.eq3);
  jb.key("eq4").value(rec.eq4);
  jb.key("eq5").value(rec.eq5);
  jb.key("x").value(rec.x);
  jb.key("y").value(rec.y);
  jb.end_object();
}

struct CommonOpts {
  std::uint64_t seed = 1;
  double tol = kChartTol;
  bool json = false;
};

int cmd_validate(const std::string& file, int points, const CommonOpts& opt) {
  const ChartMetric chart = ChartMetric::load_file(file);
  SeededRng rng(opt.seed);

  std::vector<NamedResidual> residuals;
  auto bump = [&](const std::string& name, double v) {
    for (auto& r : residuals)
      if (r.name == name) {
        r.value = std::max(r.value, v);
        return;
      }
    residuals.push_back({name, v});
  };

  for (int s = 0; s < points; ++s) {
    const Vec u = chart.sample_interior_point(rng);
    const Mat g = chart.g_at(u);
    bump("chart_g_symmetry", max_abs(g - g.transpose()));
    const double lambda_min =
        Eigen::SelfAdjointEigenSolver<Mat>(0.5 * (g + g.transpose())).eigenvalues().minCoeff();
    bump("chart_g_positive_definite", lambda_min > 0.0 ? 0.0 : std::max(1.0, -lambda_min));
    if (chart.has_J()) {
      const Mat J = chart.J_at(u);
      bump("chart_J_squared_plus_identity", max_abs(J * J + Mat::Identity(chart.dim, chart.dim)));
      bump("chart_gJ_compatibility", compatibility_residual(g, J));
    }
    const FramedPoint fp = hermitian_point_at(chart, u);
    for (const auto& r : validate_point(fp.point, opt.tol).residuals) bump(r.name, r.value);
  }

  double worst = 0.0;
  for (const auto& r : residuals) worst = std::max(worst, r.value);
  const bool ok = worst <= opt.tol;

  if (opt.json) {
    JsonBuilder jb;
    jb.begin_object();
    jb.key("schema").value(1);
    jb.key("command").value("validate");
    jb.key("file").value(file);
    jb.key("space").value(chart.name);
    jb.key("points").value(points);
    jb.key("seed").value(static_cast<unsigned long long>(opt.seed));
    jb.key("tol").value(opt.tol);
    jb.key("residuals").begin_object();
    for (const auto& r : residuals) jb.key(r.name).value(r.value);
    jb.end_object();
    jb.key("valid").value(ok);
    jb.end_object();
    std::cout << jb.str() << "\n";
  } else {
    std::printf("space %s (dim %d), %d sampled points, tol %g\n", chart.name.c_str(), chart.dim,
                points, opt.tol);
    for (const auto& r : residuals)
      std::printf("  %-28s %.3e%s\n", r.name.c_str(), r.value, r.value <= opt.tol ? "" : "  FAIL");
    std::printf("%s\n", ok ? "valid" : "INVALID");
  }
  return ok ? kExitPass : kExitMathFailure;
}

int cmd_axiom(const std::string& space, double theta, bool degrees, int samples,
              const std::string& at, const CommonOpts& opt) {
  const ChartMetric chart = resolve_space(space);
  if (degrees) theta *= M_PI / 180.0;
  if (!(theta > 0.0 && theta < M_PI / 2.0)) {
    std::cerr << "axiom: theta = " << theta
              << " rad is outside (0, pi/2); the hypothesis requires a fixed theta in the "
                 "open interval (endpoints are the holomorphic/antiholomorphic cases)\n";
    return kExitUsage;
  }

  SeededRng rng(opt.seed);
  const Vec u = at.empty() ? chart.sample_interior_point(rng) : parse_point(at, chart.dim);
  if (!chart.in_domain(u)) {
    std::cerr << "axiom: --at point is outside the chart domain\n";
    return kExitUsage;
  }

  const FramedPoint fp = hermitian_point_at(chart, u);
  std::optional<double> nabla;
  if (chart.has_J()) nabla = nabla_J_residual(chart, u);
  const TheoremReport rep = theorem_check(fp.point, theta, samples, opt.seed, opt.tol, nabla);

  const bool pass = rep.scan.holds && rep.space_form_confirmed &&
                    (!rep.corollary_flat || *rep.corollary_flat);

  if (opt.json) {
    JsonBuilder jb;
    jb.begin_object();
    jb.key("schema").value(1);
    jb.key("command").value("axiom");
    jb.key("space").value(chart.name);
    jb.key("theta").value(theta);
    jb.key("samples").value(samples);
    jb.key("seed").value(static_cast<unsigned long long>(opt.seed));
    jb.key("tol").value(opt.tol);
    jb.key("point").value(u);
    jb.key("axiom_holds").value(rep.scan.holds);
    jb.key("worst_residual").value(rep.scan.worst.max_axiom_residual());
    jb.key("worst");
    write_record(jb, rep.scan.worst);
    jb.key("c_star").value(rep.defect.c_star);
    jb.key("defect_norm").value(rep.defect.defect_norm);
    jb.key("space_form_confirmed").value(rep.space_form_confirmed);
    if (nabla) jb.key("nabla_J_residual").value(*nabla);
    if (rep.corollary_flat) jb.key("corollary_flat").value(*rep.corollary_flat);
    jb.end_object();
    std::cout << jb.str() << "\n";
    return pass ? kExitPass : kExitMathFailure;
  }

  std::printf("space %s at point [", chart.name.c_str());
  for (int i = 0; i < u.size(); ++i) std::printf("%s%.6g", i ? ", " : "", u(i));
  std::printf("]\ntheta = %.10g rad, %d samples, seed %llu, tol %g\n", theta, samples,
              static_cast<unsigned long long>(opt.seed), opt.tol);
  std::printf("axiom scan: %s (worst max(|eq1|,|eq2|) = %.3e)\n",
              rep.scan.holds ? "holds" : "FAILS", rep.scan.worst.max_axiom_residual());
  const auto& w = rep.scan.worst;
  std::printf("worst record: eq1=%.3e eq2=%.3e eq3=%.3e eq4=%.3e eq5=%.3e\n", w.eq1, w.eq2, w.eq3,
              w.eq4, w.eq5);
  std::printf("space form projection: c* = %.10g, defect = %.3e\n", rep.defect.c_star,
              rep.defect.defect_norm);
  if (nabla) std::printf("nabla J residual: %.3e\n", *nabla);
  if (rep.scan.holds)
    std::printf("theorem: real space form %s\n", rep.space_form_confirmed ? "confirmed" : "REFUTED");
  else
    std::printf("theorem: hypothesis fails; the worst record is the contrapositive witness\n");
  if (rep.corollary_flat)
    std::printf("corollary (Kaehler): flatness %s\n", *rep.corollary_flat ? "confirmed" : "REFUTED");
  return pass ? kExitPass : kExitMathFailure;
}

int cmd_schur(const std::string& space, int npoints, const CommonOpts& opt) {
  const ChartMetric chart = resolve_space(space);
  SeededRng rng(opt.seed);

  std::vector<HermitianPoint> points;
  std::vector<Vec> coords;
  std::vector<double> cs, defects;
  for (int i = 0; i < npoints; ++i) {
    const Vec u = chart.sample_interior_point(rng);
    FramedPoint fp = hermitian_point_at(chart, u);
    const SpaceFormDefect d = space_form_defect(fp.point);
    coords.push_back(u);
    cs.push_back(d.c_star);
    defects.push_back(d.defect_norm);
    points.push_back(std::move(fp.point));
  }

  std::string error;
  SchurScan scan;
  bool ok = false;
  try {
    scan = schur_scan(points, opt.tol);
    ok = scan.constant;
  } catch (const std::invalid_argument& e) {
    error = e.what();
  }

  if (opt.json) {
    JsonBuilder jb;
    jb.begin_object();
    jb.key("schema").value(1);
    jb.key("command").value("schur");
    jb.key("space").value(chart.name);
    jb.key("points").value(npoints);
    jb.key("seed").value(static_cast<unsigned long long>(opt.seed));
    jb.key("tol").value(opt.tol);
    jb.key("c_values").value(cs);
    jb.key("defects").value(defects);
    if (error.empty()) {
      jb.key("spread").value(scan.spread);
      jb.key("constant").value(scan.constant);
    } else {
      jb.key("error").value(error);
    }
    jb.end_object();
    std::cout << jb.str() << "\n";
    return ok ? kExitPass : kExitMathFailure;
  }

  std::printf("space %s, %d sampled points, seed %llu, tol %g\n", chart.name.c_str(), npoints,
              static_cast<unsigned long long>(opt.seed), opt.tol);
  for (int i = 0; i < npoints; ++i)
    std::printf("  point %2d: c = %.12g  (defect %.3e)\n", i, cs[i], defects[i]);
  if (!error.empty()) {
    std::printf("FAIL: %s\n", error.c_str());
    return kExitMathFailure;
  }
  std::printf("spread = %.3e -> %s\n", scan.spread,
              scan.constant ? "constant (space form)" : "NOT constant");
  return ok ? kExitPass : kExitMathFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"almost-Hermitian curvature laboratory"};
  app.require_subcommand(1);

  CommonOpts opt;

  auto* validate = app.add_subcommand("validate", "check catalog-file invariants at sampled points");
  std::string validate_file;
  int validate_points = 5;
  validate->add_option("file", validate_file, "catalog JSON file")->required();
  validate->add_option("--points", validate_points, "number of sampled points");
  validate->add_option("--seed", opt.seed, "RNG seed");
  validate->add_option("--tol", opt.tol, "residual tolerance");
  validate->add_flag("--json", opt.json, "machine-readable report");

  auto* axiom = app.add_subcommand("axiom", "axiom scan + theorem check at a chart point");
  std::string axiom_space, axiom_at;
  double theta = M_PI / 4.0;
  bool degrees = false;
  int samples = 1000;
  axiom->add_option("space", axiom_space, "catalog space, e.g. sphere(1), or a JSON file")
      ->required();
  axiom->add_option("--theta", theta, "Kaehler angle, radians (default pi/4)");
  axiom->add_flag("--degrees", degrees, "interpret --theta in degrees");
  axiom->add_option("--samples", samples, "admissible pairs per scan");
  axiom->add_option("--seed", opt.seed, "RNG seed");
  axiom->add_option("--tol", opt.tol, "residual tolerance");
  axiom->add_option("--at", axiom_at, "chart point, comma-separated coordinates");
  axiom->add_flag("--json", opt.json, "machine-readable report");

  auto* schur = app.add_subcommand("schur", "per-point c* and spread over sampled points");
  std::string schur_space;
  int schur_points = 10;
  schur->add_option("space", schur_space, "catalog space or JSON file")->required();
  schur->add_option("--points", schur_points, "number of sampled points");
  schur->add_option("--seed", opt.seed, "RNG seed");
  schur->add_option("--tol", opt.tol, "defect/spread tolerance");
  schur->add_flag("--json", opt.json, "machine-readable report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(validate_file, validate_points, opt);
    if (axiom->parsed()) return cmd_axiom(axiom_space, theta, degrees, samples, axiom_at, opt);
    if (schur->parsed()) return cmd_schur(schur_space, schur_points, opt);
    return kExitUsage;
  } catch (const ahlab::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ahlab::hypothesis_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMathFailure;
  }
}
