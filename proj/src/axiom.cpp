#include "ahlab/axiom.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ahlab {

double ResidualRecord::max_axiom_residual() const { return std::max(std::abs(eq1), std::abs(eq2)); }

double ResidualRecord::max_all() const {
  return std::max({std::abs(eq1), std::abs(eq2), std::abs(eq3), std::abs(eq4), std::abs(eq5)});
}

ResidualRecord necessary_residuals(const HermitianPoint& p, double theta, const Vec& x,
                                   const Vec& y) {
  if (!(theta > 0.0 && theta < M_PI / 2.0))
    throw hypothesis_error(
        "necessary_residuals: the hypothesis requires a fixed theta in the open "
        "interval (0, pi/2)");
  // admissibility: delegated to the plane construction, which names the
  // violated condition
  const TwoPlane alpha = make_theta_plane(p.g, p.J, x, y, theta);

  const Mat& g = p.g;
  const Mat& J = p.J;
  const Vec jx = J * x;
  const Vec jy = J * y;
  const Vec first = alpha.b2();  // Jx cos(t) + y sin(t)
  const Vec normal2 = std::sin(theta) * jx - std::cos(theta) * y;

  // the two directions hit by eq1/eq2 must be normal to the plane
  for (const Vec* n : {&jy, &normal2}) {
    if (std::abs(inner(g, *n, alpha.b1())) > kPreconditionTol ||
        std::abs(inner(g, *n, alpha.b2())) > kPreconditionTol)
      throw admissibility_error(
          "necessary_residuals: evaluation direction is not normal to the plane");
  }

  ResidualRecord rec;
  rec.theta = theta;
  rec.x = x;
  rec.y = y;
  rec.eq1 = p.R.evaluate(first, x, x, jy);
  rec.eq2 = p.R.evaluate(first, x, x, normal2);
  rec.eq3 = p.R.evaluate(jx, x, x, jy);
  rec.eq4 = p.R.evaluate(x, jx, jx, x) - p.R.evaluate(x, y, y, x);
  rec.eq5 = p.R.evaluate(x, jx, jx, x) - p.R.evaluate(y, jy, jy, y);
  return rec;
}

AxiomScan axiom_scan(const HermitianPoint& p, double theta, int samples, std::uint64_t seed,
                     double tol) {
  if (samples < 1) throw std::invalid_argument("axiom_scan: need at least 1 sample");
  SeededRng rng(seed);
  AxiomScan scan;
  scan.tol = tol;
  scan.samples = samples;
  double worst = -1.0;
  for (int s = 0; s < samples; ++s) {
    const auto [x, y] = sample_admissible_pair(p.g, p.J, rng);
    ResidualRecord rec = necessary_residuals(p, theta, x, y);
    if (rec.max_axiom_residual() > worst) {
      worst = rec.max_axiom_residual();
      scan.worst = std::move(rec);
    }
  }
  scan.holds = worst <= tol;
  return scan;
}

SpaceFormDefect space_form_defect(const HermitianPoint& p) {
  const Mat E = orthonormal_adapted_frame(p.g, p.J);
  const CurvatureTensor Rf = p.R.change_basis(E);
  const CurvatureTensor p1 = pi1(Mat::Identity(p.dim(), p.dim()));
  SpaceFormDefect out;
  out.c_star = Rf.dot(p1) / p1.dot(p1);
  out.defect_norm = (Rf - out.c_star * p1).max_abs();
  return out;
}

TheoremReport theorem_check(const HermitianPoint& p, double theta, int samples,
                            std::uint64_t seed, double tol,
                            std::optional<double> nabla_j_residual) {
  TheoremReport rep;
  rep.scan = axiom_scan(p, theta, samples, seed, tol);
  rep.defect = space_form_defect(p);
  rep.space_form_confirmed = rep.scan.holds && rep.defect.defect_norm <= tol;
  if (nabla_j_residual && *nabla_j_residual <= tol) {
    // Kaehler case: the corollary sharpens "space form" to "flat"
    rep.corollary_flat = rep.scan.holds && std::abs(rep.defect.c_star) <= tol &&
                         rep.defect.defect_norm <= tol;
  }
  return rep;
}

SchurScan schur_scan(const std::vector<HermitianPoint>& points, double tol) {
  if (points.size() < 2) throw std::invalid_argument("schur_scan: need at least 2 points");
  SchurScan scan;
  scan.c_values.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const SpaceFormDefect d = space_form_defect(points[i]);
    if (d.defect_norm > tol)
      throw std::invalid_argument("schur_scan: point " + std::to_string(i) +
                                  " is not a space form (defect " + std::to_string(d.defect_norm) +
                                  " > tol)");
    scan.c_values.push_back(d.c_star);
  }
  const auto [lo, hi] = std::minmax_element(scan.c_values.begin(), scan.c_values.end());
  scan.spread = *hi - *lo;
  scan.constant = scan.spread <= tol;
  return scan;
}

}  // namespace ahlab
