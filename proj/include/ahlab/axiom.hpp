#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ahlab/curvature.hpp"

namespace ahlab {

// The five scalar residuals of one (x, y, theta) configuration, all of which
// vanish when the theta-holomorphic 2-plane axiom holds at the point:
//   eq1 = R(Jx cos(t) + y sin(t), x, x, Jy)
//   eq2 = R(Jx cos(t) + y sin(t), x, x, Jx sin(t) - y cos(t))
//   eq3 = R(Jx, x, x, Jy)
//   eq4 = H(x) - K(x, y)
//   eq5 = H(x) - H(y)
// eq1/eq2 are the direct Codazzi consequences; eq3-eq5 follow from them by
// multilinearity (eq1(x) - eq1(-x) = 2 cos(t) eq3).
struct ResidualRecord {
  double theta = 0.0;
  double eq1 = 0.0, eq2 = 0.0, eq3 = 0.0, eq4 = 0.0, eq5 = 0.0;
  Vec x, y;

  // the quantity the axiom constrains directly
  double max_axiom_residual() const;
  double max_all() const;
};

// Requires an admissible pair (unit x, y with x perp y, Jy) and an interior
// angle theta in (0, pi/2); endpoints are the holomorphic/antiholomorphic
// axioms, which are out of scope here.
ResidualRecord necessary_residuals(const HermitianPoint& p, double theta, const Vec& x,
                                   const Vec& y);

struct AxiomScan {
  bool holds = false;
  double tol = 0.0;
  int samples = 0;
  ResidualRecord worst;  // argmax of max(|eq1|, |eq2|)
};

AxiomScan axiom_scan(const HermitianPoint& p, double theta, int samples, std::uint64_t seed,
                     double tol);

// Least-squares projection of R onto pi1 in the orthonormalized J-adapted
// frame: c_star = <R, pi1> / <pi1, pi1>, defect = max-abs component of
// T = R - c_star pi1. defect == 0 characterizes a real space form pointwise.
struct SpaceFormDefect {
  double c_star = 0.0;
  double defect_norm = 0.0;
};

SpaceFormDefect space_form_defect(const HermitianPoint& p);

struct TheoremReport {
  AxiomScan scan;
  SpaceFormDefect defect;
  bool space_form_confirmed = false;      // axiom holds -> defect <= tol
  std::optional<bool> corollary_flat;     // set when nabla_J data was supplied
};

// Checks the theorem's pointwise content: if the axiom scan holds, the point
// must be a real space form; when a vanishing nabla-J residual is supplied
// (Kaehler case), additionally requires c_star <= tol (flatness).
TheoremReport theorem_check(const HermitianPoint& p, double theta, int samples,
                            std::uint64_t seed, double tol,
                            std::optional<double> nabla_j_residual = std::nullopt);

struct SchurScan {
  std::vector<double> c_values;
  double spread = 0.0;  // max pairwise |c_i - c_j|
  bool constant = false;
};

// Requires each point to be a space form (defect <= tol); otherwise throws,
// naming the offending point.
SchurScan schur_scan(const std::vector<HermitianPoint>& points, double tol);

}  // namespace ahlab
