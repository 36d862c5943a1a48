#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ahlab/errors.hpp"

namespace ahlab {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Default tolerances. Algebraic constructions are exact up to rounding;
// chart-level quantities carry finite-difference error.
inline constexpr double kAlgebraicTol = 1e-12;
inline constexpr double kChartTol = 1e-5;
inline constexpr double kPreconditionTol = 1e-10;

inline double inner(const Mat& g, const Vec& a, const Vec& b) { return a.dot(g * b); }

inline double norm(const Mat& g, const Vec& a) { return std::sqrt(inner(g, a, a)); }

// Gram-Schmidt of `v` against the g-orthonormal set `basis` (two passes; the
// second one mops up the rounding left by the first).
inline Vec project_out(const Mat& g, Vec v, const std::vector<Vec>& basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const Vec& e : basis) v -= inner(g, e, v) * e;
  }
  return v;
}

// g-orthonormalizes the given vectors in order. Throws if some vector is
// (numerically) in the span of its predecessors.
inline std::vector<Vec> gram_schmidt(const Mat& g, const std::vector<Vec>& vs,
                                     double dependence_tol = 1e-10) {
  std::vector<Vec> out;
  out.reserve(vs.size());
  for (const Vec& v : vs) {
    Vec w = project_out(g, v, out);
    const double n = norm(g, w);
    if (n <= dependence_tol) throw degenerate_plane_error("gram_schmidt: dependent input vector");
    out.push_back(w / n);
  }
  return out;
}

// The block structure J e_{2k} = e_{2k+1}, J e_{2k+1} = -e_{2k}; the J-adapted
// basis convention {e_1, J e_1, ..., e_m, J e_m} used by every catalog
// constructor.
inline Mat standard_complex_structure(int dim) {
  if (dim < 2 || dim % 2 != 0)
    throw hypothesis_error("standard_complex_structure: dimension must be even and >= 2");
  Mat J = Mat::Zero(dim, dim);
  for (int k = 0; k + 1 < dim; k += 2) {
    J(k + 1, k) = 1.0;
    J(k, k + 1) = -1.0;
  }
  return J;
}

inline double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace ahlab
