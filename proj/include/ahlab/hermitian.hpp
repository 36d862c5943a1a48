#pragma once

#include <string>
#include <vector>

#include "ahlab/tensor.hpp"

namespace ahlab {

// Pointwise almost-Hermitian data on one tangent space: Gram matrix g,
// complex structure J, curvature tensor R. Sign convention throughout:
// R(X,Y,Z,U) = g(R(X,Y)Z, U) with R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y],
// so that K(x,y) = R(x,y,y,x) is +1 on the unit sphere.
struct HermitianPoint {
  Mat g;
  Mat J;
  CurvatureTensor R;

  HermitianPoint(Mat g_in, Mat J_in, CurvatureTensor R_in);

  int dim() const { return static_cast<int>(g.rows()); }

  // J-adapted flat structure: g = I, J = standard blocks, R as given
  // (zero when omitted).
  static HermitianPoint flat(int dim);
  static HermitianPoint standard(int dim, CurvatureTensor R_in);
};

// pi1(x,y,z,u) = g(x,u) g(y,z) - g(x,z) g(y,u); sectional curvature 1 on
// every g-orthonormal pair.
CurvatureTensor pi1(const Mat& g);

// pi2(x,y,z,u) = g(x,Ju) g(y,Jz) - g(x,Jz) g(y,Ju) - 2 g(x,Jy) g(z,Ju);
// the Kaehler building block with pi2(x,Jx,Jx,x) = 3 for unit x.
CurvatureTensor pi2(const Mat& g, const Mat& J);

// R = c * pi1: constant sectional curvature c.
CurvatureTensor real_space_form_tensor(double c, const Mat& g);

// R = (c/4)(pi1 + pi2): constant holomorphic sectional curvature c,
// antiholomorphic sectional curvature c/4.
CurvatureTensor complex_space_form_tensor(double c, const Mat& g, const Mat& J);

struct NamedResidual {
  std::string name;
  double value = 0.0;
};

struct ValidationReport {
  std::vector<NamedResidual> residuals;
  double tol = kAlgebraicTol;
  double max() const;
  bool valid() const { return max() <= tol; }
};

// Residuals of every standing invariant: g symmetric positive definite,
// J*J = -I, g(J.,J.) = g(.,.), and the four curvature symmetries.
// Rejects odd dimension or dim < 4 (the m >= 2 hypothesis).
ValidationReport validate_point(const HermitianPoint& p, double tol = kAlgebraicTol);

// max |J^T g J - g| over entries; throws are left to callers.
double compatibility_residual(const Mat& g, const Mat& J);

// g-orthonormal J-adapted frame (columns): pairs (e, Je) built by
// Gram-Schmidt from `candidates` (coordinate basis when empty). In the
// returned frame g = I and J has the standard block form.
Mat orthonormal_adapted_frame(const Mat& g, const Mat& J,
                              const std::vector<Vec>& candidates = {});

}  // namespace ahlab
