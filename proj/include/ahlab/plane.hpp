#pragma once

#include <array>
#include <optional>

#include "ahlab/hermitian.hpp"

namespace ahlab {

// A 2-dimensional subspace of one tangent space, carrying the ambient (g, J).
// Basis vectors need not be orthonormal; independence is checked through the
// Gram determinant of the unit-normalized pair (scale invariant).
class TwoPlane {
 public:
  TwoPlane(Mat g, Mat J, Vec b1, Vec b2);
  TwoPlane(const HermitianPoint& p, Vec b1, Vec b2)
      : TwoPlane(p.g, p.J, std::move(b1), std::move(b2)) {}

  const Vec& b1() const { return b1_; }
  const Vec& b2() const { return b2_; }
  const Mat& g() const { return g_; }
  const Mat& J() const { return J_; }
  int dim() const { return static_cast<int>(g_.rows()); }

  // Gram determinant of the normalized basis, = sin^2 of the angle between
  // the spanning directions.
  double normalized_gram_det() const;

 private:
  Mat g_, J_;
  Vec b1_, b2_;
};

// Gram-Schmidt with respect to g; throws degenerate_plane_error when the
// normalized Gram determinant is <= 1e-10.
TwoPlane orthonormalize(const TwoPlane& plane);

// arccos |g(x, Jy)| for an orthonormal basis {x, y}; in [0, pi/2],
// basis independent. The arccos argument is clamped to [0, 1].
double kahler_angle(const TwoPlane& plane);

// The 2-plane span{x, Jx cos(theta) + y sin(theta)}; its Kaehler angle is
// exactly theta. Requires unit x, y with x perpendicular to y and Jy.
TwoPlane make_theta_plane(const Mat& g, const Mat& J, const Vec& x, const Vec& y, double theta);
TwoPlane make_theta_plane(const HermitianPoint& p, const Vec& x, const Vec& y, double theta);

// Canonical form of an arbitrary 2-plane beta: an orthonormal basis
// {x, Jx cos(phi) + y sin(phi)} with x perpendicular to y, Jy and
// phi = kahler_angle(beta). For a holomorphic plane (phi ~ 0) y is absent
// and the basis degenerates to {x, Jx}.
struct CanonicalPlaneBasis {
  Vec x;
  std::optional<Vec> y;
  double phi = 0.0;
};

CanonicalPlaneBasis canonical_plane_basis(const TwoPlane& plane);

// Principal angles between two 2-planes (both in the same metric), ascending.
std::array<double, 2> principal_angles(const TwoPlane& a, const TwoPlane& b);

}  // namespace ahlab
