#include "ahlab/plane.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace ahlab {

namespace {

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

constexpr double kDependenceTol = 1e-10;
constexpr double kHolomorphicSin = 1e-8;

}  // namespace

TwoPlane::TwoPlane(Mat g, Mat J, Vec b1, Vec b2)
    : g_(std::move(g)), J_(std::move(J)), b1_(std::move(b1)), b2_(std::move(b2)) {
  const auto n = g_.rows();
  if (g_.cols() != n || J_.rows() != n || J_.cols() != n || b1_.size() != n || b2_.size() != n)
    throw std::invalid_argument("TwoPlane: dimension mismatch");
}

double TwoPlane::normalized_gram_det() const {
  const double n1 = norm(g_, b1_), n2 = norm(g_, b2_);
  if (n1 == 0.0 || n2 == 0.0) return 0.0;
  const double c = inner(g_, b1_, b2_) / (n1 * n2);
  return 1.0 - c * c;
}

TwoPlane orthonormalize(const TwoPlane& plane) {
  if (plane.normalized_gram_det() <= kDependenceTol)
    throw degenerate_plane_error("orthonormalize: basis vectors are numerically dependent");
  const Mat& g = plane.g();
  const Vec e1 = plane.b1() / norm(g, plane.b1());
  Vec w = project_out(g, plane.b2(), {e1});
  w /= norm(g, w);
  return TwoPlane(g, plane.J(), e1, w);
}

double kahler_angle(const TwoPlane& plane) {
  const TwoPlane on = orthonormalize(plane);
  const double c = std::abs(inner(on.g(), on.b1(), on.J() * on.b2()));
  return std::acos(clamp01(c));
}

TwoPlane make_theta_plane(const Mat& g, const Mat& J, const Vec& x, const Vec& y, double theta) {
  if (theta < 0.0 || theta > M_PI / 2.0)
    throw admissibility_error("make_theta_plane: theta must lie in [0, pi/2]");
  const double nx = norm(g, x), ny = norm(g, y);
  if (std::abs(nx - 1.0) > kPreconditionTol)
    throw admissibility_error("make_theta_plane: x is not a unit vector");
  if (std::abs(ny - 1.0) > kPreconditionTol)
    throw admissibility_error("make_theta_plane: y is not a unit vector");
  if (std::abs(inner(g, x, y)) > kPreconditionTol)
    throw admissibility_error("make_theta_plane: g(x, y) != 0");
  if (std::abs(inner(g, x, J * y)) > kPreconditionTol)
    throw admissibility_error("make_theta_plane: g(x, Jy) != 0");
  const Vec second = std::cos(theta) * (J * x) + std::sin(theta) * y;
  return TwoPlane(g, J, x, second);
}

TwoPlane make_theta_plane(const HermitianPoint& p, const Vec& x, const Vec& y, double theta) {
  return make_theta_plane(p.g, p.J, x, y, theta);
}

CanonicalPlaneBasis canonical_plane_basis(const TwoPlane& plane) {
  const TwoPlane on = orthonormalize(plane);
  const Mat& g = on.g();
  const Mat& J = on.J();
  Vec x = on.b1();
  const Vec& w = on.b2();
  // sign convention: flip x so that g(Jx, w) >= 0, making w = Jx cos(phi) + y sin(phi)
  if (inner(g, J * x, w) < 0.0) x = -x;
  const double cos_phi = clamp01(inner(g, J * x, w));
  const double phi = std::acos(cos_phi);
  const double sin_phi = std::sqrt(clamp01(1.0 - cos_phi * cos_phi));

  CanonicalPlaneBasis out;
  out.x = x;
  out.phi = phi;
  if (sin_phi > kHolomorphicSin) {
    Vec y = (w - cos_phi * (J * x)) / sin_phi;
    y /= norm(g, y);
    out.y = std::move(y);
  }
  return out;
}

std::array<double, 2> principal_angles(const TwoPlane& a, const TwoPlane& b) {
  const TwoPlane oa = orthonormalize(a);
  const TwoPlane ob = orthonormalize(b);
  const Mat& g = oa.g();
  Mat A(g.rows(), 2), B(g.rows(), 2);
  A.col(0) = oa.b1();
  A.col(1) = oa.b2();
  B.col(0) = ob.b1();
  B.col(1) = ob.b2();

  const Mat m = A.transpose() * g * B;  // cosines via SVD of the overlap
  const Vec cosines = Eigen::JacobiSVD<Mat>(m).singularValues();

  // small angles need the sine route: SVD of the residual of B after
  // projecting onto A (acos near 1 only resolves to sqrt(eps))
  const Mat q = B - A * m;
  const Mat L = Mat(g.llt().matrixL());
  const Vec sines = Eigen::JacobiSVD<Mat>(L.transpose() * q).singularValues();

  std::array<double, 2> out{};
  for (int i = 0; i < 2; ++i) {
    const double c = clamp01(cosines(i));
    const double s = clamp01(sines(1 - i));  // opposite sort order
    out[i] = c * c >= 0.5 ? std::asin(s) : std::acos(c);
  }
  return out;
}

}  // namespace ahlab
