#include "ahlab/hermitian.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace ahlab {

HermitianPoint::HermitianPoint(Mat g_in, Mat J_in, CurvatureTensor R_in)
    : g(std::move(g_in)), J(std::move(J_in)), R(std::move(R_in)) {
  const auto n = g.rows();
  if (g.cols() != n || J.rows() != n || J.cols() != n || R.dim() != n)
    throw std::invalid_argument("HermitianPoint: g, J, R dimensions disagree");
}

HermitianPoint HermitianPoint::flat(int dim) {
  return standard(dim, CurvatureTensor(dim));
}

HermitianPoint HermitianPoint::standard(int dim, CurvatureTensor R_in) {
  return HermitianPoint(Mat::Identity(dim, dim), standard_complex_structure(dim),
                        std::move(R_in));
}

CurvatureTensor pi1(const Mat& g) {
  const int n = static_cast<int>(g.rows());
  return CurvatureTensor::build(n, [&](int i, int j, int k, int l) {
    return g(i, l) * g(j, k) - g(i, k) * g(j, l);
  });
}

CurvatureTensor pi2(const Mat& g, const Mat& J) {
  if (compatibility_residual(g, J) > kPreconditionTol ||
      max_abs(J * J + Mat::Identity(g.rows(), g.cols())) > kPreconditionTol)
    throw admissibility_error("pi2: (g, J) is not an almost Hermitian pair");
  const Mat gJ = g * J;  // gJ(i,j) = g(e_i, J e_j)
  const int n = static_cast<int>(g.rows());
  return CurvatureTensor::build(n, [&](int i, int j, int k, int l) {
    return gJ(i, l) * gJ(j, k) - gJ(i, k) * gJ(j, l) - 2.0 * gJ(i, j) * gJ(k, l);
  });
}

CurvatureTensor real_space_form_tensor(double c, const Mat& g) { return c * pi1(g); }

CurvatureTensor complex_space_form_tensor(double c, const Mat& g, const Mat& J) {
  CurvatureTensor t = pi1(g);
  t += pi2(g, J);
  t *= c / 4.0;
  return t;
}

double ValidationReport::max() const {
  double m = 0.0;
  for (const auto& r : residuals) m = std::max(m, r.value);
  return m;
}

ValidationReport validate_point(const HermitianPoint& p, double tol) {
  const int n = p.dim();
  if (n < 4 || n % 2 != 0)
    throw hypothesis_error(
        "validate_point: need even dimension >= 4 (the theorem assumes m >= 2)");

  ValidationReport rep;
  rep.tol = tol;
  rep.residuals.push_back({"g_symmetry", max_abs(p.g - p.g.transpose())});

  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (p.g + p.g.transpose()));
  const double lambda_min = es.eigenvalues().minCoeff();
  // any nonpositive eigenvalue is reported at least as 1
  const double spd = lambda_min > 0.0 ? 0.0 : std::max(1.0, -lambda_min);
  rep.residuals.push_back({"g_positive_definite", spd});

  rep.residuals.push_back({"J_squared_plus_identity",
                           max_abs(p.J * p.J + Mat::Identity(n, n))});
  rep.residuals.push_back({"gJ_compatibility", compatibility_residual(p.g, p.J)});

  const SymmetryReport sym = symmetry_residuals(p.R);
  rep.residuals.push_back({"R_antisym_first_pair", sym.antisym_first_pair});
  rep.residuals.push_back({"R_antisym_second_pair", sym.antisym_second_pair});
  rep.residuals.push_back({"R_pair_interchange", sym.pair_interchange});
  rep.residuals.push_back({"R_first_bianchi", sym.first_bianchi});
  return rep;
}

double compatibility_residual(const Mat& g, const Mat& J) {
  return max_abs(J.transpose() * g * J - g);
}

Mat orthonormal_adapted_frame(const Mat& g, const Mat& J, const std::vector<Vec>& candidates) {
  const int n = static_cast<int>(g.rows());
  std::vector<Vec> frame;
  frame.reserve(n);
  std::size_t next = 0;
  auto candidate = [&]() -> Vec {
    if (candidates.empty()) {
      if (next >= static_cast<std::size_t>(n))
        throw degenerate_plane_error("orthonormal_adapted_frame: candidates exhausted");
      return Vec::Unit(n, static_cast<int>(next++));
    }
    if (next >= candidates.size())
      throw degenerate_plane_error("orthonormal_adapted_frame: candidates exhausted");
    return candidates[next++];
  };
  while (static_cast<int>(frame.size()) < n) {
    const bool pairing = frame.size() % 2 == 1;
    Vec v = pairing ? Vec(J * frame.back()) : candidate();
    Vec w = project_out(g, v, frame);
    const double nn = norm(g, w);
    if (nn <= 1e-10) {
      if (pairing)
        throw degenerate_plane_error("orthonormal_adapted_frame: J e fell into the span");
      continue;  // dependent candidate, take the next one
    }
    frame.push_back(w / nn);
  }
  Mat E(n, n);
  for (int i = 0; i < n; ++i) E.col(i) = frame[i];
  return E;
}

}  // namespace ahlab
