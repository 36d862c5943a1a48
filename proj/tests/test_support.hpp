#pragma once

#include <Eigen/QR>

#include "ahlab/hermitian.hpp"
#include "ahlab/rng.hpp"

namespace ahtest {

using namespace ahlab;

// Projection of a random array onto the algebraic curvature tensors:
// antisymmetrize both pairs, symmetrize the pair interchange, then remove the
// totally antisymmetric (Bianchi-violating) part.
inline CurvatureTensor random_curvature_tensor(int dim, SeededRng& rng) {
  CurvatureTensor t = CurvatureTensor::build(
      dim, [&](int, int, int, int) { return rng.gaussian(); });
  CurvatureTensor a = CurvatureTensor::build(dim, [&](int i, int j, int k, int l) {
    return 0.25 * (t(i, j, k, l) - t(j, i, k, l) - t(i, j, l, k) + t(j, i, l, k));
  });
  CurvatureTensor s = CurvatureTensor::build(dim, [&](int i, int j, int k, int l) {
    return 0.5 * (a(i, j, k, l) + a(k, l, i, j));
  });
  return CurvatureTensor::build(dim, [&](int i, int j, int k, int l) {
    const double bianchi = (s(i, j, k, l) + s(j, k, i, l) + s(k, i, j, l)) / 3.0;
    return s(i, j, k, l) - bianchi;
  });
}

// Real 2m x 2m representation of a random complex unitary: orthogonal and
// commuting with the standard J (columns interleaved re/im).
inline Mat random_unitary_real_rep(int m, SeededRng& rng) {
  Eigen::MatrixXcd a(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a(i, j) = std::complex<double>(rng.gaussian(), rng.gaussian());
  const Eigen::MatrixXcd q = Eigen::HouseholderQR<Eigen::MatrixXcd>(a).householderQ();
  Mat u = Mat::Zero(2 * m, 2 * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      u(2 * i, 2 * j) = q(i, j).real();
      u(2 * i, 2 * j + 1) = -q(i, j).imag();
      u(2 * i + 1, 2 * j) = q(i, j).imag();
      u(2 * i + 1, 2 * j + 1) = q(i, j).real();
    }
  return u;
}

// seeded unit vector pair satisfying the theta-plane admissibility exactly
// enough for 1e-12 level tests
inline std::pair<Vec, Vec> admissible_pair(const Mat& g, const Mat& J, SeededRng& rng) {
  const Vec x = rng.unit_vector(g);
  while (true) {
    Vec y = project_out(g, rng.gaussian_vector(static_cast<int>(g.rows())), {x, Vec(J * x)});
    const double n = norm(g, y);
    if (n > 1e-8) return {x, y / n};
  }
}

}  // namespace ahtest
