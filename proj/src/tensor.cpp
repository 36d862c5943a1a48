#include "ahlab/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace ahlab {

double CurvatureTensor::evaluate(const Vec& x, const Vec& y, const Vec& z, const Vec& u) const {
  if (x.size() != dim_ || y.size() != dim_ || z.size() != dim_ || u.size() != dim_)
    throw std::invalid_argument("CurvatureTensor::evaluate: vector dimension mismatch");
  double acc = 0.0;
  std::size_t p = 0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      const double xy = x(i) * y(j);
      for (int k = 0; k < dim_; ++k) {
        const double xyz = xy * z(k);
        for (int l = 0; l < dim_; ++l, ++p) acc += c_[p] * xyz * u(l);
      }
    }
  return acc;
}

CurvatureTensor CurvatureTensor::change_basis(const Mat& frame) const {
  if (frame.rows() != dim_ || frame.cols() != dim_)
    throw std::invalid_argument("CurvatureTensor::change_basis: frame dimension mismatch");
  const int n = dim_;
  // contract one slot at a time: O(4 n^5) instead of O(n^8)
  std::vector<double> a = c_, b(c_.size(), 0.0);
  auto I = [n](int i, int j, int k, int l) {
    return ((static_cast<std::size_t>(i) * n + j) * n + k) * n + l;
  };
  for (int slot = 0; slot < 4; ++slot) {
    std::fill(b.begin(), b.end(), 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            // after each pass the contracted slot rotates to the back
            const double v = a[I(i, j, k, l)];
            if (v == 0.0) continue;
            for (int m = 0; m < n; ++m) b[I(j, k, l, m)] += v * frame(i, m);
          }
    std::swap(a, b);
  }
  CurvatureTensor out(n);
  out.c_ = std::move(a);
  return out;
}

double CurvatureTensor::max_abs() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

double CurvatureTensor::dot(const CurvatureTensor& other) const {
  if (other.dim_ != dim_) throw std::invalid_argument("CurvatureTensor::dot: dimension mismatch");
  double acc = 0.0;
  for (std::size_t p = 0; p < c_.size(); ++p) acc += c_[p] * other.c_[p];
  return acc;
}

CurvatureTensor& CurvatureTensor::operator+=(const CurvatureTensor& o) {
  if (o.dim_ != dim_) throw std::invalid_argument("CurvatureTensor: dimension mismatch");
  for (std::size_t p = 0; p < c_.size(); ++p) c_[p] += o.c_[p];
  return *this;
}

CurvatureTensor& CurvatureTensor::operator-=(const CurvatureTensor& o) {
  if (o.dim_ != dim_) throw std::invalid_argument("CurvatureTensor: dimension mismatch");
  for (std::size_t p = 0; p < c_.size(); ++p) c_[p] -= o.c_[p];
  return *this;
}

CurvatureTensor& CurvatureTensor::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

double SymmetryReport::max() const {
  return std::max({antisym_first_pair, antisym_second_pair, pair_interchange, first_bianchi});
}

SymmetryReport symmetry_residuals(const CurvatureTensor& R) {
  SymmetryReport r;
  const int n = R.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double v = R(i, j, k, l);
          r.antisym_first_pair = std::max(r.antisym_first_pair, std::abs(v + R(j, i, k, l)));
          r.antisym_second_pair = std::max(r.antisym_second_pair, std::abs(v + R(i, j, l, k)));
          r.pair_interchange = std::max(r.pair_interchange, std::abs(v - R(k, l, i, j)));
          r.first_bianchi =
              std::max(r.first_bianchi, std::abs(v + R(j, k, i, l) + R(k, i, j, l)));
        }
  return r;
}

RkResult is_rk(const CurvatureTensor& R, const Mat& J, double tol) {
  const CurvatureTensor RJ = R.change_basis(J);
  const double residual = (R - RJ).max_abs();
  return RkResult{residual <= tol, residual};
}

}  // namespace ahlab
