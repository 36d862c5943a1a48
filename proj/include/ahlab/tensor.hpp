#pragma once

#include <string>
#include <vector>

#include "ahlab/linalg.hpp"

namespace ahlab {

// Dense rank-4 multilinear form on R^dim; components R(e_i, e_j, e_k, e_l).
// Symmetries are validated (symmetry_residuals), never exploited for storage.
class CurvatureTensor {
 public:
  CurvatureTensor() = default;
  explicit CurvatureTensor(int dim)
      : dim_(dim), c_(static_cast<std::size_t>(dim) * dim * dim * dim, 0.0) {}

  template <class F>
  static CurvatureTensor build(int dim, F&& f) {
    CurvatureTensor t(dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k)
          for (int l = 0; l < dim; ++l) t.at(i, j, k, l) = f(i, j, k, l);
    return t;
  }

  int dim() const { return dim_; }

  double operator()(int i, int j, int k, int l) const { return c_[idx(i, j, k, l)]; }
  double& at(int i, int j, int k, int l) { return c_[idx(i, j, k, l)]; }

  // Full multilinear contraction R(x, y, z, u).
  double evaluate(const Vec& x, const Vec& y, const Vec& z, const Vec& u) const;

  // Components in the basis whose vectors are the columns of `frame`:
  // R'(a,b,c,d) = R(F e_a, F e_b, F e_c, F e_d).
  CurvatureTensor change_basis(const Mat& frame) const;

  double max_abs() const;
  double dot(const CurvatureTensor& other) const;

  CurvatureTensor& operator+=(const CurvatureTensor& o);
  CurvatureTensor& operator-=(const CurvatureTensor& o);
  CurvatureTensor& operator*=(double s);

  friend CurvatureTensor operator+(CurvatureTensor a, const CurvatureTensor& b) { return a += b; }
  friend CurvatureTensor operator-(CurvatureTensor a, const CurvatureTensor& b) { return a -= b; }
  friend CurvatureTensor operator*(double s, CurvatureTensor t) { return t *= s; }

 private:
  std::size_t idx(int i, int j, int k, int l) const {
    return ((static_cast<std::size_t>(i) * dim_ + j) * dim_ + k) * dim_ + l;
  }

  int dim_ = 0;
  std::vector<double> c_;
};

// Max residuals of the four algebraic curvature symmetries.
struct SymmetryReport {
  double antisym_first_pair = 0.0;   // R(x,y,z,u) + R(y,x,z,u)
  double antisym_second_pair = 0.0;  // R(x,y,z,u) + R(x,y,u,z)
  double pair_interchange = 0.0;     // R(x,y,z,u) - R(z,u,x,y)
  double first_bianchi = 0.0;        // R(x,y,z,u) + R(y,z,x,u) + R(z,x,y,u)

  double max() const;
  bool valid(double tol) const { return max() <= tol; }
};

SymmetryReport symmetry_residuals(const CurvatureTensor& R);

// R(X,Y,Z,U) = R(JX,JY,JZ,JU) over all basis 4-tuples.
struct RkResult {
  bool holds = false;
  double residual = 0.0;
};

RkResult is_rk(const CurvatureTensor& R, const Mat& J, double tol = kAlgebraicTol);

}  // namespace ahlab
