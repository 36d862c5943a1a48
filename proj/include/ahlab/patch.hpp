#pragma once

#include "ahlab/chart.hpp"

namespace ahlab {

// Vector field along a patch, given by ambient components as functions of the
// patch parameters u0..u{n-1}.
struct NormalField {
  std::vector<Expr> components;

  static NormalField constant(const Vec& xi);
  Vec eval(const Vec& v) const;
};

// A parameterized submanifold inside a chart: immersion expressions mapping n
// parameters to chart coordinates.
class ImmersedPatch {
 public:
  std::string name;
  ChartMetric ambient;
  std::vector<Expr> immersion;  // ambient.dim entries
  int n = 0;                    // intrinsic dimension
  Vec box_lo, box_hi;
  DiffConfig diff;

  Vec map_point(const Vec& v) const;
  // df(v), dim x n, by central differences
  Mat pushforward(const Vec& v) const;

  bool in_domain(const Vec& v, double margin = 0.0) const;
  void require_interior(const Vec& v) const;
  Vec sample_interior_point(SeededRng& rng) const;

  static ImmersedPatch from_json_text(const std::string& text);
  static ImmersedPatch load_file(const std::string& path);
  std::string to_json_text() const;
};

// g-orthonormal tangent and normal frames at one parameter point.
struct PatchFrames {
  Vec chart_point;
  Mat g;        // ambient metric there
  Mat tangent;  // dim x n
  Mat normal;   // dim x (dim - n)
};

// Throws chart_domain_error at rank-deficient immersion points (singular
// values of the pushforward <= 1e-8).
PatchFrames patch_frames(const ImmersedPatch& patch, const Vec& v);

// sigma(E_i, E_j) over the orthonormal tangent frame, ambient components.
struct SecondFundamentalForm {
  PatchFrames frames;
  std::vector<Vec> values;  // row-major n x n

  const Vec& value(int i, int j) const;
  double symmetry_residual() const;  // max-abs component of sigma_ij - sigma_ji
  double normality_residual() const; // max |g(sigma_ij, tangent_k)|
};

SecondFundamentalForm second_fundamental_form(const ImmersedPatch& patch, const Vec& v);

// H = (1/n) trace sigma, ambient components; normal to the patch.
Vec mean_curvature(const ImmersedPatch& patch, const Vec& v);

// max-abs component of sigma(E_i, E_j) - delta_ij H; 0 iff totally umbilical.
double umbilic_residual(const ImmersedPatch& patch, const Vec& v);

// nabla~_X xi = -A_xi X + D_X xi over the orthonormal tangent frame.
struct WeingartenSplit {
  PatchFrames frames;
  Mat shape_operator;                   // n x n coefficients of A on the frame
  std::vector<Vec> normal_derivative;   // D_{E_i} xi
  std::vector<Vec> ambient_derivative;  // nabla~_{E_i} xi (diagnostic)

  double reconstruction_residual() const;
};

// xi(v) must be g-orthogonal to the tangent space within 1e-8.
WeingartenSplit weingarten_split(const ImmersedPatch& patch, const Vec& v,
                                 const NormalField& xi);

// max over the tangent frame of |D_X xi|_g; 0 iff xi is parallel at v.
double parallel_normal_residual(const ImmersedPatch& patch, const Vec& v, const NormalField& xi);

// same residual for the mean curvature vector itself, differentiated along
// the patch; small iff H is a parallel normal field at v.
double mean_curvature_parallel_residual(const ImmersedPatch& patch, const Vec& v);

// normal component of the ambient R(X,Y)Z at f(v) for tangent X, Y, Z; by the
// Codazzi equation this vanishes on totally umbilical patches with parallel
// mean curvature, which is what grounds the two scan equations.
Vec ambient_curvature_normal_component(const ImmersedPatch& patch, const Vec& v, const Vec& X,
                                       const Vec& Y, const Vec& Z);

// {R(X,Y)Z}^perp - [(nabla-bar_X sigma)(Y,Z) - (nabla-bar_Y sigma)(X,Z)] for
// ambient tangent vectors X, Y, Z at f(v). This is an identity of submanifold
// geometry, so the returned normal vector is pure discretization error.
Vec codazzi_residual(const ImmersedPatch& patch, const Vec& v, const Vec& X, const Vec& Y,
                     const Vec& Z);

// Built-in patches: affine_plane_flat, circle_flat(r), round_sphere_flat(r),
// cylinder_flat(r), great_sphere_in_sphere1, small_sphere_in_sphere1(r),
// slanted_plane_fs.
ImmersedPatch patch_catalog(const std::string& name, std::optional<double> r = std::nullopt);
std::vector<std::string> patch_catalog_names();

}  // namespace ahlab
