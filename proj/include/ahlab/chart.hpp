#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ahlab/expr.hpp"
#include "ahlab/hermitian.hpp"
#include "ahlab/rng.hpp"

namespace ahlab {

// Central finite differences, second order. `step` drives derivatives of the
// chart/immersion expressions; `outer_step` drives derivatives of quantities
// that are themselves finite-differenced (e.g. the second fundamental form
// along a patch), where a larger step keeps the inner rounding noise from
// being amplified.
struct DiffConfig {
  double step = 1e-4;
  double outer_step = 1e-3;
};

struct ExpectedModel {
  std::string kind;  // "real_space_form" | "complex_space_form" | "none"
  double c = 0.0;
};

// Coordinate expressions for g (and optionally J) over an open box.
class ChartMetric {
 public:
  std::string name;
  int dim = 0;
  std::vector<std::vector<Expr>> g_exprs;                 // dim x dim
  std::optional<std::vector<std::vector<Expr>>> J_exprs;  // dim x dim
  Vec box_lo, box_hi;
  DiffConfig diff;
  std::optional<ExpectedModel> expected;

  bool has_J() const { return J_exprs.has_value(); }

  Mat g_at(const Vec& u) const;
  Mat J_at(const Vec& u) const;

  bool in_domain(const Vec& u, double margin = 0.0) const;
  // margin sized for the nested finite-difference stencils
  void require_interior(const Vec& u) const;

  Vec sample_interior_point(SeededRng& rng) const;  // middle 60% of the box

  static ChartMetric from_json_text(const std::string& text);
  static ChartMetric load_file(const std::string& path);
  std::string to_json_text() const;
};

// Levi-Civita symbols Gamma^k_{ij}, k-indexed; symmetric in (i, j).
std::vector<Mat> christoffel(const ChartMetric& chart, const Vec& u);

// max |nabla_k g_ij| over components: a consistency check of christoffel.
double metric_compatibility_residual(const ChartMetric& chart, const Vec& u);

// Curvature tensor in the coordinate frame, R(di,dj,dk,dl) = g(R(di,dj)dk, dl).
CurvatureTensor riemann_tensor_coord(const ChartMetric& chart, const Vec& u);

// g-orthonormal frame at u (columns, chart coordinates); J-adapted when the
// chart carries J. seed = 0 starts Gram-Schmidt from the coordinate basis,
// any other seed from a random basis.
Mat orthonormal_frame(const ChartMetric& chart, const Vec& u, std::uint64_t seed = 0);

// Curvature tensor expressed in orthonormal_frame(chart, u, seed).
CurvatureTensor riemann_tensor(const ChartMetric& chart, const Vec& u, std::uint64_t seed = 0);

// max-abs component of nabla J in the orthonormal frame; 0 iff Kaehler at u.
double nabla_J_residual(const ChartMetric& chart, const Vec& u);

// Pointwise almost-Hermitian data extracted from the chart. Charts without a
// J field get the standard structure of the orthonormal frame (any compatible
// J serves for the pointwise checks; the choice is irrelevant on space forms).
struct FramedPoint {
  Vec u;      // chart point
  Mat frame;  // columns in chart coordinates
  HermitianPoint point;
};

FramedPoint hermitian_point_at(const ChartMetric& chart, const Vec& u, std::uint64_t seed = 0);

// Built-in spaces: flat, sphere(c), real_hyperbolic(c), fubini_study(c),
// complex_hyperbolic(c), product_s2xs2, non_kahler_flat_J.
ChartMetric catalog(const std::string& name, std::optional<double> c = std::nullopt,
                    int dim = 4);

std::vector<std::string> catalog_names();

}  // namespace ahlab
