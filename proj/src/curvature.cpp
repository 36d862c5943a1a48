#include "ahlab/curvature.hpp"

#include <cmath>

namespace ahlab {

double sectional_curvature(const HermitianPoint& p, const TwoPlane& plane) {
  const TwoPlane on = orthonormalize(plane);
  return p.R.evaluate(on.b1(), on.b2(), on.b2(), on.b1());
}

double holomorphic_curvature(const HermitianPoint& p, const Vec& x) {
  if (std::abs(norm(p.g, x) - 1.0) > kPreconditionTol)
    throw admissibility_error("holomorphic_curvature: x is not a unit vector");
  return sectional_curvature(p, TwoPlane(p, x, p.J * x));
}

std::pair<Vec, Vec> sample_admissible_pair(const Mat& g, const Mat& J, SeededRng& rng) {
  const Vec x = rng.unit_vector(g);
  const Vec jx = J * x;
  while (true) {
    Vec y = project_out(g, rng.gaussian_vector(static_cast<int>(g.rows())), {x, jx});
    const double n = norm(g, y);
    if (n > 1e-8) return {x, y / n};
  }
}

ConstancyScan constancy_scan(const HermitianPoint& p, SectionKind kind, int samples,
                             std::uint64_t seed) {
  if (samples < 2) throw std::invalid_argument("constancy_scan: need at least 2 samples");
  SeededRng rng(seed);
  std::vector<double> values;
  values.reserve(samples);
  for (int s = 0; s < samples; ++s) {
    if (kind == SectionKind::holomorphic) {
      values.push_back(holomorphic_curvature(p, rng.unit_vector(p.g)));
    } else {
      const auto [x, y] = sample_admissible_pair(p.g, p.J, rng);
      values.push_back(p.R.evaluate(x, y, y, x));
    }
  }
  ConstancyScan scan;
  for (double v : values) scan.mean += v;
  scan.mean /= static_cast<double>(values.size());
  for (double v : values) scan.max_deviation = std::max(scan.max_deviation, std::abs(v - scan.mean));
  return scan;
}

}  // namespace ahlab
