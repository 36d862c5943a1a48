#pragma once

#include <cstdint>
#include <utility>

#include "ahlab/plane.hpp"
#include "ahlab/rng.hpp"

namespace ahlab {

// K(plane) = R(b1, b2, b2, b1) on an orthonormalized basis; basis independent.
double sectional_curvature(const HermitianPoint& p, const TwoPlane& plane);

// H(x) = K(span{x, Jx}) = R(x, Jx, Jx, x); x must be a unit vector.
double holomorphic_curvature(const HermitianPoint& p, const Vec& x);

enum class SectionKind { holomorphic, antiholomorphic };

struct ConstancyScan {
  double mean = 0.0;
  double max_deviation = 0.0;  // max |value - mean| over the samples
};

// Samples H over seeded random unit vectors (holomorphic kind) or K over
// seeded admissible orthonormal pairs x, y with x perpendicular to y, Jy
// (antiholomorphic kind).
ConstancyScan constancy_scan(const HermitianPoint& p, SectionKind kind, int samples,
                             std::uint64_t seed);

// Seeded admissible pair: unit x, unit y with g(x,y) = g(x,Jy) = 0, drawn by
// projecting a gaussian vector out of span{x, Jx}.
std::pair<Vec, Vec> sample_admissible_pair(const Mat& g, const Mat& J, SeededRng& rng);

}  // namespace ahlab
