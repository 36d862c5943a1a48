#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "ahlab/linalg.hpp"

namespace ahlab {

// Seeded generator with a hand-rolled Box-Muller gaussian so that a given
// seed produces the same stream on every platform (std::normal_distribution
// is implementation-defined).
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * uniform();
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  Vec gaussian_vector(int dim) {
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v(i) = gaussian();
    return v;
  }

  // g-unit vector, uniform on the g-sphere
  Vec unit_vector(const Mat& g) {
    while (true) {
      Vec v = gaussian_vector(static_cast<int>(g.rows()));
      const double n = norm(g, v);
      if (n > 1e-8) return v / n;
    }
  }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace ahlab
