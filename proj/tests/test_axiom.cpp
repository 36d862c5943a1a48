#include <doctest.h>

#include <cmath>

#include "ahlab/axiom.hpp"
#include "test_support.hpp"

using namespace ahlab;
using ahtest::admissible_pair;
using ahtest::random_curvature_tensor;

namespace {

const double kPi = M_PI;

HermitianPoint model_rsf(double c, int dim = 4) {
  return HermitianPoint::standard(dim, real_space_form_tensor(c, Mat::Identity(dim, dim)));
}

HermitianPoint model_csf(double c, int dim = 4) {
  const Mat g = Mat::Identity(dim, dim);
  const Mat J = standard_complex_structure(dim);
  return HermitianPoint(g, J, complex_space_form_tensor(c, g, J));
}

// brute-force oracle for the pi1-projection, written against the raw
// component formulas, independent of the library's frame machinery
std::pair<double, double> defect_oracle(const CurvatureTensor& R, const Mat& g) {
  const int n = R.dim();
  std::vector<double> p1(static_cast<std::size_t>(n) * n * n * n);
  std::size_t q = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l, ++q) p1[q] = g(i, l) * g(j, k) - g(i, k) * g(j, l);
  double rp = 0.0, pp = 0.0;
  q = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l, ++q) {
          rp += R(i, j, k, l) * p1[q];
          pp += p1[q] * p1[q];
        }
  const double c = rp / pp;
  double worst = 0.0;
  q = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l, ++q)
          worst = std::max(worst, std::abs(R(i, j, k, l) - c * p1[q]));
  return {c, worst};
}

}  // namespace

TEST_CASE("necessary_residuals: space forms annihilate all five equations") {
  SeededRng rng(1);
  for (double c : {-1.0, 0.0, 1.0, 2.5}) {
    const HermitianPoint p = model_rsf(c);
    for (int trial = 0; trial < 20; ++trial) {
      const auto [x, y] = admissible_pair(p.g, p.J, rng);
      const ResidualRecord rec = necessary_residuals(p, 0.7, x, y);
      CHECK(rec.max_all() <= 1e-13);
    }
  }
}

TEST_CASE("necessary_residuals: csf(4) at theta = pi/4 gives eq2 = 1.5, eq4 = 3") {
  const HermitianPoint p = model_csf(4.0);
  SeededRng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const auto [x, y] = admissible_pair(p.g, p.J, rng);
    const ResidualRecord rec = necessary_residuals(p, kPi / 4, x, y);
    CHECK(rec.eq4 == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(rec.eq2 == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(std::abs(rec.eq1) <= 1e-12);
    CHECK(std::abs(rec.eq3) <= 1e-12);
    CHECK(std::abs(rec.eq5) <= 1e-12);
  }
}

TEST_CASE("necessary_residuals: theta endpoints violate the hypothesis") {
  const HermitianPoint p = model_rsf(1.0);
  const Vec x = Vec::Unit(4, 0), y = Vec::Unit(4, 2);
  CHECK_THROWS_AS(necessary_residuals(p, 0.0, x, y), hypothesis_error);
  CHECK_THROWS_AS(necessary_residuals(p, kPi / 2, x, y), hypothesis_error);
  CHECK_THROWS_AS(necessary_residuals(p, -0.3, x, y), hypothesis_error);
  // inadmissible pair
  CHECK_THROWS_AS(necessary_residuals(p, 0.7, x, Vec(p.J * x)), admissibility_error);
}

TEST_CASE("property: eq1(x) - eq1(-x) = 2 cos(theta) eq3 on generic tensors") {
  // multilinearity: substituting -x flips the sign of the Jx cos(theta) part
  // only, so the difference isolates eq3 while the sum isolates the
  // complementary term R(y,x,x,Jy).
  SeededRng rng(8);
  double worst_diff = 0.0, worst_sum = 0.0;
  for (int t = 0; t < 40; ++t) {
    const HermitianPoint p(Mat::Identity(4, 4), standard_complex_structure(4),
                           random_curvature_tensor(4, rng));
    for (int s = 0; s < 25; ++s) {
      const auto [x, y] = admissible_pair(p.g, p.J, rng);
      const double theta = 0.05 + 1.5 * rng.uniform();
      const ResidualRecord plus = necessary_residuals(p, theta, x, y);
      const ResidualRecord minus = necessary_residuals(p, theta, Vec(-x), y);
      worst_diff = std::max(worst_diff,
                            std::abs(plus.eq1 - minus.eq1 - 2.0 * std::cos(theta) * plus.eq3));
      const double complementary = p.R.evaluate(y, x, x, p.J * y);
      worst_sum = std::max(worst_sum,
                           std::abs(plus.eq1 + minus.eq1 - 2.0 * std::sin(theta) * complementary));
    }
  }
  CHECK(worst_diff <= 1e-12);
  CHECK(worst_sum <= 1e-12);
}

TEST_CASE("property: replacement identity eq3(y -> Jy) = -R(Jx,x,x,y)") {
  SeededRng rng(13);
  double worst = 0.0;
  for (int t = 0; t < 40; ++t) {
    const HermitianPoint p(Mat::Identity(4, 4), standard_complex_structure(4),
                           random_curvature_tensor(4, rng));
    for (int s = 0; s < 25; ++s) {
      const auto [x, y] = admissible_pair(p.g, p.J, rng);
      const ResidualRecord a = necessary_residuals(p, 0.9, x, Vec(p.J * y));
      const double rhs = -p.R.evaluate(p.J * x, x, x, y);
      worst = std::max(worst, std::abs(a.eq3 - rhs));
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("axiom_scan: space forms hold, csf(4) fails with worst |eq2| = 1.5") {
  const AxiomScan good = axiom_scan(model_rsf(1.0), kPi / 4, 1000, 42, 1e-12);
  CHECK(good.holds);
  CHECK(good.worst.max_axiom_residual() <= 1e-12);

  const AxiomScan zero = axiom_scan(HermitianPoint::flat(4), kPi / 4, 100, 42, 1e-12);
  CHECK(zero.holds);
  CHECK(zero.worst.max_axiom_residual() == 0.0);

  const AxiomScan bad = axiom_scan(model_csf(4.0), kPi / 4, 1000, 42, 1e-9);
  CHECK_FALSE(bad.holds);
  CHECK(std::abs(bad.worst.eq2) == doctest::Approx(1.5).epsilon(1e-9));
}

TEST_CASE("space_form_defect: exact decompositions") {
  const auto d5 = space_form_defect(model_rsf(5.0));
  CHECK(d5.c_star == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(d5.defect_norm <= 1e-12);

  const auto d0 = space_form_defect(HermitianPoint::flat(4));
  CHECK(d0.c_star == 0.0);
  CHECK(d0.defect_norm == 0.0);
}

TEST_CASE("space_form_defect: csf(4) at m = 2 against the brute-force oracle") {
  const HermitianPoint p = model_csf(4.0);
  const auto [c_oracle, defect_oracle_val] = defect_oracle(p.R, p.g);
  // frozen values, computed by the oracle: c* = 2, max |T| = 2
  CHECK(c_oracle == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(defect_oracle_val == doctest::Approx(2.0).epsilon(1e-14));

  const auto d = space_form_defect(p);
  CHECK(d.c_star == doctest::Approx(c_oracle).epsilon(1e-12));
  CHECK(d.defect_norm == doctest::Approx(defect_oracle_val).epsilon(1e-12));
  CHECK(d.defect_norm > 0.5);
}

TEST_CASE("space_form_defect agrees with the oracle on random tensors and non-trivial g") {
  SeededRng rng(19);
  // identity-Gram case: the oracle formula applies verbatim
  for (int t = 0; t < 10; ++t) {
    const HermitianPoint p(Mat::Identity(4, 4), standard_complex_structure(4),
                           random_curvature_tensor(4, rng));
    const auto [c_o, d_o] = defect_oracle(p.R, p.g);
    const auto d = space_form_defect(p);
    CHECK(d.c_star == doctest::Approx(c_o).epsilon(1e-12));
    CHECK(d.defect_norm == doctest::Approx(d_o).epsilon(1e-12));
  }
  // scaled metric: a space form stays a space form with the same c
  const Mat g = 2.0 * Mat::Identity(4, 4);
  const auto d = space_form_defect(
      HermitianPoint(g, standard_complex_structure(4), real_space_form_tensor(1.5, g)));
  CHECK(d.c_star == doctest::Approx(1.5).epsilon(1e-13));
  CHECK(d.defect_norm <= 1e-13);
}

TEST_CASE("theorem_check: confirmation, contrapositive witness, corollary") {
  const TheoremReport ok = theorem_check(model_rsf(2.0), 0.9, 500, 3, 1e-10);
  CHECK(ok.scan.holds);
  CHECK(ok.defect.defect_norm <= 1e-10);
  CHECK(ok.space_form_confirmed);
  CHECK_FALSE(ok.corollary_flat.has_value());

  const TheoremReport bad = theorem_check(model_csf(4.0), kPi / 4, 500, 3, 1e-9);
  CHECK_FALSE(bad.scan.holds);
  CHECK_FALSE(bad.space_form_confirmed);
  CHECK(std::abs(bad.scan.worst.eq2) == doctest::Approx(1.5).epsilon(1e-9));

  // zero tensor with vanishing nabla J: the Kaehler corollary confirms flatness
  const TheoremReport flat = theorem_check(HermitianPoint::flat(4), 0.7, 200, 3, 1e-10, 0.0);
  REQUIRE(flat.corollary_flat.has_value());
  CHECK(*flat.corollary_flat);
  CHECK(flat.defect.c_star == 0.0);

  // a Kaehler-flagged space form with c != 0 refutes the corollary
  const TheoremReport curved = theorem_check(model_rsf(1.0), 0.7, 200, 3, 1e-10, 0.0);
  REQUIRE(curved.corollary_flat.has_value());
  CHECK_FALSE(*curved.corollary_flat);
  CHECK(curved.space_form_confirmed);
}

TEST_CASE("schur_scan: constant, spread, and the not-a-space-form error") {
  const std::vector<HermitianPoint> same = {model_rsf(2.0), model_rsf(2.0), model_rsf(2.0)};
  const SchurScan s1 = schur_scan(same, 1e-10);
  CHECK(s1.spread == 0.0);
  CHECK(s1.constant);

  const std::vector<HermitianPoint> mixed = {model_rsf(1.0), model_rsf(2.0)};
  const SchurScan s2 = schur_scan(mixed, 1e-10);
  CHECK(s2.spread == doctest::Approx(1.0));
  CHECK_FALSE(s2.constant);

  const std::vector<HermitianPoint> bad = {model_rsf(1.0), model_csf(4.0)};
  CHECK_THROWS_WITH_AS(schur_scan(bad, 1e-10), doctest::Contains("point 1"),
                       std::invalid_argument);

  CHECK_THROWS_AS(schur_scan({model_rsf(1.0)}, 1e-10), std::invalid_argument);
}

TEST_CASE("property: on space forms the scan hypothesis forces eq3/eq4/eq5 and the defect") {
  SeededRng rng(23);
  for (double c : {-1.0, 0.0, 1.0, 2.5}) {
    const HermitianPoint p = model_rsf(c);
    const AxiomScan scan = axiom_scan(p, 1.1, 1000, 77, 1e-12);
    REQUIRE(scan.holds);
    // re-walk the same sampled pairs and bound the derived residuals
    SeededRng replay(77);
    double worst = 0.0;
    for (int s = 0; s < 1000; ++s) {
      const auto [x, y] = sample_admissible_pair(p.g, p.J, replay);
      const ResidualRecord rec = necessary_residuals(p, 1.1, x, y);
      worst = std::max({worst, std::abs(rec.eq3), std::abs(rec.eq4), std::abs(rec.eq5)});
    }
    CHECK(worst <= 1e-9);
    CHECK(space_form_defect(p).defect_norm <= 1e-9);
  }
}

TEST_CASE("property: scale equivariance is exact for power-of-two factors") {
  SeededRng rng(29);
  const Mat g = Mat::Identity(4, 4);
  const Mat J = standard_complex_structure(4);
  const CurvatureTensor R = random_curvature_tensor(4, rng);
  const HermitianPoint p(g, J, R);
  const HermitianPoint p2(g, J, 2.0 * R);

  const auto [x, y] = admissible_pair(g, J, rng);
  const ResidualRecord r1 = necessary_residuals(p, 0.8, x, y);
  const ResidualRecord r2 = necessary_residuals(p2, 0.8, x, y);
  CHECK(r2.eq1 == 2.0 * r1.eq1);
  CHECK(r2.eq2 == 2.0 * r1.eq2);
  CHECK(r2.eq3 == 2.0 * r1.eq3);
  CHECK(r2.eq4 == 2.0 * r1.eq4);
  CHECK(r2.eq5 == 2.0 * r1.eq5);

  const auto d1 = space_form_defect(p);
  const auto d2 = space_form_defect(p2);
  CHECK(d2.c_star == 2.0 * d1.c_star);
  CHECK(d2.defect_norm == 2.0 * d1.defect_norm);

  // verdict at tol = 0 is invariant under positive scaling
  const AxiomScan s1 = axiom_scan(p, 0.8, 50, 5, 0.0);
  const AxiomScan s2 = axiom_scan(p2, 0.8, 50, 5, 0.0);
  CHECK(s1.holds == s2.holds);
  CHECK(s2.worst.max_axiom_residual() == 2.0 * s1.worst.max_axiom_residual());
}

TEST_CASE("axiom_scan requires at least one sample") {
  CHECK_THROWS_AS(axiom_scan(model_rsf(1.0), 0.5, 0, 1, 1e-9), std::invalid_argument);
}

TEST_CASE("dim 6 (m = 3): the m > 2 branch behaves like the m = 2 one") {
  const HermitianPoint p = model_rsf(2.5, 6);
  const AxiomScan scan = axiom_scan(p, 0.6, 500, 3, 1e-12);
  CHECK(scan.holds);
  const auto d = space_form_defect(p);
  CHECK(d.c_star == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(d.defect_norm <= 1e-12);

  const HermitianPoint q = model_csf(4.0, 6);
  const AxiomScan bad = axiom_scan(q, 0.6, 500, 3, 1e-9);
  CHECK_FALSE(bad.holds);
  // eq2 = 3 sin(t) cos(t) for the csf model, independent of m
  CHECK(std::abs(bad.worst.eq2) ==
        doctest::Approx(3.0 * std::sin(0.6) * std::cos(0.6)).epsilon(1e-12));

  const auto [c_o, d_o] = defect_oracle(q.R, q.g);
  const auto dq = space_form_defect(q);
  CHECK(c_o == doctest::Approx(1.6).epsilon(1e-13));  // 1 + 6n/(2n(n-1)) at n = 6
  CHECK(dq.c_star == doctest::Approx(c_o).epsilon(1e-12));
  CHECK(dq.defect_norm == doctest::Approx(d_o).epsilon(1e-12));
  CHECK(dq.defect_norm > 0.5);

  // pointwise constancy of H survives the dimension bump
  const auto h = constancy_scan(q, SectionKind::holomorphic, 200, 7);
  CHECK(h.mean == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(h.max_deviation <= 1e-11);
}
