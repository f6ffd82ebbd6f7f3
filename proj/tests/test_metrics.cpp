#include "doctest.h"

#include <cmath>

#include "scprod/metrics.hpp"

using namespace scprod;

namespace {

const Grid1D kQ(-30.0, 30.0, 1201);
const Grid1D kP(-0.05, 0.05, 3);

}  // namespace

TEST_CASE("delta_q and sq of identical fields vanish") {
  const Grid1D g(-6.0, 6.0, 61);
  const HusimiField a = husimi_ho_field(2, g, g, NormMode::unit_integral);
  const DeviationProfile d = delta_q(a, a, 2);
  CHECK(d.delta.cwiseAbs().maxCoeff() == 0.0);
  CHECK(sq(d) == 0.0);
  CHECK(sq_full_plane(a, a) == 0.0);
  CHECK(d.support.lo < -4.0);
  CHECK(d.support.hi > 4.0);
}

TEST_CASE("delta_q rejects incomparable fields") {
  const Grid1D g(-6.0, 6.0, 61), h(-6.0, 6.0, 41);
  const HusimiField a = husimi_ho_field(1, g, g, NormMode::unit_integral);
  CHECK_THROWS_AS(delta_q(a, husimi_ho_field(1, h, g, NormMode::unit_integral), 1), GridMismatchError);
  CHECK_THROWS_AS(delta_q(a, husimi_ho_field(1, g, g, NormMode::paper), 1), GridMismatchError);
  const HusimiField shifted(g, g, a.values(), NormMode::unit_integral, AxisMap{2.0, 0.0, 1.0, 0.0});
  CHECK_THROWS_AS(delta_q(a, shifted, 1), GridMismatchError);
  const Grid1D no_zero(0.5, 6.0, 12);
  const HusimiField b = husimi_ho_field(1, g, no_zero, NormMode::unit_integral);
  CHECK_THROWS_AS(delta_q(b, b, 1), GridMismatchError);
}

TEST_CASE("sq integrates the linear interpolant exactly") {
  // Piecewise-linear profile with sign changes; integral of |.| by a fine trapezoid oracle.
  const Grid1D g(-2.0, 2.0, 9);
  DeviationProfile p{g, AxisMap{0.5, 0.0, 1.0, 0.0}, Eigen::VectorXd(9), 0, {-2.0, 2.0}};
  p.delta << 0.0, 1.0, -1.0, 0.5, 0.5, -2.0, 0.0, 0.3, 0.0;
  auto interp = [&](double x) {
    const double s = (x - g.lo()) / g.spacing();
    const auto i = std::min<Eigen::Index>(static_cast<Eigen::Index>(s), g.size() - 2);
    const double f = s - static_cast<double>(i);
    return std::abs(p.delta[i] + f * (p.delta[i + 1] - p.delta[i]));
  };
  const long n = 800000;
  const double h = 4.0 / n;
  double trap = 0.5 * (interp(-2.0) + interp(2.0));
  for (long k = 1; k < n; ++k) trap += interp(-2.0 + k * h);
  trap *= h;
  CHECK(sq(p) == doctest::Approx(0.5 * trap).epsilon(1e-9));

  // Support restriction drops the cells outside it.
  p.support = {0.0, 2.0};
  double right = 0.0;
  for (long k = 0; k < n / 2; ++k) right += 0.5 * (interp(k * h) + interp((k + 1) * h)) * h;
  CHECK(sq(p) == doctest::Approx(0.5 * right).epsilon(1e-9));
}

TEST_CASE("harmonic deviation: ground state agreement and decay with level") {
  const DeviationProfile d0 = harmonic_deviation(0, kQ, kP);
  CHECK(d0.delta.cwiseAbs().maxCoeff() < 1e-6);
  CHECK(sq(d0) < 1e-6);

  const DeviationProfile d5 = harmonic_deviation(5, kQ, kP);
  const DeviationProfile d100 = harmonic_deviation(100, kQ, kP);
  CHECK(d100.delta.cwiseAbs().maxCoeff() < d5.delta.cwiseAbs().maxCoeff());

  double previous = INFINITY;
  for (int n : {1, 5, 20, 100}) {
    const double v = sq(harmonic_deviation(n, kQ, kP));
    CHECK(v < previous);
    CHECK(v > 0.0);
    previous = v;
  }
  // The support of level 100 stays inside the grid.
  CHECK(d100.support.lo > kQ.lo());
  CHECK(d100.support.hi < kQ.hi());
}

TEST_CASE("sq is converged in grid spacing and orbit sampling") {
  for (int n : {5, 20}) {
    const double base = sq(harmonic_deviation(n, kQ, kP));
    const double fine = sq(harmonic_deviation(n, kQ.refined(), kP));
    const double dense = sq(harmonic_deviation(n, kQ, kP, 4096));
    CHECK(std::abs(fine - base) < 0.01 * base);
    CHECK(std::abs(dense - base) < 1e-6 * base);
  }
}

TEST_CASE("sq_full_plane matches an independent trapezoid sum") {
  const Grid1D g(-7.0, 7.0, 71);
  const HusimiField e = husimi_ho_field(3, g, g, NormMode::unit_integral);
  const HusimiField s = sc_husimi_harmonic(3, g, g, NormMode::unit_integral, 1024);
  double total = 0.0;
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    for (Eigen::Index j = 0; j < g.size(); ++j) {
      const double wi = (i == 0 || i == g.size() - 1) ? 0.5 : 1.0;
      const double wj = (j == 0 || j == g.size() - 1) ? 0.5 : 1.0;
      total += wi * wj * std::abs(e.values()(i, j) - s.values()(i, j));
    }
  }
  total *= g.spacing() * g.spacing();
  CHECK(sq_full_plane(e, s) == doctest::Approx(total).epsilon(1e-12));
  CHECK(sq_full_plane(e, s) > 0.0);
  // Both fields integrate to one, so the plane L1 distance is at most two.
  CHECK(sq_full_plane(e, s) < 2.0);
}
