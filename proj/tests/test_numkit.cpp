#include "doctest.h"

#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "scprod/numkit.hpp"

using namespace scprod;

TEST_CASE("Grid1D nodes, refinement and validation") {
  const Grid1D g(-1.0, 2.0, 4);
  CHECK(g.spacing() == doctest::Approx(1.0));
  CHECK(g[0] == -1.0);
  CHECK(g[3] == 2.0);
  const Grid1D r = g.refined();
  CHECK(r.size() == 7);
  for (Eigen::Index i = 0; i < g.size(); ++i) CHECK(r[2 * i] == doctest::Approx(g[i]).epsilon(1e-15));
  CHECK(g.nodes().size() == 4);
  CHECK_THROWS_AS(Grid1D(1.0, 1.0, 3), DomainError);
  CHECK_THROWS_AS(Grid1D(0.0, 1.0, 1), DomainError);
  CHECK_THROWS_AS(Grid1D(0.0, INFINITY, 3), DomainError);
}

TEST_CASE("gamma_fn and log_gamma_fn agree with the C library") {
  for (double x = 0.05; x < 170.0; x *= 1.37) {
    CHECK(gamma_fn(x) == doctest::Approx(std::tgamma(x)).epsilon(1e-13));
    CHECK(log_gamma_fn(x) == doctest::Approx(std::lgamma(x)).epsilon(1e-13));
  }
  for (double x : {200.0, 1e4, 1e8}) CHECK(log_gamma_fn(x) == doctest::Approx(std::lgamma(x)).epsilon(1e-13));
  CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
  CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-14));
  CHECK_THROWS_AS(gamma_fn(0.0), DomainError);
  CHECK_THROWS_AS(gamma_fn(-1.5), DomainError);
  CHECK_THROWS_AS(gamma_fn(NAN), DomainError);
  CHECK_THROWS_AS(gamma_fn(172.0), OverflowError);
  CHECK_THROWS_AS(log_gamma_fn(0.0), DomainError);
}

TEST_CASE("integrate_1d on integrals with known values") {
  CHECK(integrate_1d([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 1e-12) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(integrate_1d([](double x) { return std::exp(-x * x); }, -10.0, 10.0, 1e-13) ==
        doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));
  // A narrow peak that a single Simpson panel would miss.
  const double narrow = integrate_1d([](double x) { return std::exp(-1e6 * (x - 0.3) * (x - 0.3)); }, 0.0, 1.0, 1e-12);
  CHECK(narrow == doctest::Approx(std::sqrt(std::numbers::pi / 1e6)).epsilon(1e-8));
  // Reversed bounds flip the sign.
  CHECK(integrate_1d([](double x) { return x; }, 1.0, 0.0, 1e-12) == doctest::Approx(-0.5));

  QuadratureStats stats;
  integrate_1d([](double x) { return x * x; }, 0.0, 1.0, 1e-10, &stats);
  CHECK(stats.evaluations > 0);
  CHECK(stats.error_estimate <= 1e-10);
}

TEST_CASE("integrate_1d reports non-convergence with the best estimate") {
  auto step = [](double x) { return x < 1.0 / 3.0 ? 0.0 : 1.0; };
  bool thrown = false;
  try {
    integrate_1d(step, 0.0, 1.0, 1e-30);
  } catch (const ConvergenceError& e) {
    thrown = true;
    CHECK(e.estimate() == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
    CHECK(e.error_bound() > 0.0);
  }
  CHECK(thrown);
  CHECK_THROWS_AS(integrate_1d(step, 0.0, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(integrate_1d(step, 0.0, INFINITY, 1e-6), DomainError);
}

TEST_CASE("integrate_1d on a piecewise-linear interpolant matches a 1e6-point trapezoid") {
  // Absolute value of a sampled oscillating profile, the shape sq() integrates.
  const Grid1D g(-8.0, 8.0, 321);
  Eigen::VectorXd v(g.size());
  for (Eigen::Index i = 0; i < g.size(); ++i) v[i] = std::exp(-0.25 * g[i] * g[i]) * std::cos(3.0 * g[i]);
  auto interp = [&](double x) {
    const double s = (x - g.lo()) / g.spacing();
    const auto i = std::min<Eigen::Index>(static_cast<Eigen::Index>(s), g.size() - 2);
    const double f = s - static_cast<double>(i);
    return std::abs(v[i] + f * (v[i + 1] - v[i]));
  };
  double total = 0.0;
  for (Eigen::Index i = 0; i + 1 < g.size(); ++i) total += integrate_1d(interp, g[i], g[i + 1], 1e-14);
  const long n = 1000000;
  const double h = (g.hi() - g.lo()) / n;
  double trap = 0.5 * (interp(g.lo()) + interp(g.hi()));
  for (long k = 1; k < n; ++k) trap += interp(g.lo() + k * h);
  trap *= h;
  CHECK(std::abs(total - trap) <= 1e-6);
}

TEST_CASE("truncate_support brackets a Gaussian at the requested level") {
  const Support s = truncate_support([](double x) { return std::exp(-0.5 * x * x); }, 0.0, -50.0, 50.0, 0.01);
  const double edge = std::sqrt(2.0 * std::log(1e14));
  CHECK(s.hi == doctest::Approx(edge).epsilon(2e-3));
  CHECK(s.lo == doctest::Approx(-edge).epsilon(2e-3));
  // Clamped by limits.
  const Support c = truncate_support([](double) { return 1.0; }, 0.0, -1.0, 2.0, 0.1);
  CHECK(c.lo == -1.0);
  CHECK(c.hi == 2.0);
  // An isolated node does not end the scan.
  const Support n = truncate_support([](double x) { return x * std::exp(-0.5 * x * x); }, 1.0, -50.0, 50.0, 0.01);
  CHECK(n.lo < -7.0);
}

TEST_CASE("RK4 is fourth order (step-halving oracle)") {
  OdeProblem pr;
  pr.rhs = [](double, const Eigen::VectorXd& y) {
    Eigen::VectorXd d(2);
    d << y[1], -y[0];
    return d;
  };
  pr.y0 = Eigen::Vector2d(1.0, 0.0);
  pr.t0 = 0.0;
  pr.t1 = 2.0;
  auto error_at = [&](double h) {
    pr.h = h;
    const OdeSolution s = integrate_ode(pr);
    CHECK(s.times[s.times.size() - 1] == doctest::Approx(2.0).epsilon(1e-14));
    return std::abs(s.states(0, s.states.cols() - 1) - std::cos(2.0));
  };
  const double e1 = error_at(0.1);
  const double e2 = error_at(0.05);
  CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.05));
  CHECK(ode_step_count(0.0, 2.0, 0.1) == 20);
}

TEST_CASE("integrate_ode detects blow-up") {
  OdeProblem pr;
  pr.rhs = [](double, const Eigen::VectorXd& y) { return Eigen::VectorXd(y.array().square()); };
  pr.y0 = Eigen::VectorXd::Ones(1);
  pr.t0 = 0.0;
  pr.t1 = 2.0;
  pr.h = 0.01;
  try {
    integrate_ode(pr);
    FAIL("expected BlowupError");
  } catch (const BlowupError& e) {
    CHECK(e.last_valid_time() < 1.05);
    CHECK(e.last_valid_time() > 0.5);
  }
  pr.h = -1.0;
  CHECK_THROWS_AS(integrate_ode(pr), DomainError);
}

TEST_CASE("fit_line recovers an exact line") {
  Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(11, 0.0, 1.0);
  Eigen::VectorXd y = (3.0 * x.array() - 2.0).matrix();
  const LineFit f = fit_line(x, y);
  CHECK(f.slope == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(f.intercept == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(f.r2 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(fit_line(Eigen::VectorXd::Ones(3), y.head(3)), DomainError);
}

TEST_CASE("parallel_for visits each index once and propagates exceptions") {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(1000, [&](Eigen::Index i) { hits[static_cast<std::size_t>(i)]++; });
  for (const auto& h : hits) CHECK(h.load() == 1);
  CHECK_THROWS_AS(parallel_for(10, [](Eigen::Index i) {
                    if (i == 7) throw DomainError("boom");
                  }),
                  DomainError);
}
