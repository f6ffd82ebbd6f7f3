#include "doctest.h"

#include <cmath>

#include "scprod/semiclassical.hpp"

using namespace scprod;

namespace {

const OscillatorScale kUnit(1.0, 1.0, 1.0);

Trajectory constant_trajectory(double q, double p, Eigen::Index n, double dt) {
  const Eigen::VectorXd t = Eigen::VectorXd::LinSpaced(n, 0.0, dt * static_cast<double>(n - 1));
  return Trajectory(t, Eigen::VectorXd::Constant(n, q), Eigen::VectorXd::Constant(n, p), Eigen::VectorXd::Zero(n));
}

OverlapSeries synthetic(const Eigen::VectorXd& t, const Eigen::VectorXd& distance) {
  OverlapSeries s;
  s.times = t;
  s.values = (-distance.array().square()).exp().matrix();
  return s;
}

}  // namespace

TEST_CASE("sc_overlap of identical and static trajectories") {
  const Trajectory a = integrate_trajectory(DrivenQuartic{}, {0.0, 0.1, 0.0}, 5.0, 0.01);
  const OverlapSeries same = sc_overlap(a, a, kUnit, true);
  CHECK((same.values.array() == 1.0).all());
  REQUIRE(same.phase.has_value());
  CHECK(same.phase->cwiseAbs().maxCoeff() == 0.0);

  // alpha = 0 and beta = 1 at unit scale: q = sqrt(2).
  const OverlapSeries stat = sc_overlap(constant_trajectory(0.0, 0.0, 10, 0.1),
                                        constant_trajectory(std::sqrt(2.0), 0.0, 10, 0.1), kUnit);
  for (Eigen::Index i = 0; i < 10; ++i) CHECK(stat.values[i] == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK_THROWS_AS(sc_overlap(constant_trajectory(0, 0, 10, 0.1), constant_trajectory(0, 0, 11, 0.1), kUnit),
                  GridMismatchError);
}

TEST_CASE("sc_overlap equals exp(-D^2) of the label-space twin separation") {
  const DrivenQuartic d{1.0, 1.88};
  const Trajectory a = evolve_driven_quartic({0.0, 0.0, 0.0}, d, 60.0, 0.01);
  const Trajectory b = evolve_driven_quartic({0.0, 0.002, 0.0}, d, 60.0, 0.01);
  const OverlapSeries ov = sc_overlap(a, b, kUnit);
  const SeparationSeries label = label_separation(a, b, kUnit);
  const SeparationSeries phase_space = twin_separation(a, b);
  for (Eigen::Index i = 0; i < ov.values.size(); ++i) {
    CHECK(ov.values[i] <= 1.0);
    CHECK(ov.values[i] == doctest::Approx(std::exp(-label.distance[i] * label.distance[i])).epsilon(1e-14));
    // At unit scale the label distance is the phase-space distance over sqrt(2).
    CHECK(label.distance[i] == doctest::Approx(phase_space.distance[i] / std::sqrt(2.0)).epsilon(1e-12));
  }
  CHECK(ov.values[0] == doctest::Approx(std::exp(-0.002 * 0.002 / 2.0)).epsilon(1e-15));
}

TEST_CASE("tau_sc inverts exponential and power-law separations") {
  const Eigen::VectorXd t = Eigen::VectorXd::LinSpaced(40001, 0.0, 40.0);
  const TauResult exp_tau = tau_sc(synthetic(t, (0.01 * (0.2 * t.array()).exp()).matrix()), 1.0);
  CHECK(exp_tau.reached);
  CHECK(std::abs(exp_tau.time - std::log(100.0) / 0.2) < 1e-6);

  const TauResult pow_tau = tau_sc(synthetic(t, (0.01 * t.array().square()).matrix()), 1.0);
  CHECK(pow_tau.reached);
  CHECK(std::abs(pow_tau.time - 10.0) < 1e-6);

  OverlapSeries flat;
  flat.times = t;
  flat.values = Eigen::VectorXd::Ones(t.size());
  const TauResult never = tau_sc(flat);
  CHECK_FALSE(never.reached);
  CHECK(never.time == 40.0);

  CHECK_THROWS_AS(tau_sc(OverlapSeries{}), DomainError);
  CHECK_THROWS_AS(tau_sc(flat, 0.0), DomainError);
}

TEST_CASE("closed-form fidelity") {
  const PerturbationSpec eps(0.1);
  CHECK(std::norm(sc_fidelity_closed(eps, 1.0)) == doctest::Approx(0.990049833749168).epsilon(1e-14));
  CHECK(sc_fidelity_closed(eps, 0.0) == std::complex<double>(1.0, 0.0));
  CHECK(std::arg(sc_fidelity_closed(eps, 2.0)) == doctest::Approx(-0.2));
  CHECK(std::norm(sc_fidelity_closed(PerturbationSpec(0.0), 50.0)) == 1.0);
  CHECK_THROWS_AS(sc_fidelity_closed(eps, -1.0), DomainError);
  CHECK_THROWS_AS(PerturbationSpec(-0.1), DomainError);
  CHECK(eps.is_perturbative());
  CHECK_FALSE(PerturbationSpec(0.5).is_perturbative());
}

TEST_CASE("numeric harmonic fidelity against the forced-oscillator solution") {
  // Constant force F on a harmonic oscillator: dq = F (1 - cos wt)/w^2, dp = F sin(wt)/w,
  // hence |d alpha|^2 = (eps/w)^2 4 sin^2(wt/2).
  for (double w : {1.0, 1.3}) {
    const OscillatorScale scale(1.0, w, 1.0);
    const PerturbationSpec eps(0.05);
    const OverlapSeries f = sc_fidelity_numeric(HarmonicSystem{w}, {0.0, 0.3, -0.2}, eps, 2.0, 1e-3, scale);
    for (Eigen::Index i = 0; i < f.values.size(); ++i) {
      const double t = f.times[i];
      const double s = 2.0 * std::sin(0.5 * w * t) * eps.epsilon / w;
      CHECK(f.values[i] == doctest::Approx(std::exp(-s * s)).epsilon(1e-12));
      if (t <= 0.5) CHECK(std::abs(f.values[i] - std::exp(-0.0025 * t * t)) < 1e-4);
    }
  }
  const OverlapSeries none =
      sc_fidelity_numeric(DrivenQuartic{}, {0.0, 0.0, 0.0}, PerturbationSpec(0.0), 5.0, 0.01, kUnit);
  CHECK((none.values.array() == 1.0).all());
  CHECK(perturbation_force(PerturbationSpec(0.1), OscillatorScale(2.0, 3.0, 0.5)) ==
        doctest::Approx(-0.1 * std::sqrt(6.0)));
}

TEST_CASE("gaussian_decay_fit") {
  const Eigen::VectorXd t = Eigen::VectorXd::LinSpaced(101, 0.0, 5.0);
  OverlapSeries g;
  g.times = t;
  g.values = (-0.04 * t.array().square()).exp().matrix();
  const GaussianFit fit = gaussian_decay_fit(g, {0.05, 5.0});
  CHECK(fit.slope == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(fit.r2 > 1.0 - 1e-12);

  OverlapSeries closed;
  closed.times = t;
  closed.values.resize(t.size());
  for (Eigen::Index i = 0; i < t.size(); ++i) closed.values[i] = std::norm(sc_fidelity_closed(PerturbationSpec(0.1), t[i]));
  CHECK(gaussian_decay_fit(closed, {0.05, 5.0}).slope == doctest::Approx(0.1).epsilon(1e-12));
  CHECK_THROWS_AS(gaussian_decay_fit(closed, {0.0, 5.0}), DomainError);
}

TEST_CASE("short-time Gaussian law holds for regular and chaotic driving") {
  const PerturbationSpec eps(0.01);
  for (double w : {1.88, 3.88}) {
    const OverlapSeries f = sc_fidelity_numeric(DrivenQuartic{1.0, w}, {0.0, 0.0, 0.0}, eps, 1.0, 1e-3, kUnit);
    CHECK(gaussian_decay_fit(f, {1e-3, 0.5}).r2 > 0.99);
  }
}

TEST_CASE("chaotic driving decays faster: overlap, fidelity and tau_sc ordering") {
  auto twins = [](double w) {
    const DrivenQuartic d{1.0, w};
    return std::pair{evolve_driven_quartic({0.0, 0.0, 0.0}, d, 200.0, 0.01),
                     evolve_driven_quartic({0.0, 0.002, 0.0}, d, 200.0, 0.01)};
  };
  const auto [a1, b1] = twins(1.88);
  const auto [a3, b3] = twins(3.88);
  const double half = std::sqrt(std::log(2.0));
  const TauResult chaotic = tau_sc(sc_overlap(a1, b1, kUnit), half);
  const TauResult regular = tau_sc(sc_overlap(a3, b3, kUnit), half);
  CHECK(chaotic.reached);
  CHECK(chaotic.time < regular.time);

  // Larger short-time exponent, shorter semiclassical time.
  const SeparationSeries s1 = twin_separation(a1, b1);
  const SeparationSeries s3 = twin_separation(a3, b3);
  const double l1 = lyapunov_short_time(s1, {0.1, 40.0});
  const double l3 = lyapunov_short_time(s3, {0.1, 40.0});
  CHECK(l1 > l3);
  CHECK(tau_sc(sc_overlap(a1, b1, kUnit)).time < tau_sc(sc_overlap(a3, b3, kUnit)).time);

  const PerturbationSpec eps(0.01);
  const OverlapSeries f1 = sc_fidelity_numeric(DrivenQuartic{1.0, 1.88}, {0.0, 0.0, 0.0}, eps, 60.0, 0.01, kUnit);
  const OverlapSeries f3 = sc_fidelity_numeric(DrivenQuartic{1.0, 3.88}, {0.0, 0.0, 0.0}, eps, 60.0, 0.01, kUnit);
  CHECK(tau_sc(f1, half).time < tau_sc(f3, half).time);
}
