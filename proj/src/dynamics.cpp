#include "scprod/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "scprod/numkit.hpp"

namespace scprod {

Trajectory::Trajectory(Eigen::VectorXd times, Eigen::VectorXd q, Eigen::VectorXd p, Eigen::VectorXd action)
    : times_(std::move(times)), q_(std::move(q)), p_(std::move(p)), action_(std::move(action)) {
  const Eigen::Index n = times_.size();
  if (n == 0 || q_.size() != n || p_.size() != n || action_.size() != n)
    throw DomainError("Trajectory: sample arrays must be non-empty and of equal length");
  if (action_[0] != 0.0) throw DomainError("Trajectory: action must start at zero");
  if (!times_.allFinite() || !q_.allFinite() || !p_.allFinite())
    throw DomainError("Trajectory: non-finite sample");
  if (n > 1) {
    const double step = dt();
    if (!(step > 0.0)) throw DomainError("Trajectory: times must be strictly increasing");
    for (Eigen::Index i = 1; i < n; ++i) {
      if (std::abs((times_[i] - times_[i - 1]) - step) > 1e-6 * step)
        throw DomainError("Trajectory: times must be uniformly spaced");
    }
  }
}

void require_same_grid(const Trajectory& a, const Trajectory& b) {
  if (a.size() != b.size()) throw GridMismatchError("trajectories have different sample counts");
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double ta = a.times()[i];
    if (std::abs(ta - b.times()[i]) > 1e-12 * std::max(1.0, std::abs(ta)))
      throw GridMismatchError("trajectories are sampled at different times");
  }
}

namespace {

struct PotentialVisitor {
  double q;
  double t;
  double operator()(const HarmonicSystem& h) const { return 0.5 * h.omega * h.omega * q * q; }
  double operator()(const DrivenQuartic& d) const {
    return 0.25 * q * q * q * q - q * d.gamma * std::sin(d.omega * t);
  }
};

struct ForceVisitor {
  double q;
  double t;
  double operator()(const HarmonicSystem& h) const { return -h.omega * h.omega * q; }
  double operator()(const DrivenQuartic& d) const { return -q * q * q + d.gamma * std::sin(d.omega * t); }
};

struct EnergyVisitor {
  const PhaseState& s;
  double operator()(const HarmonicSystem& h) const {
    return 0.5 * s.p * s.p + 0.5 * h.omega * h.omega * s.q * s.q;
  }
  double operator()(const DrivenQuartic&) const { return 0.5 * s.p * s.p + 0.25 * s.q * s.q * s.q * s.q; }
};

}  // namespace

double potential(const ClassicalSystem& system, double q, double t) {
  return std::visit(PotentialVisitor{q, t}, system);
}

double force(const ClassicalSystem& system, double q, double t) {
  return std::visit(ForceVisitor{q, t}, system);
}

double conserved_energy(const ClassicalSystem& system, const PhaseState& s) {
  return std::visit(EnergyVisitor{s}, system);
}

Trajectory integrate_trajectory(const ClassicalSystem& system, const PhaseState& s0, double t1, double h,
                                double extra_force) {
  OdeProblem problem;
  problem.rhs = [&system, extra_force](double t, const Eigen::VectorXd& y) {
    Eigen::VectorXd dy(2);
    dy[0] = y[1];
    dy[1] = force(system, y[0], t) + extra_force;
    return dy;
  };
  problem.y0 = Eigen::Vector2d(s0.q, s0.p);
  problem.t0 = s0.t;
  problem.t1 = t1;
  problem.h = h;
  OdeSolution sol = integrate_ode(problem);

  const Eigen::Index n = sol.times.size();
  Eigen::VectorXd q = sol.states.row(0).transpose();
  Eigen::VectorXd p = sol.states.row(1).transpose();
  Eigen::VectorXd action(n);
  auto lagrangian = [&](Eigen::Index k) {
    return 0.5 * p[k] * p[k] - potential(system, q[k], sol.times[k]) + extra_force * q[k];
  };
  action[0] = 0.0;
  double previous = lagrangian(0);
  for (Eigen::Index k = 1; k < n; ++k) {
    const double current = lagrangian(k);
    action[k] = action[k - 1] + 0.5 * (sol.times[k] - sol.times[k - 1]) * (previous + current);
    previous = current;
  }
  return Trajectory(std::move(sol.times), std::move(q), std::move(p), std::move(action));
}

Trajectory evolve_driven_quartic(const PhaseState& s0, const DrivenQuartic& d, double t1, double h) {
  return integrate_trajectory(ClassicalSystem{d}, s0, t1, h);
}

PhaseState evolve_harmonic(const PhaseState& s0, double omega, double t) {
  if (!(omega > 0.0)) throw DomainError("evolve_harmonic: omega must be > 0");
  const double c = std::cos(omega * t);
  const double s = std::sin(omega * t);
  return {s0.t + t, s0.q * c + s0.p * s, s0.p * c - s0.q * s};
}

// ---------------------------------------------------------------------------
// Morse

MorseSystem MorseSystem::from_si(double depth_joule, double alpha, double r0_m, double mu_kg) {
  if (!(depth_joule > 0.0) || !(alpha > 0.0) || !(r0_m > 0.0) || !(mu_kg > 0.0))
    throw DomainError("MorseSystem: D, alpha, r0 and mu must be > 0");
  MorseSystem m;
  m.depth_si_ = depth_joule;
  m.alpha_ = alpha;
  m.r0_si_ = r0_m;
  m.mu_si_ = mu_kg;
  m.gamma_c_ = r0_m * std::sqrt(2.0 * mu_kg * depth_joule) / constants::hbar;
  m.omega_w_ = (alpha / r0_m) * std::sqrt(2.0 * depth_joule / mu_kg);
  m.rho0_ = r0_m * std::sqrt(mu_kg * m.omega_w_ / constants::hbar);
  if (!(m.zeta2() > 1.0)) throw DomainError("MorseSystem: parameters admit no bound state (zeta2 <= 1)");
  return m;
}

MorseSystem MorseSystem::hydrogen() {
  return from_si(4.75 * constants::electron_volt, 1.440, 7.42e-11, 0.5 * constants::hydrogen_mass);
}

double MorseSystem::hbar_omega_si() const noexcept { return constants::hbar * omega_w_; }

int MorseSystem::n_levels() const noexcept { return static_cast<int>(std::ceil(0.5 * (zeta2() - 1.0))); }

double morse_potential(double x, const MorseSystem& m) {
  const double e = std::exp(-m.alpha() * x);
  return m.depth() * (e * e - 2.0 * e);
}

double morse_energy(double x, double k, const MorseSystem& m) {
  return 0.5 * k * k / m.mass_x() + morse_potential(x, m);
}

namespace {

void require_bound(double energy, const MorseSystem& m, const char* who) {
  if (!(energy > -m.depth()) || !(energy < 0.0))
    throw DomainError(std::string(who) + ": energy must lie in (-D, 0)");
}

}  // namespace

double morse_orbit_frequency(double energy, const MorseSystem& m) {
  require_bound(energy, m, "morse_orbit_frequency");
  return std::sqrt(-energy / m.depth());
}

double morse_period(double energy, const MorseSystem& m) {
  return 2.0 * std::numbers::pi / morse_orbit_frequency(energy, m);
}

double morse_x(double t, double energy, const MorseSystem& m) {
  require_bound(energy, m, "morse_x");
  const double d = m.depth();
  const double ratio = d / -energy;
  const double amplitude = std::sqrt(d * d + energy * d) / std::abs(energy);
  const double w = morse_orbit_frequency(energy, m);
  return std::log(ratio + std::sin(w * t) * amplitude) / m.alpha();
}

double morse_momentum(double t, double energy, const MorseSystem& m) {
  require_bound(energy, m, "morse_momentum");
  const double d = m.depth();
  const double ratio = d / -energy;
  const double amplitude = std::sqrt(d * d + energy * d) / std::abs(energy);
  const double w = morse_orbit_frequency(energy, m);
  const double xdot = amplitude * w * std::cos(w * t) / (m.alpha() * (ratio + std::sin(w * t) * amplitude));
  return m.mass_x() * xdot;
}

PhaseState morse_label_point(double t, double energy, const MorseSystem& m) {
  const double x = morse_x(t, energy, m);
  const double k = morse_momentum(t, energy, m);
  return {t, m.rho0() * (1.0 + x), k / m.rho0()};
}

// ---------------------------------------------------------------------------
// Twin trajectories

SeparationSeries twin_separation(const Trajectory& a, const Trajectory& b) {
  require_same_grid(a, b);
  SeparationSeries out;
  out.times = a.times();
  out.distance = ((a.q() - b.q()).array().square() + (a.p() - b.p()).array().square()).sqrt().matrix();
  return out;
}

FitWindow default_fit_window(const Eigen::VectorXd& times) {
  const Eigen::Index n = times.size();
  const Eigen::Index first = 10;
  const auto last = static_cast<Eigen::Index>(0.2 * static_cast<double>(n - 1));
  if (last - first + 1 < 3) throw DomainError("default_fit_window: series too short for the default window");
  return {times[first], times[last]};
}

std::pair<Eigen::Index, Eigen::Index> window_indices(const Eigen::VectorXd& times, const FitWindow& w) {
  const Eigen::Index n = times.size();
  if (n == 0) throw DomainError("window: empty series");
  if (!(w.t_lo <= w.t_hi)) throw DomainError("window: t_lo must not exceed t_hi");
  const double slack = n > 1 ? 0.5 * (times[1] - times[0]) : 0.0;
  if (w.t_lo < times[0] - slack || w.t_hi > times[n - 1] + slack)
    throw DomainError("window: lies outside the series");
  Eigen::Index first = 0;
  while (first < n && times[first] < w.t_lo - 1e-9 * slack) ++first;
  Eigen::Index last = n - 1;
  while (last >= 0 && times[last] > w.t_hi + 1e-9 * slack) --last;
  return {first, last};
}

double lyapunov_short_time(const SeparationSeries& sep, const FitWindow& window) {
  if (sep.times.size() != sep.distance.size()) throw GridMismatchError("separation series is ragged");
  const auto [first, last] = window_indices(sep.times, window);
  const Eigen::Index count = last - first + 1;
  if (count < 3) throw DomainError("lyapunov_short_time: window holds fewer than 3 samples");
  if (!(sep.distance[0] > 0.0)) throw DomainError("lyapunov_short_time: D(0) must be > 0");
  const auto d = sep.distance.segment(first, count);
  if ((d.array() <= 0.0).any()) throw DomainError("lyapunov_short_time: D(t) vanishes inside the window");
  const Eigen::VectorXd log_d = d.array().log().matrix();
  return fit_line(sep.times.segment(first, count), log_d).slope;
}

double lyapunov_from_overlap(double ov0, double ovT, double T) {
  if (!(ov0 > 0.0 && ov0 < 1.0) || !(ovT > 0.0 && ovT < 1.0))
    throw DomainError("lyapunov_from_overlap: overlaps must lie strictly inside (0, 1)");
  if (!(T > 0.0)) throw DomainError("lyapunov_from_overlap: T must be > 0");
  return std::log(std::log(ovT) / std::log(ov0)) / (2.0 * T);
}

}  // namespace scprod
