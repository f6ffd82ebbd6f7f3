#pragma once

// Classical trajectories for the harmonic oscillator, the driven quartic
// oscillator and the L = 0 Morse oscillator, plus twin-trajectory
// separation and finite-time Lyapunov estimates.
//
// Units: harmonic and driven systems use unit mass, (q, p) as given.
// The Morse system is dimensionless internally: time in 1/varpi, energy in
// hbar*varpi, x = (r - r0)/r0 and the conjugate momentum k = p_x/hbar with
// p_x = mu r0^2 dx/dt.

#include <Eigen/Core>

#include <utility>
#include <variant>

#include "scprod/errors.hpp"

namespace scprod {

struct PhaseState {
  double t = 0.0;
  double q = 0.0;
  double p = 0.0;
};

/// Uniformly sampled classical path with its accumulated action.
class Trajectory {
 public:
  Trajectory(Eigen::VectorXd times, Eigen::VectorXd q, Eigen::VectorXd p, Eigen::VectorXd action);

  Eigen::Index size() const noexcept { return times_.size(); }
  double dt() const noexcept { return size() > 1 ? times_[1] - times_[0] : 0.0; }
  const Eigen::VectorXd& times() const noexcept { return times_; }
  const Eigen::VectorXd& q() const noexcept { return q_; }
  const Eigen::VectorXd& p() const noexcept { return p_; }
  const Eigen::VectorXd& action() const noexcept { return action_; }
  PhaseState state(Eigen::Index i) const { return {times_[i], q_[i], p_[i]}; }

 private:
  Eigen::VectorXd times_;
  Eigen::VectorXd q_;
  Eigen::VectorXd p_;
  Eigen::VectorXd action_;
};

/// Throws GridMismatchError unless both trajectories are sampled at the same times.
void require_same_grid(const Trajectory& a, const Trajectory& b);

// ---------------------------------------------------------------------------
// Time-dependent one-dimensional systems (unit mass)

struct HarmonicSystem {
  double omega = 1.0;
};

/// x'' + x^3 = gamma sin(omega t).
struct DrivenQuartic {
  double gamma = 1.0;
  double omega = 1.88;
};

using ClassicalSystem = std::variant<HarmonicSystem, DrivenQuartic>;

double potential(const ClassicalSystem& system, double q, double t);
double force(const ClassicalSystem& system, double q, double t);

/// Mechanical energy p^2/2 + V(q) excluding the explicit drive term.
double conserved_energy(const ClassicalSystem& system, const PhaseState& s);

/// RK4 trajectory of `system` with an optional constant additive force,
/// from s0 to time t1 with step h. The action integrates
/// L = p^2/2 - V(q, t) + extra_force * q with the trapezoid rule on the
/// same grid.
Trajectory integrate_trajectory(const ClassicalSystem& system, const PhaseState& s0, double t1, double h,
                                double extra_force = 0.0);

Trajectory evolve_driven_quartic(const PhaseState& s0, const DrivenQuartic& d, double t1, double h);

/// Exact flow of H = omega (Q^2 + P^2) / 2 for an elapsed time t.
PhaseState evolve_harmonic(const PhaseState& s0, double omega, double t);

// ---------------------------------------------------------------------------
// Morse oscillator, L = 0

class MorseSystem {
 public:
  /// Physical parameters in SI units: well depth (J), dimensionless
  /// steepness alpha, equilibrium separation r0 (m) and reduced mass (kg).
  static MorseSystem from_si(double depth_joule, double alpha, double r0_m, double mu_kg);

  /// Hydrogen molecule: alpha = 1.440, D = 4.75 eV, r0 = 7.42e-11 m, mu = m_H/2.
  static MorseSystem hydrogen();

  double depth_si() const noexcept { return depth_si_; }
  double alpha() const noexcept { return alpha_; }
  double r0_si() const noexcept { return r0_si_; }
  double mu_si() const noexcept { return mu_si_; }

  /// gamma = r0 sqrt(2 mu D) / hbar.
  double gamma_c() const noexcept { return gamma_c_; }
  /// zeta = zeta2 = 2 gamma / alpha.
  double zeta2() const noexcept { return 2.0 * gamma_c_ / alpha_; }
  /// Harmonic frequency at the bottom of the well (rad/s).
  double omega_w() const noexcept { return omega_w_; }
  double hbar_omega_si() const noexcept;
  /// Number of bound L = 0 levels, ceil((zeta2 - 1)/2).
  int n_levels() const noexcept;

  /// Dimensionless well depth D / (hbar varpi).
  double depth() const noexcept { return depth_si_ / hbar_omega_si(); }
  /// Dimensionless mass of the x chart, mu r0^2 varpi / hbar.
  double mass_x() const noexcept { return rho0_ * rho0_; }
  /// r0 in units of the oscillator length sqrt(hbar / (mu varpi)).
  double rho0() const noexcept { return rho0_; }

 private:
  MorseSystem() = default;

  double depth_si_ = 0.0;
  double alpha_ = 0.0;
  double r0_si_ = 0.0;
  double mu_si_ = 0.0;
  double gamma_c_ = 0.0;
  double omega_w_ = 0.0;
  double rho0_ = 0.0;
};

namespace constants {
inline constexpr double hbar = 1.054571817e-34;          // J s
inline constexpr double electron_volt = 1.602176634e-19;  // J
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg
inline constexpr double hydrogen_mass = 1.00782503207 * atomic_mass_unit;
}  // namespace constants

/// U(x) = D (e^{-2 alpha x} - 2 e^{-alpha x}) in units of hbar varpi.
double morse_potential(double x, const MorseSystem& m);
double morse_energy(double x, double k, const MorseSystem& m);

/// Angular frequency of the bound orbit at energy E (units of varpi).
double morse_orbit_frequency(double energy, const MorseSystem& m);
double morse_period(double energy, const MorseSystem& m);

/// Closed-form bound trajectory x(t) at energy E in (-D, 0).
double morse_x(double t, double energy, const MorseSystem& m);

/// k(t) = p_x / hbar = M dx/dt on the same orbit.
double morse_momentum(double t, double energy, const MorseSystem& m);

/// Label-space coordinates of a Morse phase point: Q = rho0 (1 + x) is the
/// radius in oscillator lengths and P = k / rho0 the radial momentum in
/// units of hbar / oscillator length.
PhaseState morse_label_point(double t, double energy, const MorseSystem& m);

// ---------------------------------------------------------------------------
// Twin trajectories and Lyapunov estimates

struct SeparationSeries {
  Eigen::VectorXd times;
  Eigen::VectorXd distance;
};

/// D(t) = sqrt((qA - qB)^2 + (pA - pB)^2) per sample.
SeparationSeries twin_separation(const Trajectory& a, const Trajectory& b);

struct FitWindow {
  double t_lo;
  double t_hi;
};

/// First 20% of the series, skipping the first 10 samples.
FitWindow default_fit_window(const Eigen::VectorXd& times);

/// Indices [first, last] of the samples whose times fall inside the window.
std::pair<Eigen::Index, Eigen::Index> window_indices(const Eigen::VectorXd& times, const FitWindow& w);

/// Least-squares slope of ln D(t) over the window.
double lyapunov_short_time(const SeparationSeries& sep, const FitWindow& window);

/// (1 / 2T) ln( ln(1/ovT) / ln(1/ov0) ) for squared overlaps in (0, 1).
double lyapunov_from_overlap(double ov0, double ovT, double T);

}  // namespace scprod
