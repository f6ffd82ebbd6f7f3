#pragma once

// Zeroth-order semiclassical scalar products: the overlap of two
// classically transported coherent states, the semiclassical time, and
// fidelity under a linear perturbation eps*hbar*(a + a^dagger).

#include <Eigen/Core>

#include <complex>
#include <optional>

#include "scprod/coherent.hpp"
#include "scprod/dynamics.hpp"

namespace scprod {

/// Squared overlaps |<alpha(t)|beta(t)>|^2 on a uniform time grid, with the
/// relative phase of the leading term when requested.
struct OverlapSeries {
  Eigen::VectorXd times;
  Eigen::VectorXd values;
  std::optional<Eigen::VectorXd> phase;
};

/// Maps both trajectories to coherent labels and returns exp(-|alphaA - alphaB|^2)
/// per sample. The phase is Im(alphaA conj(alphaB)) + (S_B - S_A)/hbar.
OverlapSeries sc_overlap(const Trajectory& a, const Trajectory& b, const OscillatorScale& scale,
                         bool with_phase = false);

/// Label-space separation |alphaA(t) - alphaB(t)|.
SeparationSeries label_separation(const Trajectory& a, const Trajectory& b, const OscillatorScale& scale);

struct TauResult {
  double time;
  bool reached;
};

/// First time the overlap drops below exp(-dm^2). The crossing is located
/// by linear interpolation of D = sqrt(-ln overlap) between the bracketing
/// samples. When the threshold is never crossed the last time is returned
/// with reached = false.
TauResult tau_sc(const OverlapSeries& ov, double dm = 1.0);

struct PerturbationSpec {
  double epsilon = 0.0;

  explicit PerturbationSpec(double eps);
  /// False above eps = 0.3, where the short-time expansion is not expected to hold.
  bool is_perturbative() const noexcept { return epsilon <= 0.3; }
};

/// <alpha(t)|beta(t)> = exp(-eps^2 t^2 / 2 - i eps t).
std::complex<double> sc_fidelity_closed(const PerturbationSpec& eps, double t);

/// Constant force -eps sqrt(2 m omega hbar) exerted by V = eps hbar (a + a^dagger).
double perturbation_force(const PerturbationSpec& eps, const OscillatorScale& scale);

/// Fidelity from the unperturbed and perturbed classical label paths,
/// both started at s0 and integrated on the same grid.
OverlapSeries sc_fidelity_numeric(const ClassicalSystem& system, const PhaseState& s0,
                                  const PerturbationSpec& eps, double t1, double h,
                                  const OscillatorScale& scale);

struct GaussianFit {
  double slope;
  double r2;
};

/// Least-squares line of sqrt(-ln F) against t over the window. The slope
/// estimates eps for a Gaussian decay; r2 measures how Gaussian it is.
GaussianFit gaussian_decay_fit(const OverlapSeries& ov, const FitWindow& window);

/// The overlap-based Lyapunov estimate using the overlaps at the two ends
/// of the window.
double lyapunov_from_overlap_series(const OverlapSeries& ov, const FitWindow& window);

}  // namespace scprod
