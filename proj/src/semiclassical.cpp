#include "scprod/semiclassical.hpp"

#include <cmath>
#include <limits>

#include "scprod/numkit.hpp"

namespace scprod {

OverlapSeries sc_overlap(const Trajectory& a, const Trajectory& b, const OscillatorScale& scale,
                         bool with_phase) {
  require_same_grid(a, b);
  const Eigen::Index n = a.size();
  OverlapSeries out;
  out.times = a.times();
  out.values.resize(n);
  Eigen::VectorXd phase;
  if (with_phase) phase.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const ComplexAmplitude za = alpha_from_qp(a.q()[i], a.p()[i], scale);
    const ComplexAmplitude zb = alpha_from_qp(b.q()[i], b.p()[i], scale);
    out.values[i] = overlap_h3_sq(za, zb);
    if (with_phase) {
      phase[i] = (za * std::conj(zb)).imag() + (b.action()[i] - a.action()[i]) / scale.hbar;
    }
  }
  if (with_phase) out.phase = std::move(phase);
  return out;
}

SeparationSeries label_separation(const Trajectory& a, const Trajectory& b, const OscillatorScale& scale) {
  require_same_grid(a, b);
  SeparationSeries out;
  out.times = a.times();
  out.distance.resize(a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.distance[i] = std::abs(alpha_from_qp(a.q()[i], a.p()[i], scale) - alpha_from_qp(b.q()[i], b.p()[i], scale));
  }
  return out;
}

TauResult tau_sc(const OverlapSeries& ov, double dm) {
  const Eigen::Index n = ov.values.size();
  if (n == 0 || ov.times.size() != n) throw DomainError("tau_sc: empty or ragged series");
  if (!(dm > 0.0)) throw DomainError("tau_sc: dm must be > 0");
  const double threshold = std::exp(-dm * dm);
  if (!(threshold > 0.0 && threshold < 1.0)) throw DomainError("tau_sc: threshold exp(-dm^2) must lie in (0, 1)");

  auto distance = [&](Eigen::Index i) { return std::sqrt(-std::log(ov.values[i])); };
  for (Eigen::Index i = 0; i < n; ++i) {
    if (ov.values[i] >= threshold) continue;
    if (i == 0) return {ov.times[0], true};
    const double d0 = distance(i - 1);
    const double d1 = distance(i);
    if (!std::isfinite(d1) || d1 <= d0) return {ov.times[i], true};
    const double frac = (dm - d0) / (d1 - d0);
    return {ov.times[i - 1] + frac * (ov.times[i] - ov.times[i - 1]), true};
  }
  return {ov.times[n - 1], false};
}

PerturbationSpec::PerturbationSpec(double eps) : epsilon(eps) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw DomainError("PerturbationSpec: epsilon must be finite and >= 0");
}

std::complex<double> sc_fidelity_closed(const PerturbationSpec& eps, double t) {
  if (!(t >= 0.0)) throw DomainError("sc_fidelity_closed: t must be >= 0");
  const double e = eps.epsilon;
  return std::exp(std::complex<double>(-0.5 * e * e * t * t, -e * t));
}

double perturbation_force(const PerturbationSpec& eps, const OscillatorScale& scale) {
  return -eps.epsilon * std::sqrt(2.0 * scale.mass * scale.omega * scale.hbar);
}

OverlapSeries sc_fidelity_numeric(const ClassicalSystem& system, const PhaseState& s0,
                                  const PerturbationSpec& eps, double t1, double h,
                                  const OscillatorScale& scale) {
  const Trajectory free = integrate_trajectory(system, s0, t1, h);
  const Trajectory perturbed = integrate_trajectory(system, s0, t1, h, perturbation_force(eps, scale));
  return sc_overlap(free, perturbed, scale);
}

GaussianFit gaussian_decay_fit(const OverlapSeries& ov, const FitWindow& window) {
  const auto [first, last] = window_indices(ov.times, window);
  const Eigen::Index count = last - first + 1;
  if (count < 2) throw DomainError("gaussian_decay_fit: window holds fewer than 2 samples");
  const auto f = ov.values.segment(first, count);
  if ((f.array() <= 0.0).any() || (f.array() >= 1.0).any())
    throw DomainError("gaussian_decay_fit: values in the window must lie strictly inside (0, 1)");
  const Eigen::VectorXd y = (-f.array().log()).sqrt().matrix();
  const LineFit fit = fit_line(ov.times.segment(first, count), y);
  return {fit.slope, fit.r2};
}

double lyapunov_from_overlap_series(const OverlapSeries& ov, const FitWindow& window) {
  const auto [first, last] = window_indices(ov.times, window);
  if (last <= first) throw DomainError("lyapunov_from_overlap_series: degenerate window");
  return lyapunov_from_overlap(ov.values[first], ov.values[last], ov.times[last] - ov.times[first]);
}

}  // namespace scprod
