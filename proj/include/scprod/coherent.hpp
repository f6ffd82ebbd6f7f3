#pragma once

// Coherent-state labels and their scalar products.
//
// Labels are dimensionless complex amplitudes; physical (q, p) only appear at
// the boundary through an OscillatorScale.

#include <Eigen/Core>

#include <cmath>
#include <complex>

#include "scprod/errors.hpp"

namespace scprod {

template <typename Scalar>
using Amplitude = std::complex<Scalar>;

using ComplexAmplitude = Amplitude<double>;

template <typename Scalar>
struct OscillatorScaleT {
  Scalar mass = Scalar(1);
  Scalar omega = Scalar(1);
  Scalar hbar = Scalar(1);

  OscillatorScaleT() = default;
  OscillatorScaleT(Scalar m, Scalar w, Scalar h) : mass(m), omega(w), hbar(h) {
    using std::isfinite;
    if (!(m > 0) || !(w > 0) || !(h > 0) || !isfinite(m) || !isfinite(w) || !isfinite(h))
      throw DomainError("OscillatorScale: mass, omega and hbar must be finite and > 0");
  }

  /// Oscillator length sqrt(hbar / (m omega)).
  Scalar length() const { return std::sqrt(hbar / (mass * omega)); }
};

using OscillatorScale = OscillatorScaleT<double>;

template <typename Scalar>
using PhasePoint = Eigen::Matrix<Scalar, 2, 1>;

/// alpha = q sqrt(m w / 2 hbar) + i p / sqrt(2 m w hbar).
template <typename Scalar>
Amplitude<Scalar> alpha_from_qp(Scalar q, Scalar p, const OscillatorScaleT<Scalar>& s) {
  using std::isfinite;
  if (!isfinite(q) || !isfinite(p)) throw DomainError("alpha_from_qp: non-finite phase-space point");
  return {q * std::sqrt(s.mass * s.omega / (Scalar(2) * s.hbar)),
          p / std::sqrt(Scalar(2) * s.mass * s.omega * s.hbar)};
}

/// Inverse of alpha_from_qp; returns (q, p).
template <typename Scalar>
PhasePoint<Scalar> qp_from_alpha(const Amplitude<Scalar>& a, const OscillatorScaleT<Scalar>& s) {
  return {a.real() * std::sqrt(Scalar(2) * s.hbar / (s.mass * s.omega)),
          a.imag() * std::sqrt(Scalar(2) * s.mass * s.omega * s.hbar)};
}

/// <a|b> for Glauber coherent states.
template <typename Scalar>
Amplitude<Scalar> overlap_h3(const Amplitude<Scalar>& a, const Amplitude<Scalar>& b) {
  return std::exp(-Scalar(0.5) * std::norm(a) - Scalar(0.5) * std::norm(b) + std::conj(a) * b);
}

/// |<a|b>|^2 = exp(-|a - b|^2).
template <typename Scalar>
Scalar overlap_h3_sq(const Amplitude<Scalar>& a, const Amplitude<Scalar>& b) {
  return std::exp(-std::norm(a - b));
}

/// Squared overlap of SU(2) coherent states with spin J (stereographic labels).
template <typename Scalar>
Scalar overlap_su2_sq(const Amplitude<Scalar>& a, const Amplitude<Scalar>& b, Scalar J) {
  if (!(J > 0)) throw DomainError("overlap_su2_sq: J must be > 0");
  // ratio lies in [0, 1]; log1p keeps the large-J limit accurate.
  const Scalar ratio = std::norm(a - b) / ((Scalar(1) + std::norm(b)) * (Scalar(1) + std::norm(a)));
  return std::exp(Scalar(2) * J * std::log1p(-ratio));
}

/// Label-space distance recovered from a squared overlap: sqrt(ln(1/|<a|b>|^2)).
template <typename Scalar>
Scalar label_distance_from_overlap(Scalar overlap_sq) {
  if (!(overlap_sq > 0) || overlap_sq > Scalar(1))
    throw DomainError("label_distance_from_overlap: squared overlap must lie in (0, 1]");
  return std::sqrt(-std::log(overlap_sq));
}

/// Phase-space distance D0 between (q, p) and (q2, p2); D0^2 equals the
/// squared label distance |alpha - alpha'|^2.
template <typename Scalar>
Scalar distance0(Scalar q, Scalar p, Scalar q2, Scalar p2, const OscillatorScaleT<Scalar>& s) {
  using std::isfinite;
  if (!isfinite(q) || !isfinite(p) || !isfinite(q2) || !isfinite(p2))
    throw DomainError("distance0: non-finite phase-space point");
  const Scalar dq = q - q2;
  const Scalar dp = p - p2;
  const Scalar d2 = (s.mass * s.omega * s.omega * dq * dq / Scalar(2) + dp * dp / (Scalar(2) * s.mass)) /
                    (s.hbar * s.omega);
  return std::sqrt(d2);
}

}  // namespace scprod
