#pragma once

// Husimi functions on phase-space grids.
//
// Exact fields come from the harmonic-oscillator closed form or from
// quadrature against L = 0 Morse eigenfunctions. Semiclassical fields are
// time averages of the squared coherent overlap along one closed classical
// orbit.
//
// Every field lives on a pair of "axis" grids (the coordinates a user asks
// for, e.g. the panel axes for Morse) and an AxisMap sending them to label
// coordinates (Q, P) in oscillator units, where alpha = (Q + iP)/sqrt(2).

#include <Eigen/Core>

#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "scprod/dynamics.hpp"
#include "scprod/numkit.hpp"

namespace scprod {

enum class NormMode {
  paper,          ///< conventional prefactors, no rescaling
  unit_integral,  ///< rescaled so the integral over the (Q, P) plane is 1
};

const char* to_string(NormMode mode) noexcept;
NormMode norm_mode_from_string(const std::string& text);

/// Affine map from axis coordinates to label coordinates:
/// Q = q_scale (X + q_offset), P = p_scale (Y + p_offset).
struct AxisMap {
  double q_scale = 1.0;
  double q_offset = 0.0;
  double p_scale = 1.0;
  double p_offset = 0.0;

  double label_q(double x) const noexcept { return q_scale * (x + q_offset); }
  double label_p(double y) const noexcept { return p_scale * (y + p_offset); }
  /// Jacobian dQ dP / dX dY.
  double jacobian() const noexcept { return std::abs(q_scale * p_scale); }

  friend bool operator==(const AxisMap&, const AxisMap&) = default;
};

/// Descriptive metadata carried to the JSON sidecar.
struct FieldInfo {
  std::string system;
  std::string method;
  int level = 0;
  std::map<std::string, double> parameters;
};

class HusimiField {
 public:
  /// values(i, j) is the field at (qgrid[i], pgrid[j]). Throws DomainError on
  /// a negative or non-finite entry and GridMismatchError on a shape mismatch.
  HusimiField(Grid1D qgrid, Grid1D pgrid, Eigen::MatrixXd values, NormMode mode, AxisMap map = {},
              FieldInfo info = {});

  const Grid1D& qgrid() const noexcept { return qgrid_; }
  const Grid1D& pgrid() const noexcept { return pgrid_; }
  const Eigen::MatrixXd& values() const noexcept { return values_; }
  NormMode norm_mode() const noexcept { return mode_; }
  const AxisMap& axis_map() const noexcept { return map_; }
  const FieldInfo& info() const noexcept { return info_; }

  /// Trapezoid integral over the label plane.
  double label_integral() const;

  /// Grid indices (i, j) of the largest value (first occurrence in
  /// row-major order).
  std::pair<Eigen::Index, Eigen::Index> argmax() const;

  /// Index j of the column whose label momentum is zero.
  /// Throws GridMismatchError when no such column exists.
  Eigen::Index zero_momentum_column() const;

  /// Same grids and map, field divided by its label-plane integral.
  HusimiField normalized() const;

 private:
  Grid1D qgrid_;
  Grid1D pgrid_;
  Eigen::MatrixXd values_;
  NormMode mode_;
  AxisMap map_;
  FieldInfo info_;
};

// ---------------------------------------------------------------------------
// Harmonic oscillator

/// Husimi function of the n-th eigenstate at label point (Q, P).
/// Paper mode: e^{-s/2} s^n / (4 pi hbar n!) with s = Q^2 + P^2.
/// Unit-integral mode: e^{-s/2} (s/2)^n / (2 pi n!).
double husimi_ho_closed(int n, double Q, double P, double hbar, NormMode mode);

/// Normalised Hermite function psi_n(x) (three-term recurrence).
double ho_eigenfunction(int n, double x);

/// |<alpha|psi_n>|^2 / (2 pi) computed by quadrature from ho_eigenfunction and
/// the coherent-state Gaussian. Agrees with the unit-integral closed form.
double husimi_ho_from_wavefunction(int n, double Q, double P);

HusimiField husimi_ho_field(int n, const Grid1D& qgrid, const Grid1D& pgrid, NormMode mode);

// ---------------------------------------------------------------------------
// Morse oscillator, L = 0

/// Bound-state energy of level nu in units of hbar*varpi (negative).
/// Throws DomainError when nu is outside [0, (zeta2 - 1)/2).
double morse_eigenvalue(int nu, const MorseSystem& m);

/// Energy in electron volts.
double morse_eigenvalue_ev(int nu, const MorseSystem& m);

/// An L = 0 eigenstate in the x = (r - r0)/r0 chart. The reduced radial
/// function u(x) = A1 exp(-beta1 x - z/2) 1F1(a; varsigma; z), z = zeta2 e^{-alpha x},
/// is normalised numerically so that the integral of u^2 over x in (-1, inf)
/// is one; the radial function is R(x) = u(x)/(1 + x).
class MorseEigenstate {
 public:
  MorseEigenstate(int nu, const MorseSystem& m);

  int nu() const noexcept { return nu_; }
  const MorseSystem& system() const noexcept { return system_; }
  double energy() const noexcept { return energy_; }
  double beta() const noexcept { return beta_; }
  double series_a() const noexcept { return a_; }
  double series_c() const noexcept { return c_; }
  int series_terms() const noexcept { return terms_; }
  /// ln A1 for u(x) in the x chart.
  double log_norm() const noexcept { return log_norm_; }
  /// Interval of x outside which |u| < 1e-14 max|u|.
  Support support() const noexcept { return support_; }

  /// u(x); zero for x <= -1.
  double reduced(double x) const;

  /// R(x) = u(x)/(1 + x); throws DomainError for x <= -1.
  double radial(double x) const;

 private:
  double shape(double x) const;  // u / A1 with the log offset removed

  int nu_;
  MorseSystem system_;
  double energy_;
  double beta_;
  double a_;
  double c_;
  int terms_ = 0;
  double log_offset_ = 0.0;
  double log_norm_ = 0.0;
  double scaled_norm_ = 1.0;
  Support support_{-1.0, 0.0};
};

double morse_eigenfunction(const MorseEigenstate& st, double x);

/// Exact Husimi function of the eigenstate for a radial coherent state at
/// radius Q (oscillator lengths) with radial momentum P. Paper mode is the
/// squared modulus of the three-dimensional projection.
double morse_husimi(const MorseEigenstate& st, double Q, double P);

HusimiField morse_husimi_field(const MorseEigenstate& st, const Grid1D& xgrid, const Grid1D& ygrid,
                               const AxisMap& map, NormMode mode);

/// Panel axes for nu = 0: r = r0 (X + 10)/250, p = m varpi r0 (Y - 2)/1.2.
AxisMap morse_axes_ground(const MorseSystem& m);
/// Panel axes for nu = 1: r = r0 (X + 300)/1000, p = m varpi r0 (Y - 5)/5.
AxisMap morse_axes_first(const MorseSystem& m);

/// Axis grids and map of the standard Morse panels (nu = 0 or 1).
struct FigureGrid {
  Grid1D x;
  Grid1D y;
  AxisMap map;
};
FigureGrid morse_figure_grid(int nu, const MorseSystem& m, Eigen::Index points = 41);

// ---------------------------------------------------------------------------
// Semiclassical Husimi

/// How the orbit's coherent state is compared with the probe state.
enum class OrbitSymmetry {
  planar,  ///< one-dimensional labels: kernel exp(-|alpha(t) - beta|^2)
  s_wave,  ///< radial labels averaged over relative orientation (L = 0)
};

/// One period of a closed orbit in label coordinates, sampled uniformly in time.
struct ClosedOrbit {
  Eigen::VectorXd q;
  Eigen::VectorXd p;
  double period = 0.0;
  double energy = 0.0;
  OrbitSymmetry symmetry = OrbitSymmetry::planar;
};

/// Energy assigned to the orbit of level n.
enum class OrbitEnergy {
  coherent_matched,  ///< |alpha|^2 = n, so the n = 0 orbit is the fixed point
  eigenvalue,        ///< E_n = omega (n + 1/2)
};

double harmonic_orbit_energy(int n, double omega, OrbitEnergy convention);

/// Q(t) = Q0 cos(omega t), P(t) = -Q0 sin(omega t) with Q0 = sqrt(2E/omega),
/// sampled at t_offset + k T / samples.
ClosedOrbit harmonic_orbit(double energy, double omega, Eigen::Index samples, double t_offset = 0.0);

/// Label-space Morse orbit at energy E (units of hbar varpi).
ClosedOrbit morse_orbit(double energy, const MorseSystem& m, Eigen::Index samples, double t_offset = 0.0);

/// Orbit of a time-dependent system. Only the harmonic oscillator is
/// periodic; a driven system is rejected with DomainError.
ClosedOrbit closed_orbit(const ClassicalSystem& system, double energy, Eigen::Index samples);

/// Time average of the overlap kernel at every grid point. In
/// unit-integral mode the planar kernel is divided by 2 pi and the s-wave
/// kernel is normalised on the grid.
HusimiField sc_husimi(const ClosedOrbit& orbit, const Grid1D& qgrid, const Grid1D& pgrid,
                      const AxisMap& map, NormMode mode);

/// Harmonic level n on label grids.
HusimiField sc_husimi_harmonic(int n, const Grid1D& qgrid, const Grid1D& pgrid, NormMode mode,
                               Eigen::Index period_samples = 2048,
                               OrbitEnergy convention = OrbitEnergy::coherent_matched);

/// Morse level nu on axis grids.
HusimiField sc_husimi_morse(int nu, const MorseSystem& m, const Grid1D& xgrid, const Grid1D& ygrid,
                            const AxisMap& map, NormMode mode, Eigen::Index period_samples = 2048,
                            OrbitSymmetry symmetry = OrbitSymmetry::s_wave);

}  // namespace scprod
