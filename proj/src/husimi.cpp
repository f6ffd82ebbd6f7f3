#include "scprod/husimi.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

namespace scprod {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::MatrixXd evaluate_grid(const Grid1D& qgrid, const Grid1D& pgrid,
                              const std::function<double(double, double)>& f) {
  Eigen::MatrixXd values(qgrid.size(), pgrid.size());
  parallel_for(qgrid.size(), [&](Eigen::Index i) {
    const double q = qgrid[i];
    for (Eigen::Index j = 0; j < pgrid.size(); ++j) values(i, j) = f(q, pgrid[j]);
  });
  return values;
}

}  // namespace

const char* to_string(NormMode mode) noexcept {
  return mode == NormMode::paper ? "paper" : "unit-integral";
}

NormMode norm_mode_from_string(const std::string& text) {
  if (text == "paper") return NormMode::paper;
  if (text == "unit-integral" || text == "unit_integral" || text == "unit") return NormMode::unit_integral;
  throw DomainError("unknown norm mode '" + text + "' (expected paper or unit-integral)");
}

// ---------------------------------------------------------------------------
// HusimiField

HusimiField::HusimiField(Grid1D qgrid, Grid1D pgrid, Eigen::MatrixXd values, NormMode mode, AxisMap map,
                         FieldInfo info)
    : qgrid_(qgrid), pgrid_(pgrid), values_(std::move(values)), mode_(mode), map_(map), info_(std::move(info)) {
  if (values_.rows() != qgrid_.size() || values_.cols() != pgrid_.size())
    throw GridMismatchError("HusimiField: value matrix does not match the grids");
  if (!values_.allFinite()) throw DomainError("HusimiField: non-finite value");
  if ((values_.array() < 0.0).any()) throw DomainError("HusimiField: negative value");
}

double HusimiField::label_integral() const {
  const Eigen::Index nq = qgrid_.size();
  const Eigen::Index np = pgrid_.size();
  double total = 0.0;
  for (Eigen::Index i = 0; i < nq; ++i) {
    const double wi = (i == 0 || i == nq - 1) ? 0.5 : 1.0;
    for (Eigen::Index j = 0; j < np; ++j) {
      const double wj = (j == 0 || j == np - 1) ? 0.5 : 1.0;
      total += wi * wj * values_(i, j);
    }
  }
  return total * qgrid_.spacing() * pgrid_.spacing() * map_.jacobian();
}

std::pair<Eigen::Index, Eigen::Index> HusimiField::argmax() const {
  Eigen::Index bi = 0, bj = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < values_.rows(); ++i)
    for (Eigen::Index j = 0; j < values_.cols(); ++j)
      if (values_(i, j) > best) {
        best = values_(i, j);
        bi = i;
        bj = j;
      }
  return {bi, bj};
}

Eigen::Index HusimiField::zero_momentum_column() const {
  const double tol = 1e-6 * std::abs(map_.p_scale) * pgrid_.spacing();
  for (Eigen::Index j = 0; j < pgrid_.size(); ++j)
    if (std::abs(map_.label_p(pgrid_[j])) <= tol) return j;
  throw GridMismatchError("field grid has no P = 0 column");
}

HusimiField HusimiField::normalized() const {
  const double total = label_integral();
  if (!(total > 0.0)) throw DomainError("HusimiField::normalized: field integrates to zero");
  return HusimiField(qgrid_, pgrid_, values_ / total, NormMode::unit_integral, map_, info_);
}

// ---------------------------------------------------------------------------
// Harmonic oscillator

double husimi_ho_closed(int n, double Q, double P, double hbar, NormMode mode) {
  if (n < 0) throw DomainError("husimi_ho_closed: n must be >= 0");
  if (!(hbar > 0.0)) throw DomainError("husimi_ho_closed: hbar must be > 0");
  const double s = Q * Q + P * P;
  if (n > 0 && s == 0.0) return 0.0;
  const double log_fact = log_gamma_fn(n + 1.0);
  double log_value = 0.0;
  if (mode == NormMode::paper) {
    log_value = -0.5 * s - std::log(4.0 * kPi * hbar) - log_fact;
    if (n > 0) log_value += n * std::log(s);
  } else {
    log_value = -0.5 * s - std::log(2.0 * kPi) - log_fact;
    if (n > 0) log_value += n * std::log(0.5 * s);
  }
  return std::exp(log_value);
}

double ho_eigenfunction(int n, double x) {
  if (n < 0) throw DomainError("ho_eigenfunction: n must be >= 0");
  const double psi0 = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
  if (n == 0) return psi0;
  double prev = psi0;
  double cur = std::sqrt(2.0) * x * psi0;
  for (int k = 1; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double husimi_ho_from_wavefunction(int n, double Q, double P) {
  if (n < 0) throw DomainError("husimi_ho_from_wavefunction: n must be >= 0");
  const double norm = std::pow(kPi, -0.25);
  // The coherent Gaussian confines the integrand to |x - Q| < 12 (e^-72).
  const double lo = Q - 12.0;
  const double hi = Q + 12.0;
  auto envelope = [&](double x) { return norm * ho_eigenfunction(n, x) * std::exp(-0.5 * (x - Q) * (x - Q)); };
  const double re = integrate_1d([&](double x) { return envelope(x) * std::cos(P * x); }, lo, hi, 1e-12);
  const double im = integrate_1d([&](double x) { return envelope(x) * std::sin(P * x); }, lo, hi, 1e-12);
  return (re * re + im * im) / (2.0 * kPi);
}

HusimiField husimi_ho_field(int n, const Grid1D& qgrid, const Grid1D& pgrid, NormMode mode) {
  FieldInfo info{"harmonic", "exact", n, {{"hbar", 1.0}, {"omega", 1.0}}};
  return HusimiField(qgrid, pgrid,
                     evaluate_grid(qgrid, pgrid, [&](double q, double p) { return husimi_ho_closed(n, q, p, 1.0, mode); }),
                     mode, AxisMap{}, std::move(info));
}

// ---------------------------------------------------------------------------
// Morse oscillator

double morse_eigenvalue(int nu, const MorseSystem& m) {
  const double cap = 0.5 * (m.zeta2() - 1.0);
  if (nu < 0 || !(nu < cap))
    throw DomainError("Morse level " + std::to_string(nu) + " is not bound: levels must satisfy 0 <= nu < (zeta2 - 1)/2 = " +
                      std::to_string(cap) + " (" + std::to_string(m.n_levels()) + " bound levels)");
  const double v = nu + 0.5;
  return -m.depth() + v - v * v / m.zeta2();
}

double morse_eigenvalue_ev(int nu, const MorseSystem& m) {
  return morse_eigenvalue(nu, m) * m.hbar_omega_si() / constants::electron_volt;
}

MorseEigenstate::MorseEigenstate(int nu, const MorseSystem& m)
    : nu_(nu), system_(m), energy_(morse_eigenvalue(nu, m)) {
  const double alpha = m.alpha();
  beta_ = std::sqrt(-2.0 * m.mass_x() * energy_);
  c_ = 2.0 * beta_ / alpha + 1.0;
  a_ = beta_ / alpha + 0.5 - 0.5 * m.zeta2();
  // For a bound level a is -nu up to rounding; snapping makes the series terminate.
  const double nearest = std::round(a_);
  if (nearest <= 0.0 && std::abs(a_ - nearest) < 1e-8) a_ = nearest;
  terms_ = a_ <= 0.0 && a_ == std::round(a_) ? static_cast<int>(-a_) + 1 : 0;

  // Peak of exp(-beta x - z/2) sits at z = 2 beta / alpha.
  const double z_peak = 2.0 * beta_ / alpha;
  const double x_peak = -std::log(z_peak / m.zeta2()) / alpha;
  log_offset_ = beta_ * x_peak + 0.5 * z_peak;

  support_ = truncate_support([this](double x) { return shape(x); }, std::max(x_peak, -0.999), -1.0, 60.0, 0.005);
  double peak_sq = 0.0;
  for (int k = 0; k <= 400; ++k) {
    const double x = support_.lo + (support_.hi - support_.lo) * k / 400.0;
    peak_sq = std::max(peak_sq, shape(x) * shape(x));
  }
  const double tol = 1e-10 * peak_sq * (support_.hi - support_.lo);
  const double integral = integrate_1d([this](double x) { return shape(x) * shape(x); }, support_.lo, support_.hi, tol);
  scaled_norm_ = 1.0 / std::sqrt(integral);
  log_norm_ = std::log(scaled_norm_) + log_offset_;
}

double MorseEigenstate::shape(double x) const {
  if (x <= -1.0) return 0.0;
  const double z = system_.zeta2() * std::exp(-system_.alpha() * x);
  // Confluent hypergeometric series 1F1(a; c; z), term by term.
  double term = 1.0;
  double sum = 1.0;
  if (terms_ > 0) {
    for (int k = 0; k + 1 < terms_; ++k) {
      term *= (a_ + k) / (c_ + k) * z / (k + 1);
      sum += term;
    }
  } else {
    constexpr int cap = 500;
    int k = 0;
    for (; k < cap; ++k) {
      term *= (a_ + k) / (c_ + k) * z / (k + 1);
      sum += term;
      if (std::abs(term) < 1e-16 * std::abs(sum)) break;
    }
    if (k == cap) throw ConvergenceError("Morse series did not converge within 500 terms", sum, std::abs(term));
  }
  return std::exp(-beta_ * x - 0.5 * z + log_offset_) * sum;
}

double MorseEigenstate::reduced(double x) const { return x <= -1.0 ? 0.0 : scaled_norm_ * shape(x); }

double MorseEigenstate::radial(double x) const {
  if (!(x > -1.0)) throw DomainError("Morse eigenfunction: x must exceed -1 (r > 0)");
  return reduced(x) / (1.0 + x);
}

double morse_eigenfunction(const MorseEigenstate& st, double x) { return st.radial(x); }

double morse_husimi(const MorseEigenstate& st, double Q, double P) {
  const double rho0 = st.system().rho0();
  const Support sup = st.support();
  const double lo = std::max({0.0, rho0 * (1.0 + sup.lo), std::abs(Q) - 12.0});
  const double hi = std::min(rho0 * (1.0 + sup.hi), std::abs(Q) + 12.0);
  if (!(lo < hi)) return 0.0;

  const std::complex<double> w(Q, P);
  const double inv_sqrt_rho0 = 1.0 / std::sqrt(rho0);
  auto kernel = [&](double rho) -> std::complex<double> {
    const std::complex<double> t = rho * w;
    if (std::abs(t) < 1e-3) {
      const std::complex<double> t2 = t * t;
      return std::exp(-0.5 * (rho * rho + Q * Q)) * rho * (1.0 + t2 / 6.0 + t2 * t2 / 120.0);
    }
    const std::complex<double> plus = std::exp(std::complex<double>(-0.5 * (rho - Q) * (rho - Q), P * rho));
    const std::complex<double> minus = std::exp(std::complex<double>(-0.5 * (rho + Q) * (rho + Q), -P * rho));
    return (plus - minus) / (2.0 * w);
  };
  auto wave = [&](double rho) { return st.reduced(rho / rho0 - 1.0) * inv_sqrt_rho0; };
  const double re = integrate_1d([&](double r) { return wave(r) * kernel(r).real(); }, lo, hi, 1e-13);
  const double im = integrate_1d([&](double r) { return wave(r) * kernel(r).imag(); }, lo, hi, 1e-13);
  const double scale = 2.0 * std::pow(kPi, -0.25);
  return scale * scale * (re * re + im * im);
}

HusimiField morse_husimi_field(const MorseEigenstate& st, const Grid1D& xgrid, const Grid1D& ygrid,
                               const AxisMap& map, NormMode mode) {
  FieldInfo info{"morse", "exact", st.nu(), {}};
  const MorseSystem& m = st.system();
  info.parameters = {{"alpha", m.alpha()},
                     {"depth_ev", m.depth_si() / constants::electron_volt},
                     {"r0_m", m.r0_si()},
                     {"mu_kg", m.mu_si()},
                     {"energy_ev", morse_eigenvalue_ev(st.nu(), m)},
                     {"series_terms", static_cast<double>(st.series_terms())},
                     {"support_x_lo", st.support().lo},
                     {"support_x_hi", st.support().hi},
                     {"truncation_rel", 1e-14},
                     {"quadrature_tol", 1e-13}};
  HusimiField raw(xgrid, ygrid,
                  evaluate_grid(xgrid, ygrid,
                                [&](double x, double y) { return morse_husimi(st, map.label_q(x), map.label_p(y)); }),
                  NormMode::paper, map, std::move(info));
  return mode == NormMode::paper ? raw : raw.normalized();
}

AxisMap morse_axes_ground(const MorseSystem& m) { return {m.rho0() / 250.0, 10.0, m.rho0() / 1.2, -2.0}; }

AxisMap morse_axes_first(const MorseSystem& m) { return {m.rho0() / 1000.0, 300.0, m.rho0() / 5.0, -5.0}; }

FigureGrid morse_figure_grid(int nu, const MorseSystem& m, Eigen::Index points) {
  switch (nu) {
    case 0:
      return {Grid1D(140.0, 340.0, points), Grid1D(1.3, 2.7, points), morse_axes_ground(m)};
    case 1:
      return {Grid1D(200.0, 1200.0, points), Grid1D(1.0, 9.0, points), morse_axes_first(m)};
    default:
      throw DomainError("Morse panel grids are defined only for nu = 0 and nu = 1");
  }
}

// ---------------------------------------------------------------------------
// Semiclassical Husimi

double harmonic_orbit_energy(int n, double omega, OrbitEnergy convention) {
  if (n < 0) throw DomainError("harmonic_orbit_energy: n must be >= 0");
  if (!(omega > 0.0)) throw DomainError("harmonic_orbit_energy: omega must be > 0");
  return convention == OrbitEnergy::coherent_matched ? omega * n : omega * (n + 0.5);
}

ClosedOrbit harmonic_orbit(double energy, double omega, Eigen::Index samples, double t_offset) {
  if (!(energy >= 0.0)) throw DomainError("harmonic_orbit: energy must be >= 0");
  if (!(omega > 0.0)) throw DomainError("harmonic_orbit: omega must be > 0");
  if (samples < 1) throw DomainError("harmonic_orbit: need at least one sample");
  ClosedOrbit orbit;
  orbit.period = 2.0 * kPi / omega;
  orbit.energy = energy;
  orbit.symmetry = OrbitSymmetry::planar;
  orbit.q.resize(samples);
  orbit.p.resize(samples);
  const double amplitude = std::sqrt(2.0 * energy / omega);
  for (Eigen::Index k = 0; k < samples; ++k) {
    const double t = t_offset + orbit.period * static_cast<double>(k) / static_cast<double>(samples);
    orbit.q[k] = amplitude * std::cos(omega * t);
    orbit.p[k] = -amplitude * std::sin(omega * t);
  }
  return orbit;
}

ClosedOrbit morse_orbit(double energy, const MorseSystem& m, Eigen::Index samples, double t_offset) {
  if (samples < 1) throw DomainError("morse_orbit: need at least one sample");
  ClosedOrbit orbit;
  orbit.period = morse_period(energy, m);
  orbit.energy = energy;
  orbit.symmetry = OrbitSymmetry::s_wave;
  orbit.q.resize(samples);
  orbit.p.resize(samples);
  for (Eigen::Index k = 0; k < samples; ++k) {
    const double t = t_offset + orbit.period * static_cast<double>(k) / static_cast<double>(samples);
    const PhaseState s = morse_label_point(t, energy, m);
    orbit.q[k] = s.q;
    orbit.p[k] = s.p;
  }
  return orbit;
}

ClosedOrbit closed_orbit(const ClassicalSystem& system, double energy, Eigen::Index samples) {
  if (const auto* h = std::get_if<HarmonicSystem>(&system)) {
    // Physical (q, p) with unit mass map to labels by Q = q sqrt(omega), P = p / sqrt(omega).
    return harmonic_orbit(energy, h->omega, samples);
  }
  throw DomainError("semiclassical Husimi needs a periodic orbit; the driven system has none");
}

HusimiField sc_husimi(const ClosedOrbit& orbit, const Grid1D& qgrid, const Grid1D& pgrid, const AxisMap& map,
                      NormMode mode) {
  const Eigen::Index samples = orbit.q.size();
  if (samples == 0 || orbit.p.size() != samples) throw DomainError("sc_husimi: orbit has no samples");
  const bool planar = orbit.symmetry == OrbitSymmetry::planar;
  auto average = [&](double x, double y) {
    const double qc = map.label_q(x);
    const double pc = map.label_p(y);
    double total = 0.0;
    for (Eigen::Index k = 0; k < samples; ++k) {
      const double q = orbit.q[k];
      const double p = orbit.p[k];
      if (planar) {
        total += std::exp(-0.5 * ((q - qc) * (q - qc) + (p - pc) * (p - pc)));
      } else {
        // Orientation average of exp(-|alpha - beta|^2) for radial labels:
        // exp(-A) sinh(W)/W with A = (q^2 + qc^2 + p^2 + pc^2)/2 and W = q qc + p pc.
        const double a = 0.5 * (q * q + qc * qc + p * p + pc * pc);
        const double w = std::abs(q * qc + p * pc);
        const double ratio = w == 0.0 ? 1.0 : -std::expm1(-2.0 * w) / (2.0 * w);
        total += std::exp(w - a) * ratio;
      }
    }
    return total / static_cast<double>(samples);
  };
  FieldInfo info{"", "semiclassical", 0,
                 {{"orbit_energy", orbit.energy}, {"orbit_period", orbit.period},
                  {"period_samples", static_cast<double>(samples)}}};
  HusimiField raw(qgrid, pgrid, evaluate_grid(qgrid, pgrid, average), NormMode::paper, map, std::move(info));
  if (mode == NormMode::paper) return raw;
  if (planar) {
    return HusimiField(qgrid, pgrid, raw.values() / (2.0 * kPi), NormMode::unit_integral, map, raw.info());
  }
  return raw.normalized();
}

HusimiField sc_husimi_harmonic(int n, const Grid1D& qgrid, const Grid1D& pgrid, NormMode mode,
                               Eigen::Index period_samples, OrbitEnergy convention) {
  const ClosedOrbit orbit = harmonic_orbit(harmonic_orbit_energy(n, 1.0, convention), 1.0, period_samples);
  const HusimiField field = sc_husimi(orbit, qgrid, pgrid, AxisMap{}, mode);
  FieldInfo info = field.info();
  info.system = "harmonic";
  info.level = n;
  info.parameters["hbar"] = 1.0;
  info.parameters["omega"] = 1.0;
  info.parameters["orbit_energy_eigenvalue_convention"] = convention == OrbitEnergy::eigenvalue ? 1.0 : 0.0;
  return HusimiField(qgrid, pgrid, field.values(), field.norm_mode(), field.axis_map(), std::move(info));
}

HusimiField sc_husimi_morse(int nu, const MorseSystem& m, const Grid1D& xgrid, const Grid1D& ygrid,
                            const AxisMap& map, NormMode mode, Eigen::Index period_samples,
                            OrbitSymmetry symmetry) {
  ClosedOrbit orbit = morse_orbit(morse_eigenvalue(nu, m), m, period_samples);
  orbit.symmetry = symmetry;
  const HusimiField field = sc_husimi(orbit, xgrid, ygrid, map, mode);
  FieldInfo info = field.info();
  info.system = "morse";
  info.level = nu;
  info.parameters["alpha"] = m.alpha();
  info.parameters["depth_ev"] = m.depth_si() / constants::electron_volt;
  info.parameters["r0_m"] = m.r0_si();
  info.parameters["mu_kg"] = m.mu_si();
  info.parameters["s_wave_average"] = symmetry == OrbitSymmetry::s_wave ? 1.0 : 0.0;
  return HusimiField(xgrid, ygrid, field.values(), field.norm_mode(), field.axis_map(), std::move(info));
}

}  // namespace scprod
