#pragma once

// Foundational numerics: special functions, adaptive 1-D quadrature and a
// fixed-step RK4 integrator. Everything here is a pure function of its
// arguments.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>

#include "scprod/errors.hpp"

namespace scprod {

/// Uniform sampling of a closed interval [lo, hi] with n >= 2 points.
class Grid1D {
 public:
  Grid1D(double lo, double hi, Eigen::Index n);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  Eigen::Index size() const noexcept { return n_; }
  double spacing() const noexcept { return (hi_ - lo_) / static_cast<double>(n_ - 1); }

  /// i-th node; the last node is exactly hi.
  double operator[](Eigen::Index i) const noexcept {
    return i == n_ - 1 ? hi_ : lo_ + static_cast<double>(i) * spacing();
  }

  Eigen::VectorXd nodes() const;

  /// Same interval, 2n-1 nodes (every original node is kept).
  Grid1D refined() const { return Grid1D(lo_, hi_, 2 * n_ - 1); }

  friend bool operator==(const Grid1D& a, const Grid1D& b) noexcept {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_ && a.n_ == b.n_;
  }

 private:
  double lo_;
  double hi_;
  Eigen::Index n_;
};

// ---------------------------------------------------------------------------
// Special functions

/// Gamma function for x > 0 (Lanczos, g = 7, nine coefficients).
/// Throws DomainError for x <= 0 and OverflowError once Gamma(x) exceeds
/// the double range (x > ~171.6); use log_gamma_fn there.
double gamma_fn(double x);

/// ln Gamma(x) for x > 0.
double log_gamma_fn(double x);

// ---------------------------------------------------------------------------
// Quadrature

struct QuadratureStats {
  double error_estimate = 0.0;
  long evaluations = 0;
};

namespace detail {

struct SimpsonState {
  double error = 0.0;
  long evaluations = 0;
  bool exhausted = false;
};

template <typename F>
double simpson_recurse(F& f, double a, double b, double fa, double fm, double fb, double whole,
                       double tol, int depth, SimpsonState& st) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  st.evaluations += 2;
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  // Roundoff floor: below this the difference carries no information.
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::abs(left + right);
  if (std::abs(delta) <= 15.0 * tol || std::abs(delta) <= floor) {
    st.error += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  if (depth <= 0 || !(a < lm && rm < b)) {
    st.exhausted = true;
    st.error += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, st) +
         simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, st);
}

}  // namespace detail

inline constexpr int kSimpsonMaxDepth = 40;

/// Adaptive Simpson estimate of the integral of f over [lo, hi] with
/// estimated absolute error <= tol. The interval is first cut into 16
/// panels so narrow features are not stepped over by the initial rule.
/// Throws ConvergenceError (carrying the best estimate and its error bound)
/// if the depth cap is reached before the tolerance is met.
template <typename F>
double integrate_1d(F&& f, double lo, double hi, double tol, QuadratureStats* stats = nullptr) {
  if (!(tol > 0.0)) throw DomainError("integrate_1d: tol must be positive");
  if (!std::isfinite(lo) || !std::isfinite(hi))
    throw DomainError("integrate_1d: bounds must be finite (truncate semi-infinite ranges)");
  if (lo == hi) return 0.0;
  if (hi < lo) return -integrate_1d(f, hi, lo, tol, stats);

  constexpr int panels = 16;
  const double width = (hi - lo) / panels;
  detail::SimpsonState st;
  double total = 0.0;
  double fa = f(lo);
  st.evaluations += 1;
  for (int k = 0; k < panels; ++k) {
    const double a = lo + k * width;
    const double b = (k == panels - 1) ? hi : lo + (k + 1) * width;
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double fb = f(b);
    st.evaluations += 2;
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    total += detail::simpson_recurse(f, a, b, fa, fm, fb, whole, tol / panels,
                                     kSimpsonMaxDepth, st);
    fa = fb;
  }
  if (stats != nullptr) {
    stats->error_estimate = st.error;
    stats->evaluations = st.evaluations;
  }
  if (st.exhausted && st.error > tol) {
    throw ConvergenceError("integrate_1d: subdivision depth cap reached", total, st.error);
  }
  if (!std::isfinite(total)) throw DomainError("integrate_1d: integrand is not finite");
  return total;
}

/// Interval on which |f| is at least rel * (largest |f| seen), found by
/// stepping outward from `peak` in increments of `step` and clamped to
/// [lo_limit, hi_limit]. A side stops only after three consecutive samples
/// fall below the threshold, so isolated zeros (nodes) do not end the scan.
struct Support {
  double lo;
  double hi;
};

template <typename F>
Support truncate_support(F&& magnitude, double peak, double lo_limit, double hi_limit, double step,
                         double rel = 1e-14) {
  if (!(step > 0.0)) throw DomainError("truncate_support: step must be positive");
  double peak_value = std::abs(magnitude(peak));
  auto scan = [&](double direction, double limit) {
    double x = peak;
    int quiet = 0;
    double first_quiet = peak;
    while (true) {
      const double next = x + direction * step;
      if ((direction > 0 && next >= limit) || (direction < 0 && next <= limit)) return limit;
      x = next;
      const double v = std::abs(magnitude(x));
      peak_value = std::max(peak_value, v);
      if (v < rel * peak_value) {
        if (quiet == 0) first_quiet = x;
        if (++quiet >= 3) return first_quiet;
      } else {
        quiet = 0;
      }
    }
  };
  const double hi = scan(+1.0, hi_limit);
  const double lo = scan(-1.0, lo_limit);
  return {lo, hi};
}

// ---------------------------------------------------------------------------
// Ordinary differential equations

using VectorField = std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>;

struct OdeProblem {
  VectorField rhs;
  Eigen::VectorXd y0;
  double t0 = 0.0;
  double t1 = 0.0;
  double h = 0.0;
};

/// Samples at t0, t0+h, ..., t0+N*h with N = round((t1-t0)/h).
/// states.col(k) is the state at times[k].
struct OdeSolution {
  Eigen::VectorXd times;
  Eigen::MatrixXd states;
};

template <typename Rhs, typename Vec>
Vec rk4_step(const Rhs& f, double t, const Vec& y, double h) {
  const Vec k1 = f(t, y);
  const Vec k2 = f(t + 0.5 * h, Vec(y + 0.5 * h * k1));
  const Vec k3 = f(t + 0.5 * h, Vec(y + 0.5 * h * k2));
  const Vec k4 = f(t + h, Vec(y + h * k3));
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Classical fixed-step RK4. Throws BlowupError on a non-finite state.
OdeSolution integrate_ode(const OdeProblem& problem);

/// Number of RK4 steps integrate_ode takes for the given span.
Eigen::Index ode_step_count(double t0, double t1, double h);

// ---------------------------------------------------------------------------
// Small helpers shared by several modules

struct LineFit {
  double slope;
  double intercept;
  double r2;
};

/// Ordinary least-squares line through (x, y). Requires >= 2 points.
LineFit fit_line(const Eigen::Ref<const Eigen::VectorXd>& x,
                 const Eigen::Ref<const Eigen::VectorXd>& y);

/// Calls body(i) for i in [0, n). Work is split into contiguous blocks over
/// the available hardware threads; each index is visited exactly once, so
/// output written per index is independent of scheduling.
void parallel_for(Eigen::Index n, const std::function<void(Eigen::Index)>& body);

}  // namespace scprod
