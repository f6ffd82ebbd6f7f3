#include "scprod/numkit.hpp"

#include <algorithm>
#include <array>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

namespace scprod {

Grid1D::Grid1D(double lo, double hi, Eigen::Index n) : lo_(lo), hi_(hi), n_(n) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
    throw DomainError("Grid1D: requires finite lo < hi");
  if (n < 2) throw DomainError("Grid1D: requires at least two samples");
  if (!(spacing() > 0.0)) throw DomainError("Grid1D: spacing underflows");
}

Eigen::VectorXd Grid1D::nodes() const {
  Eigen::VectorXd out(n_);
  for (Eigen::Index i = 0; i < n_; ++i) out[i] = (*this)[i];
  return out;
}

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeff = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// Lanczos series A(x) for the shifted argument z = x - 1.
double lanczos_sum(double z) {
  double a = kLanczosCoeff[0];
  for (std::size_t i = 1; i < kLanczosCoeff.size(); ++i) a += kLanczosCoeff[i] / (z + static_cast<double>(i));
  return a;
}

void require_positive(double x, const char* who) {
  if (std::isnan(x) || x <= 0.0) throw DomainError(std::string(who) + ": argument must be > 0");
}

}  // namespace

double gamma_fn(double x) {
  require_positive(x, "gamma_fn");
  if (x < 0.5) {
    // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1.0 - x));
  }
  if (std::isinf(x)) throw OverflowError("gamma_fn: overflow");
  const double z = x - 1.0;
  const double t = z + kLanczosG + 0.5;
  // t^(z+1/2) is split in two halves so the intermediate stays in range.
  const double half = std::pow(t, 0.5 * (z + 0.5));
  const double value = std::sqrt(2.0 * std::numbers::pi) * half * (half * std::exp(-t)) * lanczos_sum(z);
  if (!std::isfinite(value)) throw OverflowError("gamma_fn: result exceeds double range; use log_gamma_fn");
  return value;
}

double log_gamma_fn(double x) {
  require_positive(x, "log_gamma_fn");
  if (std::isinf(x)) return x;
  if (x < 0.5) {
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - log_gamma_fn(1.0 - x);
  }
  const double z = x - 1.0;
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(lanczos_sum(z));
}

Eigen::Index ode_step_count(double t0, double t1, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("integrate_ode: step h must be positive");
  if (!std::isfinite(t0) || !std::isfinite(t1) || t1 < t0)
    throw DomainError("integrate_ode: requires finite t0 <= t1");
  const double steps = (t1 - t0) / h;
  if (!std::isfinite(steps) || steps > 5e8) throw DomainError("integrate_ode: (t1-t0)/h too large");
  return static_cast<Eigen::Index>(std::llround(steps));
}

OdeSolution integrate_ode(const OdeProblem& problem) {
  if (!problem.rhs) throw DomainError("integrate_ode: missing right-hand side");
  if (problem.y0.size() == 0) throw DomainError("integrate_ode: empty state");
  if (!problem.y0.allFinite()) throw DomainError("integrate_ode: non-finite initial state");
  const Eigen::Index steps = ode_step_count(problem.t0, problem.t1, problem.h);

  OdeSolution out;
  out.times.resize(steps + 1);
  out.states.resize(problem.y0.size(), steps + 1);
  out.times[0] = problem.t0;
  out.states.col(0) = problem.y0;

  Eigen::VectorXd y = problem.y0;
  for (Eigen::Index k = 0; k < steps; ++k) {
    const double t = problem.t0 + static_cast<double>(k) * problem.h;
    y = rk4_step(problem.rhs, t, y, problem.h);
    if (!y.allFinite()) {
      throw BlowupError("integrate_ode: state became non-finite after t = " + std::to_string(t), t);
    }
    out.times[k + 1] = problem.t0 + static_cast<double>(k + 1) * problem.h;
    out.states.col(k + 1) = y;
  }
  return out;
}

LineFit fit_line(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXd>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("fit_line: need >= 2 paired points");
  const double mx = x.mean();
  const double my = y.mean();
  const Eigen::ArrayXd dx = x.array() - mx;
  const Eigen::ArrayXd dy = y.array() - my;
  const double sxx = (dx * dx).sum();
  const double sxy = (dx * dy).sum();
  const double syy = (dy * dy).sum();
  if (!(sxx > 0.0)) throw DomainError("fit_line: abscissae are all equal");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

void parallel_for(Eigen::Index n, const std::function<void(Eigen::Index)>& body) {
  if (n <= 0) return;
  const auto hw = static_cast<Eigen::Index>(std::max(1u, std::thread::hardware_concurrency()));
  const Eigen::Index workers = std::min(hw, n);
  if (workers == 1) {
    for (Eigen::Index i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (Eigen::Index w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        const Eigen::Index begin = n * w / workers;
        const Eigen::Index end = n * (w + 1) / workers;
        try {
          for (Eigen::Index i = begin; i < end; ++i) body(i);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace scprod
