#include "scprod/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace scprod {

namespace {

void require_comparable(const HusimiField& a, const HusimiField& b) {
  if (!(a.qgrid() == b.qgrid()) || !(a.pgrid() == b.pgrid()) || !(a.axis_map() == b.axis_map()))
    throw GridMismatchError("Husimi fields are sampled on different grids");
  if (a.norm_mode() != NormMode::unit_integral || b.norm_mode() != NormMode::unit_integral)
    throw GridMismatchError("Husimi fields must both be in unit-integral mode to be compared");
}

// Index hull of entries above rel * max(column); returns {-1, -1} if none.
std::pair<Eigen::Index, Eigen::Index> significant_hull(const Eigen::VectorXd& column, double rel) {
  const double peak = column.maxCoeff();
  Eigen::Index lo = -1, hi = -1;
  if (!(peak > 0.0)) return {lo, hi};
  for (Eigen::Index i = 0; i < column.size(); ++i) {
    if (column[i] > rel * peak) {
      if (lo < 0) lo = i;
      hi = i;
    }
  }
  return {lo, hi};
}

}  // namespace

DeviationProfile delta_q(const HusimiField& exact, const HusimiField& sc, int n) {
  require_comparable(exact, sc);
  const Eigen::Index j = exact.zero_momentum_column();
  const Eigen::VectorXd e = exact.values().col(j);
  const Eigen::VectorXd s = sc.values().col(j);

  DeviationProfile out{exact.qgrid(), exact.axis_map(), e - s, n, {0.0, 0.0}};
  const auto [elo, ehi] = significant_hull(e, 1e-12);
  const auto [slo, shi] = significant_hull(s, 1e-12);
  Eigen::Index lo = -1, hi = -1;
  if (elo >= 0) { lo = elo; hi = ehi; }
  if (slo >= 0) {
    lo = lo < 0 ? slo : std::min(lo, slo);
    hi = hi < 0 ? shi : std::max(hi, shi);
  }
  if (lo >= 0) out.support = {out.qgrid[lo], out.qgrid[hi]};
  else out.support = {out.qgrid.lo(), out.qgrid.lo()};
  return out;
}

double sq(const DeviationProfile& profile) {
  const Grid1D& g = profile.qgrid;
  if (profile.delta.size() != g.size()) throw GridMismatchError("profile does not match its grid");
  if (!profile.delta.allFinite()) throw DomainError("sq: profile is not finite");
  double total = 0.0;
  for (Eigen::Index i = 0; i + 1 < g.size(); ++i) {
    const double a = g[i];
    const double b = g[i + 1];
    if (b <= profile.support.lo || a >= profile.support.hi) continue;
    const double da = profile.delta[i];
    const double db = profile.delta[i + 1];
    auto line = [&](double x) { return std::abs(da + (db - da) * (x - a) / (b - a)); };
    const double tol = 1e-15 + 1e-12 * std::max(std::abs(da), std::abs(db)) * (b - a);
    if (da * db < 0.0) {
      const double root = a + (b - a) * da / (da - db);
      total += integrate_1d(line, a, root, tol) + integrate_1d(line, root, b, tol);
    } else {
      total += integrate_1d(line, a, b, tol);
    }
  }
  return total * std::abs(profile.map.q_scale);
}

double sq_full_plane(const HusimiField& exact, const HusimiField& sc) {
  require_comparable(exact, sc);
  const Eigen::MatrixXd diff = (exact.values() - sc.values()).cwiseAbs();
  return HusimiField(exact.qgrid(), exact.pgrid(), diff, NormMode::unit_integral, exact.axis_map()).label_integral();
}

DeviationProfile harmonic_deviation(int n, const Grid1D& qgrid, const Grid1D& pgrid, Eigen::Index period_samples,
                                    OrbitEnergy convention) {
  const HusimiField exact = husimi_ho_field(n, qgrid, pgrid, NormMode::unit_integral);
  const HusimiField semi = sc_husimi_harmonic(n, qgrid, pgrid, NormMode::unit_integral, period_samples, convention);
  return delta_q(exact, semi, n);
}

}  // namespace scprod
