#pragma once

// Deviation between exact and semiclassical Husimi fields along the P = 0
// slice, and its integrated size.

#include <Eigen/Core>

#include "scprod/husimi.hpp"

namespace scprod {

struct DeviationProfile {
  Grid1D qgrid;
  AxisMap map;
  Eigen::VectorXd delta;  ///< exact - semiclassical at each q node
  int n = 0;
  Support support{0.0, 0.0};  ///< axis-coordinate range used by sq()
};

/// Pointwise difference on the P = 0 column. Both fields must share grids
/// and axis map and be in unit-integral mode; otherwise GridMismatchError.
/// The support is the hull of the nodes where either field exceeds 1e-12 of
/// its own peak along the slice.
DeviationProfile delta_q(const HusimiField& exact, const HusimiField& sc, int n);

/// Integral of |delta| over the support in label units, taken cell by cell
/// on the linear interpolant (each cell split at its sign change).
double sq(const DeviationProfile& profile);

/// Trapezoid integral of |exact - sc| over the whole label plane.
double sq_full_plane(const HusimiField& exact, const HusimiField& sc);

/// Exact and semiclassical harmonic fields for level n, compared on the P = 0 slice.
DeviationProfile harmonic_deviation(int n, const Grid1D& qgrid, const Grid1D& pgrid,
                                    Eigen::Index period_samples = 2048,
                                    OrbitEnergy convention = OrbitEnergy::coherent_matched);

}  // namespace scprod
