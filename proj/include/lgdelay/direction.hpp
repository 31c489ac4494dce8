#pragma once

#include <cstddef>
#include <vector>

#include "lgdelay/model.hpp"
#include "lgdelay/quasipoly.hpp"
#include "lgdelay/switching.hpp"

namespace lgdelay {

/// Partial derivatives of D at lambda = i omega on a switching curve:
/// R0 + i I0 = dD/dlambda, Rl + i Il = dD/dtau_l.
struct CrossingData {
  double omega = 0.0;
  double tau1 = 0.0;
  double tau2 = 0.0;
  double R0 = 0.0, I0 = 0.0;
  double R1 = 0.0, I1 = 0.0;
  double R2 = 0.0, I2 = 0.0;
  /// det of the implicit-function matrix, (R0^2 + I0^2) / (R1 I2 - R2 I1).
  double delta = 0.0;
  bool two_more_on_right = false;
  double residual = 0.0;
};

struct PartialsOptions {
  double residual_tol = 1e-6;
  double multiple_root_tol = 1e-14;
};

/// Throws off_curve_error when |D(i omega)| exceeds residual_tol and
/// multiple_root_error when R0^2 + I0^2 is below multiple_root_tol.
CrossingData partials(const QuasiPolynomial& q, double omega, double tau1, double tau2,
                      const PartialsOptions& opts = {});

enum class RightRegionEffect { gains_two, loses_two };

/// Effect on the region to the right of a branch (walking with increasing omega).
/// Throws numerical_error if the sign of delta disagrees with the branch sign.
RightRegionEffect crossing_direction(const CrossingData& cd, int sign);

enum class Crossing : int { loses_two = -2, tangent = 0, gains_two = 2 };

constexpr double kTransversalityTol = 1e-10;

/// Change in the number of roots with positive real part when moving along (l1, l2).
Crossing direction_along(const CrossingData& cd, double l1, double l2,
                         double tol = kTransversalityTol);

/// The scalar whose sign decides direction_along.
double direction_indicator(const CrossingData& cd, double l1, double l2);

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// (d tau1/d omega, d tau2/d omega) along the curve.
Vec2 curve_tangent(const CrossingData& cd);
/// (d tau2/d omega, -d tau1/d omega), pointing into the right region.
Vec2 right_normal(const CrossingData& cd);

/// A transversal intersection of a straight path with a switching curve.
struct PathCrossing {
  double s = 0.0;  ///< path parameter in (0, 1)
  int n = 0;
  std::size_t segment = 0;
  int sign = 1;
  double omega = 0.0;
  double tau1 = 0.0;
  double tau2 = 0.0;
  int change = 0;  ///< +2 or -2
};

struct PathOptions {
  /// Two crossings closer than this (in tau distance) mean the path runs through
  /// a curve intersection.
  double coincidence_tol = 1e-7;
  /// A target closer than this to a curve counts as lying on it.
  double on_curve_tol = 1e-9;
};

/// Crossings of the segment from (0,0) to target with every curve of every family,
/// ordered by path parameter. Throws path_error on curve intersections, tangency or a
/// target lying on a curve.
std::vector<PathCrossing> path_crossings(const std::vector<CurveFamily>& families, Vec2 target,
                                         const PathOptions& opts = {});

/// Net number of roots with positive real part at target (zero at the origin).
int unstable_root_count(const std::vector<CurveFamily>& families, Vec2 target,
                        const PathOptions& opts = {});

/// True iff the equilibrium is locally stable at (tau1, tau2), by root accounting over
/// modes 0..n_max.
bool stable_region_check(const ModelParams& p, double tau1, double tau2, int n_max);
bool stable_region_check(const std::vector<CurveFamily>& families, double tau1, double tau2);

}  // namespace lgdelay
