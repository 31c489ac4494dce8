#pragma once

#include <string>
#include <vector>

#include "lgdelay/quasipoly.hpp"
#include "lgdelay/switching.hpp"

namespace lgdelay {

enum class Resonance { none, near, strong };

std::string to_string(Resonance r);

struct ResonanceInfo {
  Resonance flag = Resonance::none;
  double ratio = 0.0;     ///< omega1 / omega2
  int p = 0;              ///< closest p:q with 1 <= p, q <= 3
  int q = 0;
  double distance = 0.0;  ///< |ratio - p/q|
};

struct ResonanceBands {
  double strong = 1e-3;
  double near = 1e-2;
};

/// Intersection of two switching curves; omega1 < omega2 after construction.
struct DoubleHopfPoint {
  double tau1_star = 0.0;
  double tau2_star = 0.0;
  double omega1 = 0.0;
  double omega2 = 0.0;
  int n1 = 0;
  int n2 = 0;
  ResonanceInfo resonance;
  bool refined = false;
  double residual = 0.0;  ///< max of the two |D| values
};

ResonanceInfo resonance_check(double omega1, double omega2, const ResonanceBands& bands = {});
ResonanceInfo resonance_check(const DoubleHopfPoint& pt, const ResonanceBands& bands = {});

struct IntersectOptions {
  int max_newton_iterations = 50;
  double newton_tol = 1e-13;
  /// Polyline crossings this close to a shared endpoint of linked segments are skipped.
  double junction_tol = 1e-6;
  /// Refined points of one mode with frequencies this close are the same root pair.
  double same_root_tol = 1e-7;
  ResonanceBands bands;
};

/// Transversal crossings of two sampled curves, each refined by damped Newton on
/// D_{na}(i w1) = D_{nb}(i w2) = 0 in (tau1, tau2, w1, w2).
std::vector<DoubleHopfPoint> intersect(const QuasiPolynomial& qa, const CurveSegment& a,
                                       const QuasiPolynomial& qb, const CurveSegment& b,
                                       const IntersectOptions& opts = {});

/// All double-Hopf candidates among the segments of the given families that lie in
/// the window, sorted by (tau1, tau2) and deduplicated.
std::vector<DoubleHopfPoint> find_double_hopf(const std::vector<CurveFamily>& families, Window window,
                                              const IntersectOptions& opts = {});

/// True when some point at distance `radius` from pt is stable by root accounting.
bool on_stability_boundary(const std::vector<CurveFamily>& families, const DoubleHopfPoint& pt,
                           double radius = 1e-3, int probes = 16);

}  // namespace lgdelay
