#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lgdelay/model.hpp"
#include "lgdelay/quasipoly.hpp"

namespace lgdelay {

struct CrossingSetOptions {
  /// Scan limit; raised automatically to the Cauchy root bound of F when that is larger.
  double omega_max = 10.0;
  int grid_points = 4000;
  double tangency_tol = 1e-12;
  /// Maximum distance of an endpoint angle from 0 or pi before a warning is issued.
  double angle_tol = 1e-3;
};

/// One connected component [a, b] of the crossing set. When half_open is set,
/// a = 0 is excluded and the indicator bits at a are meaningless (left at 0).
struct CrossingInterval {
  int n = 0;
  int j = 0;
  double a = 0.0;
  double b = 0.0;
  bool half_open = false;
  int delta1a = 0;
  int delta2a = 0;
  int delta1b = 0;
  int delta2b = 0;
};

std::vector<CrossingInterval> crossing_set(const QuasiPolynomial& q,
                                           const CrossingSetOptions& opts = {},
                                           std::vector<std::string>* warnings = nullptr);

struct TauPoint {
  double tau1 = 0.0;
  double tau2 = 0.0;
};

/// Delay pair on branch `sign` with winding offsets (j1, j2); tau2 uses the opposite sign.
TauPoint tau_curve(const QuasiPolynomial& q, double omega, int sign, int j1, int j2);
TauPoint tau_curve(const AngleData& a, int sign, int j1, int j2);

struct CurveSample {
  double omega = 0.0;
  double tau1 = 0.0;
  double tau2 = 0.0;
};

/// A maximal run of samples of one branch that stays in the closed positive quadrant.
/// `piece` numbers the runs of the same branch in order of increasing omega.
struct CurveSegment {
  int n = 0;
  int j = 0;
  int sign = 1;
  int j1 = 0;
  int j2 = 0;
  int piece = 0;
  bool unbounded = false;
  bool starts_at_a = false;
  bool ends_at_b = false;
  std::vector<CurveSample> samples;
};

struct Window {
  double tau1_max = 0.0;
  double tau2_max = 0.0;
};

struct SegmentOptions {
  int samples_per_interval = 400;
  double half_open_start = 1e-4;
};

std::vector<CurveSegment> generate_segments(const QuasiPolynomial& q,
                                            const std::vector<CrossingInterval>& intervals,
                                            Window window, const SegmentOptions& opts = {});

std::vector<CurveSegment> generate_segments(const QuasiPolynomial& q, Window window);

struct Link {
  std::size_t plus_id = 0;
  std::size_t minus_id = 0;
  char tag = 'a';
  double distance = 0.0;
};

/// Links between + and - segments of the same interval whose shared endpoint coincides.
std::vector<Link> connectivity(const std::vector<CurveSegment>& segs, double tol = 1e-6);

/// Links implied by the indicator bits, restricted to segments present in `segs`.
std::vector<Link> predicted_links(const std::vector<CurveSegment>& segs,
                                  const std::vector<CrossingInterval>& intervals);

/// Everything computed for one spatial mode.
struct CurveFamily {
  QuasiPolynomial q;
  std::vector<CrossingInterval> intervals;
  std::vector<CurveSegment> segments;
};

/// Families for modes 0..n_max; without n_max, stops before the first mode with an
/// empty crossing set.
std::vector<CurveFamily> build_families(const ModelParams& p, Window window,
                                        std::optional<int> n_max = std::nullopt,
                                        const CrossingSetOptions& copts = {},
                                        const SegmentOptions& sopts = {},
                                        std::vector<std::string>* warnings = nullptr);

}  // namespace lgdelay
