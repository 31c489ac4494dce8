#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lgdelay/model.hpp"

namespace lgdelay {

enum class HistoryKind {
  constant_offset,  ///< E* + (amp_u, amp_v), flat in x and t
  cosine_profile,   ///< E* + (amp_u, amp_v) cos(mode x / l), constant in t
  random_smooth,    ///< E* plus a seeded sum of low cosine modes oscillating in t
};

struct HistorySpec {
  HistoryKind kind = HistoryKind::constant_offset;
  double amp_u = 0.01;
  double amp_v = 0.01;
  int mode = 1;
  std::uint64_t seed = 0;
};

std::string to_string(HistoryKind k);

struct SimConfig {
  ModelParams params;
  double tau1 = 0.0;
  double tau2 = 0.0;
  int grid_points = 64;
  double dt = 0.01;
  double t_end = 6000.0;
  double t_transient = 2000.0;
  HistorySpec history;
  /// Trajectory records are kept every output_stride steps once t >= t_transient.
  int output_stride = 5;
  /// Full-field snapshots every snapshot_stride steps after the transient; 0 disables.
  int snapshot_stride = 0;
};

/// Throws parameter_error for a violated step-size, horizon or grid constraint.
void validate(const SimConfig& cfg);

/// Largest dt allowed by the explicit diffusion bound 0.9 dx^2 / (2 max(d1, d2)).
double diffusion_dt_limit(const ModelParams& p, int grid_points);

/// Initial function for t <= 0, with any random coefficients drawn once.
class HistoryFunction {
 public:
  HistoryFunction() = default;
  HistoryFunction(const HistorySpec& spec, const ModelParams& p);
  void eval(double x, double t, double& u, double& v) const;

 private:
  HistorySpec spec_;
  double u_star_ = 0.0;
  double v_star_ = 0.0;
  double l_ = 1.0;
  // random_smooth: per mode k, amplitude, frequency and phase for u then v.
  std::vector<double> coeffs_;
};

/// Grid values plus a ring buffer of past states and their time derivatives.
struct SimState {
  HistoryFunction history;
  int M = 0;
  double dx = 0.0;
  long long step = 0;
  double t = 0.0;
  std::vector<double> u;
  std::vector<double> v;
  int capacity = 0;
  std::vector<double> ring_u;
  std::vector<double> ring_v;
  std::vector<double> ring_du;
  std::vector<double> ring_dv;
  std::vector<double> work;  ///< RK4 stage storage
};

SimState initial_state(const SimConfig& cfg);

/// One RK4 step. Also stores dy/dt at the start of the step in the ring buffer.
/// Throws simulation_error on positivity loss or non-finite values.
void step(SimState& state, const SimConfig& cfg);

/// Delayed value u(x_i, t - tau) read from the buffer or the initial function.
double lagged_u(const SimState& state, const SimConfig& cfg, int node, double t);

struct TrajectoryRecord {
  double t = 0.0;
  double u0 = 0.0;
  double v0 = 0.0;
  double u0_lag = 0.0;  ///< u(0, t - tau1)
  double du0 = 0.0;
  double dv0 = 0.0;
};

struct Snapshot {
  double t = 0.0;
  std::vector<double> u;
  std::vector<double> v;
};

struct Trajectory {
  double record_dt = 0.0;
  std::vector<TrajectoryRecord> records;
  std::vector<Snapshot> snapshots;
};

Trajectory run(const SimConfig& cfg);

/// Run to time t_final and return the final fields (used for convergence studies).
SimState integrate_to(const SimConfig& cfg, double t_final);

enum class Section { v_equals_vstar, du_zero };

std::string to_string(Section s);

enum class Attractor { equilibrium, periodic, torus2, torus3_or_chaos, withheld };

std::string to_string(Attractor a);

struct SectionPoint {
  double t = 0.0;
  double x = 0.0;  ///< u(0, t)
  double y = 0.0;  ///< u(0, t - tau1)
  double residual = 0.0;
};

struct PoincareResult {
  Section section = Section::v_equals_vstar;
  std::vector<SectionPoint> points;
  /// max - min of u(0, t) and v(0, t) over the recorded trajectory.
  double spread = 0.0;
  Attractor classification = Attractor::withheld;
  std::string message;
};

struct ClassifierOptions {
  double equilibrium_spread = 1e-6;
  std::size_t min_hits = 20;
  double cluster_radius = 1e-3;
  std::size_t max_clusters = 8;
  /// Closed-curve test on points ordered by angle about their centroid.
  double max_gap_ratio = 25.0;
  double min_hole_fraction = 0.25;
  double roughness_factor = 6.0;
};

/// Upward crossings of v(0,t) = v* or downward zeros of du(0,t)/dt, located on a
/// cubic through four consecutive records. The result is classified.
PoincareResult poincare(const Trajectory& traj, const Equilibrium& e, Section section,
                        const ClassifierOptions& opts = {});

Attractor classify(const PoincareResult& pr, const ClassifierOptions& opts = {});

}  // namespace lgdelay
