#include "lgdelay/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "lgdelay/errors.hpp"

namespace lgdelay {

std::string to_string(HistoryKind k) {
  switch (k) {
    case HistoryKind::constant_offset:
      return "constant";
    case HistoryKind::cosine_profile:
      return "cosine";
    case HistoryKind::random_smooth:
      return "random";
  }
  return "constant";
}

std::string to_string(Section s) { return s == Section::v_equals_vstar ? "v=v*" : "du=0"; }

std::string to_string(Attractor a) {
  switch (a) {
    case Attractor::equilibrium:
      return "equilibrium";
    case Attractor::periodic:
      return "periodic";
    case Attractor::torus2:
      return "torus2";
    case Attractor::torus3_or_chaos:
      return "torus3-or-chaos";
    case Attractor::withheld:
      return "withheld";
  }
  return "withheld";
}

namespace {

constexpr int kRandomModes = 4;

/// Uniform [0,1) from raw generator bits, identical on every platform.
double unit_draw(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

}  // namespace

HistoryFunction::HistoryFunction(const HistorySpec& spec, const ModelParams& p)
    : spec_(spec), l_(p.l) {
  const Equilibrium e = equilibrium(p);
  u_star_ = e.u_star;
  v_star_ = e.v_star;
  if (spec.kind == HistoryKind::random_smooth) {
    std::mt19937_64 g(spec.seed);
    coeffs_.resize(2 * kRandomModes * 3);
    for (int k = 0; k < 2 * kRandomModes; ++k) {
      const int mode = k % kRandomModes;
      coeffs_[3 * k] = (2.0 * unit_draw(g) - 1.0) / (mode + 1) / 2.0;
      coeffs_[3 * k + 1] = 0.2 + 0.8 * unit_draw(g);
      coeffs_[3 * k + 2] = 2.0 * M_PI * unit_draw(g);
    }
  }
}

void HistoryFunction::eval(double x, double t, double& u, double& v) const {
  switch (spec_.kind) {
    case HistoryKind::constant_offset:
      u = u_star_ + spec_.amp_u;
      v = v_star_ + spec_.amp_v;
      return;
    case HistoryKind::cosine_profile: {
      const double c = std::cos(spec_.mode * x / l_);
      u = u_star_ + spec_.amp_u * c;
      v = v_star_ + spec_.amp_v * c;
      return;
    }
    case HistoryKind::random_smooth: {
      double su = 0.0, sv = 0.0;
      for (int k = 0; k < kRandomModes; ++k) {
        const double cx = std::cos(k * x / l_);
        const double* cu = &coeffs_[3 * k];
        const double* cv = &coeffs_[3 * (k + kRandomModes)];
        su += cu[0] * cx * std::cos(cu[1] * t + cu[2]);
        sv += cv[0] * cx * std::cos(cv[1] * t + cv[2]);
      }
      u = u_star_ + spec_.amp_u * su;
      v = v_star_ + spec_.amp_v * sv;
      return;
    }
  }
}

double diffusion_dt_limit(const ModelParams& p, int grid_points) {
  const double dx = p.l * M_PI / (grid_points - 1);
  return 0.9 * dx * dx / (2.0 * std::max(p.d1, p.d2));
}

void validate(const SimConfig& cfg) {
  validate(cfg.params);
  if (cfg.grid_points < 3) throw parameter_error("grid_points must be at least 3");
  if (!(cfg.dt > 0.0)) throw parameter_error("dt must be positive");
  if (cfg.tau1 < 0.0 || cfg.tau2 < 0.0) throw parameter_error("delays must be non-negative");
  for (double tau : {cfg.tau1, cfg.tau2}) {
    if (tau > 0.0 && !(cfg.dt < tau / 10.0)) {
      throw parameter_error("dt must be below one tenth of every positive delay");
    }
  }
  if (cfg.dt > diffusion_dt_limit(cfg.params, cfg.grid_points)) {
    throw parameter_error("dt exceeds the explicit diffusion limit " +
                          std::to_string(diffusion_dt_limit(cfg.params, cfg.grid_points)));
  }
  if (!(cfg.t_end > 0.0)) throw parameter_error("t_end must be positive");
  if (!(cfg.t_transient >= 0.0 && cfg.t_transient < cfg.t_end)) {
    throw parameter_error("t_transient must lie in [0, t_end)");
  }
  if (cfg.output_stride < 1) throw parameter_error("output_stride must be at least 1");
  if (cfg.snapshot_stride < 0) throw parameter_error("snapshot_stride must be non-negative");
  const Equilibrium e = equilibrium(cfg.params);
  const double bound_u = std::abs(cfg.history.amp_u) * (cfg.history.kind == HistoryKind::random_smooth ? 2.0 : 1.0);
  const double bound_v = std::abs(cfg.history.amp_v) * (cfg.history.kind == HistoryKind::random_smooth ? 2.0 : 1.0);
  if (!(bound_u < e.u_star && bound_v < e.v_star)) {
    throw parameter_error("history amplitude would make the initial function non-positive");
  }
}

SimState initial_state(const SimConfig& cfg) {
  validate(cfg);
  SimState s;
  s.history = HistoryFunction(cfg.history, cfg.params);
  s.M = cfg.grid_points;
  s.dx = cfg.params.l * M_PI / (s.M - 1);
  s.u.resize(s.M);
  s.v.resize(s.M);
  for (int i = 0; i < s.M; ++i) {
    s.history.eval(i * s.dx, 0.0, s.u[i], s.v[i]);
  }
  s.capacity = static_cast<int>(std::ceil(std::max(cfg.tau1, cfg.tau2) / cfg.dt)) + 4;
  const std::size_t n = static_cast<std::size_t>(s.capacity) * s.M;
  s.ring_u.assign(n, 0.0);
  s.ring_v.assign(n, 0.0);
  s.ring_du.assign(n, 0.0);
  s.ring_dv.assign(n, 0.0);
  std::copy(s.u.begin(), s.u.end(), s.ring_u.begin());
  std::copy(s.v.begin(), s.v.end(), s.ring_v.begin());
  s.work.assign(10 * static_cast<std::size_t>(s.M), 0.0);
  return s;
}

namespace {

/// How to read a field at time t - tau: from the initial function, from the stage
/// values themselves (tau = 0), or by Hermite interpolation between two ring slots.
struct LagRead {
  enum Kind { history, current, buffer } kind = buffer;
  double when = 0.0;
  std::size_t slot0 = 0, slot1 = 0;
  double h00 = 0, h10 = 0, h01 = 0, h11 = 0;
};

LagRead plan_lag(const SimState& s, const SimConfig& cfg, double t_eval, double tau) {
  LagRead r;
  if (tau == 0.0) {
    r.kind = LagRead::current;
    return r;
  }
  const double when = t_eval - tau;
  r.when = when;
  if (when <= 0.0) {
    r.kind = LagRead::history;
    return r;
  }
  const double x = when / cfg.dt;
  long long k = static_cast<long long>(std::floor(x));
  double sfrac = x - static_cast<double>(k);
  if (k >= s.step) {
    // Only reachable through round-off at the newest sample.
    k = s.step - 1;
    sfrac = 1.0;
  }
  if (k < s.step - s.capacity + 2) {
    throw simulation_error("delay buffer underflow", s.t);
  }
  r.slot0 = static_cast<std::size_t>(k % s.capacity) * s.M;
  r.slot1 = static_cast<std::size_t>((k + 1) % s.capacity) * s.M;
  const double s2 = sfrac * sfrac, s3 = s2 * sfrac;
  r.h00 = 2 * s3 - 3 * s2 + 1;
  r.h10 = (s3 - 2 * s2 + sfrac) * cfg.dt;
  r.h01 = -2 * s3 + 3 * s2;
  r.h11 = (s3 - s2) * cfg.dt;
  return r;
}

inline double read_buffer(const std::vector<double>& y, const std::vector<double>& dy, const LagRead& r,
                          int i) {
  return r.h00 * y[r.slot0 + i] + r.h10 * dy[r.slot0 + i] + r.h01 * y[r.slot1 + i] +
         r.h11 * dy[r.slot1 + i];
}

void rhs(const SimState& s, const SimConfig& cfg, double t_eval, const double* u, const double* v,
         double* du, double* dv) {
  const ModelParams& p = cfg.params;
  const LagRead l1 = plan_lag(s, cfg, t_eval, cfg.tau1);
  const LagRead l2 = plan_lag(s, cfg, t_eval, cfg.tau2);
  const int M = s.M;
  const double inv_dx2 = 1.0 / (s.dx * s.dx);
  const double q = 1.0 - p.m;
  for (int i = 0; i < M; ++i) {
    double u1, u2, v2, hu, hv;
    switch (l1.kind) {
      case LagRead::current:
        u1 = u[i];
        break;
      case LagRead::history:
        s.history.eval(i * s.dx, l1.when, u1, hv);
        break;
      default:
        u1 = read_buffer(s.ring_u, s.ring_du, l1, i);
    }
    switch (l2.kind) {
      case LagRead::current:
        u2 = u[i];
        v2 = v[i];
        break;
      case LagRead::history:
        s.history.eval(i * s.dx, l2.when, hu, hv);
        u2 = hu;
        v2 = hv;
        break;
      default:
        u2 = read_buffer(s.ring_u, s.ring_du, l2, i);
        v2 = read_buffer(s.ring_v, s.ring_dv, l2, i);
    }
    if (u2 < 1e-12) {
      throw simulation_error("Leslie-Gower denominator vanished", t_eval);
    }
    // Ghost nodes mirror the first interior node: zero flux at both ends.
    const int il = i == 0 ? 1 : i - 1;
    const int ir = i == M - 1 ? M - 2 : i + 1;
    const double lap_u = (u[il] - 2.0 * u[i] + u[ir]) * inv_dx2;
    const double lap_v = (v[il] - 2.0 * v[i] + v[ir]) * inv_dx2;
    du[i] = p.d1 * lap_u + p.r1 * u[i] * (1.0 - u1 / p.K) - p.a * q * u[i] * v[i];
    dv[i] = p.d2 * lap_v + p.r2 * v[i] * (1.0 - v2 / (p.gamma * q * u2));
  }
}

}  // namespace

void step(SimState& s, const SimConfig& cfg) {
  const int M = s.M;
  const double dt = cfg.dt;
  const double t = static_cast<double>(s.step) * dt;
  double* w = s.work.data();
  double *k1u = w, *k1v = w + M, *k2u = w + 2 * M, *k2v = w + 3 * M, *k3u = w + 4 * M;
  double *k3v = w + 5 * M, *k4u = w + 6 * M, *k4v = w + 7 * M, *yu = w + 8 * M, *yv = w + 9 * M;

  rhs(s, cfg, t, s.u.data(), s.v.data(), k1u, k1v);
  const std::size_t cur = static_cast<std::size_t>(s.step % s.capacity) * M;
  std::copy(k1u, k1u + M, s.ring_du.begin() + cur);
  std::copy(k1v, k1v + M, s.ring_dv.begin() + cur);

  for (int i = 0; i < M; ++i) {
    yu[i] = s.u[i] + 0.5 * dt * k1u[i];
    yv[i] = s.v[i] + 0.5 * dt * k1v[i];
  }
  rhs(s, cfg, t + 0.5 * dt, yu, yv, k2u, k2v);
  for (int i = 0; i < M; ++i) {
    yu[i] = s.u[i] + 0.5 * dt * k2u[i];
    yv[i] = s.v[i] + 0.5 * dt * k2v[i];
  }
  rhs(s, cfg, t + 0.5 * dt, yu, yv, k3u, k3v);
  for (int i = 0; i < M; ++i) {
    yu[i] = s.u[i] + dt * k3u[i];
    yv[i] = s.v[i] + dt * k3v[i];
  }
  rhs(s, cfg, t + dt, yu, yv, k4u, k4v);

  s.step += 1;
  s.t = static_cast<double>(s.step) * dt;
  const std::size_t nxt = static_cast<std::size_t>(s.step % s.capacity) * M;
  for (int i = 0; i < M; ++i) {
    s.u[i] += dt / 6.0 * (k1u[i] + 2.0 * k2u[i] + 2.0 * k3u[i] + k4u[i]);
    s.v[i] += dt / 6.0 * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]);
    if (!std::isfinite(s.u[i]) || !std::isfinite(s.v[i])) {
      throw simulation_error("non-finite value", s.t);
    }
    if (s.u[i] <= 0.0 || s.v[i] <= 0.0) {
      throw simulation_error("loss of positivity", s.t);
    }
    s.ring_u[nxt + i] = s.u[i];
    s.ring_v[nxt + i] = s.v[i];
  }
}

double lagged_u(const SimState& s, const SimConfig& cfg, int node, double t) {
  const LagRead r = plan_lag(s, cfg, t, cfg.tau1);
  switch (r.kind) {
    case LagRead::current: {
      if (t == s.t) return s.u[node];
      const long long k = std::llround(t / cfg.dt);
      return s.ring_u[static_cast<std::size_t>(k % s.capacity) * s.M + node];
    }
    case LagRead::history: {
      double u, v;
      s.history.eval(node * s.dx, r.when, u, v);
      return u;
    }
    default:
      return read_buffer(s.ring_u, s.ring_du, r, node);
  }
}

namespace {

long long steps_for(double t, double dt) {
  const double n = t / dt;
  const long long k = std::llround(n);
  if (std::abs(n - static_cast<double>(k)) > 1e-6) {
    throw parameter_error("time " + std::to_string(t) + " is not a whole number of steps");
  }
  return k;
}

}  // namespace

SimState integrate_to(const SimConfig& cfg, double t_final) {
  SimState s = initial_state(cfg);
  const long long n = steps_for(t_final, cfg.dt);
  while (s.step < n) step(s, cfg);
  return s;
}

Trajectory run(const SimConfig& cfg) {
  SimState s = initial_state(cfg);
  const long long n_end = steps_for(cfg.t_end, cfg.dt);
  const long long n_tr = static_cast<long long>(std::ceil(cfg.t_transient / cfg.dt - 1e-9));
  Trajectory traj;
  traj.record_dt = cfg.dt * cfg.output_stride;
  traj.records.reserve(static_cast<std::size_t>((n_end - n_tr) / cfg.output_stride + 1));
  while (s.step < n_end) {
    const long long n = s.step;
    step(s, cfg);
    if (n < n_tr) continue;
    const double t = static_cast<double>(n) * cfg.dt;
    const std::size_t slot = static_cast<std::size_t>(n % s.capacity) * s.M;
    if ((n - n_tr) % cfg.output_stride == 0) {
      TrajectoryRecord r;
      r.t = t;
      r.u0 = s.ring_u[slot];
      r.v0 = s.ring_v[slot];
      r.du0 = s.ring_du[slot];
      r.dv0 = s.ring_dv[slot];
      r.u0_lag = lagged_u(s, cfg, 0, t);
      traj.records.push_back(r);
    }
    if (cfg.snapshot_stride > 0 && (n - n_tr) % cfg.snapshot_stride == 0) {
      Snapshot snap;
      snap.t = t;
      snap.u.assign(s.ring_u.begin() + slot, s.ring_u.begin() + slot + s.M);
      snap.v.assign(s.ring_v.begin() + slot, s.ring_v.begin() + slot + s.M);
      traj.snapshots.push_back(std::move(snap));
    }
  }
  return traj;
}

namespace {

/// Lagrange cubic through values at local abscissae 0, 1, 2, 3.
double cubic4(const double y[4], double s) {
  const double a = s, b = s - 1.0, c = s - 2.0, d = s - 3.0;
  return -y[0] * b * c * d / 6.0 + y[1] * a * c * d / 2.0 - y[2] * a * b * d / 2.0 +
         y[3] * a * b * c / 6.0;
}

}  // namespace

PoincareResult poincare(const Trajectory& traj, const Equilibrium& e, Section section,
                        const ClassifierOptions& opts) {
  PoincareResult pr;
  pr.section = section;
  const auto& rec = traj.records;
  if (!rec.empty()) {
    auto [umin, umax] = std::minmax_element(rec.begin(), rec.end(), [](auto& x, auto& y) { return x.u0 < y.u0; });
    auto [vmin, vmax] = std::minmax_element(rec.begin(), rec.end(), [](auto& x, auto& y) { return x.v0 < y.v0; });
    pr.spread = std::max(umax->u0 - umin->u0, vmax->v0 - vmin->v0);
  }
  auto g = [&](const TrajectoryRecord& r) {
    return section == Section::v_equals_vstar ? r.v0 - e.v_star : r.du0;
  };
  const std::size_t n = rec.size();
  for (std::size_t k = 0; n >= 4 && k + 1 < n; ++k) {
    const double ga = g(rec[k]), gb = g(rec[k + 1]);
    const bool hit = section == Section::v_equals_vstar ? (ga < 0.0 && gb >= 0.0) : (ga > 0.0 && gb <= 0.0);
    if (!hit) continue;
    const std::size_t i0 = std::min(k > 0 ? k - 1 : 0, n - 4);
    double yg[4], yx[4], yy[4];
    for (int j = 0; j < 4; ++j) {
      yg[j] = g(rec[i0 + j]);
      yx[j] = rec[i0 + j].u0;
      yy[j] = rec[i0 + j].u0_lag;
    }
    double lo = static_cast<double>(k - i0), hi = lo + 1.0;
    const double glo = cubic4(yg, lo);
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if ((cubic4(yg, mid) > 0.0) == (glo > 0.0)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const double sroot = std::abs(cubic4(yg, lo)) < std::abs(cubic4(yg, hi)) ? lo : hi;
    SectionPoint sp;
    sp.t = rec[i0].t + sroot * traj.record_dt;
    sp.x = cubic4(yx, sroot);
    sp.y = cubic4(yy, sroot);
    sp.residual = std::abs(cubic4(yg, sroot));
    pr.points.push_back(sp);
  }
  pr.classification = classify(pr, opts);
  if (pr.classification == Attractor::withheld) {
    pr.message = "only " + std::to_string(pr.points.size()) + " section hits; classification withheld";
  }
  return pr;
}

Attractor classify(const PoincareResult& pr, const ClassifierOptions& opts) {
  if (pr.spread < opts.equilibrium_spread) {
    return Attractor::equilibrium;
  }
  const auto& pts = pr.points;
  if (pts.size() < opts.min_hits) {
    return Attractor::withheld;
  }
  std::vector<std::pair<double, double>> centers;
  for (const SectionPoint& p : pts) {
    const bool found = std::any_of(centers.begin(), centers.end(), [&](const auto& c) {
      return std::hypot(p.x - c.first, p.y - c.second) < opts.cluster_radius;
    });
    if (!found) {
      centers.emplace_back(p.x, p.y);
      if (centers.size() > opts.max_clusters) break;
    }
  }
  if (centers.size() <= opts.max_clusters) {
    return Attractor::periodic;
  }

  // Closed-curve test: order points by angle about the centroid, then require a
  // hole in the middle, no large gaps and a radius that varies smoothly with angle.
  double cx = 0.0, cy = 0.0;
  for (const SectionPoint& p : pts) {
    cx += p.x;
    cy += p.y;
  }
  cx /= pts.size();
  cy /= pts.size();
  std::vector<std::pair<double, double>> polar;  // (angle, radius)
  polar.reserve(pts.size());
  for (const SectionPoint& p : pts) {
    polar.emplace_back(std::atan2(p.y - cy, p.x - cx), std::hypot(p.x - cx, p.y - cy));
  }
  std::sort(polar.begin(), polar.end());
  const std::size_t m = polar.size();
  std::vector<double> steps(m), radii(m);
  double tv = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& a = polar[i];
    const auto& b = polar[(i + 1) % m];
    const double ax = a.second * std::cos(a.first), ay = a.second * std::sin(a.first);
    const double bx = b.second * std::cos(b.first), by = b.second * std::sin(b.first);
    steps[i] = std::hypot(bx - ax, by - ay);
    radii[i] = a.second;
    tv += std::abs(b.second - a.second);
  }
  auto median = [](std::vector<double> x) {
    std::nth_element(x.begin(), x.begin() + x.size() / 2, x.end());
    return x[x.size() / 2];
  };
  const double med_step = median(steps);
  const double med_r = median(radii);
  const double max_step = *std::max_element(steps.begin(), steps.end());
  const auto [rmin, rmax] = std::minmax_element(radii.begin(), radii.end());
  const bool small_gaps = max_step <= opts.max_gap_ratio * med_step;
  const bool hole = *rmin >= opts.min_hole_fraction * med_r;
  const bool smooth = tv <= opts.roughness_factor * (*rmax - *rmin) + 0.1 * med_r;
  return (small_gaps && hole && smooth) ? Attractor::torus2 : Attractor::torus3_or_chaos;
}

}  // namespace lgdelay
