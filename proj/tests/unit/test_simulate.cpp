#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "lgdelay/errors.hpp"
#include "lgdelay/reference.hpp"
#include "lgdelay/simulate.hpp"

using namespace lgdelay;

namespace {

SimConfig base(double tau1, double tau2) {
  SimConfig c;
  c.params = reference::params();
  c.tau1 = tau1;
  c.tau2 = tau2;
  return c;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b, int stride_a, int stride_b,
                int count) {
  double m = 0.0;
  for (int i = 0; i < count; ++i) m = std::max(m, std::abs(a[i * stride_a] - b[i * stride_b]));
  return m;
}

PoincareResult synthetic(const std::vector<std::pair<double, double>>& pts, double spread = 0.1) {
  PoincareResult pr;
  pr.spread = spread;
  for (const auto& [x, y] : pts) pr.points.push_back({0.0, x, y, 0.0});
  return pr;
}

}  // namespace

TEST_CASE("flat equilibrium data stay at the equilibrium") {
  SimConfig c = base(1.0, 0.6);
  c.history.amp_u = 0.0;
  c.history.amp_v = 0.0;
  const Equilibrium e = equilibrium(c.params);
  SimState s = initial_state(c);
  for (int k = 0; k < 10000; ++k) step(s, c);
  double dev = 0.0;
  for (int i = 0; i < s.M; ++i) {
    dev = std::max({dev, std::abs(s.u[i] - e.u_star), std::abs(s.v[i] - e.v_star)});
  }
  CHECK(dev < 1e-12);
  CHECK(s.t == doctest::Approx(100.0));
}

TEST_CASE("spatially homogeneous data stay homogeneous") {
  SimConfig c = base(3.62, 1.435);
  c.history.amp_u = 0.05;
  c.history.amp_v = -0.03;
  SimState s = initial_state(c);
  for (int k = 0; k < 5000; ++k) step(s, c);
  const auto [lo, hi] = std::minmax_element(s.u.begin(), s.u.end());
  CHECK(*hi - *lo < 1e-13);
  const auto [vlo, vhi] = std::minmax_element(s.v.begin(), s.v.end());
  CHECK(*vhi - *vlo < 1e-13);
}

TEST_CASE("temporal self-convergence is fourth order") {
  // Unstable delays, so the solution is still moving at the final time; both delays are
  // whole multiples of every step so the kinks propagated from t = 0 fall on step boundaries.
  SimConfig c = base(3.6, 1.44);
  c.grid_points = 32;
  c.history.kind = HistoryKind::random_smooth;
  c.history.amp_u = 0.05;
  c.history.amp_v = 0.05;
  c.history.seed = 11;
  std::vector<std::vector<double>> sol;
  for (double dt : {0.04, 0.02, 0.01}) {
    c.dt = dt;
    const SimState s = integrate_to(c, 50.0);
    std::vector<double> y = s.u;
    y.insert(y.end(), s.v.begin(), s.v.end());
    sol.push_back(y);
  }
  const int n = static_cast<int>(sol[0].size());
  const double e1 = max_diff(sol[0], sol[1], 1, 1, n);
  const double e2 = max_diff(sol[1], sol[2], 1, 1, n);
  MESSAGE("temporal order " << std::log2(e1 / e2));
  CHECK(e2 > 0.0);
  CHECK(std::log2(e1 / e2) >= 3.5);
}

TEST_CASE("spatial self-convergence is second order") {
  SimConfig c = base(1.0, 0.6);
  c.dt = 0.005;
  c.history.kind = HistoryKind::cosine_profile;
  c.history.amp_u = 0.05;
  c.history.amp_v = 0.05;
  c.history.mode = 1;
  std::vector<std::vector<double>> sol;
  for (int M : {17, 33, 65}) {
    c.grid_points = M;
    sol.push_back(integrate_to(c, 50.0).u);
  }
  const double e1 = max_diff(sol[0], sol[1], 1, 2, 17);
  const double e2 = max_diff(sol[1], sol[2], 2, 4, 17);
  MESSAGE("spatial order " << std::log2(e1 / e2));
  CHECK(std::log2(e1 / e2) >= 1.9);
}

TEST_CASE("without delays every initial function converges to the equilibrium") {
  const Equilibrium e = equilibrium(reference::params());
  for (HistoryKind kind : {HistoryKind::constant_offset, HistoryKind::cosine_profile,
                           HistoryKind::random_smooth}) {
    SimConfig c = base(0.0, 0.0);
    c.history.kind = kind;
    c.history.amp_u = 0.1;
    c.history.amp_v = 0.1;
    c.history.seed = 3;
    const SimState s = integrate_to(c, 300.0);
    for (int i = 0; i < s.M; ++i) {
      CHECK(std::abs(s.u[i] - e.u_star) < 1e-6);
      CHECK(std::abs(s.v[i] - e.v_star) < 1e-6);
    }
  }
}

TEST_CASE("zero delay uses current values") {
  SimConfig c = base(0.0, 0.0);
  SimState s = initial_state(c);
  for (int k = 0; k < 10; ++k) step(s, c);
  CHECK(lagged_u(s, c, 3, s.t) == s.u[3]);
}

TEST_CASE("lagged reads reproduce the initial function before time zero") {
  SimConfig c = base(2.0, 1.0);
  c.history.kind = HistoryKind::random_smooth;
  c.history.seed = 8;
  SimState s = initial_state(c);
  for (int k = 0; k < 50; ++k) step(s, c);
  HistoryFunction h(c.history, c.params);
  double u, v;
  h.eval(5 * s.dx, s.t - c.tau1, u, v);
  CHECK(lagged_u(s, c, 5, s.t) == doctest::Approx(u).epsilon(1e-14));
}

TEST_CASE("a collapsing population is reported with its time") {
  SimConfig c = base(12.0, 0.5);
  c.params.r1 = 3.0;
  c.grid_points = 8;
  c.dt = 0.02;
  c.t_end = 400.0;
  c.t_transient = 0.0;
  c.history.amp_u = 0.3;
  bool thrown = false;
  try {
    run(c);
  } catch (const simulation_error& err) {
    thrown = true;
    CHECK(err.time() > 0.0);
    CHECK(err.time() <= 400.0);
  }
  CHECK(thrown);
}

TEST_CASE("configuration checks") {
  SimConfig c = base(1.0, 0.05);
  c.dt = 0.01;
  CHECK_THROWS_AS(validate(c), parameter_error);
  c = base(1.0, 0.6);
  c.dt = 0.05;
  c.grid_points = 128;
  CHECK_THROWS_AS(validate(c), parameter_error);
  c = base(1.0, 0.6);
  c.t_transient = c.t_end;
  CHECK_THROWS_AS(validate(c), parameter_error);
  c = base(1.0, 0.6);
  c.history.amp_u = -1.0;
  CHECK_THROWS_AS(validate(c), parameter_error);
  c = base(1.0, 0.6);
  c.grid_points = 2;
  CHECK_THROWS_AS(validate(c), parameter_error);
  c = base(0.0, 0.0);
  c.dt = 0.01;
  CHECK_NOTHROW(validate(c));
  CHECK(diffusion_dt_limit(reference::params(), 65) ==
        doctest::Approx(0.9 * std::pow(2.0 * M_PI / 64.0, 2) / 0.8));
}

TEST_CASE("identical seeds give identical trajectories") {
  SimConfig c = base(3.82, 1.4345);
  c.history.kind = HistoryKind::random_smooth;
  c.history.seed = 42;
  c.t_end = 100.0;
  c.t_transient = 50.0;
  const Trajectory a = run(c);
  const Trajectory b = run(c);
  REQUIRE(a.records.size() == b.records.size());
  bool same = true;
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    same = same && a.records[i].u0 == b.records[i].u0 && a.records[i].u0_lag == b.records[i].u0_lag;
  }
  CHECK(same);
  c.history.seed = 43;
  const Trajectory d = run(c);
  CHECK(d.records.back().u0 != a.records.back().u0);
  CHECK(a.records.front().t == doctest::Approx(50.0));
  CHECK(a.records.size() == 1000);
}

TEST_CASE("section hits of a synthetic oscillation") {
  const Equilibrium e = equilibrium(reference::params());
  Trajectory tr;
  tr.record_dt = 0.05;
  const double amp = 0.01, lag = 1.3;
  for (int k = 0; k < 20000; ++k) {
    const double t = k * 0.05;
    TrajectoryRecord r;
    r.t = t;
    r.u0 = e.u_star + amp * std::cos(t);
    r.v0 = e.v_star + amp * std::sin(t);
    r.u0_lag = e.u_star + amp * std::cos(t - lag);
    r.du0 = -amp * std::sin(t);
    r.dv0 = amp * std::cos(t);
    tr.records.push_back(r);
  }
  for (Section sec : {Section::v_equals_vstar, Section::du_zero}) {
    const PoincareResult pr = poincare(tr, e, sec);
    CHECK(pr.points.size() == 159);
    for (const SectionPoint& sp : pr.points) {
      CHECK(sp.residual < 1e-8);
      const double phase = std::remainder(sp.t, 2 * M_PI);
      CHECK(std::abs(phase) < 1e-6);
      CHECK(std::abs(sp.x - (e.u_star + amp)) < 1e-8);
      CHECK(std::abs(sp.y - (e.u_star + amp * std::cos(lag))) < 1e-8);
    }
    CHECK(pr.classification == Attractor::periodic);
  }
}

TEST_CASE("classifier on constructed point sets") {
  std::mt19937_64 g(1);
  std::normal_distribution<double> noise(0.0, 1e-6);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  std::vector<std::pair<double, double>> circle;
  for (int k = 0; k < 500; ++k) {
    const double a = 2 * M_PI * unif(g);
    circle.emplace_back(0.4 + 0.02 * std::cos(a) + noise(g), 0.4 + 0.01 * std::sin(a) + noise(g));
  }
  CHECK(classify(synthetic(circle)) == Attractor::torus2);

  std::vector<std::pair<double, double>> clusters;
  for (int k = 0; k < 300; ++k) {
    const double cx = 0.3 + 0.05 * (k % 3);
    clusters.emplace_back(cx + 1e-5 * unif(g), 0.2 + 1e-5 * unif(g));
  }
  CHECK(classify(synthetic(clusters)) == Attractor::periodic);

  std::vector<std::pair<double, double>> cloud;
  for (int k = 0; k < 500; ++k) cloud.emplace_back(0.4 + 0.02 * unif(g), 0.4 + 0.02 * unif(g));
  CHECK(classify(synthetic(cloud)) == Attractor::torus3_or_chaos);

  std::vector<std::pair<double, double>> thick;
  for (int k = 0; k < 800; ++k) {
    const double a = 2 * M_PI * unif(g);
    const double r = 0.01 + 0.01 * unif(g);
    thick.emplace_back(0.4 + r * std::cos(a), 0.4 + r * std::sin(a));
  }
  CHECK(classify(synthetic(thick)) == Attractor::torus3_or_chaos);

  CHECK(classify(synthetic({circle.begin(), circle.begin() + 10})) == Attractor::withheld);
  CHECK(classify(synthetic({}, 1e-9)) == Attractor::equilibrium);
  CHECK(classify(synthetic(circle, 1e-9)) == Attractor::equilibrium);
  CHECK(to_string(Attractor::torus3_or_chaos) == "torus3-or-chaos");
}
