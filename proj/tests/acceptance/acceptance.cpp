// Prints one PASS/FAIL line per acceptance criterion.
//
// Exit status is 0 when the set of failing criteria equals the set given with
// --expect-fail (comma separated, default empty), 1 otherwise.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lgdelay/direction.hpp"
#include "lgdelay/errors.hpp"
#include "lgdelay/hopf2.hpp"
#include "lgdelay/reference.hpp"
#include "lgdelay/simulate.hpp"
#include "lgdelay/switching.hpp"
#include "lgdelay/unfolding.hpp"
#include "root_count.hpp"

using namespace lgdelay;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// Accumulates named checks; the first few failures are kept for the report.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    ++total_;
    if (!ok) {
      ++failed_;
      if (failures_.size() < 4) failures_.push_back(what);
    }
  }
  void near(double got, double want, double tol, const std::string& name) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s=%.6g (want %.6g +- %.1g)", name.c_str(), got, want, tol);
    expect(std::abs(got - want) <= tol, buf);
  }
  void note(const std::string& s) { notes_.push_back(s); }
  Outcome outcome() const {
    Outcome o;
    o.pass = failed_ == 0;
    std::ostringstream os;
    os << (total_ - failed_) << "/" << total_ << " checks";
    for (const auto& n : notes_) os << "; " << n;
    for (const auto& f : failures_) os << "; failed " << f;
    o.detail = os.str();
    return o;
  }

 private:
  int total_ = 0;
  int failed_ = 0;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

Outcome f_roots() {
  Checks c;
  const ModelParams p = reference::params();
  const std::vector<std::vector<double>> want = {{0.2587, 0.6682, 0.7697, 1.1791},
                                                 {0.184, 0.5264, 0.8607, 1.189},
                                                 {0.8968, 1.171},
                                                 {0.6638, 0.9798}};
  for (int n = 0; n <= 10; ++n) {
    const auto iv = crossing_set(build(p, n));
    std::vector<double> roots;
    for (const auto& i : iv) {
      if (!i.half_open) roots.push_back(i.a);
      roots.push_back(i.b);
    }
    const std::vector<double> expected = n < 4 ? want[n] : std::vector<double>{};
    c.expect(roots.size() == expected.size(), "root count of mode " + std::to_string(n));
    for (std::size_t k = 0; k < std::min(roots.size(), expected.size()); ++k) {
      c.near(roots[k], expected[k], 2e-3, "mode " + std::to_string(n) + " root " + std::to_string(k));
    }
  }
  return c.outcome();
}

Outcome endpoint_angles() {
  Checks c;
  const QuasiPolynomial q = build(reference::params(), 0);
  const auto iv = crossing_set(q);
  if (iv.empty()) {
    c.expect(false, "mode 0 has no crossing interval");
    return c.outcome();
  }
  const AngleData a = angles(q, iv[0].a);
  const AngleData b = angles(q, iv[0].b);
  c.near(a.theta1, M_PI, 1e-3, "theta1(a)");
  c.near(a.theta2, M_PI, 1e-3, "theta2(a)");
  c.near(b.theta1, M_PI, 1e-3, "theta1(b)");
  c.near(b.theta2, 0.0, 1e-3, "theta2(b)");
  c.expect(iv[0].delta1a == 1 && iv[0].delta2a == 1, "bits at a are (1,1)");
  c.expect(iv[0].delta1b == 1 && iv[0].delta2b == 0, "bits at b are (1,0)");
  return c.outcome();
}

Outcome residuals() {
  Checks c;
  const auto fams = build_families(reference::params(), {20.0, 20.0}, 5);
  std::vector<std::pair<const QuasiPolynomial*, const CurveSample*>> all;
  for (const auto& f : fams) {
    for (const auto& s : f.segments) {
      for (const auto& x : s.samples) all.emplace_back(&f.q, &x);
    }
  }
  const std::size_t want = 10000;
  c.expect(all.size() >= want, "at least 10^4 samples available");
  double worst = 0.0;
  for (std::size_t k = 0; k < want && !all.empty(); ++k) {
    const auto& [q, s] = all[(k * all.size()) / want];
    worst = std::max(worst, std::abs(eval_D(*q, cplx(0.0, s->omega), s->tau1, s->tau2)));
  }
  c.expect(worst < 1e-8, fmt("max residual %.3g", worst));
  c.note(fmt("max residual %.2e over 10000 samples", worst));
  return c.outcome();
}

Outcome crossing_oracle() {
  Checks c;
  const ModelParams p = reference::params();
  const auto fams = build_families(p, {8.0, 8.0}, 3);
  std::mt19937_64 g(20240601);
  auto unif = [&](double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(g() >> 11) * 0x1.0p-53);
  };
  int done = 0;
  for (int attempt = 0; done < 20 && attempt < 2000; ++attempt) {
    const CurveFamily& f = fams[g() % fams.size()];
    if (f.segments.empty()) continue;
    const CurveSegment& s = f.segments[g() % f.segments.size()];
    const CurveSample& x = s.samples[1 + g() % (s.samples.size() - 2)];
    if (x.tau1 < 0.05 || x.tau2 < 0.05 || x.tau1 > 7.5 || x.tau2 > 7.5) continue;
    const double ang = unif(0.0, 2.0 * M_PI);
    const double l1 = std::cos(ang), l2 = std::sin(ang);
    const CrossingData cd = partials(f.q, x.omega, x.tau1, x.tau2);
    const double scale = std::hypot(cd.R0, cd.I0) * std::hypot(std::hypot(cd.R1, cd.I1), std::hypot(cd.R2, cd.I2));
    if (std::abs(direction_indicator(cd, l1, l2)) < 0.05 * scale) continue;
    const int predicted = static_cast<int>(direction_along(cd, l1, l2));
    const double h = 1e-3;
    auto count_at = [&](double t1, double t2) {
      auto fn = [&](oracle::cplx z) { return eval_D(f.q, z, t1, t2); };
      return oracle::count_roots(fn, 0.0, 6.0, -6.0, 6.0).count;
    };
    const int change = count_at(x.tau1 + h * l1, x.tau2 + h * l2) - count_at(x.tau1 - h * l1, x.tau2 - h * l2);
    c.expect(change == predicted, fmt("crossing at omega=%.6f: change %g", x.omega, change));
    ++done;
  }
  c.expect(done == 20, "20 transversal crossings examined");
  return c.outcome();
}

std::vector<CurveFamily> reference_families() {
  return build_families(reference::params(), {5.0, 3.0}, 3);
}

const DoubleHopfPoint* nearest(const std::vector<DoubleHopfPoint>& pts, double t1, double t2) {
  const DoubleHopfPoint* best = nullptr;
  for (const auto& p : pts) {
    if (!best || std::hypot(p.tau1_star - t1, p.tau2_star - t2) <
                     std::hypot(best->tau1_star - t1, best->tau2_star - t2)) {
      best = &p;
    }
  }
  return best;
}

Outcome double_hopf() {
  Checks c;
  const auto fams = reference_families();
  const auto pts = find_double_hopf(fams, {5.0, 3.0});
  const DoubleHopfPoint* hh = nearest(pts, 3.9042, 1.406);
  if (!hh) {
    c.expect(false, "no double-Hopf point found");
    return c.outcome();
  }
  c.near(hh->tau1_star, 3.9042, 5e-3, "tau1*");
  c.near(hh->tau2_star, 1.406, 5e-3, "tau2*");
  c.near(hh->omega1, 0.61081, 1e-3, "omega1");
  c.near(hh->omega2, 0.94964, 1e-3, "omega2");
  c.expect(hh->resonance.flag == Resonance::none, "non-resonant");
  c.note(fmt("HH=(%.6f, %.6f)", hh->tau1_star, hh->tau2_star));
  return c.outcome();
}

Outcome unfolding() {
  Checks c;
  DoubleHopfPoint pt;
  pt.tau1_star = 3.9042;
  pt.tau2_star = 1.406;
  pt.omega1 = 0.61081;
  pt.omega2 = 0.94964;
  const UnfoldingParams up = unfold(reference::normal_form(), pt);
  c.expect(up.eps1 == 1, "eps1 = 1");
  c.expect(up.eps2 == -1, "eps2 = -1");
  c.near(up.b, 0.4946, 5e-4, "b");
  c.near(up.c, -11.5623, 5e-4, "c");
  c.near(up.d, -1.0, 5e-4, "d");
  c.near(up.d_minus_bc, 4.7192, 5e-4, "d-bc");
  c.expect(up.case_label == UnfoldingCase::VIa, "case VIa");
  const std::vector<double> slopes = {-13.6972, 2.8383, 1.2106, 0.6790, 0.6790, -3.5180, -13.6972, 2.8381};
  const auto lines = semilines(up, pt);
  c.expect(lines.size() == slopes.size(), "eight semi-lines");
  for (std::size_t k = 0; k < std::min(lines.size(), slopes.size()); ++k) {
    c.near(lines[k].reciprocal_slope, slopes[k], 5e-3, lines[k].label + " slope");
  }
  return c.outcome();
}

SimConfig sim_at(double tau1, double tau2) {
  SimConfig s;
  s.params = reference::params();
  s.tau1 = tau1;
  s.tau2 = tau2;
  return s;
}

Outcome stability_region() {
  Checks c;
  const ModelParams p = reference::params();
  const Equilibrium e = equilibrium(p);
  c.expect(stable_region_check(p, 1.74, 0.67, 4), "(1.74, 0.67) stable by root accounting");
  c.expect(!stable_region_check(p, 3.62, 1.435, 4), "(3.62, 1.435) unstable by root accounting");

  const Trajectory a = run(sim_at(1.74, 0.67));
  const TrajectoryRecord& last = a.records.back();
  c.near(last.u0, 0.4358, 1e-3, "u(0,T) at (1.74,0.67)");
  c.near(last.v0, 0.3181, 1e-3, "v(0,T) at (1.74,0.67)");
  c.expect(poincare(a, e, Section::v_equals_vstar).classification == Attractor::equilibrium,
           "(1.74, 0.67) classified equilibrium");

  const Trajectory b = run(sim_at(3.62, 1.435));
  const PoincareResult pb = poincare(b, e, Section::v_equals_vstar);
  c.expect(pb.classification == Attractor::periodic, "(3.62, 1.435) classified periodic, got " +
                                                         to_string(pb.classification));
  c.expect(pb.spread > 1e-2, "sustained oscillation amplitude");
  c.note(fmt("oscillation spread %.3f", pb.spread));
  return c.outcome();
}

Outcome tori() {
  Checks c;
  const Equilibrium e = equilibrium(reference::params());
  auto classify_at = [&](double t1, double t2) {
    SimConfig s = sim_at(t1, t2);
    s.t_transient = 20000.0;
    s.t_end = 30000.0;
    return poincare(run(s), e, Section::v_equals_vstar);
  };
  const PoincareResult d4 = classify_at(3.82, 1.4345);
  c.expect(d4.classification == Attractor::torus2, "(3.82, 1.4345) torus2, got " + to_string(d4.classification));
  const PoincareResult d6 = classify_at(3.905, 1.4136);
  c.expect(d6.classification == Attractor::torus3_or_chaos,
           "(3.905, 1.4136) torus3-or-chaos, got " + to_string(d6.classification));
  c.note(std::to_string(d4.points.size()) + " and " + std::to_string(d6.points.size()) + " section hits");
  return c.outcome();
}

Outcome properties() {
  Checks c;
  const ModelParams p = reference::params();
  const Equilibrium e = equilibrium(p);
  {
    SimConfig s = sim_at(1.0, 0.6);
    s.history.amp_u = s.history.amp_v = 0.0;
    SimState st = initial_state(s);
    for (int k = 0; k < 10000; ++k) step(st, s);
    double dev = 0.0;
    for (int i = 0; i < st.M; ++i) dev = std::max({dev, std::abs(st.u[i] - e.u_star), std::abs(st.v[i] - e.v_star)});
    c.expect(dev < 1e-12, fmt("equilibrium drift %.3g", dev));
  }
  {
    SimConfig s = sim_at(3.6, 1.44);
    s.grid_points = 32;
    s.history.kind = HistoryKind::random_smooth;
    s.history.amp_u = s.history.amp_v = 0.05;
    s.history.seed = 11;
    std::vector<std::vector<double>> sol;
    for (double dt : {0.04, 0.02, 0.01}) {
      s.dt = dt;
      sol.push_back(integrate_to(s, 50.0).u);
    }
    double e1 = 0, e2 = 0;
    for (std::size_t i = 0; i < sol[0].size(); ++i) {
      e1 = std::max(e1, std::abs(sol[0][i] - sol[1][i]));
      e2 = std::max(e2, std::abs(sol[1][i] - sol[2][i]));
    }
    c.expect(std::log2(e1 / e2) >= 3.5, fmt("temporal order %.3f", std::log2(e1 / e2)));
    c.note(fmt("temporal order %.2f", std::log2(e1 / e2)));
  }
  {
    SimConfig s = sim_at(1.0, 0.6);
    s.dt = 0.005;
    s.history.kind = HistoryKind::cosine_profile;
    s.history.amp_u = s.history.amp_v = 0.05;
    std::vector<std::vector<double>> sol;
    for (int M : {17, 33, 65}) {
      s.grid_points = M;
      sol.push_back(integrate_to(s, 50.0).u);
    }
    double e1 = 0, e2 = 0;
    for (int i = 0; i < 17; ++i) {
      e1 = std::max(e1, std::abs(sol[0][i] - sol[1][2 * i]));
      e2 = std::max(e2, std::abs(sol[1][2 * i] - sol[2][4 * i]));
    }
    c.expect(std::log2(e1 / e2) >= 1.9, fmt("spatial order %.3f", std::log2(e1 / e2)));
    c.note(fmt("spatial order %.2f", std::log2(e1 / e2)));
  }
  {
    const auto fams = build_families(p, {10.0, 10.0}, 3);
    double worst = 0.0;
    for (const auto& f : fams) {
      for (const auto& s : f.segments) {
        const CurveSample& x = s.samples[s.samples.size() / 2];
        const CrossingData cd = partials(f.q, x.omega, x.tau1, x.tau2);
        const cplx l(0.0, x.omega);
        const double h = 1e-6;
        const cplx d0 = (eval_D(f.q, l + h, x.tau1, x.tau2) - eval_D(f.q, l - h, x.tau1, x.tau2)) / (2 * h);
        const cplx d1 = (eval_D(f.q, l, x.tau1 + h, x.tau2) - eval_D(f.q, l, x.tau1 - h, x.tau2)) / (2 * h);
        const cplx d2 = (eval_D(f.q, l, x.tau1, x.tau2 + h) - eval_D(f.q, l, x.tau1, x.tau2 - h)) / (2 * h);
        worst = std::max({worst, std::abs(d0 - cplx(cd.R0, cd.I0)), std::abs(d1 - cplx(cd.R1, cd.I1)),
                          std::abs(d2 - cplx(cd.R2, cd.I2))});
      }
    }
    c.expect(worst < 1e-7, fmt("partials vs finite differences %.3g", worst));
  }
  {
    std::mt19937_64 g(7);
    std::set<UnfoldingCase> seen;
    bool total = true;
    for (int i = 0; i < 10000; ++i) {
      const double d = (g() & 1) ? 1.0 : -1.0;
      const double b = std::ldexp(static_cast<double>(g() >> 11) * 0x1.0p-53 + 0.01, static_cast<int>(g() % 8) - 4) *
                       ((g() & 1) ? 1 : -1);
      const double cc = std::ldexp(static_cast<double>(g() >> 11) * 0x1.0p-53 + 0.01, static_cast<int>(g() % 8) - 4) *
                        ((g() & 1) ? 1 : -1);
      const double dmbc = d - b * cc;
      if (dmbc == 0.0) continue;
      try {
        seen.insert(classify_case(d, b, cc, dmbc));
      } catch (const error&) {
        total = false;
      }
    }
    c.expect(total, "classification defined for every consistent sign pattern");
    c.expect(seen.size() == 12, "all twelve cases reached");
  }
  return c.outcome();
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected_fail;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--expect-fail" && i + 1 < argc) {
      std::stringstream ss(argv[++i]);
      std::string item;
      while (std::getline(ss, item, ',')) expected_fail.insert(std::stoi(item));
    } else {
      std::fprintf(stderr, "usage: acceptance [--expect-fail N[,N...]]\n");
      return 2;
    }
  }

  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "F-root regression", 5, f_roots},
      {2, "endpoint angles and indicator bits", 5, endpoint_angles},
      {3, "curve residual invariant", 10, residuals},
      {4, "crossing-direction oracle", 60, crossing_oracle},
      {5, "double-Hopf regression", 10, double_hopf},
      {6, "unfolding regression", 5, unfolding},
      {7, "stability-region check", 300, stability_region},
      {8, "torus regression", 600, tori},
      {9, "property suites", 120, properties},
  };

  std::set<int> failed;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& ex) {
      o.pass = false;
      o.detail = std::string("exception: ") + ex.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) {
      o.pass = false;
      o.detail += fmt("; runtime over budget (%.0f s)", c.budget_s);
    }
    if (!o.pass) failed.insert(c.id);
    std::printf("criterion %d %-36s %s  %7.2f s  %s%s\n", c.id, c.name, o.pass ? "PASS" : "FAIL", secs,
                o.detail.c_str(), (!o.pass && expected_fail.count(c.id)) ? " [expected]" : "");
    std::fflush(stdout);
  }
  std::printf("%zu of %zu criteria passed\n", criteria.size() - failed.size(), criteria.size());
  return failed == expected_fail ? 0 : 1;
}
