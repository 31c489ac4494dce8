#include "commands.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "lgdelay/config.hpp"
#include "lgdelay/direction.hpp"
#include "lgdelay/errors.hpp"
#include "lgdelay/hopf2.hpp"
#include "lgdelay/output.hpp"
#include "lgdelay/simulate.hpp"
#include "lgdelay/switching.hpp"
#include "lgdelay/unfolding.hpp"

namespace fs = std::filesystem;

namespace lgdelay::cli {

namespace {

/// Output directory with an overwrite guard: every file is declared up front so that a
/// refused run leaves nothing half-written.
class OutputDir {
 public:
  OutputDir(const Options& o, std::vector<std::string> names) : dir_(o.out_dir) {
    names.push_back("manifest.json");
    for (const auto& n : names) {
      const fs::path p = dir_ / n;
      if (fs::exists(p) && !o.overwrite) {
        throw exit_error(io, "refusing to overwrite " + p.string() + " (use --overwrite)");
      }
    }
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw exit_error(io, "cannot create " + dir_.string() + ": " + ec.message());
  }

  void write(const std::string& name, const std::function<void(std::ostream&)>& body) const {
    const fs::path p = dir_ / name;
    std::ofstream os(p, std::ios::binary | std::ios::trunc);
    if (!os) throw exit_error(io, "cannot open " + p.string() + " for writing");
    body(os);
    os.flush();
    if (!os) throw exit_error(io, "write to " + p.string() + " failed");
  }

  void manifest(const Options& o, const nlohmann::json& extra = nlohmann::json::object()) const {
    nlohmann::json j;
    j["subcommand"] = o.command;
    j["config"] = o.config_path;
    j["output_dir"] = dir_.string();
    j["seed"] = o.seed ? nlohmann::json(*o.seed) : nlohmann::json(nullptr);
    j["version"] = LGDELAY_VERSION;
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    write("manifest.json", [&](std::ostream& os) { os << j.dump(2) << "\n"; });
  }

 private:
  fs::path dir_;
};

Window window_of(const Options& o, Window fallback) {
  if (!o.window) return fallback;
  const auto [a, b] = *o.window;
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw exit_error(usage, "--window needs two positive values");
  }
  return {a, b};
}

struct Loaded {
  Config cfg;
  ModelParams params;
  CrossingSetOptions copts;
  SegmentOptions sopts;
};

Loaded load(const Options& o) {
  Loaded l{Config::load(o.config_path), {}, {}, {}};
  l.params = read_params(l.cfg);
  if (auto v = l.cfg.find_double("omega_max")) l.copts.omega_max = *v;
  if (auto v = l.cfg.find_int("root_grid_points")) l.copts.grid_points = *v;
  if (auto v = l.cfg.find_int("samples_per_interval")) l.sopts.samples_per_interval = *v;
  return l;
}

std::vector<CurveFamily> families_for(const Options& o, const Loaded& l, Window w) {
  if (o.modes && *o.modes < 0) throw exit_error(usage, "--modes must be non-negative");
  std::vector<std::string> warnings;
  auto fams = build_families(l.params, w, o.modes, l.copts, l.sopts, &warnings);
  for (const auto& s : warnings) std::fprintf(stderr, "warning: %s\n", s.c_str());
  return fams;
}

std::string mode_file(const char* stem, int n) { return std::string(stem) + "_n" + std::to_string(n) + ".csv"; }

void print_families(const std::vector<CurveFamily>& fams) {
  for (const auto& f : fams) {
    std::size_t samples = 0;
    for (const auto& s : f.segments) samples += s.samples.size();
    std::printf("mode %d: %zu crossing interval(s), %zu segment(s), %zu samples\n", f.q.n,
                f.intervals.size(), f.segments.size(), samples);
  }
}

}  // namespace

int cmd_curves(const Options& o) {
  const Window w = window_of(o, {20.0, 20.0});
  const Loaded l = load(o);
  const auto fams = families_for(o, l, w);
  std::vector<std::string> files = {"crossing_set.csv", "curves.svg"};
  for (const auto& f : fams) {
    files.push_back(mode_file("curves", f.q.n));
    files.push_back(mode_file("connectivity", f.q.n));
  }
  const OutputDir out(o, files);
  for (const auto& f : fams) {
    out.write(mode_file("curves", f.q.n), [&](std::ostream& os) { write_curves_csv(os, f.segments); });
    out.write(mode_file("connectivity", f.q.n), [&](std::ostream& os) { write_connectivity_csv(os, f); });
  }
  out.write("crossing_set.csv", [&](std::ostream& os) { write_crossing_set_csv(os, fams); });
  out.write("curves.svg", [&](std::ostream& os) { os << curves_svg(fams, w); });
  out.manifest(o, {{"window", {w.tau1_max, w.tau2_max}}, {"modes", fams.size()}});
  print_families(fams);
  return ok;
}

int cmd_directions(const Options& o) {
  const Window w = window_of(o, {20.0, 20.0});
  const Loaded l = load(o);
  const auto fams = families_for(o, l, w);
  std::vector<std::string> files;
  for (const auto& f : fams) files.push_back(mode_file("directions", f.q.n));
  const OutputDir out(o, files);
  for (const auto& f : fams) {
    out.write(mode_file("directions", f.q.n), [&](std::ostream& os) { write_directions_csv(os, f); });
  }
  out.manifest(o, {{"window", {w.tau1_max, w.tau2_max}}, {"modes", fams.size()}});
  print_families(fams);
  return ok;
}

namespace {

struct HopfScan {
  std::vector<DoubleHopfPoint> points;
  std::vector<bool> on_boundary;
};

HopfScan scan_double_hopf(const std::vector<CurveFamily>& fams, Window w) {
  HopfScan s;
  s.points = find_double_hopf(fams, w);
  for (const auto& p : s.points) s.on_boundary.push_back(on_stability_boundary(fams, p));
  return s;
}

}  // namespace

int cmd_hh(const Options& o) {
  const Window w = window_of(o, {10.0, 10.0});
  const Loaded l = load(o);
  // Boundary tests need every mode that has curves, whatever --modes says.
  Options all = o;
  all.modes.reset();
  const auto fams = families_for(all, l, w);
  auto scan = scan_double_hopf(fams, w);
  if (o.modes) {
    HopfScan kept;
    for (std::size_t i = 0; i < scan.points.size(); ++i) {
      if (scan.points[i].n1 <= *o.modes && scan.points[i].n2 <= *o.modes) {
        kept.points.push_back(scan.points[i]);
        kept.on_boundary.push_back(scan.on_boundary[i]);
      }
    }
    scan = kept;
  }
  const OutputDir out(o, {"double_hopf.csv"});
  out.write("double_hopf.csv", [&](std::ostream& os) { write_double_hopf_csv(os, scan.points, scan.on_boundary); });
  out.manifest(o, {{"window", {w.tau1_max, w.tau2_max}}, {"points", scan.points.size()}});
  for (std::size_t i = 0; i < scan.points.size(); ++i) {
    const auto& p = scan.points[i];
    std::printf("(%.6f, %.6f) omega=(%.6f, %.6f) modes=(%d, %d) resonance=%s residual=%.2e%s%s\n",
                p.tau1_star, p.tau2_star, p.omega1, p.omega2, p.n1, p.n2,
                to_string(p.resonance.flag).c_str(), p.residual, p.refined ? "" : " unrefined",
                scan.on_boundary[i] ? " on-stability-boundary" : "");
  }
  if (scan.points.empty()) {
    std::printf("no double-Hopf point in the window\n");
    return none_found;
  }
  return ok;
}

namespace {

/// The mode-0 double-Hopf point on the stability boundary closest to the origin.
DoubleHopfPoint locate_boundary_point(const Loaded& l) {
  const Window w{10.0, 10.0};
  const auto fams = build_families(l.params, w, std::nullopt, l.copts, l.sopts);
  const auto scan = scan_double_hopf(fams, w);
  const DoubleHopfPoint* best = nullptr;
  for (std::size_t i = 0; i < scan.points.size(); ++i) {
    const auto& p = scan.points[i];
    if (p.n1 != 0 || p.n2 != 0 || !scan.on_boundary[i]) continue;
    if (!best || std::hypot(p.tau1_star, p.tau2_star) < std::hypot(best->tau1_star, best->tau2_star)) best = &p;
  }
  if (!best) throw exit_error(none_found, "no mode-0 double-Hopf point on the stability boundary");
  return *best;
}

std::string cplx_text(cplx z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.6f%+.6fi", z.real(), z.imag());
  return buf;
}

}  // namespace

int cmd_classify(const Options& o) {
  const Loaded l = load(o);
  const NormalFormCoeffs K = read_normal_form(l.cfg);
  const auto given = read_double_hopf(l.cfg);
  const DoubleHopfPoint pt = given ? *given : locate_boundary_point(l);
  RegionOptions ropts;
  if (auto v = l.cfg.find_double("chart_radius")) ropts.chart_radius = *v;

  const UnfoldingParams up = unfold(K, pt);
  const auto lines = semilines(up, pt);
  std::ostringstream rep;
  char buf[256];
  std::snprintf(buf, sizeof buf, "double-Hopf point: tau1=%.6f tau2=%.6f omega1=%.6f omega2=%.6f%s\n",
                pt.tau1_star, pt.tau2_star, pt.omega1, pt.omega2, given ? " (from config)" : " (computed)");
  rep << buf;
  rep << "resonance: " << to_string(resonance_check(pt.omega1, pt.omega2).flag) << "\n";
  try {
    const EigenData ed = eigen_data(l.params, pt);
    rep << "r12=" << cplx_text(ed.r12) << " r32=" << cplx_text(ed.r32) << " r12*=" << cplx_text(ed.r12_star)
        << " r32*=" << cplx_text(ed.r32_star) << " D1=" << cplx_text(ed.D1) << " D2=" << cplx_text(ed.D2) << "\n";
  } catch (const unsupported_mode_error& e) {
    rep << "eigenvector data: " << e.what() << "\n";
  }
  std::snprintf(buf, sizeof buf, "eps1=%d eps2=%d b=%.6f c=%.6f d=%d d-bc=%.6f\n", up.eps1, up.eps2, up.b,
                up.c, up.d, up.d_minus_bc);
  rep << buf;
  std::snprintf(buf, sizeof buf, "nu_map=[[%.6f, %.6f], [%.6f, %.6f]]\n", up.nu_map[0][0], up.nu_map[0][1],
                up.nu_map[1][0], up.nu_map[1][1]);
  rep << buf;
  rep << "case: " << to_string(up.case_label) << "\n";
  for (const auto& s : lines) {
    std::snprintf(buf, sizeof buf, "%s: tau2 = (tau1 - %.4f)/(%.4f) + %.4f  (%s)  %s%s%s\n", s.label.c_str(),
                  pt.tau1_star, s.reciprocal_slope, pt.tau2_star, s.side.c_str(), s.kind.c_str(),
                  s.note.empty() ? "" : "; ", s.note.c_str());
    rep << buf;
  }
  for (const auto& [t1, t2] : l.cfg.probes()) {
    std::string where;
    try {
      where = region_of(up, pt, t1, t2, ropts);
    } catch (const chart_range_error&) {
      where = "outside the local chart";
    } catch (const boundary_error& e) {
      where = std::string("on a boundary (") + e.what() + ")";
    }
    std::snprintf(buf, sizeof buf, "probe (%.6g, %.6g): %s\n", t1, t2, where.c_str());
    rep << buf;
  }

  const OutputDir out(o, {"classification.txt", "semilines.csv"});
  out.write("classification.txt", [&](std::ostream& os) { os << rep.str(); });
  out.write("semilines.csv", [&](std::ostream& os) { write_semilines_csv(os, lines); });
  out.manifest(o, {{"case", to_string(up.case_label)}});
  std::cout << rep.str();
  return ok;
}

int cmd_simulate(const Options& o) {
  const Loaded l = load(o);
  SimConfig sim;
  sim.params = l.params;
  apply_simulation(l.cfg, sim);
  if (o.tau) {
    sim.tau1 = o.tau->first;
    sim.tau2 = o.tau->second;
  } else if (!l.cfg.has("tau1") || !l.cfg.has("tau2")) {
    throw exit_error(usage, "simulate needs delays: pass --tau T1,T2 or set tau1 and tau2");
  }
  if (o.seed) sim.history.seed = *o.seed;
  try {
    validate(sim);
  } catch (const parameter_error& e) {
    throw config_error(e.what(), 0);
  }
  const Section section = read_section(l.cfg);
  std::vector<std::string> files = {"trajectory.csv", "poincare.csv", "poincare.svg"};
  if (sim.snapshot_stride > 0) files.push_back("snapshots.csv");
  const OutputDir out(o, files);

  const Trajectory traj = run(sim);
  const PoincareResult pr = poincare(traj, equilibrium(sim.params), section);
  out.write("trajectory.csv", [&](std::ostream& os) { write_trajectory_csv(os, traj); });
  out.write("poincare.csv", [&](std::ostream& os) { write_poincare_csv(os, pr); });
  out.write("poincare.svg", [&](std::ostream& os) { os << poincare_svg(pr); });
  if (sim.snapshot_stride > 0) {
    out.write("snapshots.csv", [&](std::ostream& os) {
      os << "t,node,u,v\n";
      for (const auto& s : traj.snapshots) {
        for (std::size_t i = 0; i < s.u.size(); ++i) {
          os << format_number(s.t) << ',' << i << ',' << format_number(s.u[i]) << ',' << format_number(s.v[i]) << '\n';
        }
      }
    });
  }
  out.manifest(o, {{"tau", {sim.tau1, sim.tau2}},
                   {"history", to_string(sim.history.kind)},
                   {"classification", to_string(pr.classification)}});
  std::printf("section: %s, %zu hits, spread %.3e\n", to_string(section).c_str(), pr.points.size(), pr.spread);
  if (!pr.message.empty()) std::printf("note: %s\n", pr.message.c_str());
  std::printf("classification: %s\n", to_string(pr.classification).c_str());
  return ok;
}

namespace {

struct Row {
  std::string item;
  std::string expected;
  std::string got;
  bool pass = false;
};

std::string num(double x, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

}  // namespace

int cmd_reproduce(const Options& o) {
  const Loaded l = load(o);
  const OutputDir out(o, {"reproduce.csv"});
  std::vector<Row> rows;
  auto add = [&](std::string item, std::string expected, std::string got, bool pass) {
    rows.push_back({std::move(item), std::move(expected), std::move(got), pass});
    const Row& r = rows.back();
    std::printf("%-34s %-30s %-30s %s\n", r.item.c_str(), r.expected.c_str(), r.got.c_str(), r.pass ? "PASS" : "FAIL");
    std::fflush(stdout);
  };
  std::printf("%-34s %-30s %-30s %s\n", "item", "reference", "computed", "status");

  const std::vector<std::vector<double>> roots_ref = {{0.2587, 0.6682, 0.7697, 1.1791},
                                                      {0.184, 0.5264, 0.8607, 1.189},
                                                      {0.8968, 1.171},
                                                      {0.6638, 0.9798}};
  for (int n = 0; n <= 10; ++n) {
    const auto iv = crossing_set(build(l.params, n), l.copts);
    std::vector<double> roots;
    for (const auto& i : iv) {
      if (!i.half_open) roots.push_back(i.a);
      roots.push_back(i.b);
    }
    const auto& want = n < 4 ? roots_ref[n] : std::vector<double>{};
    bool pass = roots.size() == want.size();
    std::string e, g;
    for (std::size_t k = 0; k < want.size(); ++k) e += (k ? " " : "") + num(want[k]);
    for (std::size_t k = 0; k < roots.size(); ++k) {
      g += (k ? " " : "") + num(roots[k]);
      if (k < want.size()) pass = pass && std::abs(roots[k] - want[k]) <= 2e-3;
    }
    add("roots of F, mode " + std::to_string(n), e.empty() ? "none" : e, g.empty() ? "none" : g, pass);
  }

  const Window w{10.0, 10.0};
  const auto fams = build_families(l.params, w, std::nullopt, l.copts, l.sopts);
  const auto scan = scan_double_hopf(fams, w);
  const DoubleHopfPoint* hh = nullptr;
  for (std::size_t i = 0; i < scan.points.size(); ++i) {
    if (scan.on_boundary[i] && (!hh || scan.points[i].tau1_star + scan.points[i].tau2_star <
                                           hh->tau1_star + hh->tau2_star)) {
      hh = &scan.points[i];
    }
  }
  if (!hh) throw exit_error(none_found, "no double-Hopf point on the stability boundary");
  add("double-Hopf point", "(3.9042, 1.4060)", "(" + num(hh->tau1_star) + ", " + num(hh->tau2_star) + ")",
      std::abs(hh->tau1_star - 3.9042) <= 5e-3 && std::abs(hh->tau2_star - 1.406) <= 5e-3);
  add("frequencies", "(0.61081, 0.94964)", "(" + num(hh->omega1, 5) + ", " + num(hh->omega2, 5) + ")",
      std::abs(hh->omega1 - 0.61081) <= 1e-3 && std::abs(hh->omega2 - 0.94964) <= 1e-3);
  add("resonance", "none", to_string(hh->resonance.flag), hh->resonance.flag == Resonance::none);

  const UnfoldingParams up = unfold(read_normal_form(l.cfg), *hh);
  add("eps1, eps2, d", "1, -1, -1",
      std::to_string(up.eps1) + ", " + std::to_string(up.eps2) + ", " + std::to_string(up.d),
      up.eps1 == 1 && up.eps2 == -1 && up.d == -1);
  add("b", "0.4946", num(up.b), std::abs(up.b - 0.4946) <= 5e-4);
  add("c", "-11.5623", num(up.c), std::abs(up.c + 11.5623) <= 5e-4);
  add("d-bc", "4.7192", num(up.d_minus_bc), std::abs(up.d_minus_bc - 4.7192) <= 5e-4);
  add("unfolding case", "VIa", to_string(up.case_label), up.case_label == UnfoldingCase::VIa);
  const std::vector<double> slopes = {-13.6972, 2.8383, 1.2106, 0.6790, 0.6790, -3.5180, -13.6972, 2.8381};
  const auto lines = semilines(up, *hh);
  for (std::size_t k = 0; k < lines.size() && k < slopes.size(); ++k) {
    add(lines[k].label + " reciprocal slope", num(slopes[k]), num(lines[k].reciprocal_slope),
        std::abs(lines[k].reciprocal_slope - slopes[k]) <= 5e-3);
  }
  auto region = [&](double t1, double t2) {
    try {
      return region_of(up, *hh, t1, t2);
    } catch (const error& e) {
      return std::string("n/a");
    }
  };
  add("region of (3.82, 1.4345)", "D4", region(3.82, 1.4345), region(3.82, 1.4345) == "D4");
  add("region of (3.905, 1.4136)", "D6", region(3.905, 1.4136), region(3.905, 1.4136) == "D6");

  const bool s1 = stable_region_check(fams, 1.74, 0.67);
  const bool s2 = stable_region_check(fams, 3.62, 1.435);
  add("root accounting (1.74, 0.67)", "stable", s1 ? "stable" : "unstable", s1);
  add("root accounting (3.62, 1.435)", "unstable", s2 ? "stable" : "unstable", !s2);

  struct SimCase {
    double t1, t2;
    Attractor want;
    double transient, end;
  };
  const std::vector<SimCase> sims = {{1.74, 0.67, Attractor::equilibrium, 2000, 6000},
                                     {3.62, 1.435, Attractor::periodic, 2000, 6000},
                                     {3.82, 1.4345, Attractor::torus2, 20000, 30000},
                                     {3.905, 1.4136, Attractor::torus3_or_chaos, 20000, 30000}};
  const Equilibrium e = equilibrium(l.params);
  for (const auto& c : sims) {
    SimConfig sim;
    sim.params = l.params;
    sim.tau1 = c.t1;
    sim.tau2 = c.t2;
    sim.t_transient = c.transient;
    sim.t_end = c.end;
    if (o.seed) {
      sim.history.kind = HistoryKind::random_smooth;
      sim.history.seed = *o.seed;
    }
    const Attractor a = poincare(run(sim), e, Section::v_equals_vstar).classification;
    add("simulation (" + num(c.t1, 4) + ", " + num(c.t2, 4) + ")", to_string(c.want), to_string(a), a == c.want);
  }

  out.write("reproduce.csv", [&](std::ostream& os) {
    os << "item,reference,computed,status\n";
    for (const auto& r : rows) {
      os << '"' << r.item << "\",\"" << r.expected << "\",\"" << r.got << "\"," << (r.pass ? "PASS" : "FAIL") << '\n';
    }
  });
  std::size_t passed = 0;
  for (const auto& r : rows) passed += r.pass;
  out.manifest(o, {{"rows", rows.size()}, {"passed", passed}});
  std::printf("%zu of %zu items match the reference values\n", passed, rows.size());
  return ok;
}

}  // namespace lgdelay::cli
