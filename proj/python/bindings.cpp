#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "lgdelay/config.hpp"
#include "lgdelay/direction.hpp"
#include "lgdelay/errors.hpp"
#include "lgdelay/hopf2.hpp"
#include "lgdelay/model.hpp"
#include "lgdelay/reference.hpp"
#include "lgdelay/simulate.hpp"
#include "lgdelay/switching.hpp"
#include "lgdelay/unfolding.hpp"

namespace py = pybind11;
using namespace lgdelay;

namespace {

py::array_t<double> column(const std::vector<double>& v) {
  py::array_t<double> a(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), a.mutable_data());
  return a;
}

py::dict segment_dict(const CurveSegment& s) {
  std::vector<double> w, t1, t2;
  for (const auto& x : s.samples) {
    w.push_back(x.omega);
    t1.push_back(x.tau1);
    t2.push_back(x.tau2);
  }
  py::dict d;
  d["n"] = s.n;
  d["j"] = s.j;
  d["sign"] = s.sign;
  d["j1"] = s.j1;
  d["j2"] = s.j2;
  d["omega"] = column(w);
  d["tau1"] = column(t1);
  d["tau2"] = column(t2);
  return d;
}

std::vector<CurveFamily> families_of(const ModelParams& p, std::pair<double, double> window,
                                     std::optional<int> modes) {
  return build_families(p, {window.first, window.second}, modes);
}

}  // namespace

PYBIND11_MODULE(_lgdelay, m) {
  m.doc() = "Switching curves, double-Hopf analysis and simulation for a diffusive Leslie-Gower model "
            "with two delays";
  m.attr("__version__") = LGDELAY_VERSION;

  auto base = py::register_exception<error>(m, "LgdelayError", PyExc_RuntimeError);
  py::register_exception<parameter_error>(m, "ParameterError", base.ptr());
  py::register_exception<config_error>(m, "ConfigError", base.ptr());
  py::register_exception<numerical_error>(m, "NumericalError", base.ptr());

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init<>())
      .def_readwrite("r1", &ModelParams::r1)
      .def_readwrite("r2", &ModelParams::r2)
      .def_readwrite("a", &ModelParams::a)
      .def_readwrite("K", &ModelParams::K)
      .def_readwrite("gamma", &ModelParams::gamma)
      .def_readwrite("m", &ModelParams::m)
      .def_readwrite("l", &ModelParams::l)
      .def_readwrite("d1", &ModelParams::d1)
      .def_readwrite("d2", &ModelParams::d2)
      .def("__repr__", [](const ModelParams& p) {
        std::ostringstream os;
        os << "ModelParams(r1=" << p.r1 << ", r2=" << p.r2 << ", a=" << p.a << ", K=" << p.K
           << ", gamma=" << p.gamma << ", m=" << p.m << ", l=" << p.l << ", d1=" << p.d1 << ", d2=" << p.d2 << ")";
        return os.str();
      });

  m.def("reference_params", &reference::params, "The reference parameter set.");
  m.def("load_params", [](const std::string& path) { return read_params(Config::load(path)); },
        py::arg("path"), "Model parameters from a config file.");
  m.def("equilibrium", [](const ModelParams& p) {
    validate(p);
    const Equilibrium e = equilibrium(p);
    return std::make_pair(e.u_star, e.v_star);
  }, py::arg("params"), "Positive equilibrium (u*, v*).");

  m.def("F", [](const ModelParams& p, int n, double omega) { return F(build(p, n), omega); },
        py::arg("params"), py::arg("n"), py::arg("omega"), "Crossing function of mode n.");
  m.def("char_function", [](const ModelParams& p, int n, cplx lambda, double tau1, double tau2) {
    return eval_D(build(p, n), lambda, tau1, tau2);
  }, py::arg("params"), py::arg("n"), py::arg("lam"), py::arg("tau1"), py::arg("tau2"));
  m.def("crossing_set", [](const ModelParams& p, int n) {
    py::list out;
    for (const auto& iv : crossing_set(build(p, n))) {
      py::dict d;
      d["j"] = iv.j;
      d["a"] = iv.a;
      d["b"] = iv.b;
      d["half_open"] = iv.half_open;
      d["delta_a"] = py::make_tuple(iv.delta1a, iv.delta2a);
      d["delta_b"] = py::make_tuple(iv.delta1b, iv.delta2b);
      out.append(d);
    }
    return out;
  }, py::arg("params"), py::arg("n"), "Frequency intervals on which mode n can cross.");

  m.def("curves", [](const ModelParams& p, std::pair<double, double> window, std::optional<int> modes) {
    py::list out;
    for (const auto& f : families_of(p, window, modes)) {
      for (const auto& s : f.segments) out.append(segment_dict(s));
    }
    return out;
  }, py::arg("params"), py::arg("window") = std::make_pair(20.0, 20.0), py::arg("modes") = py::none(),
     "Switching-curve segments of every mode inside the window.");

  m.def("crossing_direction", [](const ModelParams& p, int n, double omega, double tau1, double tau2,
                                 double l1, double l2) {
    return static_cast<int>(direction_along(partials(build(p, n), omega, tau1, tau2), l1, l2));
  }, py::arg("params"), py::arg("n"), py::arg("omega"), py::arg("tau1"), py::arg("tau2"), py::arg("l1"),
     py::arg("l2"), "Change in the number of unstable roots when moving along (l1, l2): -2, 0 or +2.");

  m.def("unstable_root_count", [](const ModelParams& p, double tau1, double tau2) {
    const double w = std::max(1.0, 1.25 * std::max(tau1, tau2) + 0.5);
    return unstable_root_count(build_families(p, {w, w}), {tau1, tau2});
  }, py::arg("params"), py::arg("tau1"), py::arg("tau2"));
  m.def("is_stable", [](const ModelParams& p, double tau1, double tau2, int n_max) {
    return stable_region_check(p, tau1, tau2, n_max);
  }, py::arg("params"), py::arg("tau1"), py::arg("tau2"), py::arg("n_max") = 4);

  py::enum_<Resonance>(m, "Resonance")
      .value("none", Resonance::none)
      .value("near", Resonance::near)
      .value("strong", Resonance::strong);

  py::class_<DoubleHopfPoint>(m, "DoubleHopfPoint")
      .def(py::init<>())
      .def_readwrite("tau1", &DoubleHopfPoint::tau1_star)
      .def_readwrite("tau2", &DoubleHopfPoint::tau2_star)
      .def_readwrite("omega1", &DoubleHopfPoint::omega1)
      .def_readwrite("omega2", &DoubleHopfPoint::omega2)
      .def_readwrite("n1", &DoubleHopfPoint::n1)
      .def_readwrite("n2", &DoubleHopfPoint::n2)
      .def_readonly("refined", &DoubleHopfPoint::refined)
      .def_readonly("residual", &DoubleHopfPoint::residual)
      .def_property_readonly("resonance", [](const DoubleHopfPoint& p) { return p.resonance.flag; })
      .def("__repr__", [](const DoubleHopfPoint& p) {
        std::ostringstream os;
        os.precision(8);
        os << "DoubleHopfPoint(tau1=" << p.tau1_star << ", tau2=" << p.tau2_star << ", omega1=" << p.omega1
           << ", omega2=" << p.omega2 << ", modes=(" << p.n1 << ", " << p.n2 << "))";
        return os.str();
      });

  m.def("double_hopf_points", [](const ModelParams& p, std::pair<double, double> window) {
    const Window w{window.first, window.second};
    return find_double_hopf(build_families(p, w), w);
  }, py::arg("params"), py::arg("window") = std::make_pair(10.0, 10.0), "Refined curve intersections.");
  m.def("on_stability_boundary", [](const ModelParams& p, const DoubleHopfPoint& pt) {
    const double w = std::max(1.0, 1.25 * std::max(pt.tau1_star, pt.tau2_star) + 0.5);
    return on_stability_boundary(build_families(p, {w, w}), pt);
  }, py::arg("params"), py::arg("point"));
  m.def("resonance", [](double w1, double w2) { return resonance_check(w1, w2).flag; }, py::arg("omega1"),
        py::arg("omega2"));

  py::class_<NormalFormCoeffs>(m, "NormalFormCoeffs")
      .def(py::init<>())
      .def_readwrite("K11", &NormalFormCoeffs::K11)
      .def_readwrite("K21", &NormalFormCoeffs::K21)
      .def_readwrite("K13", &NormalFormCoeffs::K13)
      .def_readwrite("K23", &NormalFormCoeffs::K23)
      .def_readwrite("K2100", &NormalFormCoeffs::K2100)
      .def_readwrite("K1011", &NormalFormCoeffs::K1011)
      .def_readwrite("K0021", &NormalFormCoeffs::K0021)
      .def_readwrite("K1110", &NormalFormCoeffs::K1110);
  m.def("reference_normal_form", &reference::normal_form);

  m.def("unfold", [](const NormalFormCoeffs& K, const DoubleHopfPoint& pt) {
    const UnfoldingParams up = unfold(K, pt);
    py::dict d;
    d["eps1"] = up.eps1;
    d["eps2"] = up.eps2;
    d["b"] = up.b;
    d["c"] = up.c;
    d["d"] = up.d;
    d["d_minus_bc"] = up.d_minus_bc;
    d["case"] = to_string(up.case_label);
    d["nu_map"] = up.nu_map;
    return d;
  }, py::arg("K"), py::arg("point"), "Unfolding parameters and case label.");
  m.def("semilines", [](const NormalFormCoeffs& K, const DoubleHopfPoint& pt) {
    py::list out;
    for (const auto& s : semilines(unfold(K, pt), pt)) {
      py::dict d;
      d["label"] = s.label;
      d["direction"] = py::make_tuple(s.dir1, s.dir2);
      d["reciprocal_slope"] = s.reciprocal_slope;
      d["side"] = s.side;
      d["kind"] = s.kind;
      out.append(d);
    }
    return out;
  }, py::arg("K"), py::arg("point"));
  m.def("region_of", [](const NormalFormCoeffs& K, const DoubleHopfPoint& pt, double tau1, double tau2,
                        double chart_radius) {
    RegionOptions o;
    o.chart_radius = chart_radius;
    return region_of(unfold(K, pt), pt, tau1, tau2, o);
  }, py::arg("K"), py::arg("point"), py::arg("tau1"), py::arg("tau2"), py::arg("chart_radius") = 0.15);

  m.def("simulate", [](const ModelParams& p, double tau1, double tau2, double t_end, double t_transient,
                       double dt, int grid_points, std::string history, std::uint64_t seed, std::string section) {
    SimConfig c;
    c.params = p;
    c.tau1 = tau1;
    c.tau2 = tau2;
    c.t_end = t_end;
    c.t_transient = t_transient;
    c.dt = dt;
    c.grid_points = grid_points;
    c.history.seed = seed;
    if (history == "constant") {
      c.history.kind = HistoryKind::constant_offset;
    } else if (history == "cosine") {
      c.history.kind = HistoryKind::cosine_profile;
    } else if (history == "random") {
      c.history.kind = HistoryKind::random_smooth;
    } else {
      throw parameter_error("history must be constant, cosine or random");
    }
    Section sec;
    if (section == "v") {
      sec = Section::v_equals_vstar;
    } else if (section == "du") {
      sec = Section::du_zero;
    } else {
      throw parameter_error("section must be v or du");
    }
    Trajectory tr;
    {
      py::gil_scoped_release release;
      tr = run(c);
    }
    const PoincareResult pr = poincare(tr, equilibrium(p), sec);
    std::vector<double> t, u, v, lag, sx, sy;
    for (const auto& r : tr.records) {
      t.push_back(r.t);
      u.push_back(r.u0);
      v.push_back(r.v0);
      lag.push_back(r.u0_lag);
    }
    for (const auto& s : pr.points) {
      sx.push_back(s.x);
      sy.push_back(s.y);
    }
    py::dict d;
    d["t"] = column(t);
    d["u0"] = column(u);
    d["v0"] = column(v);
    d["u0_lag"] = column(lag);
    d["section_u0"] = column(sx);
    d["section_u0_lag"] = column(sy);
    d["classification"] = to_string(pr.classification);
    d["spread"] = pr.spread;
    return d;
  }, py::arg("params"), py::arg("tau1"), py::arg("tau2"), py::arg("t_end") = 6000.0,
     py::arg("t_transient") = 2000.0, py::arg("dt") = 0.01, py::arg("grid_points") = 64,
     py::arg("history") = "constant", py::arg("seed") = 0, py::arg("section") = "v",
     "Integrate the delayed system and classify its Poincare section.");
}
