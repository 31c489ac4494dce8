#include "lgdelay/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "lgdelay/direction.hpp"
#include "lgdelay/errors.hpp"

namespace lgdelay {

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

void curve_prefix(std::ostream& os, const CurveSegment& s, const CurveSample& c) {
  os << s.n << ',' << s.j << ',' << (s.sign > 0 ? "+" : "-") << ',' << s.j1 << ',' << s.j2 << ','
     << format_number(c.omega) << ',' << format_number(c.tau1) << ',' << format_number(c.tau2);
}

}  // namespace

void write_curves_csv(std::ostream& os, const std::vector<CurveSegment>& segs) {
  os << "n,j,sign,j1,j2,omega,tau1,tau2\n";
  for (const CurveSegment& s : segs) {
    for (const CurveSample& c : s.samples) {
      curve_prefix(os, s, c);
      os << '\n';
    }
  }
}

void write_directions_csv(std::ostream& os, const CurveFamily& fam) {
  os << "n,j,sign,j1,j2,omega,tau1,tau2,delta,gains_on_right\n";
  for (const CurveSegment& s : fam.segments) {
    for (const CurveSample& c : s.samples) {
      curve_prefix(os, s, c);
      const CrossingData cd = partials(fam.q, c.omega, c.tau1, c.tau2);
      // At interval endpoints delta is unbounded; report the branch effect only.
      const bool interior = std::isfinite(cd.delta) && cd.delta != 0.0 &&
                            std::abs(cd.R1 * cd.I2 - cd.R2 * cd.I1) > 1e-12;
      const bool gains = interior ? crossing_direction(cd, s.sign) == RightRegionEffect::gains_two
                                  : s.sign > 0;
      os << ',' << (interior ? format_number(cd.delta) : std::string("nan")) << ','
         << (gains ? 1 : 0) << '\n';
    }
  }
}

void write_crossing_set_csv(std::ostream& os, const std::vector<CurveFamily>& families) {
  os << "n,j,a,b,half_open,delta1a,delta2a,delta1b,delta2b\n";
  for (const CurveFamily& f : families) {
    for (const CrossingInterval& c : f.intervals) {
      os << c.n << ',' << c.j << ',' << format_number(c.a) << ',' << format_number(c.b) << ','
         << (c.half_open ? 1 : 0) << ',' << c.delta1a << ',' << c.delta2a << ',' << c.delta1b << ','
         << c.delta2b << '\n';
    }
  }
}

void write_connectivity_csv(std::ostream& os, const CurveFamily& fam) {
  os << "n,j,plus_j1,plus_j2,minus_j1,minus_j2,endpoint,distance\n";
  for (const Link& l : connectivity(fam.segments)) {
    const CurveSegment& p = fam.segments[l.plus_id];
    const CurveSegment& m = fam.segments[l.minus_id];
    os << p.n << ',' << p.j << ',' << p.j1 << ',' << p.j2 << ',' << m.j1 << ',' << m.j2 << ','
       << l.tag << ',' << format_number(l.distance) << '\n';
  }
}

void write_double_hopf_csv(std::ostream& os, const std::vector<DoubleHopfPoint>& pts,
                           const std::vector<bool>& on_boundary) {
  os << "tau1,tau2,omega1,omega2,n1,n2,resonance_flag,ratio,residual,refined,on_boundary\n";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const DoubleHopfPoint& p = pts[i];
    os << format_number(p.tau1_star) << ',' << format_number(p.tau2_star) << ','
       << format_number(p.omega1) << ',' << format_number(p.omega2) << ',' << p.n1 << ',' << p.n2
       << ',' << to_string(p.resonance.flag) << ',' << format_number(p.resonance.ratio) << ','
       << format_number(p.residual) << ',' << (p.refined ? 1 : 0) << ','
       << (i < on_boundary.size() && on_boundary[i] ? 1 : 0) << '\n';
  }
}

void write_semilines_csv(std::ostream& os, const std::vector<SemiLine>& lines) {
  os << "label,point_tau1,point_tau2,dir_tau1,dir_tau2,reciprocal_slope,side,kind,note\n";
  for (const SemiLine& l : lines) {
    os << l.label << ',' << format_number(l.tau1) << ',' << format_number(l.tau2) << ','
       << format_number(l.dir1) << ',' << format_number(l.dir2) << ','
       << format_number(l.reciprocal_slope) << ',' << l.side << ",\"" << l.kind << "\",\"" << l.note
       << "\"\n";
  }
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,u0,v0,u0_lag\n";
  for (const TrajectoryRecord& r : traj.records) {
    os << format_number(r.t) << ',' << format_number(r.u0) << ',' << format_number(r.v0) << ','
       << format_number(r.u0_lag) << '\n';
  }
}

void write_poincare_csv(std::ostream& os, const PoincareResult& pr) {
  os << "section,t,u0,u0_lag\n";
  for (const SectionPoint& p : pr.points) {
    os << to_string(pr.section) << ',' << format_number(p.t) << ',' << format_number(p.x) << ','
       << format_number(p.y) << '\n';
  }
}

namespace {

constexpr double kWidth = 640.0, kHeight = 480.0, kMargin = 56.0;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string tick(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

}  // namespace

SvgPlot::SvgPlot(double x0, double x1, double y0, double y1, std::string x_label, std::string y_label)
    : x0_(x0), x1_(x1), y0_(y0), y1_(y1), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {
  if (!(x1_ > x0_)) x1_ = x0_ + 1.0;
  if (!(y1_ > y0_)) y1_ = y0_ + 1.0;
}

double SvgPlot::sx(double x) const { return kMargin + (x - x0_) / (x1_ - x0_) * (kWidth - 2 * kMargin); }
double SvgPlot::sy(double y) const {
  return kHeight - kMargin - (y - y0_) / (y1_ - y0_) * (kHeight - 2 * kMargin);
}

void SvgPlot::polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color,
                       double width) {
  if (pts.size() < 2) return;
  body_ += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" + num(width) + "\" points=\"";
  for (const auto& [x, y] : pts) {
    body_ += num(sx(x)) + "," + num(sy(y)) + " ";
  }
  body_ += "\"/>\n";
}

void SvgPlot::dots(const std::vector<std::pair<double, double>>& pts, const std::string& color,
                   double radius) {
  for (const auto& [x, y] : pts) {
    body_ += "<circle cx=\"" + num(sx(x)) + "\" cy=\"" + num(sy(y)) + "\" r=\"" + num(radius) +
             "\" fill=\"" + color + "\"/>\n";
  }
}

void SvgPlot::label(double x, double y, const std::string& text) {
  body_ += "<text x=\"" + num(sx(x) + 4) + "\" y=\"" + num(sy(y) - 4) +
           "\" font-size=\"11\" font-family=\"sans-serif\">" + text + "</text>\n";
}

std::string SvgPlot::str() const {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<defs><clipPath id=\"plot\"><rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\""
     << kWidth - 2 * kMargin << "\" height=\"" << kHeight - 2 * kMargin << "\"/></clipPath></defs>\n";
  os << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kWidth - 2 * kMargin
     << "\" height=\"" << kHeight - 2 * kMargin << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double fx = x0_ + (x1_ - x0_) * k / 4.0;
    const double fy = y0_ + (y1_ - y0_) * k / 4.0;
    os << "<text x=\"" << num(sx(fx)) << "\" y=\"" << num(kHeight - kMargin + 16)
       << "\" font-size=\"11\" text-anchor=\"middle\" font-family=\"sans-serif\">" << tick(fx) << "</text>\n";
    os << "<text x=\"" << num(kMargin - 6) << "\" y=\"" << num(sy(fy) + 4)
       << "\" font-size=\"11\" text-anchor=\"end\" font-family=\"sans-serif\">" << tick(fy) << "</text>\n";
  }
  os << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
     << "\" font-size=\"13\" text-anchor=\"middle\" font-family=\"sans-serif\">" << x_label_ << "</text>\n";
  os << "<text x=\"14\" y=\"" << kHeight / 2 << "\" font-size=\"13\" text-anchor=\"middle\" "
     << "font-family=\"sans-serif\" transform=\"rotate(-90 14 " << kHeight / 2 << ")\">" << y_label_
     << "</text>\n";
  os << "<g clip-path=\"url(#plot)\">\n" << body_ << "</g>\n</svg>\n";
  return os.str();
}

std::string curves_svg(const std::vector<CurveFamily>& families, Window window,
                       const std::vector<DoubleHopfPoint>& marks) {
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  SvgPlot plot(0.0, window.tau1_max, 0.0, window.tau2_max, "tau1", "tau2");
  for (const CurveFamily& f : families) {
    const std::string color = colors[f.q.n % 6];
    for (const CurveSegment& s : f.segments) {
      std::vector<std::pair<double, double>> pts;
      pts.reserve(s.samples.size());
      for (const CurveSample& c : s.samples) pts.emplace_back(c.tau1, c.tau2);
      plot.polyline(pts, color, s.sign > 0 ? 1.2 : 0.8);
    }
  }
  for (const DoubleHopfPoint& p : marks) {
    plot.dots({{p.tau1_star, p.tau2_star}}, "black", 3.0);
    plot.label(p.tau1_star, p.tau2_star, "HH");
  }
  return plot.str();
}

std::string poincare_svg(const PoincareResult& pr) {
  std::vector<std::pair<double, double>> pts;
  for (const SectionPoint& p : pr.points) pts.emplace_back(p.x, p.y);
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (!pts.empty()) {
    const auto [xa, xb] = std::minmax_element(pts.begin(), pts.end(),
                                              [](auto& a, auto& b) { return a.first < b.first; });
    const auto [ya, yb] = std::minmax_element(pts.begin(), pts.end(),
                                              [](auto& a, auto& b) { return a.second < b.second; });
    const double px = std::max(1e-9, 0.05 * (xb->first - xa->first));
    const double py = std::max(1e-9, 0.05 * (yb->second - ya->second));
    x0 = xa->first - px;
    x1 = xb->first + px;
    y0 = ya->second - py;
    y1 = yb->second + py;
  }
  SvgPlot plot(x0, x1, y0, y1, "u(0,t)", "u(0,t-tau1)");
  plot.dots(pts, "#1f77b4", 1.0);
  return plot.str();
}

}  // namespace lgdelay
