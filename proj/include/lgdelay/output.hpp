#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "lgdelay/hopf2.hpp"
#include "lgdelay/simulate.hpp"
#include "lgdelay/switching.hpp"
#include "lgdelay/unfolding.hpp"

namespace lgdelay {

/// Shortest decimal form that round-trips a double, so reruns are byte-identical.
std::string format_number(double x);

void write_curves_csv(std::ostream& os, const std::vector<CurveSegment>& segs);
/// Same rows as write_curves_csv plus delta and gains_on_right for each sample.
void write_directions_csv(std::ostream& os, const CurveFamily& fam);
void write_crossing_set_csv(std::ostream& os, const std::vector<CurveFamily>& families);
void write_connectivity_csv(std::ostream& os, const CurveFamily& fam);
void write_double_hopf_csv(std::ostream& os, const std::vector<DoubleHopfPoint>& pts,
                           const std::vector<bool>& on_boundary);
void write_semilines_csv(std::ostream& os, const std::vector<SemiLine>& lines);
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
void write_poincare_csv(std::ostream& os, const PoincareResult& pr);

/// Minimal static SVG: framed axes with tick labels, polylines and dots.
class SvgPlot {
 public:
  SvgPlot(double x0, double x1, double y0, double y1, std::string x_label, std::string y_label);
  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color,
                double width = 1.0);
  void dots(const std::vector<std::pair<double, double>>& pts, const std::string& color,
            double radius = 1.2);
  void label(double x, double y, const std::string& text);
  std::string str() const;

 private:
  double sx(double x) const;
  double sy(double y) const;
  double x0_, x1_, y0_, y1_;
  std::string x_label_, y_label_;
  std::string body_;
};

std::string curves_svg(const std::vector<CurveFamily>& families, Window window,
                       const std::vector<DoubleHopfPoint>& marks = {});
std::string poincare_svg(const PoincareResult& pr);

}  // namespace lgdelay
