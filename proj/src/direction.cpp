#include "lgdelay/direction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lgdelay/errors.hpp"

namespace lgdelay {

CrossingData partials(const QuasiPolynomial& q, double omega, double tau1, double tau2,
                      const PartialsOptions& opts) {
  const cplx lam(0.0, omega);
  const cplx e1 = std::exp(-lam * tau1);
  const cplx e2 = std::exp(-lam * tau2);
  const cplx e12 = e1 * e2;
  const auto p = coefficients_at(q, lam);
  const cplx d = p[0] + p[1] * e1 + p[2] * e2 + p[3] * e12;

  CrossingData cd;
  cd.omega = omega;
  cd.tau1 = tau1;
  cd.tau2 = tau2;
  cd.residual = std::abs(d);
  if (cd.residual > opts.residual_tol) {
    throw off_curve_error("point (" + std::to_string(tau1) + ", " + std::to_string(tau2) +
                          ") is not on a switching curve for omega = " + std::to_string(omega));
  }

  const cplx d_lambda = q.p0.derivative()(lam) + (q.p1.derivative()(lam) - tau1 * p[1]) * e1 +
                        (q.p2.derivative()(lam) - tau2 * p[2]) * e2 +
                        (q.p3.derivative()(lam) - (tau1 + tau2) * p[3]) * e12;
  const cplx d_tau1 = -lam * (p[1] * e1 + p[3] * e12);
  const cplx d_tau2 = -lam * (p[2] * e2 + p[3] * e12);
  cd.R0 = d_lambda.real();
  cd.I0 = d_lambda.imag();
  cd.R1 = d_tau1.real();
  cd.I1 = d_tau1.imag();
  cd.R2 = d_tau2.real();
  cd.I2 = d_tau2.imag();

  const double n0 = cd.R0 * cd.R0 + cd.I0 * cd.I0;
  if (n0 < opts.multiple_root_tol) {
    throw multiple_root_error("i omega is a multiple root at omega = " + std::to_string(omega));
  }
  const double det = cd.R1 * cd.I2 - cd.R2 * cd.I1;
  cd.delta = det == 0.0 ? 0.0 : n0 / det;
  cd.two_more_on_right = det > 0.0;
  return cd;
}

RightRegionEffect crossing_direction(const CrossingData& cd, int sign) {
  if (sign != 1 && sign != -1) {
    throw parameter_error("branch sign must be +1 or -1");
  }
  if (cd.delta != 0.0 && (cd.delta > 0.0) != (sign > 0)) {
    throw numerical_error("sign of delta contradicts the branch sign at omega = " +
                          std::to_string(cd.omega));
  }
  return sign > 0 ? RightRegionEffect::gains_two : RightRegionEffect::loses_two;
}

double direction_indicator(const CrossingData& cd, double l1, double l2) {
  return -l1 * (cd.I0 * cd.I1 + cd.R0 * cd.R1) - l2 * (cd.I0 * cd.I2 + cd.R0 * cd.R2);
}

Crossing direction_along(const CrossingData& cd, double l1, double l2, double tol) {
  if (l1 == 0.0 && l2 == 0.0) {
    throw parameter_error("direction vector must be nonzero");
  }
  const double e = direction_indicator(cd, l1, l2);
  if (e > tol) return Crossing::gains_two;
  if (e < -tol) return Crossing::loses_two;
  return Crossing::tangent;
}

Vec2 curve_tangent(const CrossingData& cd) {
  // Differentiating D(i w; tau(w)) = 0 gives M dtau/dw = -(dRe/dw, dIm/dw) = -(-I0, R0).
  const double det = cd.R1 * cd.I2 - cd.R2 * cd.I1;
  if (det == 0.0) {
    throw singular_error("tangent undefined at omega = " + std::to_string(cd.omega));
  }
  const double b1 = cd.I0;
  const double b2 = -cd.R0;
  return {(cd.I2 * b1 - cd.R2 * b2) / det, (-cd.I1 * b1 + cd.R1 * b2) / det};
}

Vec2 right_normal(const CrossingData& cd) {
  const Vec2 t = curve_tangent(cd);
  return {t.y, -t.x};
}

namespace {

double side(const TauPoint& t, Vec2 target) { return t.tau1 * target.y - t.tau2 * target.x; }

}  // namespace

std::vector<PathCrossing> path_crossings(const std::vector<CurveFamily>& families, Vec2 target,
                                         const PathOptions& opts) {
  std::vector<PathCrossing> out;
  const double len = std::hypot(target.x, target.y);
  if (len == 0.0) {
    return out;
  }
  for (const CurveFamily& fam : families) {
    for (std::size_t si = 0; si < fam.segments.size(); ++si) {
      const CurveSegment& seg = fam.segments[si];
      const auto& smp = seg.samples;
      for (std::size_t k = 0; k + 1 < smp.size(); ++k) {
        const TauPoint pa{smp[k].tau1, smp[k].tau2};
        const TauPoint pb{smp[k + 1].tau1, smp[k + 1].tau2};
        double ha = side(pa, target);
        double hb = side(pb, target);
        if ((ha > 0.0) == (hb > 0.0)) {
          continue;
        }
        // Exact bisection on the curve itself, not on the chord.
        double wa = smp[k].omega, wb = smp[k + 1].omega;
        TauPoint pm = pa;
        for (int it = 0; it < 200; ++it) {
          const double wm = 0.5 * (wa + wb);
          if (wm <= wa || wm >= wb) break;
          pm = tau_curve(fam.q, wm, seg.sign, seg.j1, seg.j2);
          const double hm = side(pm, target);
          if ((hm > 0.0) == (ha > 0.0)) {
            wa = wm;
            ha = hm;
          } else {
            wb = wm;
          }
        }
        const double wc = 0.5 * (wa + wb);
        pm = tau_curve(fam.q, wc, seg.sign, seg.j1, seg.j2);
        const double s = (pm.tau1 * target.x + pm.tau2 * target.y) / (len * len);
        if (s <= 0.0 || s > 1.0 + opts.on_curve_tol / len) {
          continue;
        }
        if (std::abs(1.0 - s) * len < opts.on_curve_tol) {
          throw path_error("target lies on a switching curve of mode " + std::to_string(fam.q.n));
        }
        if (s > 1.0) {
          continue;
        }
        const CrossingData cd = partials(fam.q, wc, pm.tau1, pm.tau2);
        const Crossing c = direction_along(cd, target.x, target.y);
        if (c == Crossing::tangent) {
          throw path_error("path is tangent to a switching curve at omega = " + std::to_string(wc));
        }
        PathCrossing pc;
        pc.s = s;
        pc.n = fam.q.n;
        pc.segment = si;
        pc.sign = seg.sign;
        pc.omega = wc;
        pc.tau1 = pm.tau1;
        pc.tau2 = pm.tau2;
        pc.change = static_cast<int>(c);
        out.push_back(pc);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const PathCrossing& x, const PathCrossing& y) {
    return x.s < y.s;
  });
  for (std::size_t i = 1; i < out.size(); ++i) {
    if ((out[i].s - out[i - 1].s) * len < opts.coincidence_tol) {
      throw path_error("path passes through an intersection of switching curves near (" +
                       std::to_string(out[i].tau1) + ", " + std::to_string(out[i].tau2) + ")");
    }
  }
  return out;
}

int unstable_root_count(const std::vector<CurveFamily>& families, Vec2 target,
                        const PathOptions& opts) {
  int count = 0;
  for (const PathCrossing& c : path_crossings(families, target, opts)) {
    count += c.change;
  }
  if (count < 0) {
    throw numerical_error("root accounting produced a negative count");
  }
  return count;
}

bool stable_region_check(const std::vector<CurveFamily>& families, double tau1, double tau2) {
  if (tau1 < 0.0 || tau2 < 0.0) {
    throw parameter_error("delays must be non-negative");
  }
  return unstable_root_count(families, {tau1, tau2}) == 0;
}

bool stable_region_check(const ModelParams& p, double tau1, double tau2, int n_max) {
  if (!zero_delay_stable(p, n_max)) {
    throw numerical_error("equilibrium is not stable without delay; root accounting needs a stable start");
  }
  const Window w{std::max(1.0, 1.25 * tau1 + 0.5), std::max(1.0, 1.25 * tau2 + 0.5)};
  return stable_region_check(build_families(p, w, n_max), tau1, tau2);
}

}  // namespace lgdelay
