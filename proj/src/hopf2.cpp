#include "lgdelay/hopf2.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "lgdelay/direction.hpp"
#include "lgdelay/errors.hpp"

namespace lgdelay {

std::string to_string(Resonance r) {
  switch (r) {
    case Resonance::none:
      return "none";
    case Resonance::near:
      return "near";
    case Resonance::strong:
      return "strong";
  }
  return "none";
}

ResonanceInfo resonance_check(double omega1, double omega2, const ResonanceBands& bands) {
  if (!(omega1 > 0.0) || !(omega2 > 0.0)) {
    throw parameter_error("frequencies must be positive");
  }
  ResonanceInfo info;
  info.ratio = omega1 / omega2;
  info.distance = INFINITY;
  for (int p = 1; p <= 3; ++p) {
    for (int q = 1; q <= 3; ++q) {
      const double d = std::abs(info.ratio - static_cast<double>(p) / q);
      if (d < info.distance) {
        info.distance = d;
        info.p = p;
        info.q = q;
      }
    }
  }
  if (info.distance < bands.strong) {
    info.flag = Resonance::strong;
  } else if (info.distance < bands.near) {
    info.flag = Resonance::near;
  }
  return info;
}

ResonanceInfo resonance_check(const DoubleHopfPoint& pt, const ResonanceBands& bands) {
  return resonance_check(pt.omega1, pt.omega2, bands);
}

namespace {

using Vec4 = Eigen::Vector4d;

Vec4 residual_vector(const QuasiPolynomial& qa, const QuasiPolynomial& qb, const Vec4& x) {
  const cplx da = eval_D(qa, cplx(0.0, x[2]), x[0], x[1]);
  const cplx db = eval_D(qb, cplx(0.0, x[3]), x[0], x[1]);
  return {da.real(), da.imag(), db.real(), db.imag()};
}

Eigen::Matrix4d jacobian(const QuasiPolynomial& qa, const QuasiPolynomial& qb, const Vec4& x) {
  const PartialsOptions loose{INFINITY, 0.0};
  const CrossingData ca = partials(qa, x[2], x[0], x[1], loose);
  const CrossingData cb = partials(qb, x[3], x[0], x[1], loose);
  // d/domega of D(i omega) is i D'(i omega): (Re, Im) -> (-I0, R0).
  Eigen::Matrix4d j = Eigen::Matrix4d::Zero();
  j.row(0) << ca.R1, ca.R2, -ca.I0, 0.0;
  j.row(1) << ca.I1, ca.I2, ca.R0, 0.0;
  j.row(2) << cb.R1, cb.R2, 0.0, -cb.I0;
  j.row(3) << cb.I1, cb.I2, 0.0, cb.R0;
  return j;
}

struct NewtonResult {
  Vec4 x;
  bool converged = false;
};

NewtonResult damped_newton(const QuasiPolynomial& qa, const QuasiPolynomial& qb, Vec4 x,
                           const IntersectOptions& opts) {
  NewtonResult r;
  Vec4 f = residual_vector(qa, qb, x);
  for (int it = 0; it < opts.max_newton_iterations; ++it) {
    if (f.norm() < opts.newton_tol) {
      r.converged = true;
      break;
    }
    const Eigen::Matrix4d jac = jacobian(qa, qb, x);
    const Eigen::FullPivLU<Eigen::Matrix4d> lu(jac);
    if (!lu.isInvertible()) {
      break;
    }
    const Vec4 step = lu.solve(-f);
    double t = 1.0;
    bool improved = false;
    for (int h = 0; h < 30; ++h, t *= 0.5) {
      const Vec4 trial = x + t * step;
      if (!(trial[2] > 0.0 && trial[3] > 0.0)) continue;
      const Vec4 ft = residual_vector(qa, qb, trial);
      if (ft.norm() < f.norm()) {
        x = trial;
        f = ft;
        improved = true;
        break;
      }
    }
    if (!improved) {
      r.converged = f.norm() < 1e3 * opts.newton_tol;
      break;
    }
  }
  if (!r.converged) {
    r.converged = f.norm() < opts.newton_tol;
  }
  r.x = x;
  return r;
}

struct Box {
  double x0, x1, y0, y1;
};

Box bounds(const std::vector<CurveSample>& s, std::size_t from, std::size_t to) {
  Box b{INFINITY, -INFINITY, INFINITY, -INFINITY};
  for (std::size_t k = from; k <= to; ++k) {
    b.x0 = std::min(b.x0, s[k].tau1);
    b.x1 = std::max(b.x1, s[k].tau1);
    b.y0 = std::min(b.y0, s[k].tau2);
    b.y1 = std::max(b.y1, s[k].tau2);
  }
  return b;
}

bool overlap(const Box& a, const Box& b) {
  return a.x0 <= b.x1 && b.x0 <= a.x1 && a.y0 <= b.y1 && b.y0 <= a.y1;
}

bool near_point(double x, double y, const CurveSample& s, double tol) {
  return std::hypot(x - s.tau1, y - s.tau2) < tol;
}

/// Shared endpoints of linked + / - segments of one interval are not double-Hopf points.
bool at_shared_endpoint(const CurveSegment& a, const CurveSegment& b, double x, double y, double tol) {
  if (a.n != b.n || a.j != b.j) return false;
  const CurveSample* ends_a[2] = {&a.samples.front(), &a.samples.back()};
  const CurveSample* ends_b[2] = {&b.samples.front(), &b.samples.back()};
  for (const CurveSample* ea : ends_a) {
    for (const CurveSample* eb : ends_b) {
      if (near_point(ea->tau1, ea->tau2, *eb, tol) && near_point(x, y, *ea, 1e3 * tol)) {
        return true;
      }
    }
  }
  return false;
}

DoubleHopfPoint make_point(const QuasiPolynomial& qa, const QuasiPolynomial& qb, const Vec4& x,
                           bool refined, const IntersectOptions& opts) {
  DoubleHopfPoint pt;
  pt.tau1_star = x[0];
  pt.tau2_star = x[1];
  pt.omega1 = x[2];
  pt.omega2 = x[3];
  pt.n1 = qa.n;
  pt.n2 = qb.n;
  if (pt.omega1 > pt.omega2) {
    std::swap(pt.omega1, pt.omega2);
    std::swap(pt.n1, pt.n2);
  }
  pt.refined = refined;
  const Vec4 f = residual_vector(qa, qb, x);
  pt.residual = std::max(std::hypot(f[0], f[1]), std::hypot(f[2], f[3]));
  pt.resonance = resonance_check(pt.omega1, pt.omega2, opts.bands);
  return pt;
}

}  // namespace

std::vector<DoubleHopfPoint> intersect(const QuasiPolynomial& qa, const CurveSegment& a,
                                       const QuasiPolynomial& qb, const CurveSegment& b,
                                       const IntersectOptions& opts) {
  std::vector<DoubleHopfPoint> out;
  const auto& sa = a.samples;
  const auto& sb = b.samples;
  if (sa.size() < 2 || sb.size() < 2) {
    return out;
  }
  constexpr std::size_t kChunk = 16;
  for (std::size_t ca = 0; ca + 1 < sa.size(); ca += kChunk) {
    const std::size_t ea = std::min(ca + kChunk, sa.size() - 1);
    const Box ba = bounds(sa, ca, ea);
    for (std::size_t cb = 0; cb + 1 < sb.size(); cb += kChunk) {
      const std::size_t eb = std::min(cb + kChunk, sb.size() - 1);
      if (!overlap(ba, bounds(sb, cb, eb))) continue;
      for (std::size_t i = ca; i < ea; ++i) {
        for (std::size_t k = cb; k < eb; ++k) {
          const double px = sa[i].tau1, py = sa[i].tau2;
          const double rx = sa[i + 1].tau1 - px, ry = sa[i + 1].tau2 - py;
          const double qx = sb[k].tau1, qy = sb[k].tau2;
          const double sx = sb[k + 1].tau1 - qx, sy = sb[k + 1].tau2 - qy;
          const double den = rx * sy - ry * sx;
          if (den == 0.0) continue;
          const double t = ((qx - px) * sy - (qy - py) * sx) / den;
          const double u = ((qx - px) * ry - (qy - py) * rx) / den;
          // Half-open parameter ranges so a crossing at a shared vertex is seen once.
          if (t < 0.0 || t >= 1.0 || u < 0.0 || u >= 1.0) continue;
          const double x = px + t * rx, y = py + t * ry;
          if (at_shared_endpoint(a, b, x, y, opts.junction_tol)) continue;
          const Vec4 x0{x, y, sa[i].omega + t * (sa[i + 1].omega - sa[i].omega),
                        sb[k].omega + u * (sb[k + 1].omega - sb[k].omega)};
          const NewtonResult nr = damped_newton(qa, qb, x0, opts);
          if (nr.converged && qa.n == qb.n && std::abs(nr.x[2] - nr.x[3]) < opts.same_root_tol) {
            continue;
          }
          out.push_back(make_point(qa, qb, nr.converged ? nr.x : x0, nr.converged, opts));
        }
      }
    }
  }
  return out;
}

std::vector<DoubleHopfPoint> find_double_hopf(const std::vector<CurveFamily>& families, Window window,
                                              const IntersectOptions& opts) {
  struct Ref {
    const CurveFamily* fam;
    const CurveSegment* seg;
  };
  std::vector<Ref> refs;
  for (const CurveFamily& f : families) {
    for (const CurveSegment& s : f.segments) refs.push_back({&f, &s});
  }
  std::vector<DoubleHopfPoint> all;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    for (std::size_t k = i + 1; k < refs.size(); ++k) {
      auto pts = intersect(refs[i].fam->q, *refs[i].seg, refs[k].fam->q, *refs[k].seg, opts);
      for (auto& p : pts) {
        if (p.tau1_star >= 0.0 && p.tau1_star <= window.tau1_max && p.tau2_star >= 0.0 &&
            p.tau2_star <= window.tau2_max) {
          all.push_back(p);
        }
      }
    }
  }
  std::sort(all.begin(), all.end(), [](const DoubleHopfPoint& x, const DoubleHopfPoint& y) {
    if (x.tau1_star != y.tau1_star) return x.tau1_star < y.tau1_star;
    return x.tau2_star < y.tau2_star;
  });
  std::vector<DoubleHopfPoint> out;
  for (const DoubleHopfPoint& p : all) {
    const bool dup = std::any_of(out.begin(), out.end(), [&](const DoubleHopfPoint& o) {
      return o.n1 == p.n1 && o.n2 == p.n2 && std::abs(o.tau1_star - p.tau1_star) < 1e-6 &&
             std::abs(o.tau2_star - p.tau2_star) < 1e-6 && std::abs(o.omega1 - p.omega1) < 1e-6 &&
             std::abs(o.omega2 - p.omega2) < 1e-6;
    });
    if (!dup) out.push_back(p);
  }
  return out;
}

bool on_stability_boundary(const std::vector<CurveFamily>& families, const DoubleHopfPoint& pt,
                           double radius, int probes) {
  for (int k = 0; k < probes; ++k) {
    const double ang = 2.0 * M_PI * (k + 0.5) / probes;
    const Vec2 target{pt.tau1_star + radius * std::cos(ang), pt.tau2_star + radius * std::sin(ang)};
    if (target.x < 0.0 || target.y < 0.0) continue;
    try {
      if (unstable_root_count(families, target) == 0) {
        return true;
      }
    } catch (const path_error&) {
      // A probe path through a curve intersection says nothing; try the next one.
    }
  }
  return false;
}

}  // namespace lgdelay
