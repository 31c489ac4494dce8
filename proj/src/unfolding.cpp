#include "lgdelay/unfolding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "lgdelay/errors.hpp"

namespace lgdelay {

EigenData eigen_data(const ModelParams& p, const DoubleHopfPoint& pt) {
  if (pt.n1 != 0 || pt.n2 != 0) {
    throw unsupported_mode_error("eigenvector data is implemented for modes n1 = n2 = 0 only");
  }
  validate(p);
  const Equilibrium e = equilibrium(p);
  const double q1 = 1.0 - p.m;
  const double t1 = pt.tau1_star;
  const double t2 = pt.tau2_star;
  const double k2 = p.d2 * wavenumber_sq(p, 0);

  auto pair_for = [&](double w, cplx& r, cplx& r_star, cplx& D) {
    const cplx i(0.0, 1.0);
    const cplx e1 = std::exp(-i * w * t1);
    const cplx e2 = std::exp(-i * w * t2);
    const cplx den = p.r2 * e2 + k2 + i * w;
    r = p.gamma * q1 * p.r2 * e2 / den;
    r_star = -p.a * q1 * e.u_star / den;
    D = 1.0 / (1.0 + r_star * r - t1 * (p.r1 / p.K) * e.u_star * e1 +
               r_star * p.gamma * q1 * p.r2 * t2 * e2 - p.r2 * t2 * e2 * r_star * r);
  };
  EigenData out;
  pair_for(pt.omega1, out.r12, out.r12_star, out.D1);
  pair_for(pt.omega2, out.r32, out.r32_star, out.D2);
  return out;
}

std::string to_string(UnfoldingCase c) {
  static const char* names[] = {"Ia", "Ib", "II", "III", "IVa", "IVb",
                                "V",  "VIa", "VIb", "VIIa", "VIIb", "VIII"};
  return names[static_cast<int>(c)];
}

UnfoldingCase classify_case(double d, double b, double c, double d_minus_bc) {
  if (d == 0.0 || b == 0.0 || c == 0.0 || d_minus_bc == 0.0) {
    throw degenerate_unfolding_error("unfolding is degenerate: one of d, b, c, d-bc vanishes");
  }
  const bool dp = d > 0.0, bp = b > 0.0, cp = c > 0.0, ep = d_minus_bc > 0.0;
  using U = UnfoldingCase;
  if (dp) {
    if (bp && cp) return ep ? U::Ia : U::Ib;
    if (bp && !cp && ep) return U::II;
    if (!bp && cp && ep) return U::III;
    if (!bp && !cp) return ep ? U::IVa : U::IVb;
  } else {
    if (bp && cp && !ep) return U::V;
    if (bp && !cp) return ep ? U::VIa : U::VIb;
    if (!bp && cp) return ep ? U::VIIa : U::VIIb;
    if (!bp && !cp && !ep) return U::VIII;
  }
  // d = 1 with bc < 0 forces d - bc > 0, d = -1 with bc > 0 forces d - bc < 0,
  // so only inconsistent input (e.g. d_minus_bc not equal to d - bc) ends up here.
  throw degenerate_unfolding_error("sign pattern of (d, b, c, d-bc) is inconsistent");
}

UnfoldingParams unfold(const NormalFormCoeffs& K, const DoubleHopfPoint&) {
  if (K.K2100.real() == 0.0 || K.K0021.real() == 0.0) {
    throw degenerate_unfolding_error("Re K2100 and Re K0021 must be nonzero");
  }
  UnfoldingParams up;
  up.eps1 = K.K2100.real() > 0.0 ? 1 : -1;
  up.eps2 = K.K0021.real() > 0.0 ? 1 : -1;
  up.nu_map = {{{up.eps1 * K.K11.real(), up.eps1 * K.K21.real()},
                {up.eps1 * K.K13.real(), up.eps1 * K.K23.real()}}};
  up.d = up.eps1 * up.eps2;
  up.b = up.d * K.K1011.real() / K.K0021.real();
  up.c = K.K1110.real() / K.K2100.real();
  up.d_minus_bc = up.d - up.b * up.c;
  if (up.d_minus_bc == 0.0) {
    throw degenerate_unfolding_error("d - bc vanishes");
  }
  up.case_label = classify_case(up.d, up.b, up.c, up.d_minus_bc);
  return up;
}

std::array<double, 2> to_nu(const UnfoldingParams& up, double sigma1, double sigma2) {
  return {up.nu_map[0][0] * sigma1 + up.nu_map[0][1] * sigma2,
          up.nu_map[1][0] * sigma1 + up.nu_map[1][1] * sigma2};
}

namespace {

struct Ray {
  int index;
  const char* kind;
  double nu1;
  double nu2;
  const char* note;
};

std::vector<Ray> critical_rays(const UnfoldingParams& up) {
  const double b = up.b, c = up.c, d = up.d;
  std::vector<Ray> rays = {
      {1, "onset of the omega2 periodic orbit", 1.0, 0.0, ""},
      {2, "onset of the omega1 periodic orbit", 0.0, 1.0, ""},
      // Mixed-mode equilibrium branching off the omega1 orbit (rho1^2 = -nu1 > 0).
      {3, "2-torus branches from the omega1 periodic orbit", -1.0, -c, ""},
      // Mixed-mode equilibrium branching off the omega2 orbit (rho2^2 = -nu2/d > 0).
      {6, "2-torus branches from the omega2 periodic orbit", -b, -d, ""},
      {7, "onset of the omega2 periodic orbit", -1.0, 0.0, ""},
      {8, "onset of the omega1 periodic orbit", 0.0, -1.0, ""},
  };
  // The mixed-mode equilibrium has a Hopf point on rho1^2 = rho2^2 when d = -1 and d - bc > 0.
  if (d < 0.0 && up.d_minus_bc > 0.0) {
    rays.push_back({5, "3-torus (Hopf of the mixed-mode equilibrium)", -(1.0 + b), 1.0 - c, ""});
    if (up.case_label == UnfoldingCase::VIa) {
      rays.push_back({4, "heteroclinic breakdown of the 3-torus", -(1.0 + b), 1.0 - c,
                      "linear approximation; shares the Hopf line direction"});
    }
  }
  std::sort(rays.begin(), rays.end(), [](const Ray& x, const Ray& y) { return x.index < y.index; });
  return rays;
}

double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * M_PI);
  return a < 0.0 ? a + 2.0 * M_PI : a;
}

std::string side_text(const DoubleHopfPoint& pt, double dir1, double dir2) {
  char buf[96];
  std::string s;
  if (std::abs(dir1) > 1e-12) {
    std::snprintf(buf, sizeof buf, "tau1%s%.4f", dir1 > 0 ? ">" : "<", pt.tau1_star);
    s += buf;
  }
  if (std::abs(dir2) > 1e-12) {
    std::snprintf(buf, sizeof buf, "%stau2%s%.4f", s.empty() ? "" : ";", dir2 > 0 ? ">" : "<",
                  pt.tau2_star);
    s += buf;
  }
  return s;
}

}  // namespace

std::vector<SemiLine> semilines(const UnfoldingParams& up, const DoubleHopfPoint& pt) {
  const auto& M = up.nu_map;
  const double det = M[0][0] * M[1][1] - M[0][1] * M[1][0];
  if (det == 0.0 || !std::isfinite(det)) {
    throw singular_error("nu_map is singular");
  }
  std::vector<SemiLine> out;
  for (const Ray& r : critical_rays(up)) {
    const double s1 = (M[1][1] * r.nu1 - M[0][1] * r.nu2) / det;
    const double s2 = (-M[1][0] * r.nu1 + M[0][0] * r.nu2) / det;
    const double len = std::hypot(s1, s2);
    SemiLine l;
    l.label = "L" + std::to_string(r.index);
    l.kind = r.kind;
    l.tau1 = pt.tau1_star;
    l.tau2 = pt.tau2_star;
    l.dir1 = s1 / len;
    l.dir2 = s2 / len;
    l.reciprocal_slope = l.dir2 != 0.0 ? l.dir1 / l.dir2 : INFINITY;
    l.side = side_text(pt, l.dir1, l.dir2);
    l.nu_angle = wrap_angle(std::atan2(r.nu2, r.nu1));
    l.note = r.note;
    out.push_back(std::move(l));
  }
  return out;
}

std::string region_of(const UnfoldingParams& up, const DoubleHopfPoint& pt, double tau1, double tau2,
                      const RegionOptions& opts) {
  const double s1 = tau1 - pt.tau1_star;
  const double s2 = tau2 - pt.tau2_star;
  const double r = std::hypot(s1, s2);
  if (r > opts.chart_radius) {
    throw chart_range_error("point lies outside the local chart around the double-Hopf point");
  }
  if (r == 0.0) {
    throw boundary_error("point coincides with the double-Hopf point");
  }
  const std::vector<Ray> rays = critical_rays(up);
  // L1 always exists and is the reference direction for numbering.
  const double base = std::atan2(rays.front().nu2, rays.front().nu1);
  std::vector<std::pair<double, int>> rel;
  for (const Ray& ray : rays) {
    rel.emplace_back(wrap_angle(std::atan2(ray.nu2, ray.nu1) - base), ray.index);
  }
  std::sort(rel.begin(), rel.end());
  const auto nu = to_nu(up, s1, s2);
  const double alpha = wrap_angle(std::atan2(nu[1], nu[0]) - base);
  for (const auto& [angle, index] : rel) {
    const double gap = std::abs(alpha - angle);
    if (std::min(gap, 2.0 * M_PI - gap) < opts.angle_tol) {
      throw boundary_error("point lies on semi-line L" + std::to_string(index));
    }
  }
  const int m = static_cast<int>(rel.size());
  int i = m - 1;
  for (int k = 0; k + 1 < m; ++k) {
    if (alpha > rel[k].first && alpha < rel[k + 1].first) {
      i = k;
      break;
    }
  }
  return "D" + std::to_string(m - i);
}

}  // namespace lgdelay
