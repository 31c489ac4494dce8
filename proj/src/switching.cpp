#include "lgdelay/switching.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

#include "lgdelay/errors.hpp"

namespace lgdelay {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

/// Bisects a sign change of F to machine precision and returns the bracket end
/// where F <= 0, so that angles stay well defined there.
double refine_root(const QuasiPolynomial& q, double lo, double hi, bool lo_positive) {
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) {
      break;
    }
    if ((F(q, mid) > 0.0) == lo_positive) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo_positive ? hi : lo;
}

int indicator(double theta, double omega, const char* which, const CrossingSetOptions& opts,
              int n, std::vector<std::string>* warnings) {
  const int bit = theta > 0.5 * M_PI ? 1 : 0;
  if (warnings != nullptr && std::abs(theta - bit * M_PI) > opts.angle_tol) {
    warnings->push_back("mode " + std::to_string(n) + ": " + which + " at endpoint " +
                        fmt_double(omega) + " is " + fmt_double(theta) + " rad, not 0 or pi");
  }
  return bit;
}

}  // namespace

std::vector<CrossingInterval> crossing_set(const QuasiPolynomial& q, const CrossingSetOptions& opts,
                                           std::vector<std::string>* warnings) {
  if (opts.grid_points < 2) {
    throw parameter_error("crossing-set grid needs at least two points");
  }
  const double omega_max = std::max(opts.omega_max, cauchy_root_bound(F_polynomial(q)));
  const int g = opts.grid_points;
  std::vector<double> w(g + 1), f(g + 1);
  for (int i = 0; i <= g; ++i) {
    w[i] = omega_max * static_cast<double>(i) / g;
    f[i] = F(q, w[i]);
  }
  if (warnings != nullptr) {
    for (int i = 1; i < g; ++i) {
      if (std::abs(f[i]) < opts.tangency_tol && (f[i - 1] > 0.0) == (f[i + 1] > 0.0)) {
        warnings->push_back("mode " + std::to_string(q.n) + ": possible tangency of F near omega = " +
                            fmt_double(w[i]));
      }
    }
  }

  std::vector<CrossingInterval> out;
  bool inside = f[0] <= 0.0;
  CrossingInterval cur;
  cur.n = q.n;
  if (inside) {
    cur.a = 0.0;
    cur.half_open = true;
  }
  for (int i = 0; i < g; ++i) {
    const bool pos_lo = f[i] > 0.0;
    const bool pos_hi = f[i + 1] > 0.0;
    if (pos_lo == pos_hi) {
      continue;
    }
    const double root = refine_root(q, w[i], w[i + 1], pos_lo);
    if (!inside) {
      cur = CrossingInterval{};
      cur.n = q.n;
      cur.a = root;
      inside = true;
    } else {
      cur.b = root;
      cur.j = static_cast<int>(out.size()) + 1;
      out.push_back(cur);
      inside = false;
    }
  }
  if (inside) {
    throw numerical_error("crossing set of mode " + std::to_string(q.n) +
                          " does not close below omega = " + fmt_double(omega_max));
  }

  for (CrossingInterval& c : out) {
    if (!c.half_open) {
      const AngleData aa = angles(q, c.a);
      c.delta1a = indicator(aa.theta1, c.a, "theta1", opts, q.n, warnings);
      c.delta2a = indicator(aa.theta2, c.a, "theta2", opts, q.n, warnings);
    }
    const AngleData ab = angles(q, c.b);
    c.delta1b = indicator(ab.theta1, c.b, "theta1", opts, q.n, warnings);
    c.delta2b = indicator(ab.theta2, c.b, "theta2", opts, q.n, warnings);
  }
  return out;
}

TauPoint tau_curve(const AngleData& a, int sign, int j1, int j2) {
  if (!(a.omega > 0.0)) {
    throw parameter_error("switching curves are defined only for omega > 0");
  }
  if (sign != 1 && sign != -1) {
    throw parameter_error("branch sign must be +1 or -1");
  }
  TauPoint t;
  t.tau1 = (sign * a.theta1 - a.phi1 + kTwoPi * j1) / a.omega;
  t.tau2 = (-sign * a.theta2 - a.phi2 + kTwoPi * j2) / a.omega;
  return t;
}

TauPoint tau_curve(const QuasiPolynomial& q, double omega, int sign, int j1, int j2) {
  if (!(omega > 0.0)) {
    throw parameter_error("switching curves are defined only for omega > 0");
  }
  return tau_curve(angles(q, omega), sign, j1, j2);
}

std::vector<CurveSegment> generate_segments(const QuasiPolynomial& q,
                                            const std::vector<CrossingInterval>& intervals,
                                            Window window, const SegmentOptions& opts) {
  if (!(window.tau1_max > 0.0) || !(window.tau2_max > 0.0)) {
    throw parameter_error("window bounds must be positive");
  }
  if (opts.samples_per_interval < 2) {
    throw parameter_error("at least two samples per interval are required");
  }
  std::vector<CurveSegment> out;
  const int ns = opts.samples_per_interval;
  for (const CrossingInterval& iv : intervals) {
    const double lo = iv.half_open ? opts.half_open_start : iv.a;
    const double hi = iv.b;
    if (!(lo < hi)) {
      continue;
    }
    std::vector<AngleData> ang(ns);
    for (int k = 0; k < ns; ++k) {
      const double s = 0.5 * (1.0 - std::cos(M_PI * k / (ns - 1)));
      const double w = (k == 0) ? lo : (k == ns - 1 ? hi : lo + (hi - lo) * s);
      ang[k] = angles(q, w);
    }
    // Exact endpoint angles remove the arccos round-off amplification at F = 0.
    if (!iv.half_open) {
      ang.front().theta1 = iv.delta1a * M_PI;
      ang.front().theta2 = iv.delta2a * M_PI;
    }
    ang.back().theta1 = iv.delta1b * M_PI;
    ang.back().theta2 = iv.delta2b * M_PI;

    const int j1_hi = static_cast<int>(std::ceil(hi * window.tau1_max / kTwoPi)) + 1;
    const int j2_hi = static_cast<int>(std::ceil(hi * window.tau2_max / kTwoPi)) + 1;
    for (int sign : {-1, 1}) {
      for (int j1 = -1; j1 <= j1_hi; ++j1) {
        for (int j2 = -1; j2 <= j2_hi; ++j2) {
          int piece = 0;
          CurveSegment seg;
          bool in_window = false;
          auto flush = [&](bool reaches_end) {
            if (!seg.samples.empty() && in_window) {
              seg.ends_at_b = reaches_end;
              seg.piece = piece++;
              out.push_back(std::move(seg));
            }
            seg = CurveSegment{};
            in_window = false;
          };
          for (int k = 0; k < ns; ++k) {
            const TauPoint t = tau_curve(ang[k], sign, j1, j2);
            const bool keep = t.tau1 >= 0.0 && t.tau2 >= 0.0;
            if (!keep) {
              flush(false);
              continue;
            }
            if (seg.samples.empty()) {
              seg.n = q.n;
              seg.j = iv.j;
              seg.sign = sign;
              seg.j1 = j1;
              seg.j2 = j2;
              seg.unbounded = iv.half_open && k == 0;
              seg.starts_at_a = !iv.half_open && k == 0;
            }
            seg.samples.push_back({ang[k].omega, t.tau1, t.tau2});
            in_window = in_window || (t.tau1 <= window.tau1_max && t.tau2 <= window.tau2_max);
          }
          flush(true);
        }
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const CurveSegment& x, const CurveSegment& y) {
    return std::tie(x.n, x.j, x.sign, x.j1, x.j2, x.piece) <
           std::tie(y.n, y.j, y.sign, y.j1, y.j2, y.piece);
  });
  return out;
}

std::vector<CurveSegment> generate_segments(const QuasiPolynomial& q, Window window) {
  return generate_segments(q, crossing_set(q), window);
}

namespace {

double endpoint_distance(const CurveSample& x, const CurveSample& y) {
  return std::hypot(x.tau1 - y.tau1, x.tau2 - y.tau2);
}

void sort_links(std::vector<Link>& links) {
  std::sort(links.begin(), links.end(), [](const Link& x, const Link& y) {
    return std::tie(x.plus_id, x.minus_id, x.tag) < std::tie(y.plus_id, y.minus_id, y.tag);
  });
}

}  // namespace

std::vector<Link> connectivity(const std::vector<CurveSegment>& segs, double tol) {
  std::vector<Link> links;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const CurveSegment& p = segs[i];
    if (p.sign != 1) continue;
    for (std::size_t k = 0; k < segs.size(); ++k) {
      const CurveSegment& m = segs[k];
      if (m.sign != -1 || m.n != p.n || m.j != p.j) continue;
      if (p.starts_at_a && m.starts_at_a) {
        const double d = endpoint_distance(p.samples.front(), m.samples.front());
        if (d < tol) links.push_back({i, k, 'a', d});
      }
      if (p.ends_at_b && m.ends_at_b) {
        const double d = endpoint_distance(p.samples.back(), m.samples.back());
        if (d < tol) links.push_back({i, k, 'b', d});
      }
    }
  }
  sort_links(links);
  return links;
}

std::vector<Link> predicted_links(const std::vector<CurveSegment>& segs,
                                  const std::vector<CrossingInterval>& intervals) {
  std::map<std::tuple<int, int, int, int, int>, std::vector<std::size_t>> index;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const CurveSegment& s = segs[i];
    index[{s.n, s.j, s.sign, s.j1, s.j2}].push_back(i);
  }
  std::vector<Link> links;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const CurveSegment& p = segs[i];
    if (p.sign != 1) continue;
    const auto iv = std::find_if(intervals.begin(), intervals.end(), [&](const CrossingInterval& c) {
      return c.n == p.n && c.j == p.j;
    });
    if (iv == intervals.end()) continue;
    if (p.starts_at_a) {
      const auto it = index.find({p.n, p.j, -1, p.j1 + iv->delta1a, p.j2 - iv->delta2a});
      if (it != index.end()) {
        for (std::size_t k : it->second) {
          if (segs[k].starts_at_a) {
            links.push_back({i, k, 'a', endpoint_distance(p.samples.front(), segs[k].samples.front())});
          }
        }
      }
    }
    if (p.ends_at_b) {
      const auto it = index.find({p.n, p.j, -1, p.j1 + iv->delta1b, p.j2 - iv->delta2b});
      if (it != index.end()) {
        for (std::size_t k : it->second) {
          if (segs[k].ends_at_b) {
            links.push_back({i, k, 'b', endpoint_distance(p.samples.back(), segs[k].samples.back())});
          }
        }
      }
    }
  }
  sort_links(links);
  return links;
}

std::vector<CurveFamily> build_families(const ModelParams& p, Window window, std::optional<int> n_max,
                                        const CrossingSetOptions& copts, const SegmentOptions& sopts,
                                        std::vector<std::string>* warnings) {
  constexpr int kModeCap = 10000;
  if (n_max && *n_max < 0) {
    throw parameter_error("mode count must be non-negative");
  }
  std::vector<CurveFamily> out;
  for (int n = 0; n <= (n_max ? *n_max : kModeCap); ++n) {
    CurveFamily fam;
    fam.q = build(p, n);
    validate(fam.q);
    fam.intervals = crossing_set(fam.q, copts, warnings);
    if (!n_max && fam.intervals.empty()) {
      break;
    }
    fam.segments = generate_segments(fam.q, fam.intervals, window, sopts);
    out.push_back(std::move(fam));
  }
  return out;
}

}  // namespace lgdelay
