#include "lgdelay/model.hpp"

#include <cmath>
#include <string>

#include "lgdelay/errors.hpp"

namespace lgdelay {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw parameter_error(std::string("parameter ") + name + " must be positive and finite");
  }
}

}  // namespace

void validate(const ModelParams& p) {
  require_positive(p.r1, "r1");
  require_positive(p.r2, "r2");
  require_positive(p.a, "a");
  require_positive(p.K, "K");
  require_positive(p.gamma, "gamma");
  require_positive(p.l, "l");
  require_positive(p.d1, "d1");
  require_positive(p.d2, "d2");
  if (!(p.m >= 0.0 && p.m < 1.0)) {
    throw parameter_error("parameter m must lie in [0, 1)");
  }
}

Equilibrium equilibrium(const ModelParams& p) {
  const double q = 1.0 - p.m;
  Equilibrium e;
  e.u_star = p.K * p.r1 / (p.r1 + p.a * p.K * p.gamma * q * q);
  e.v_star = p.gamma * q * e.u_star;
  return e;
}

Linearization linearize(const ModelParams& p, const Equilibrium& e) {
  const double q = 1.0 - p.m;
  Linearization lin;
  lin.D = {{{p.d1, 0.0}, {0.0, p.d2}}};
  lin.A = {{{0.0, -p.a * q * e.u_star}, {0.0, 0.0}}};
  lin.B = {{{-p.r1 * e.u_star / p.K, 0.0}, {0.0, 0.0}}};
  lin.C = {{{0.0, 0.0}, {p.gamma * q * p.r2, -p.r2}}};
  return lin;
}

double wavenumber_sq(const ModelParams& p, int n) {
  return static_cast<double>(n) * static_cast<double>(n) / (p.l * p.l);
}

ZeroDelayQuadratic zero_delay_quadratic(const ModelParams& p, int n) {
  const Equilibrium e = equilibrium(p);
  const double k = wavenumber_sq(p, n);
  const double q = 1.0 - p.m;
  const double s = p.r1 * e.u_star / p.K;
  ZeroDelayQuadratic z;
  z.A = (p.d1 + p.d2) * k + s + p.r2;
  z.B = p.d1 * p.d2 * k * k + s * p.d2 * k + p.r2 * p.d1 * k +
        p.a * q * q * p.gamma * p.r2 * e.u_star + s * p.r2;
  return z;
}

bool zero_delay_stable(const ModelParams& p, int n_max) {
  if (n_max < 0) {
    throw parameter_error("n_max must be non-negative");
  }
  for (int n = 0; n <= n_max; ++n) {
    const ZeroDelayQuadratic z = zero_delay_quadratic(p, n);
    if (!(z.A > 0.0 && z.B > 0.0)) {
      return false;
    }
  }
  return true;
}

bool global_stability_hint(const ModelParams& p) { return p.r1 / p.K > p.a * (1.0 - p.m); }

ReactionRates reaction(const ModelParams& p, double u_now, double v_now, double u_lag1,
                       double u_lag2, double v_lag2) {
  if (u_lag2 < 1e-12) {
    throw singular_error("Leslie-Gower denominator vanishes (u_lag2 < 1e-12)");
  }
  const double q = 1.0 - p.m;
  ReactionRates out;
  out.du = p.r1 * u_now * (1.0 - u_lag1 / p.K) - p.a * q * u_now * v_now;
  out.dv = p.r2 * v_now * (1.0 - v_lag2 / (p.gamma * q * u_lag2));
  return out;
}

}  // namespace lgdelay
