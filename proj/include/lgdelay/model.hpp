#pragma once

#include <array>

namespace lgdelay {

struct ModelParams {
  double r1 = 0.0;
  double r2 = 0.0;
  double a = 0.0;
  double K = 0.0;
  double gamma = 0.0;
  double m = 0.0;
  double l = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Throws parameter_error naming the first violated constraint.
void validate(const ModelParams& p);

struct Equilibrium {
  double u_star = 0.0;
  double v_star = 0.0;
};

using Mat2 = std::array<std::array<double, 2>, 2>;

/// Matrices of the linearized system: D (diffusion), A (instantaneous),
/// B (lagged by tau1), C (lagged by tau2).
struct Linearization {
  Mat2 D{};
  Mat2 A{};
  Mat2 B{};
  Mat2 C{};
};

Equilibrium equilibrium(const ModelParams& p);
Linearization linearize(const ModelParams& p, const Equilibrium& e);

/// Wavenumber squared n^2/l^2 of the Neumann cosine mode n.
double wavenumber_sq(const ModelParams& p, int n);

/// Coefficients of lambda^2 + A lambda + B for mode n with both delays zero.
struct ZeroDelayQuadratic {
  double A = 0.0;
  double B = 0.0;
};

ZeroDelayQuadratic zero_delay_quadratic(const ModelParams& p, int n);

/// True iff the zero-delay quadratic has A > 0 and B > 0 for every n in [0, n_max].
bool zero_delay_stable(const ModelParams& p, int n_max);

/// r1/K > a(1-m).
bool global_stability_hint(const ModelParams& p);

struct ReactionRates {
  double du = 0.0;
  double dv = 0.0;
};

/// Nonlinear reaction terms. Throws singular_error when u_lag2 < 1e-12.
ReactionRates reaction(const ModelParams& p, double u_now, double v_now, double u_lag1,
                       double u_lag2, double v_lag2);

}  // namespace lgdelay
