#pragma once

#include <array>
#include <complex>

#include "lgdelay/model.hpp"
#include "lgdelay/polynomial.hpp"

namespace lgdelay {

using cplx = std::complex<double>;

/// Mode-n characteristic function
///   D(lambda) = p0 + p1 e^{-lambda tau1} + p2 e^{-lambda tau2} + p3 e^{-lambda (tau1 + tau2)}.
struct QuasiPolynomial {
  int n = 0;
  RealPoly p0;
  RealPoly p1;
  RealPoly p2;
  RealPoly p3;
};

QuasiPolynomial build(const ModelParams& p, int n);

/// Degree dominance of p0 and nonvanishing D(0); throws numerical_error otherwise.
void validate(const QuasiPolynomial& q);

/// p0..p3 evaluated at lambda.
std::array<cplx, 4> coefficients_at(const QuasiPolynomial& q, cplx lambda);

cplx eval_D(const QuasiPolynomial& q, cplx lambda, double tau1, double tau2);

/// F(omega) = S^2 - 4|Z1|^2 with S = |p0|^2 + |p1|^2 - |p2|^2 - |p3|^2 and
/// Z1 = p2 conj(p3) - p0 conj(p1), all at i omega.
double F(const QuasiPolynomial& q, double omega);

/// F written as an explicit polynomial in omega (even, degree 8 for this model).
RealPoly F_polynomial(const QuasiPolynomial& q);

struct AngleData {
  double omega = 0.0;
  double F = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;
  double A1 = 0.0;
  double B1 = 0.0;
  double A2 = 0.0;
  double B2 = 0.0;
};

/// Angles for the switching-curve formulas. Throws degenerate_angle_error when
/// |Z1| or |Z2| vanishes, numerical_error when omega lies clearly outside the crossing set.
AngleData angles(const QuasiPolynomial& q, double omega);

/// 4|Z1|^2 - S1^2 and 4|Z2|^2 - S2^2; each is >= 0 exactly on the crossing set.
double first_condition_margin(const QuasiPolynomial& q, double omega);
double second_condition_margin(const QuasiPolynomial& q, double omega);

}  // namespace lgdelay
