#include "lgdelay/quasipoly.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lgdelay/errors.hpp"

namespace lgdelay {

namespace {

constexpr double kCosSlack = 1e-6;

struct Moduli {
  std::array<cplx, 4> p;
  double m0, m1, m2, m3;
};

Moduli moduli(const QuasiPolynomial& q, double omega) {
  Moduli r;
  r.p = coefficients_at(q, cplx(0.0, omega));
  r.m0 = std::norm(r.p[0]);
  r.m1 = std::norm(r.p[1]);
  r.m2 = std::norm(r.p[2]);
  r.m3 = std::norm(r.p[3]);
  return r;
}

double clamp_cos(double c, double omega) {
  if (std::abs(c) > 1.0 + kCosSlack) {
    throw numerical_error("frequency " + std::to_string(omega) + " lies outside the crossing set");
  }
  return std::clamp(c, -1.0, 1.0);
}

// std::arg may return -pi for a negative real with a signed zero imaginary part.
double principal_arg(cplx z) {
  const double t = std::arg(z);
  return t <= -M_PI ? M_PI : t;
}

}  // namespace

QuasiPolynomial build(const ModelParams& p, int n) {
  if (n < 0) {
    throw parameter_error("mode index must be non-negative");
  }
  validate(p);
  const Equilibrium e = equilibrium(p);
  const double k = wavenumber_sq(p, n);
  const double q1 = 1.0 - p.m;
  const double s = p.r1 * e.u_star / p.K;
  QuasiPolynomial qp;
  qp.n = n;
  qp.p0 = RealPoly({p.d1 * k * p.d2 * k, (p.d1 + p.d2) * k, 1.0});
  qp.p1 = RealPoly({s * p.d2 * k, s});
  qp.p2 = RealPoly({p.r2 * p.d1 * k + p.a * q1 * q1 * p.gamma * p.r2 * e.u_star, p.r2});
  qp.p3 = RealPoly({s * p.r2});
  return qp;
}

void validate(const QuasiPolynomial& q) {
  const int d0 = q.p0.degree();
  if (d0 < std::max({q.p1.degree(), q.p2.degree(), q.p3.degree()})) {
    throw numerical_error("p0 must have the highest degree");
  }
  if (q.p0(0.0) + q.p1(0.0) + q.p2(0.0) + q.p3(0.0) == 0.0) {
    throw numerical_error("lambda = 0 is a characteristic root for every delay");
  }
}

std::array<cplx, 4> coefficients_at(const QuasiPolynomial& q, cplx lambda) {
  return {q.p0(lambda), q.p1(lambda), q.p2(lambda), q.p3(lambda)};
}

cplx eval_D(const QuasiPolynomial& q, cplx lambda, double tau1, double tau2) {
  const auto p = coefficients_at(q, lambda);
  const cplx e1 = std::exp(-lambda * tau1);
  const cplx e2 = std::exp(-lambda * tau2);
  return p[0] + p[1] * e1 + p[2] * e2 + p[3] * e1 * e2;
}

double F(const QuasiPolynomial& q, double omega) {
  const Moduli r = moduli(q, omega);
  const double s = r.m0 + r.m1 - r.m2 - r.m3;
  const cplx z = r.p[2] * std::conj(r.p[3]) - r.p[0] * std::conj(r.p[1]);
  return s * s - 4.0 * std::norm(z);
}

RealPoly F_polynomial(const QuasiPolynomial& q) {
  // With real coefficients, conj(p(i w)) = p(-i w), so every modulus becomes a
  // product with the reflected polynomial and F(w) = G(i w) for a real G.
  const RealPoly r0 = q.p0.reflected(), r1 = q.p1.reflected();
  const RealPoly r2 = q.p2.reflected(), r3 = q.p3.reflected();
  const RealPoly s = q.p0 * r0 + q.p1 * r1 - q.p2 * r2 - q.p3 * r3;
  const RealPoly z = q.p2 * r3 - q.p0 * r1;
  const RealPoly g = s * s - 4.0 * (z * z.reflected());
  std::vector<double> c(g.coeffs().size(), 0.0);
  for (std::size_t k = 0; k < c.size(); k += 2) {
    c[k] = ((k / 2) % 2 == 0 ? 1.0 : -1.0) * g.coeffs()[k];
  }
  return RealPoly(std::move(c));
}

AngleData angles(const QuasiPolynomial& q, double omega) {
  const Moduli r = moduli(q, omega);
  const double scale = r.m0 + r.m1 + r.m2 + r.m3;
  const cplx z1 = r.p[2] * std::conj(r.p[3]) - r.p[0] * std::conj(r.p[1]);
  const cplx z2 = r.p[1] * std::conj(r.p[3]) - r.p[0] * std::conj(r.p[2]);
  const double n1 = std::abs(z1);
  const double n2 = std::abs(z2);
  if (!(n1 > 1e-14 * scale) || !(n2 > 1e-14 * scale)) {
    throw degenerate_angle_error("vanishing angle modulus at omega = " + std::to_string(omega));
  }
  AngleData a;
  a.omega = omega;
  const double s1 = r.m0 + r.m1 - r.m2 - r.m3;
  const double s2 = r.m0 - r.m1 + r.m2 - r.m3;
  a.F = s1 * s1 - 4.0 * n1 * n1;
  a.A1 = z1.real();
  a.B1 = z1.imag();
  a.A2 = z2.real();
  a.B2 = z2.imag();
  a.theta1 = std::acos(clamp_cos(s1 / (2.0 * n1), omega));
  a.theta2 = std::acos(clamp_cos(s2 / (2.0 * n2), omega));
  a.phi1 = principal_arg(z1);
  a.phi2 = principal_arg(z2);
  return a;
}

double first_condition_margin(const QuasiPolynomial& q, double omega) {
  const Moduli r = moduli(q, omega);
  const double s = r.m0 + r.m1 - r.m2 - r.m3;
  const cplx z = r.p[2] * std::conj(r.p[3]) - r.p[0] * std::conj(r.p[1]);
  return 4.0 * std::norm(z) - s * s;
}

double second_condition_margin(const QuasiPolynomial& q, double omega) {
  const Moduli r = moduli(q, omega);
  const double s = r.m0 - r.m1 + r.m2 - r.m3;
  const cplx z = r.p[1] * std::conj(r.p[3]) - r.p[0] * std::conj(r.p[2]);
  return 4.0 * std::norm(z) - s * s;
}

}  // namespace lgdelay
