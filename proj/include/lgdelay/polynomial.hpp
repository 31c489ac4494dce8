#pragma once

#include <complex>
#include <vector>

namespace lgdelay {

/// Dense real polynomial, coefficients stored low-to-high.
class RealPoly {
 public:
  RealPoly() = default;
  explicit RealPoly(std::vector<double> coeffs);

  const std::vector<double>& coeffs() const noexcept { return c_; }
  /// Index of the highest nonzero coefficient; -1 for the zero polynomial.
  int degree() const noexcept;
  double coeff(int k) const noexcept;

  double operator()(double x) const noexcept;
  std::complex<double> operator()(std::complex<double> z) const noexcept;

  RealPoly derivative() const;
  /// p(-x).
  RealPoly reflected() const;

  friend RealPoly operator+(const RealPoly& p, const RealPoly& q);
  friend RealPoly operator-(const RealPoly& p, const RealPoly& q);
  friend RealPoly operator*(const RealPoly& p, const RealPoly& q);
  friend RealPoly operator*(double s, const RealPoly& p);

 private:
  std::vector<double> c_;
};

/// Cauchy bound: every root z satisfies |z| <= 1 + max_k |c_k / c_deg|.
double cauchy_root_bound(const RealPoly& p);

}  // namespace lgdelay
