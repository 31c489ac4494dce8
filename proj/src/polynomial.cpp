#include "lgdelay/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "lgdelay/errors.hpp"

namespace lgdelay {

RealPoly::RealPoly(std::vector<double> coeffs) : c_(std::move(coeffs)) {}

int RealPoly::degree() const noexcept {
  for (int k = static_cast<int>(c_.size()) - 1; k >= 0; --k) {
    if (c_[k] != 0.0) {
      return k;
    }
  }
  return -1;
}

double RealPoly::coeff(int k) const noexcept {
  return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : 0.0;
}

double RealPoly::operator()(double x) const noexcept {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

std::complex<double> RealPoly::operator()(std::complex<double> z) const noexcept {
  std::complex<double> acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc = acc * z + *it;
  }
  return acc;
}

RealPoly RealPoly::derivative() const {
  if (c_.size() <= 1) {
    return RealPoly({0.0});
  }
  std::vector<double> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) {
    d[k - 1] = static_cast<double>(k) * c_[k];
  }
  return RealPoly(std::move(d));
}

RealPoly RealPoly::reflected() const {
  std::vector<double> r = c_;
  for (std::size_t k = 1; k < r.size(); k += 2) {
    r[k] = -r[k];
  }
  return RealPoly(std::move(r));
}

RealPoly operator+(const RealPoly& p, const RealPoly& q) {
  std::vector<double> r(std::max(p.c_.size(), q.c_.size()), 0.0);
  for (std::size_t k = 0; k < p.c_.size(); ++k) r[k] += p.c_[k];
  for (std::size_t k = 0; k < q.c_.size(); ++k) r[k] += q.c_[k];
  return RealPoly(std::move(r));
}

RealPoly operator-(const RealPoly& p, const RealPoly& q) { return p + (-1.0) * q; }

RealPoly operator*(const RealPoly& p, const RealPoly& q) {
  if (p.c_.empty() || q.c_.empty()) {
    return RealPoly({0.0});
  }
  std::vector<double> r(p.c_.size() + q.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.c_.size(); ++i) {
    for (std::size_t j = 0; j < q.c_.size(); ++j) {
      r[i + j] += p.c_[i] * q.c_[j];
    }
  }
  return RealPoly(std::move(r));
}

RealPoly operator*(double s, const RealPoly& p) {
  std::vector<double> r = p.c_;
  for (double& x : r) x *= s;
  return RealPoly(std::move(r));
}

double cauchy_root_bound(const RealPoly& p) {
  const int deg = p.degree();
  if (deg < 1) {
    throw numerical_error("root bound requested for a constant polynomial");
  }
  const double lead = std::abs(p.coeff(deg));
  double m = 0.0;
  for (int k = 0; k < deg; ++k) {
    m = std::max(m, std::abs(p.coeff(k)) / lead);
  }
  return 1.0 + m;
}

}  // namespace lgdelay
