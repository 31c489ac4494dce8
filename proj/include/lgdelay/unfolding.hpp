#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "lgdelay/hopf2.hpp"
#include "lgdelay/model.hpp"

namespace lgdelay {

/// Center-eigenvector components (1, r12), (1, r32) and adjoint components
/// D1 (1, r12_star), D2 (1, r32_star) at a mode-0 double-Hopf point.
struct EigenData {
  cplx r12;
  cplx r32;
  cplx r12_star;
  cplx r32_star;
  cplx D1;
  cplx D2;
};

/// Throws unsupported_mode_error unless both modes are 0.
EigenData eigen_data(const ModelParams& p, const DoubleHopfPoint& pt);

/// Coefficients of the third-order normal form, supplied from outside.
struct NormalFormCoeffs {
  cplx K11;
  cplx K21;
  cplx K13;
  cplx K23;
  cplx K2100;
  cplx K1011;
  cplx K0021;
  cplx K1110;
};

enum class UnfoldingCase { Ia, Ib, II, III, IVa, IVb, V, VIa, VIb, VIIa, VIIb, VIII };

std::string to_string(UnfoldingCase c);

/// Table lookup on the signs of (d, b, c, d - bc); throws degenerate_unfolding_error
/// if any of them is zero.
UnfoldingCase classify_case(double d, double b, double c, double d_minus_bc);

struct UnfoldingParams {
  int eps1 = 1;
  int eps2 = 1;
  /// (nu1, nu2) = nu_map * (sigma1, sigma2), sigma = tau - tau_star.
  std::array<std::array<double, 2>, 2> nu_map{};
  double b = 0.0;
  double c = 0.0;
  int d = 1;
  double d_minus_bc = 0.0;
  UnfoldingCase case_label = UnfoldingCase::Ia;
};

UnfoldingParams unfold(const NormalFormCoeffs& K, const DoubleHopfPoint& pt);

/// Image of (sigma1, sigma2) under nu_map.
std::array<double, 2> to_nu(const UnfoldingParams& up, double sigma1, double sigma2);

/// A bifurcation half-line emanating from the double-Hopf point.
struct SemiLine {
  std::string label;  ///< L1, L2, ...
  std::string kind;   ///< what bifurcates across it
  double tau1 = 0.0;  ///< anchor (the double-Hopf point)
  double tau2 = 0.0;
  double dir1 = 0.0;  ///< unit direction in the delay plane
  double dir2 = 0.0;
  double reciprocal_slope = 0.0;  ///< dtau1/dtau2 along the line
  std::string side;               ///< which half of the full line, e.g. "tau1>3.9042"
  double nu_angle = 0.0;          ///< direction angle in the (nu1, nu2) plane, [0, 2pi)
  std::string note;
};

/// Half-lines ordered by label. Which lines exist depends on the case: the two axes
/// and the two mixed-mode branches always, the Hopf and heteroclinic lines of the
/// mixed-mode equilibrium only where the amplitude system has them.
std::vector<SemiLine> semilines(const UnfoldingParams& up, const DoubleHopfPoint& pt);

struct RegionOptions {
  double chart_radius = 0.15;
  double angle_tol = 1e-6;
};

/// Sector label D1, D2, ... counted clockwise in the nu plane starting below L1.
/// Throws chart_range_error outside the chart and boundary_error on a semi-line.
std::string region_of(const UnfoldingParams& up, const DoubleHopfPoint& pt, double tau1, double tau2,
                      const RegionOptions& opts = {});

}  // namespace lgdelay
