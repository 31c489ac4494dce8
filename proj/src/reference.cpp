#include "lgdelay/reference.hpp"

namespace lgdelay::reference {

ModelParams params() {
  ModelParams p;
  p.r1 = 0.8;
  p.r2 = 1.0;
  p.a = 1.3;
  p.K = 0.7;
  p.gamma = 1.0;
  p.m = 0.27;
  p.l = 2.0;
  p.d1 = 0.3;
  p.d2 = 0.4;
  return p;
}

NormalFormCoeffs normal_form() {
  NormalFormCoeffs K;
  K.K11 = {0.0947, -0.0071};
  K.K21 = {-0.2689, 0.4408};
  K.K13 = {0.1196, 1.2137};
  K.K23 = {1.6381, -2.5531};
  K.K2100 = {0.0154, -0.0146};
  K.K1011 = {0.4878, 0.2082};
  K.K0021 = {-0.9861, -0.9526};
  K.K1110 = {-0.1778, -0.1523};
  return K;
}

std::string config_text() {
  return "r1 = 0.8\nr2 = 1\na = 1.3\nK = 0.7\ngamma = 1\nm = 0.27\nl = 2\nd1 = 0.3\nd2 = 0.4\n"
         "K11 = 0.0947 -0.0071\nK21 = -0.2689 0.4408\nK13 = 0.1196 1.2137\nK23 = 1.6381 -2.5531\n"
         "K2100 = 0.0154 -0.0146\nK1011 = 0.4878 0.2082\nK0021 = -0.9861 -0.9526\n"
         "K1110 = -0.1778 -0.1523\n";
}

}  // namespace lgdelay::reference
