#pragma once

#include <string>

#include "lgdelay/model.hpp"
#include "lgdelay/unfolding.hpp"

namespace lgdelay::reference {

/// The parameter set used throughout the regression suite.
ModelParams params();

/// Printed normal-form coefficients for that parameter set (four decimals).
NormalFormCoeffs normal_form();

/// The same data as a config file, suitable for Config::parse.
std::string config_text();

}  // namespace lgdelay::reference
