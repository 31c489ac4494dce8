#pragma once

#include <stdexcept>
#include <string>

namespace lgdelay {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid model or simulation parameters.
class parameter_error : public error {
 public:
  using error::error;
};

/// Configuration file problems; carries the offending line (0 when unknown).
class config_error : public error {
 public:
  config_error(const std::string& what, int line = 0)
      : error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Base for numerical breakdowns (degenerate geometry, failed solves, blow-up).
class numerical_error : public error {
 public:
  using error::error;
};

class singular_error : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

class degenerate_angle_error : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

class multiple_root_error : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

class off_curve_error : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

class path_error : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

class degenerate_unfolding_error : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

class boundary_error : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

class chart_range_error : public error {
 public:
  using error::error;
};

class unsupported_mode_error : public error {
 public:
  using error::error;
};

/// Integrator failure; time() is the simulation time at which it happened.
class simulation_error : public numerical_error {
 public:
  simulation_error(const std::string& what, double t)
      : numerical_error(what + " at t=" + std::to_string(t)), t_(t) {}
  double time() const noexcept { return t_; }

 private:
  double t_;
};

}  // namespace lgdelay
