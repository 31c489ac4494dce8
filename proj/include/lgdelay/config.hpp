#pragma once

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lgdelay/hopf2.hpp"
#include "lgdelay/model.hpp"
#include "lgdelay/simulate.hpp"
#include "lgdelay/unfolding.hpp"

namespace lgdelay {

/// Plain `key = value` file. '#' starts a comment. Every key may appear once except
/// `probe`. Unknown keys are rejected with their line number.
class Config {
 public:
  static Config parse(std::istream& in);
  static Config load(const std::string& path);

  bool has(const std::string& key) const;
  int line_of(const std::string& key) const;
  const std::string& raw(const std::string& key) const;

  double get_double(const std::string& key) const;
  int get_int(const std::string& key) const;
  std::optional<double> find_double(const std::string& key) const;
  std::optional<int> find_int(const std::string& key) const;
  cplx get_complex(const std::string& key) const;

  /// Values of every `probe = tau1 tau2` line, in file order.
  const std::vector<std::pair<double, double>>& probes() const { return probes_; }

 private:
  struct Entry {
    std::string value;
    int line = 0;
  };
  std::map<std::string, Entry> entries_;
  std::vector<std::pair<double, double>> probes_;
};

/// The nine model constants; each missing key is a config_error naming it.
ModelParams read_params(const Config& cfg);

NormalFormCoeffs read_normal_form(const Config& cfg);

/// Double-Hopf point given explicitly through tau1_star, tau2_star, omega1, omega2.
std::optional<DoubleHopfPoint> read_double_hopf(const Config& cfg);

/// Simulation settings present in the file override the defaults in `sim`.
void apply_simulation(const Config& cfg, SimConfig& sim);

/// Optional `section = v | du`.
Section read_section(const Config& cfg);

}  // namespace lgdelay
