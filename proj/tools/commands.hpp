#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace lgdelay::cli {

enum exit_code : int {
  ok = 0,
  generic_failure = 1,
  usage = 2,
  config = 3,
  numerical = 4,
  none_found = 5,
  io = 6,
};

/// Error that carries the process exit status.
class exit_error : public std::runtime_error {
 public:
  exit_error(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  int code() const noexcept { return code_; }

 private:
  int code_;
};

struct Options {
  std::string command;
  std::string config_path;
  std::string out_dir = "out";
  bool overwrite = false;
  std::optional<std::pair<double, double>> window;
  std::optional<int> modes;
  std::optional<std::uint64_t> seed;
  std::optional<std::pair<double, double>> tau;
};

int cmd_curves(const Options& o);
int cmd_directions(const Options& o);
int cmd_hh(const Options& o);
int cmd_classify(const Options& o);
int cmd_simulate(const Options& o);
int cmd_reproduce(const Options& o);

}  // namespace lgdelay::cli
