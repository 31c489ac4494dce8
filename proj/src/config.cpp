#include "lgdelay/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "lgdelay/errors.hpp"

namespace lgdelay {

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      // model
      "r1", "r2", "a", "K", "gamma", "m", "l", "d1", "d2",
      // normal-form coefficients, "re im"
      "K11", "K21", "K13", "K23", "K2100", "K1011", "K0021", "K1110",
      // explicit double-Hopf point
      "tau1_star", "tau2_star", "omega1", "omega2",
      // curve computation
      "omega_max", "root_grid_points", "samples_per_interval", "chart_radius",
      // simulation
      "tau1", "tau2", "grid_points", "dt", "t_end", "t_transient", "history", "history_amp_u",
      "history_amp_v", "history_mode", "output_stride", "snapshot_stride", "section", "seed",
      // repeatable
      "probe"};
  return keys;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, const std::string& key, int line) {
  const char* begin = text.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || errno == ERANGE || !std::isfinite(v)) {
    throw config_error("value of '" + key + "' is not a finite decimal number: '" + text + "'", line);
  }
  return v;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

}  // namespace

Config Config::parse(std::istream& in) {
  Config cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw config_error("expected 'key = value'", lineno);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw config_error("missing key before '='", lineno);
    if (known_keys().count(key) == 0) throw config_error("unknown key '" + key + "'", lineno);
    if (value.empty()) throw config_error("missing value for '" + key + "'", lineno);
    if (key == "probe") {
      const auto tok = split_ws(value);
      if (tok.size() != 2) throw config_error("probe needs two numbers: tau1 tau2", lineno);
      cfg.probes_.emplace_back(parse_number(tok[0], key, lineno), parse_number(tok[1], key, lineno));
      continue;
    }
    if (cfg.entries_.count(key) != 0) {
      throw config_error("duplicate key '" + key + "' (first set on line " +
                             std::to_string(cfg.entries_[key].line) + ")",
                         lineno);
    }
    cfg.entries_[key] = Entry{value, lineno};
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw config_error("cannot open config file '" + path + "'");
  }
  return parse(in);
}

bool Config::has(const std::string& key) const { return entries_.count(key) != 0; }

int Config::line_of(const std::string& key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? 0 : it->second.line;
}

const std::string& Config::raw(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw config_error("missing required key '" + key + "'");
  return it->second.value;
}

double Config::get_double(const std::string& key) const {
  return parse_number(raw(key), key, line_of(key));
}

int Config::get_int(const std::string& key) const {
  const double v = get_double(key);
  if (v != std::floor(v) || std::abs(v) > 2e9) {
    throw config_error("value of '" + key + "' must be an integer", line_of(key));
  }
  return static_cast<int>(v);
}

std::optional<double> Config::find_double(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return get_double(key);
}

std::optional<int> Config::find_int(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return get_int(key);
}

cplx Config::get_complex(const std::string& key) const {
  const auto tok = split_ws(raw(key));
  if (tok.size() != 2) {
    throw config_error("value of '" + key + "' must be two numbers: real imag", line_of(key));
  }
  return {parse_number(tok[0], key, line_of(key)), parse_number(tok[1], key, line_of(key))};
}

ModelParams read_params(const Config& cfg) {
  ModelParams p;
  p.r1 = cfg.get_double("r1");
  p.r2 = cfg.get_double("r2");
  p.a = cfg.get_double("a");
  p.K = cfg.get_double("K");
  p.gamma = cfg.get_double("gamma");
  p.m = cfg.get_double("m");
  p.l = cfg.get_double("l");
  p.d1 = cfg.get_double("d1");
  p.d2 = cfg.get_double("d2");
  try {
    validate(p);
  } catch (const parameter_error& e) {
    throw config_error(e.what());
  }
  return p;
}

NormalFormCoeffs read_normal_form(const Config& cfg) {
  NormalFormCoeffs K;
  K.K11 = cfg.get_complex("K11");
  K.K21 = cfg.get_complex("K21");
  K.K13 = cfg.get_complex("K13");
  K.K23 = cfg.get_complex("K23");
  K.K2100 = cfg.get_complex("K2100");
  K.K1011 = cfg.get_complex("K1011");
  K.K0021 = cfg.get_complex("K0021");
  K.K1110 = cfg.get_complex("K1110");
  return K;
}

std::optional<DoubleHopfPoint> read_double_hopf(const Config& cfg) {
  const char* keys[] = {"tau1_star", "tau2_star", "omega1", "omega2"};
  int present = 0;
  for (const char* k : keys) present += cfg.has(k) ? 1 : 0;
  if (present == 0) return std::nullopt;
  DoubleHopfPoint pt;
  pt.tau1_star = cfg.get_double("tau1_star");
  pt.tau2_star = cfg.get_double("tau2_star");
  pt.omega1 = cfg.get_double("omega1");
  pt.omega2 = cfg.get_double("omega2");
  if (!(pt.omega1 > 0.0 && pt.omega2 > pt.omega1)) {
    throw config_error("need 0 < omega1 < omega2", cfg.line_of("omega2"));
  }
  pt.resonance = resonance_check(pt.omega1, pt.omega2);
  return pt;
}

void apply_simulation(const Config& cfg, SimConfig& sim) {
  if (auto v = cfg.find_double("tau1")) sim.tau1 = *v;
  if (auto v = cfg.find_double("tau2")) sim.tau2 = *v;
  if (auto v = cfg.find_int("grid_points")) sim.grid_points = *v;
  if (auto v = cfg.find_double("dt")) sim.dt = *v;
  if (auto v = cfg.find_double("t_end")) sim.t_end = *v;
  if (auto v = cfg.find_double("t_transient")) sim.t_transient = *v;
  if (auto v = cfg.find_double("history_amp_u")) sim.history.amp_u = *v;
  if (auto v = cfg.find_double("history_amp_v")) sim.history.amp_v = *v;
  if (auto v = cfg.find_int("history_mode")) sim.history.mode = *v;
  if (auto v = cfg.find_int("output_stride")) sim.output_stride = *v;
  if (auto v = cfg.find_int("snapshot_stride")) sim.snapshot_stride = *v;
  if (auto v = cfg.find_int("seed")) {
    if (*v < 0) throw config_error("seed must be non-negative", cfg.line_of("seed"));
    sim.history.seed = static_cast<std::uint64_t>(*v);
  }
  if (cfg.has("history")) {
    const std::string& h = cfg.raw("history");
    if (h == "constant") {
      sim.history.kind = HistoryKind::constant_offset;
    } else if (h == "cosine") {
      sim.history.kind = HistoryKind::cosine_profile;
    } else if (h == "random") {
      sim.history.kind = HistoryKind::random_smooth;
    } else {
      throw config_error("history must be constant, cosine or random", cfg.line_of("history"));
    }
  }
}

Section read_section(const Config& cfg) {
  if (!cfg.has("section")) return Section::v_equals_vstar;
  const std::string& s = cfg.raw("section");
  if (s == "v") return Section::v_equals_vstar;
  if (s == "du") return Section::du_zero;
  throw config_error("section must be v or du", cfg.line_of("section"));
}

}  // namespace lgdelay
