#include "config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace dqd::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

const KeySpec* lookup(const std::string& key) {
  for (const auto& k : known_keys())
    if (k.key == key) return &k;
  return nullptr;
}

double parse_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v))
    throw ConfigError(key, "expected a finite number, got '" + text + "'");
  return v;
}

}  // namespace

const std::vector<KeySpec>& known_keys() {
  static const std::vector<KeySpec> keys = {
      {"topology", "model", "series | side | parallel | custom"},
      {"t", "model", "interdot hopping"},
      {"U", "model", "on-site repulsion"},
      {"t_prime", "model", "dot-lead hopping (default t0/sqrt(20))"},
      {"t0", "model", "lead hopping, bandwidth 4 t0"},
      {"lead_len", "model", "sites per lead"},
      {"B", "model", "Zeeman field on the dots"},
      {"T", "model", "temperature"},
      {"eps_d", "model", "dot level (default -U/2)"},
      {"t1", "model", "custom left-A bond"},
      {"t2", "model", "custom right-A bond"},
      {"t3", "model", "custom left-B bond"},
      {"t4", "model", "custom right-B bond"},
      {"axis", "sweep", "t | t_prime | U | T | B"},
      {"min", "sweep", "grid start"},
      {"max", "sweep", "grid end"},
      {"count", "sweep", "grid points (>= 2); oracle-check sample count"},
      {"spacing", "sweep", "linear | log"},
      {"d1", "constants", "two-stage prefactor"},
      {"d2", "constants", "two-stage exponent"},
      {"c", "constants", "RKKY prefactor"},
      {"ratios", "phase", "comma-separated U/Gamma columns"},
      {"j_min", "phase", "lower J of the bisection bracket"},
      {"j_max", "phase", "upper J of the bisection bracket"},
      {"threshold", "phase", "concurrence threshold"},
      {"Gamma", "scales", "hybridization width (default from the model)"},
      {"J", "scales", "exchange (default 4 t^2 / U)"},
  };
  return keys;
}

RawConfig parse_config(std::istream& in, const std::string& source) {
  RawConfig cfg;
  std::string section;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    const std::string text = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (text.empty()) continue;
    const std::string where = source + ":" + std::to_string(lineno);
    if (text.front() == '[') {
      if (text.back() != ']') throw ConfigError("", where + ": malformed section header");
      section = trim(std::string_view(text).substr(1, text.size() - 2));
      bool known = false;
      for (const auto& k : known_keys()) known = known || k.section == section;
      if (!known && section != "check")
        throw ConfigError(section, where + ": unknown section");
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError("", where + ": expected key = value");
    const std::string key = trim(std::string_view(text).substr(0, eq));
    const std::string value = trim(std::string_view(text).substr(eq + 1));
    const KeySpec* spec = lookup(key);
    if (!spec) throw ConfigError(key, where + ": unknown key");
    const bool allowed = section.empty() || spec->section == section ||
                         (key == "count" && section == "check");
    if (!allowed)
      throw ConfigError(key, where + ": key belongs to [" + spec->section + "], not [" + section + "]");
    if (cfg.count(key)) throw ConfigError(key, where + ": duplicate key");
    cfg[key] = value;
  }
  return cfg;
}

RawConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  return parse_config(in, path);
}

std::optional<double> find_double(const RawConfig& cfg, const std::string& key) {
  const auto it = cfg.find(key);
  if (it == cfg.end()) return std::nullopt;
  return parse_double(key, it->second);
}

double get_double(const RawConfig& cfg, const std::string& key, double fallback) {
  return find_double(cfg, key).value_or(fallback);
}

long long get_int(const RawConfig& cfg, const std::string& key, long long fallback) {
  const auto it = cfg.find(key);
  if (it == cfg.end()) return fallback;
  long long v = 0;
  const std::string& s = it->second;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ConfigError(key, "expected an integer, got '" + s + "'");
  return v;
}

ModelSpec model_from(const RawConfig& cfg) {
  ModelSpec spec;
  if (const auto it = cfg.find("topology"); it != cfg.end()) {
    const auto kind = parse_topology(it->second);
    if (!kind) throw ConfigError("topology", "unknown topology '" + it->second + "'");
    spec.topology.kind = *kind;
  }
  spec.t = get_double(cfg, "t", spec.t);
  spec.U = get_double(cfg, "U", spec.U);
  spec.t0 = get_double(cfg, "t0", spec.t0);
  spec.t_prime = get_double(cfg, "t_prime", spec.t0 / std::sqrt(20.0));
  spec.lead_len = static_cast<int>(get_int(cfg, "lead_len", spec.lead_len));
  spec.B = get_double(cfg, "B", spec.B);
  spec.T = get_double(cfg, "T", spec.T);
  spec.eps_d = find_double(cfg, "eps_d");
  const bool has_bonds = cfg.count("t1") || cfg.count("t2") || cfg.count("t3") || cfg.count("t4");
  if (spec.topology.kind == TopologyKind::Custom) {
    spec.topology.custom = {get_double(cfg, "t1", 0.0), get_double(cfg, "t2", 0.0),
                            get_double(cfg, "t3", 0.0), get_double(cfg, "t4", 0.0)};
  } else if (has_bonds) {
    throw ConfigError("topology", "bonds t1..t4 require topology = custom");
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    throw ConfigError("", what);
  }
  return spec;
}

ScaleConstants constants_from(const RawConfig& cfg) {
  ScaleConstants k;
  k.d1 = get_double(cfg, "d1", k.d1);
  k.d2 = get_double(cfg, "d2", k.d2);
  k.c = get_double(cfg, "c", k.c);
  if (!(k.d1 > 0)) throw ConfigError("d1", "must be > 0");
  if (!(k.c > 0)) throw ConfigError("c", "must be > 0");
  return k;
}

void SweepSpec::validate() const {
  if (count < 2) throw ConfigError("count", "sweep needs at least 2 points");
  if (!(min <= max)) throw ConfigError("max", "must be >= min");
  if (spacing == Spacing::Log && !(min > 0))
    throw ConfigError("min", "log spacing requires min > 0");
}

std::vector<double> SweepSpec::grid() const {
  std::vector<double> g(static_cast<std::size_t>(count));
  const double n = count - 1;
  for (int i = 0; i < count; ++i) {
    const double f = i / n;
    g[static_cast<std::size_t>(i)] =
        spacing == Spacing::Linear
            ? min + f * (max - min)
            : std::exp(std::log(min) + f * (std::log(max) - std::log(min)));
  }
  g.front() = min;
  g.back() = max;
  return g;
}

SweepSpec sweep_from(const RawConfig& cfg) {
  SweepSpec s;
  if (const auto it = cfg.find("axis"); it != cfg.end()) {
    const auto axis = parse_axis(it->second);
    if (!axis) throw ConfigError("axis", "unknown sweep axis '" + it->second + "'");
    s.axis = *axis;
  } else {
    throw ConfigError("axis", "sweep axis is required");
  }
  if (!cfg.count("min")) throw ConfigError("min", "required");
  if (!cfg.count("max")) throw ConfigError("max", "required");
  s.min = get_double(cfg, "min", 0.0);
  s.max = get_double(cfg, "max", 0.0);
  s.count = static_cast<int>(get_int(cfg, "count", 11));
  if (const auto it = cfg.find("spacing"); it != cfg.end()) {
    if (it->second == "linear")
      s.spacing = Spacing::Linear;
    else if (it->second == "log")
      s.spacing = Spacing::Log;
    else
      throw ConfigError("spacing", "expected linear or log, got '" + it->second + "'");
  }
  s.validate();
  return s;
}

PhaseSpec phase_from(const RawConfig& cfg) {
  PhaseSpec p;
  if (const auto it = cfg.find("ratios"); it != cfg.end()) {
    p.ratios.clear();
    std::stringstream ss(it->second);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const std::string v = trim(item);
      if (v.empty()) continue;
      const double r = parse_double("ratios", v);
      if (!(r > 0)) throw ConfigError("ratios", "U/Gamma values must be > 0");
      p.ratios.push_back(r);
    }
    if (p.ratios.empty()) throw ConfigError("ratios", "empty list");
  }
  p.j_min = get_double(cfg, "j_min", p.j_min);
  p.j_max = get_double(cfg, "j_max", p.j_max);
  p.threshold = get_double(cfg, "threshold", p.threshold);
  if (!(p.j_min >= 0)) throw ConfigError("j_min", "must be >= 0");
  if (!(p.j_max > p.j_min)) throw ConfigError("j_max", "must exceed j_min");
  return p;
}

}  // namespace dqd::cli
