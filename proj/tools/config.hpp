#pragma once

// Flat `key = value` configuration with optional [section] headers and `#`
// comments. Keys are unique across sections; the section only constrains
// where a key may appear.

#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dqd/model.hpp"
#include "dqd/pipeline.hpp"
#include "dqd/scales.hpp"

namespace dqd::cli {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct KeySpec {
  std::string key;
  std::string section;
  std::string help;
};

const std::vector<KeySpec>& known_keys();

/// Bare key -> raw value.
using RawConfig = std::map<std::string, std::string>;

RawConfig parse_config(std::istream& in, const std::string& source);
RawConfig load_config_file(const std::string& path);

double get_double(const RawConfig& cfg, const std::string& key, double fallback);
std::optional<double> find_double(const RawConfig& cfg, const std::string& key);
long long get_int(const RawConfig& cfg, const std::string& key, long long fallback);

/// Model parameters; t_prime defaults to t0 / sqrt(20).
ModelSpec model_from(const RawConfig& cfg);
ScaleConstants constants_from(const RawConfig& cfg);

enum class Spacing { Linear, Log };

struct SweepSpec {
  SweepAxis axis = SweepAxis::t;
  double min = 0.0;
  double max = 1.0;
  int count = 2;
  Spacing spacing = Spacing::Linear;

  /// Throws ConfigError naming the offending key.
  void validate() const;
  std::vector<double> grid() const;
};

SweepSpec sweep_from(const RawConfig& cfg);

struct PhaseSpec {
  std::vector<double> ratios{4, 8, 16};  // U / Gamma columns
  double j_min = 1e-5;
  double j_max = 0.2;
  double threshold = 1e-6;
};

PhaseSpec phase_from(const RawConfig& cfg);

}  // namespace dqd::cli
