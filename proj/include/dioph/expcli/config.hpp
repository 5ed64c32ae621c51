#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "dioph/qalg/error.hpp"

namespace dioph::expcli {

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Everything a sweep needs. Serialized as a flat JSON object with these keys.
struct ExperimentConfig {
  std::string surface = "a2 = 1 + t; a4 = t";  // y^2 = x(x+1)(x+t)
  long n_min = 2;
  long n_max = 2000;
  long height = 1000;
  std::size_t terms_cap = std::size_t{1} << 20;
  double tol = 1e-6;
  int jobs = 1;
  std::string out = "sweep.csv";
  std::string summary;  // empty: stdout
  std::uint64_t seed = 0;
  std::string mode = "both";  // rank sweeps: search | root | both

  /// Throws ConfigError.
  void validate() const;
};

std::string to_json(const ExperimentConfig& c);
/// Missing keys keep their defaults; unknown keys are an error.
ExperimentConfig config_from_json(const std::string& text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {});

}  // namespace dioph::expcli
