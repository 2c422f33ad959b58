#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "gmmse/montecarlo.hpp"

namespace gmmse {

/// Malformed or invalid configuration. The message names the offending
/// field path (e.g. "model.x[2].weight") or the line and column of a
/// syntax error.
class ConfigError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Configuration file contents. Format (JSON):
///
///   {
///     "model": {
///       "H": [[...], ...],                                   // m x d
///       "x":     [{"weight": w, "mean": [...], "covariance": [[...], ...]}, ...],
///       "noise": [ ...same shape, m-dimensional... ]
///     },
///     "sweep": {                                             // optional
///       "snr_db": {"start": -10, "stop": 50, "step": 1},
///       "trials": 50000,
///       "seed": 1,
///       "estimators": ["mmse", "lmmse"]
///     },
///     "output": {"csv": "out.csv", "svg": "out.svg"}         // optional
///   }
struct RunConfig {
  BayesianLinearModel model;
  std::vector<double> snr_db_grid;
  std::size_t trials = 50000;
  std::uint64_t seed = 1;
  bool run_mmse = true;
  bool run_lmmse = true;
  std::optional<std::string> out_csv;
  std::optional<std::string> out_svg;

  SweepConfig sweep() const;
};

RunConfig parse_run_config(std::string_view text);
RunConfig load_run_config(const std::filesystem::path& path);

/// Parses a mixture literal (array of components). `field` prefixes messages.
GaussianMixture parse_mixture(std::string_view json_text, const std::string& field = "mixture");

/// start, start + step, ... up to stop inclusive (1e-9 step slack).
std::vector<double> snr_grid(double start, double stop, double step);

}  // namespace gmmse
