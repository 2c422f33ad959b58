#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "gmmse/bounds.hpp"

namespace gmmse {

enum class Estimator { mmse, lmmse };

struct MseEstimate {
  double mse = 0.0;
  double standard_error = 0.0;
};

/// Sample mean of ||x - xhat(y)||^2 over `trials` independent (x, n) draws,
/// with the standard error of that mean. Deterministic in `seed`.
/// Requires trials >= 2.
MseEstimate estimate_mse(const BayesianLinearModel& model, std::size_t trials, std::uint64_t seed,
                         Estimator estimator);

struct PairedMse {
  std::optional<MseEstimate> mmse;
  std::optional<MseEstimate> lmmse;
};

/// Both estimators evaluated on the same draws. Estimators not requested are
/// left empty. estimate_mse(model, t, s, e) equals the matching field of
/// estimate_paired_mse(model, t, s, ...) bit for bit.
PairedMse estimate_paired_mse(const BayesianLinearModel& model, std::size_t trials,
                              std::uint64_t seed, bool mmse, bool lmmse);

struct SweepConfig {
  BayesianLinearModel model;
  std::vector<double> snr_db_grid;
  std::size_t trials = 50000;
  std::uint64_t seed = 1;
  bool run_mmse = true;
  bool run_lmmse = true;
};

struct SweepPoint {
  double snr_db = 0.0;
  double noise_scale = 0.0;
  std::optional<MseEstimate> mmse;
  std::optional<MseEstimate> lmmse;
  /// NaN when the point failed before the bounds were evaluated.
  double lower = std::numeric_limits<double>::quiet_NaN();
  double upper = std::numeric_limits<double>::quiet_NaN();
  /// Nonempty when the point failed; estimator fields are then empty.
  std::string error;
};

/// Throws ValidationError on an empty or non-finite grid or trials < 2.
void check_sweep_config(const SweepConfig& config);

/// For every grid point: calibrate the noise scale, precompute, evaluate the
/// bounds and the requested empirical MSEs. Point i draws from seed
/// derive_seed(config.seed, i). Points run on `threads` workers
/// (0 = hardware concurrency); the result does not depend on the count.
std::vector<SweepPoint> run_sweep(const SweepConfig& config, unsigned threads = 0);

}  // namespace gmmse
