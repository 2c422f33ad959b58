#include "gmmse/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace gmmse {
namespace {

class KahanSum {
 public:
  void add(double v) {
    const double y = v - compensation_;
    const double t = sum_ + y;
    compensation_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

MseEstimate summarize(const std::vector<double>& errors) {
  const double n = static_cast<double>(errors.size());
  KahanSum sum;
  for (double e : errors) sum.add(e);
  const double mean = sum.value() / n;
  KahanSum squares;
  for (double e : errors) squares.add((e - mean) * (e - mean));
  const double variance = squares.value() / (n - 1.0);
  return {mean, std::sqrt(variance / n)};
}

PairedMse paired_mse(const BayesianLinearModel& model, const PrecomputedEstimator* pre,
                     const LmmseEstimator* lmmse, std::size_t trials, std::uint64_t seed) {
  if (trials < 2) throw ValidationError("estimate_mse: trials must be at least 2");
  Rng rng(seed);
  std::vector<double> mmse_err(pre ? trials : 0);
  std::vector<double> lmmse_err(lmmse ? trials : 0);
  for (std::size_t t = 0; t < trials; ++t) {
    const Vector x = model.x_prior().draw(rng);
    const Vector n = model.noise().draw(rng);
    const Vector y = model.H() * x + n;
    if (pre) mmse_err[t] = (x - mmse_estimate(*pre, y)).squaredNorm();
    if (lmmse) lmmse_err[t] = (x - lmmse->estimate(y)).squaredNorm();
  }
  PairedMse out;
  if (pre) out.mmse = summarize(mmse_err);
  if (lmmse) out.lmmse = summarize(lmmse_err);
  return out;
}

SweepPoint run_point(const SweepConfig& config, std::size_t index) {
  SweepPoint point;
  point.snr_db = config.snr_db_grid[index];
  try {
    const CalibratedModel calibrated = calibrate_noise_scale(config.model, point.snr_db);
    point.noise_scale = calibrated.noise_scale;
    const PrecomputedEstimator pre(calibrated.model);
    const LmmseEstimator lmmse(calibrated.model);
    point.lower = genie_lower_bound(pre);
    point.upper = lmmse_upper_bound(lmmse);
    if (config.run_mmse || config.run_lmmse) {
      PairedMse mse = paired_mse(calibrated.model, config.run_mmse ? &pre : nullptr,
                                 config.run_lmmse ? &lmmse : nullptr, config.trials,
                                 derive_seed(config.seed, index));
      point.mmse = mse.mmse;
      point.lmmse = mse.lmmse;
    }
  } catch (const std::exception& e) {
    point.mmse.reset();
    point.lmmse.reset();
    point.error = e.what();
  }
  return point;
}

}  // namespace

PairedMse estimate_paired_mse(const BayesianLinearModel& model, std::size_t trials,
                              std::uint64_t seed, bool mmse, bool lmmse) {
  std::optional<PrecomputedEstimator> pre;
  std::optional<LmmseEstimator> linear;
  if (mmse) pre.emplace(model);
  if (lmmse) linear.emplace(model);
  return paired_mse(model, pre ? &*pre : nullptr, linear ? &*linear : nullptr, trials, seed);
}

MseEstimate estimate_mse(const BayesianLinearModel& model, std::size_t trials, std::uint64_t seed,
                         Estimator estimator) {
  const bool mmse = estimator == Estimator::mmse;
  PairedMse out = estimate_paired_mse(model, trials, seed, mmse, !mmse);
  return mmse ? *out.mmse : *out.lmmse;
}

void check_sweep_config(const SweepConfig& config) {
  if (config.snr_db_grid.empty()) throw ValidationError("sweep: SNR grid is empty");
  for (double s : config.snr_db_grid)
    if (!std::isfinite(s)) throw ValidationError("sweep: SNR grid has a non-finite entry");
  if (config.trials < 2) throw ValidationError("sweep: trials must be at least 2");
}

std::vector<SweepPoint> run_sweep(const SweepConfig& config, unsigned threads) {
  check_sweep_config(config);
  const std::size_t count = config.snr_db_grid.size();
  std::vector<SweepPoint> points(count);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) points[i] = run_point(config, i);
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return points;
}

}  // namespace gmmse
