#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gmmse/montecarlo.hpp"

namespace gmmse {

inline constexpr const char* kSweepCsvHeader =
    "snr_db,noise_scale,mse_mmse_db,stderr_mmse,mse_lmmse_db,stderr_lmmse,lower_db,upper_db";

/// One CSV data row as printed. MSE and bound columns are 10*log10 of the
/// linear value; standard errors stay linear. Absent values are empty fields.
struct SweepCsvRow {
  double snr_db = 0.0;
  double noise_scale = 0.0;
  std::optional<double> mse_mmse_db;
  std::optional<double> stderr_mmse;
  std::optional<double> mse_lmmse_db;
  std::optional<double> stderr_lmmse;
  std::optional<double> lower_db;
  std::optional<double> upper_db;

  bool operator==(const SweepCsvRow&) const = default;
};

SweepCsvRow to_csv_row(const SweepPoint& point);

/// Header line, then one row per point (17 significant digits). A failed
/// point is preceded by a "# point i ..." comment line. `notes` are appended
/// as trailing "# " lines.
void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& points,
                     const std::vector<std::string>& notes = {});

/// Reads back what write_sweep_csv produced; comment lines are skipped.
/// Throws ValidationError on a bad header or malformed row.
std::vector<SweepCsvRow> parse_sweep_csv(std::istream& in);

/// Single-panel chart (800x600 viewBox) of MSE in dB against SNR: empirical
/// MMSE, empirical LMMSE, lower bound and upper bound.
void write_sweep_svg(std::ostream& out, const std::vector<SweepPoint>& points);

}  // namespace gmmse
