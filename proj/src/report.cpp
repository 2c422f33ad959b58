#include "gmmse/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace gmmse {
namespace {

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string field(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

std::optional<double> db_or_empty(double linear) {
  if (!std::isfinite(linear) || !(linear > 0.0)) return std::nullopt;
  return to_db(linear);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::optional<double> parse_field(const std::string& text, std::size_t line_no) {
  if (text.empty()) return std::nullopt;
  double v = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw ValidationError("sweep CSV line " + std::to_string(line_no) + ": bad number '" + text +
                          "'");
  return v;
}

}  // namespace

SweepCsvRow to_csv_row(const SweepPoint& point) {
  SweepCsvRow row;
  row.snr_db = point.snr_db;
  row.noise_scale = point.noise_scale;
  if (point.mmse) {
    row.mse_mmse_db = db_or_empty(point.mmse->mse);
    row.stderr_mmse = point.mmse->standard_error;
  }
  if (point.lmmse) {
    row.mse_lmmse_db = db_or_empty(point.lmmse->mse);
    row.stderr_lmmse = point.lmmse->standard_error;
  }
  row.lower_db = db_or_empty(point.lower);
  row.upper_db = db_or_empty(point.upper);
  return row;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& points,
                     const std::vector<std::string>& notes) {
  out << kSweepCsvHeader << '\n';
  for (std::size_t i = 0; i < points.size(); ++i) {
    const SweepPoint& p = points[i];
    if (!p.error.empty())
      out << "# point " << i << " (snr_db=" << format_number(p.snr_db) << ") failed: " << p.error
          << '\n';
    const SweepCsvRow r = to_csv_row(p);
    out << format_number(r.snr_db) << ',' << format_number(r.noise_scale) << ','
        << field(r.mse_mmse_db) << ',' << field(r.stderr_mmse) << ',' << field(r.mse_lmmse_db)
        << ',' << field(r.stderr_lmmse) << ',' << field(r.lower_db) << ',' << field(r.upper_db)
        << '\n';
  }
  for (const auto& note : notes) out << "# " << note << '\n';
}

std::vector<SweepCsvRow> parse_sweep_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != kSweepCsvHeader)
    throw ValidationError("sweep CSV: missing or unexpected header");
  std::vector<SweepCsvRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto cells = split(line);
    if (cells.size() != 8)
      throw ValidationError("sweep CSV line " + std::to_string(line_no) + ": expected 8 fields");
    SweepCsvRow r;
    auto snr = parse_field(cells[0], line_no);
    auto scale = parse_field(cells[1], line_no);
    if (!snr) throw ValidationError("sweep CSV line " + std::to_string(line_no) + ": empty snr_db");
    r.snr_db = *snr;
    r.noise_scale = scale.value_or(0.0);
    r.mse_mmse_db = parse_field(cells[2], line_no);
    r.stderr_mmse = parse_field(cells[3], line_no);
    r.mse_lmmse_db = parse_field(cells[4], line_no);
    r.stderr_lmmse = parse_field(cells[5], line_no);
    r.lower_db = parse_field(cells[6], line_no);
    r.upper_db = parse_field(cells[7], line_no);
    rows.push_back(r);
  }
  return rows;
}

void write_sweep_svg(std::ostream& out, const std::vector<SweepPoint>& points) {
  constexpr double width = 800, height = 600;
  constexpr double left = 80, right = 30, top = 40, bottom = 70;

  struct Series {
    const char* label;
    const char* colour;
    const char* dash;
    std::vector<std::pair<double, double>> xy;
  };
  std::vector<Series> series{{"Empirical MMSE", "#1f77b4", "", {}},
                             {"Empirical LMMSE", "#ff7f0e", "", {}},
                             {"Lower bound Tr(M1)", "#2ca02c", "6,4", {}},
                             {"Upper bound (LMMSE)", "#d62728", "2,3", {}}};
  for (const auto& p : points) {
    const SweepCsvRow r = to_csv_row(p);
    if (r.mse_mmse_db) series[0].xy.emplace_back(r.snr_db, *r.mse_mmse_db);
    if (r.mse_lmmse_db) series[1].xy.emplace_back(r.snr_db, *r.mse_lmmse_db);
    if (r.lower_db) series[2].xy.emplace_back(r.snr_db, *r.lower_db);
    if (r.upper_db) series[3].xy.emplace_back(r.snr_db, *r.upper_db);
  }

  double x_min = 0, x_max = 1, y_min = 0, y_max = 1;
  bool any = false;
  for (const auto& s : series)
    for (auto [x, y] : s.xy) {
      if (!any) {
        x_min = x_max = x;
        y_min = y_max = y;
        any = true;
      }
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  if (x_max <= x_min) x_max = x_min + 1;
  y_min = std::floor(y_min / 10.0) * 10.0;
  y_max = std::ceil(y_max / 10.0) * 10.0;
  if (y_max <= y_min) y_max = y_min + 10;

  const double plot_w = width - left - right, plot_h = height - top - bottom;
  auto px = [&](double x) { return left + (x - x_min) / (x_max - x_min) * plot_w; };
  auto py = [&](double y) { return top + (y_max - y) / (y_max - y_min) * plot_h; };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\" width=\"800\" "
         "height=\"600\" font-family=\"sans-serif\" font-size=\"13\">\n";
  out << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\""
      << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";

  const double x_step = (x_max - x_min) > 30 ? 10 : ((x_max - x_min) > 6 ? 2 : 1);
  for (double x = std::ceil(x_min / x_step) * x_step; x <= x_max + 1e-9; x += x_step) {
    out << "<line x1=\"" << px(x) << "\" y1=\"" << top << "\" x2=\"" << px(x) << "\" y2=\""
        << top + plot_h << "\" stroke=\"#ddd\"/>\n";
    out << "<text x=\"" << px(x) << "\" y=\"" << top + plot_h + 18
        << "\" text-anchor=\"middle\">" << x << "</text>\n";
  }
  const double y_step = (y_max - y_min) > 40 ? 10 : 5;
  for (double y = y_min; y <= y_max + 1e-9; y += y_step) {
    out << "<line x1=\"" << left << "\" y1=\"" << py(y) << "\" x2=\"" << left + plot_w
        << "\" y2=\"" << py(y) << "\" stroke=\"#ddd\"/>\n";
    out << "<text x=\"" << left - 8 << "\" y=\"" << py(y) + 4 << "\" text-anchor=\"end\">" << y
        << "</text>\n";
  }
  out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 25
      << "\" text-anchor=\"middle\">SNR [dB]</text>\n";
  out << "<text transform=\"translate(22," << top + plot_h / 2
      << ") rotate(-90)\" text-anchor=\"middle\">MSE [dB]</text>\n";

  for (const auto& s : series) {
    if (s.xy.empty()) continue;
    out << "<polyline fill=\"none\" stroke=\"" << s.colour << "\" stroke-width=\"2\"";
    if (*s.dash) out << " stroke-dasharray=\"" << s.dash << "\"";
    out << " points=\"";
    for (auto [x, y] : s.xy) out << px(x) << ',' << py(y) << ' ';
    out << "\"/>\n";
  }
  double ly = top + 20;
  for (const auto& s : series) {
    const double lx = left + plot_w - 200;
    out << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 30 << "\" y2=\"" << ly
        << "\" stroke=\"" << s.colour << "\" stroke-width=\"2\"";
    if (*s.dash) out << " stroke-dasharray=\"" << s.dash << "\"";
    out << "/>\n<text x=\"" << lx + 38 << "\" y=\"" << ly + 4 << "\">" << s.label << "</text>\n";
    ly += 20;
  }
  out << "</svg>\n";
}

}  // namespace gmmse
