#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "gmmse/config.hpp"
#include "gmmse/oracle.hpp"
#include "gmmse/report.hpp"

namespace gmmse::cli {
namespace {

struct Options {
  std::string config;
  std::string out_csv;
  std::string out_svg;
  std::string y_inline;
  std::string y_file;
  std::string estimators;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

std::string fmt_vector(const Vector& v) {
  std::ostringstream os;
  os << '[';
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << std::setprecision(12) << v[i];
  os << ']';
  return os.str();
}

Vector parse_vector_text(const std::string& text) {
  std::vector<double> values;
  std::string cell;
  std::string cleaned = text;
  std::replace_if(cleaned.begin(), cleaned.end(),
                  [](char c) { return c == '[' || c == ']' || c == '\n' || c == ' ' || c == '\t'; },
                  ',');
  std::istringstream is(cleaned);
  while (std::getline(is, cell, ',')) {
    if (cell.empty()) continue;
    double v = 0.0;
    auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
      throw ValidationError("observation: bad number '" + cell + "'");
    values.push_back(v);
  }
  if (values.empty()) throw ValidationError("observation: no values given");
  return Eigen::Map<Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

void describe_mixture(std::ostream& out, const char* name, const GaussianMixture& m) {
  out << name << ": " << m.size() << " components, dimension " << m.dimension() << '\n';
  out << "  mean         " << fmt_vector(mixture_mean(m)) << '\n';
  out << "  Tr(cov)      " << fmt(mixture_covariance(m).trace()) << '\n';
  out << "  E||.||^2     " << fmt(second_moment(m)) << '\n';
}

int cmd_validate(const Options& opt, std::ostream& out) {
  const RunConfig cfg = load_run_config(opt.config);
  const auto& model = cfg.model;
  out << "config " << opt.config << ": valid\n";
  out << "d = " << model.state_dim() << ", m = " << model.observation_dim()
      << ", |K| = " << model.x_prior().size() << ", |L| = " << model.noise().size() << '\n';
  describe_mixture(out, "x", model.x_prior());
  describe_mixture(out, "noise", model.noise());
  const double s = snr(model);
  out << "prior SNR " << fmt(s) << " (" << fmt(to_db(s)) << " dB)\n";
  if (!cfg.snr_db_grid.empty())
    out << "sweep: " << cfg.snr_db_grid.size() << " points from " << fmt(cfg.snr_db_grid.front())
        << " to " << fmt(cfg.snr_db_grid.back()) << " dB, " << cfg.trials << " trials, seed "
        << cfg.seed << '\n';
  return kExitOk;
}

int cmd_estimate(const Options& opt, std::ostream& out) {
  const RunConfig cfg = load_run_config(opt.config);
  std::string text = opt.y_inline;
  if (!opt.y_file.empty()) {
    std::ifstream in(opt.y_file);
    if (!in) throw ValidationError(opt.y_file + ": cannot open");
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  const Vector y = parse_vector_text(text);
  if (y.size() != cfg.model.observation_dim())
    throw ValidationError("observation has " + std::to_string(y.size()) +
                          " entries but the model expects " +
                          std::to_string(cfg.model.observation_dim()));

  const PrecomputedEstimator pre(cfg.model);
  const PosteriorGM post = posterior(pre, y);
  const Vector estimate = posterior_mean(post);
  const Matrix cov = posterior_covariance(post);

  out << "x_hat = " << fmt_vector(estimate) << '\n';
  out << "responsibilities (k, l, alpha):\n";
  double total = 0.0;
  for (std::size_t i = 0; i < pre.pairs().size(); ++i) {
    out << "  " << pre.pairs()[i].k << ' ' << pre.pairs()[i].l << ' ' << std::setprecision(12)
        << std::fixed << post.responsibilities[i] << std::defaultfloat << '\n';
    total += post.responsibilities[i];
  }
  out << "  sum " << std::fixed << std::setprecision(12) << total << std::defaultfloat << '\n';
  out << "Tr(C_x|y) = " << fmt(cov.trace()) << '\n';
  return kExitOk;
}

int cmd_sweep(const Options& opt, std::ostream& out, std::ostream& err) {
  RunConfig cfg = load_run_config(opt.config);
  if (cfg.snr_db_grid.empty()) throw ConfigError("sweep.snr_db: required for the sweep command");
  if (opt.trials) cfg.trials = opt.trials;
  if (opt.seed) cfg.seed = opt.seed;
  if (!opt.estimators.empty()) {
    cfg.run_mmse = cfg.run_lmmse = false;
    std::istringstream is(opt.estimators);
    std::string name;
    while (std::getline(is, name, ',')) {
      if (name == "mmse") cfg.run_mmse = true;
      else if (name == "lmmse") cfg.run_lmmse = true;
      else if (name != "none") throw ValidationError("--estimators: unknown estimator '" + name + "'");
    }
  }
  std::string csv_path = !opt.out_csv.empty() ? opt.out_csv : cfg.out_csv.value_or("");
  std::string svg_path = !opt.out_svg.empty() ? opt.out_svg : cfg.out_svg.value_or("");
  if (csv_path.empty()) throw ValidationError("sweep: no output path (--out or output.csv)");

  std::ofstream csv(csv_path);
  if (!csv) {
    err << "error: cannot write " << csv_path << '\n';
    return kExitRuntime;
  }
  std::ofstream svg;
  if (!svg_path.empty()) {
    svg.open(svg_path);
    if (!svg) {
      err << "error: cannot write " << svg_path << '\n';
      return kExitRuntime;
    }
  }

  const auto points = run_sweep(cfg.sweep(), opt.threads);
  const std::vector<std::string> notes{
      "mse_*_db, lower_db, upper_db: 10*log10(value) with unit reference; stderr_* linear",
      "noise_scale a: noise is a times the configured noise mixture",
      "mmse and lmmse are evaluated on the same draws at each point",
      "trials=" + std::to_string(cfg.trials) + " seed=" + std::to_string(cfg.seed)};
  write_sweep_csv(csv, points, notes);
  if (svg.is_open()) write_sweep_svg(svg, points);

  std::size_t failed = 0;
  for (const auto& p : points)
    if (!p.error.empty()) {
      ++failed;
      err << "warning: snr " << fmt(p.snr_db) << " dB failed: " << p.error << '\n';
    }
  out << "wrote " << points.size() << " points to " << csv_path;
  if (!svg_path.empty()) out << " and " << svg_path;
  out << '\n';
  return failed ? kExitRuntime : kExitOk;
}

int cmd_oracle_check(const Options& opt, std::ostream& out) {
  const RunConfig cfg = load_run_config(opt.config);
  if (cfg.model.state_dim() != 1 || cfg.model.observation_dim() != 1)
    throw ValidationError("oracle-check requires a scalar model (d = m = 1)");
  const OracleReport r = check_against_oracle(cfg.model);
  out << "max |mmse - quadrature mean| = " << std::scientific << std::setprecision(3)
      << r.max_deviation << std::defaultfloat << " (tolerance " << kOracleTolerance << ")\n";
  out << "quadrature MSE " << fmt(r.quad_mse) << " in [" << fmt(r.lower) << ", " << fmt(r.upper)
      << "]: " << (r.mse_within_bounds ? "yes" : "no") << '\n';
  out << (r.passed ? "PASS" : "FAIL") << '\n';
  return r.passed ? kExitOk : kExitValidation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gaussian-mixture MMSE estimation for y = Hx + n", "gmmse"};
  app.require_subcommand(1);
  Options opt;

  auto* validate = app.add_subcommand("validate", "Check a config and print model summary");
  validate->add_option("--config", opt.config, "Config file")->required();

  auto* estimate = app.add_subcommand("estimate", "MMSE estimate for one observation");
  estimate->add_option("--config", opt.config, "Config file")->required();
  auto* y_opt = estimate->add_option("--y", opt.y_inline, "Observation, comma separated");
  auto* y_file = estimate->add_option("--y-file", opt.y_file, "File holding the observation");
  y_opt->excludes(y_file);
  estimate->callback([&] {
    if (opt.y_inline.empty() && opt.y_file.empty())
      throw CLI::ValidationError("--y or --y-file is required");
  });

  auto* sweep = app.add_subcommand("sweep", "Monte Carlo MSE and bounds over an SNR grid");
  sweep->add_option("--config", opt.config, "Config file")->required();
  sweep->add_option("--out", opt.out_csv, "CSV output path");
  sweep->add_option("--svg", opt.out_svg, "SVG chart output path");
  sweep->add_option("--trials", opt.trials, "Trials per SNR point")->check(CLI::Range(2ul, 1ul << 40));
  sweep->add_option("--seed", opt.seed, "Seed (overrides config)");
  sweep->add_option("--estimators", opt.estimators, "Comma list of mmse,lmmse or none");
  sweep->add_option("--threads", opt.threads, "Worker threads (0 = all cores)");

  auto* oracle = app.add_subcommand("oracle-check", "Compare against the quadrature oracle");
  oracle->add_option("--config", opt.config, "Config file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    if (*validate) return cmd_validate(opt, out);
    if (*estimate) return cmd_estimate(opt, out);
    if (*sweep) return cmd_sweep(opt, out, err);
    if (*oracle) return cmd_oracle_check(opt, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitValidation;
}

}  // namespace gmmse::cli
