#include "gmmse/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gmmse {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError(field + ": " + what);
}

const json& require(const json& obj, const std::string& key, const std::string& field) {
  if (!obj.is_object()) fail(field, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(field + "." + key, "missing");
  return *it;
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) fail(field, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(field, "not finite");
  return d;
}

Vector vector_of(const json& v, const std::string& field) {
  if (!v.is_array() || v.empty()) fail(field, "expected a nonempty array of numbers");
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i)
    out[static_cast<Eigen::Index>(i)] = number(v[i], field + "[" + std::to_string(i) + "]");
  return out;
}

Matrix matrix_of(const json& v, const std::string& field) {
  if (!v.is_array() || v.empty()) fail(field, "expected a nonempty array of rows");
  const std::size_t rows = v.size();
  std::size_t cols = 0;
  Matrix out;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string row_field = field + "[" + std::to_string(r) + "]";
    const Vector row = vector_of(v[r], row_field);
    if (r == 0) {
      cols = static_cast<std::size_t>(row.size());
      out.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    } else if (static_cast<std::size_t>(row.size()) != cols) {
      fail(row_field, "row has " + std::to_string(row.size()) + " entries, expected " +
                          std::to_string(cols));
    }
    out.row(static_cast<Eigen::Index>(r)) = row.transpose();
  }
  return out;
}

GaussianMixture mixture_of(const json& v, const std::string& field) {
  if (!v.is_array() || v.empty()) fail(field, "expected a nonempty array of components");
  std::vector<GaussianComponent> comps;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const std::string f = field + "[" + std::to_string(k) + "]";
    GaussianComponent c;
    c.weight = number(require(v[k], "weight", f), f + ".weight");
    c.mean = vector_of(require(v[k], "mean", f), f + ".mean");
    c.covariance = matrix_of(require(v[k], "covariance", f), f + ".covariance");
    comps.push_back(std::move(c));
  }
  if (auto issue = validate(comps)) fail(field, *issue);
  return GaussianMixture(std::move(comps));
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end(), nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream os;
    os << "syntax error at line " << line << ", column " << col << ": " << e.what();
    throw ConfigError(os.str());
  }
}

std::uint64_t unsigned_of(const json& v, const std::string& field) {
  if (!v.is_number_unsigned()) fail(field, "expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

}  // namespace

std::vector<double> snr_grid(double start, double stop, double step) {
  if (!std::isfinite(start) || !std::isfinite(stop) || !(step > 0.0) || !std::isfinite(step))
    throw ConfigError("start/stop must be finite and step positive");
  if (stop < start) throw ConfigError("stop is below start");
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = start + step * static_cast<double>(i);
  return grid;
}

SweepConfig RunConfig::sweep() const {
  return SweepConfig{model, snr_db_grid, trials, seed, run_mmse, run_lmmse};
}

GaussianMixture parse_mixture(std::string_view json_text, const std::string& field) {
  return mixture_of(parse_json(json_text), field);
}

RunConfig parse_run_config(std::string_view text) {
  const json root = parse_json(text);
  const json& model = require(root, "model", "config");
  const Matrix H = matrix_of(require(model, "H", "model"), "model.H");
  GaussianMixture x = mixture_of(require(model, "x", "model"), "model.x");
  GaussianMixture noise = mixture_of(require(model, "noise", "model"), "model.noise");
  if (H.cols() != x.dimension() || H.rows() != noise.dimension()) {
    std::ostringstream os;
    os << "H is " << H.rows() << "x" << H.cols() << " but x has dimension " << x.dimension()
       << " and noise has dimension " << noise.dimension();
    fail("model.H", os.str());
  }
  RunConfig cfg{BayesianLinearModel(H, std::move(x), std::move(noise)), {}, 50000, 1, true, true,
                std::nullopt, std::nullopt};

  if (auto it = root.find("sweep"); it != root.end()) {
    const json& sweep = *it;
    if (!sweep.is_object()) fail("sweep", "expected an object");
    if (auto g = sweep.find("snr_db"); g != sweep.end()) {
      const double start = number(require(*g, "start", "sweep.snr_db"), "sweep.snr_db.start");
      const double stop = number(require(*g, "stop", "sweep.snr_db"), "sweep.snr_db.stop");
      const double step = number(require(*g, "step", "sweep.snr_db"), "sweep.snr_db.step");
      try {
        cfg.snr_db_grid = snr_grid(start, stop, step);
      } catch (const ConfigError& e) {
        fail("sweep.snr_db", e.what());
      }
    }
    if (auto t = sweep.find("trials"); t != sweep.end()) {
      cfg.trials = unsigned_of(*t, "sweep.trials");
      if (cfg.trials < 2) fail("sweep.trials", "must be at least 2");
    }
    if (auto s = sweep.find("seed"); s != sweep.end()) cfg.seed = unsigned_of(*s, "sweep.seed");
    if (auto e = sweep.find("estimators"); e != sweep.end()) {
      if (!e->is_array()) fail("sweep.estimators", "expected an array");
      cfg.run_mmse = cfg.run_lmmse = false;
      for (const auto& name : *e) {
        if (name == "mmse") cfg.run_mmse = true;
        else if (name == "lmmse") cfg.run_lmmse = true;
        else fail("sweep.estimators", "unknown estimator " + name.dump());
      }
    }
  }
  if (auto it = root.find("output"); it != root.end()) {
    if (!it->is_object()) fail("output", "expected an object");
    if (auto c = it->find("csv"); c != it->end()) {
      if (!c->is_string()) fail("output.csv", "expected a string");
      cfg.out_csv = c->get<std::string>();
    }
    if (auto s = it->find("svg"); s != it->end()) {
      if (!s->is_string()) fail("output.svg", "expected a string");
      cfg.out_svg = s->get<std::string>();
    }
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_run_config(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace gmmse
