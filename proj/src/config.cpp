#include "relaylab/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace relaylab::config {

namespace {

const std::set<std::string, std::less<>> kKnownKeys = {
    "experiment", "alpha",       "d_sr",      "d_sr_grid",      "schemes", "rate",
    "rate_grid",  "beta0_grid",  "snr_db",    "snr_db_grid",    "epsilons", "n_trials",
    "master_seed", "beta_policy", "method",   "mc_check",       "rate_tolerance", "r_max",
    "output",     "workers"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(std::string_view text, std::string_view key) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw ConfigError("'" + std::string(key) + "': not a finite number: '" + std::string(text) + "'");
  }
  return value;
}

std::uint64_t parse_uint(std::string_view text, std::string_view key) {
  text = trim(text);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("'" + std::string(key) + "': not a non-negative integer: '" +
                      std::string(text) + "'");
  }
  return value;
}

bool parse_bool(std::string_view text, std::string_view key) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError("'" + std::string(key) + "': expected true or false");
}

std::vector<double> parse_list(std::string_view text, std::string_view key) {
  std::vector<double> values;
  for (auto token : split(text, ',')) values.push_back(parse_double(token, key));
  return values;
}

// Grid points are rounded to 12 significant digits so that "0.05:0.05:0.95"
// yields 0.15 rather than 0.15000000000000002.
double tidy(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += format_number(values[i]);
  }
  return out;
}

std::string_view policy_name(rate_gain::BetaPolicy policy) {
  switch (policy) {
    case rate_gain::BetaPolicy::Fixed:
      return "fixed";
    case rate_gain::BetaPolicy::Distance:
      return "distance";
    case rate_gain::BetaPolicy::Numeric:
      return "numeric";
  }
  return "?";
}

void apply_defaults(ExperimentConfig& c) {
  using capacity::Scheme;
  c.schemes = {Scheme::DT, Scheme::MH, Scheme::AMR};
  c.epsilons = {0.1, 0.01, 0.001};
  c.beta0_grid = {0.5};
  switch (c.experiment) {
    case Experiment::Fig2:
      c.d_sr_grid = parse_grid("0.01:0.01:0.99");
      break;
    case Experiment::Fig3:
      c.d_sr_grid = parse_grid("0.01:0.01:0.99");
      c.rate = 2.0;
      c.snr_db = 10.0;
      break;
    case Experiment::Fig4:
      c.rate_grid = parse_grid("0.1:0.1:8");
      c.snr_db = 30.0;
      break;
    case Experiment::Table1:
      c.snr_db = 30.0;
      c.n_trials = 10'000'000;
      break;
    case Experiment::Sweep:
      c.d_sr_grid = {0.25, 0.5, 0.75};
      c.rate_grid = {1.0, 2.0};
      c.snr_db_grid = {10.0};
      break;
  }
}

void check_grid(const std::vector<double>& grid, std::string_view key) {
  if (grid.empty()) throw ConfigError("'" + std::string(key) + "' must not be empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw ConfigError("'" + std::string(key) + "' must be strictly increasing");
    }
  }
}

void validate(const ExperimentConfig& c) {
  if (!(c.alpha >= 2.0 && c.alpha <= 6.0)) throw ConfigError("'alpha' must lie in [2, 6]");
  if (!(c.d_sr > 0.0 && c.d_sr < 1.0)) throw ConfigError("'d_sr' must lie in (0, 1)");
  if (!(c.rate > 0.0)) throw ConfigError("'rate' must be positive");
  if (c.n_trials < 1) throw ConfigError("'n_trials' must be at least 1");
  if (!(c.rate_tolerance > 0.0)) throw ConfigError("'rate_tolerance' must be positive");
  if (!(c.r_max > 1e-6)) throw ConfigError("'r_max' must exceed the lower rate bracket");
  switch (c.experiment) {
    case Experiment::Fig2:
    case Experiment::Fig3:
      check_grid(c.d_sr_grid, "d_sr_grid");
      break;
    case Experiment::Fig4:
      check_grid(c.rate_grid, "rate_grid");
      break;
    case Experiment::Table1:
      break;
    case Experiment::Sweep:
      check_grid(c.d_sr_grid, "d_sr_grid");
      check_grid(c.rate_grid, "rate_grid");
      check_grid(c.beta0_grid, "beta0_grid");
      check_grid(c.snr_db_grid, "snr_db_grid");
      if (c.schemes.empty()) throw ConfigError("'schemes' must not be empty");
      break;
  }
  for (double d : c.d_sr_grid) {
    if (!(d > 0.0 && d < 1.0)) throw ConfigError("'d_sr_grid' values must lie in (0, 1)");
  }
  for (double r : c.rate_grid) {
    if (!(r > 0.0)) throw ConfigError("'rate_grid' values must be positive");
  }
  for (double b : c.beta0_grid) {
    if (!(b > 0.0 && b < 1.0)) throw ConfigError("'beta0_grid' values must lie in (0, 1)");
  }
  if (c.epsilons.empty()) throw ConfigError("'epsilons' must not be empty");
  for (double e : c.epsilons) {
    if (!(e > 0.0 && e < 1.0)) throw ConfigError("'epsilons' values must lie in (0, 1)");
  }
}

}  // namespace

std::string_view to_string(Experiment experiment) {
  switch (experiment) {
    case Experiment::Fig2:
      return "fig2";
    case Experiment::Fig3:
      return "fig3";
    case Experiment::Fig4:
      return "fig4";
    case Experiment::Table1:
      return "table1";
    case Experiment::Sweep:
      return "sweep";
  }
  return "?";
}

Experiment parse_experiment(std::string_view name) {
  for (auto e : {Experiment::Fig2, Experiment::Fig3, Experiment::Fig4, Experiment::Table1,
                 Experiment::Sweep}) {
    if (to_string(e) == name) return e;
  }
  throw ConfigError("unknown experiment '" + std::string(name) + "'");
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::vector<double> parse_grid(std::string_view text) {
  text = trim(text);
  std::vector<double> grid;
  if (text.find(':') != std::string_view::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw ConfigError("range grid must be start:step:stop");
    const double start = parse_double(parts[0], "grid");
    const double step = parse_double(parts[1], "grid");
    const double stop = parse_double(parts[2], "grid");
    if (!(step > 0.0) || stop < start) throw ConfigError("range grid needs step > 0 and stop >= start");
    const double count = std::floor((stop - start) / step + 1e-9);
    if (count > 1e7) throw ConfigError("range grid is too large");
    for (long i = 0; i <= static_cast<long>(count); ++i) grid.push_back(tidy(start + i * step));
  } else {
    grid = parse_list(text, "grid");
  }
  check_grid(grid, "grid");
  return grid;
}

std::map<std::string, std::string> parse_key_values(std::string_view text) {
  std::map<std::string, std::string> values;
  int line_no = 0;
  for (auto raw : split(text, '\n')) {
    ++line_no;
    const auto hash = raw.find('#');
    const auto line = trim(hash == std::string_view::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (!kKnownKeys.contains(key)) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (values.contains(key)) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    values[key] = value;
  }
  return values;
}

ExperimentConfig make_config(const std::map<std::string, std::string>& values,
                             const Experiment* experiment_override) {
  for (const auto& [key, _] : values) {
    if (!kKnownKeys.contains(key)) throw ConfigError("unknown key '" + key + "'");
  }
  ExperimentConfig c;
  if (experiment_override) {
    c.experiment = *experiment_override;
  } else if (auto it = values.find("experiment"); it != values.end()) {
    c.experiment = parse_experiment(it->second);
  } else {
    throw ConfigError("no experiment given");
  }
  apply_defaults(c);

  const auto get = [&](const char* key) -> const std::string* {
    const auto it = values.find(key);
    return it == values.end() ? nullptr : &it->second;
  };
  if (auto v = get("alpha")) c.alpha = parse_double(*v, "alpha");
  if (auto v = get("d_sr")) c.d_sr = parse_double(*v, "d_sr");
  if (auto v = get("d_sr_grid")) c.d_sr_grid = parse_grid(*v);
  if (auto v = get("rate")) c.rate = parse_double(*v, "rate");
  if (auto v = get("rate_grid")) c.rate_grid = parse_grid(*v);
  if (auto v = get("beta0_grid")) c.beta0_grid = parse_grid(*v);
  if (auto v = get("snr_db")) c.snr_db = parse_double(*v, "snr_db");
  if (auto v = get("snr_db_grid")) c.snr_db_grid = parse_grid(*v);
  if (auto v = get("epsilons")) c.epsilons = parse_list(*v, "epsilons");
  if (auto v = get("n_trials")) c.n_trials = parse_uint(*v, "n_trials");
  if (auto v = get("master_seed")) c.master_seed = parse_uint(*v, "master_seed");
  if (auto v = get("mc_check")) c.mc_check = parse_bool(*v, "mc_check");
  if (auto v = get("rate_tolerance")) c.rate_tolerance = parse_double(*v, "rate_tolerance");
  if (auto v = get("r_max")) c.r_max = parse_double(*v, "r_max");
  if (auto v = get("output")) c.output = *v;
  if (auto v = get("workers")) c.workers = static_cast<unsigned>(parse_uint(*v, "workers"));
  if (auto v = get("schemes")) {
    c.schemes.clear();
    try {
      for (auto token : split(*v, ',')) c.schemes.push_back(capacity::parse_scheme(token));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("'schemes': ") + e.what());
    }
  }
  if (auto v = get("beta_policy")) {
    if (*v == "distance") {
      c.beta_policy = rate_gain::BetaPolicy::Distance;
    } else if (*v == "numeric") {
      c.beta_policy = rate_gain::BetaPolicy::Numeric;
    } else {
      throw ConfigError("'beta_policy' must be distance or numeric");
    }
  }
  if (auto v = get("method")) {
    if (*v == "closed") {
      c.method = OutageMethod::ClosedForm;
    } else if (*v == "mc") {
      c.method = OutageMethod::MonteCarlo;
    } else {
      throw ConfigError("'method' must be closed or mc");
    }
  }

  validate(c);
  c.snr = db_to_linear(c.snr_db);
  c.snr_grid.clear();
  for (double db : c.snr_db_grid) c.snr_grid.push_back(db_to_linear(db));
  return c;
}

ExperimentConfig load_config_file(const std::string& path, const Experiment* experiment_override) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return make_config(parse_key_values(text.str()), experiment_override);
}

std::string echo(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "experiment = " << to_string(c.experiment) << "\n";
  os << "alpha = " << format_number(c.alpha) << "\n";
  os << "d_sr = " << format_number(c.d_sr) << "\n";
  if (!c.d_sr_grid.empty()) os << "d_sr_grid = " << join(c.d_sr_grid) << "\n";
  os << "schemes = ";
  for (std::size_t i = 0; i < c.schemes.size(); ++i) {
    os << (i ? "," : "") << capacity::to_string(c.schemes[i]);
  }
  os << "\n";
  os << "rate = " << format_number(c.rate) << "\n";
  if (!c.rate_grid.empty()) os << "rate_grid = " << join(c.rate_grid) << "\n";
  if (!c.beta0_grid.empty()) os << "beta0_grid = " << join(c.beta0_grid) << "\n";
  os << "snr_db = " << format_number(c.snr_db) << "\n";
  if (!c.snr_db_grid.empty()) os << "snr_db_grid = " << join(c.snr_db_grid) << "\n";
  os << "epsilons = " << join(c.epsilons) << "\n";
  os << "n_trials = " << c.n_trials << "\n";
  os << "master_seed = " << c.master_seed << "\n";
  os << "beta_policy = " << policy_name(c.beta_policy) << "\n";
  os << "method = " << (c.method == OutageMethod::ClosedForm ? "closed" : "mc") << "\n";
  os << "mc_check = " << (c.mc_check ? "true" : "false") << "\n";
  os << "rate_tolerance = " << format_number(c.rate_tolerance) << "\n";
  os << "r_max = " << format_number(c.r_max) << "\n";
  if (!c.output.empty()) os << "output = " << c.output << "\n";
  return os.str();
}

}  // namespace relaylab::config
