#include "porolub/run_config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "porolub/csv.hpp"

namespace porolub {

const char* to_string(RunMode mode) {
  switch (mode) {
    case RunMode::LongBilateral: return "long-bilateral";
    case RunMode::LongCavitation: return "long-cavitation";
    case RunMode::Explicit: return "explicit";
    case RunMode::FreeBoundary: return "freeboundary";
    case RunMode::Coupled3dBilateral: return "coupled3d-bilateral";
    case RunMode::Coupled3dCavitation: return "coupled3d-cavitation";
    case RunMode::ConvergenceStudy: return "convergence-study";
  }
  return "?";
}

std::optional<RunMode> parse_mode(const std::string& text) {
  static const std::map<std::string, RunMode> table = {
      {"long-bilateral", RunMode::LongBilateral},
      {"long-cavitation", RunMode::LongCavitation},
      {"explicit", RunMode::Explicit},
      {"freeboundary", RunMode::FreeBoundary},
      {"coupled3d-bilateral", RunMode::Coupled3dBilateral},
      {"coupled3d-cavitation", RunMode::Coupled3dCavitation},
      {"convergence-study", RunMode::ConvergenceStudy},
  };
  auto it = table.find(text);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = 0, end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

bool is_long_mode(RunMode m) {
  return m == RunMode::LongBilateral || m == RunMode::LongCavitation ||
         m == RunMode::Explicit;
}

bool is_3d_mode(RunMode m) {
  return m == RunMode::Coupled3dBilateral || m == RunMode::Coupled3dCavitation;
}

// keys each mode accepts beyond the common set
const std::set<std::string> kCommonKeys = {"mode", "out",   "tol",  "omega",
                                           "maxit", "seed", "levels"};
const std::set<std::string> kLongKeys = {"a", "eps", "k1", "k3", "N", "M"};
const std::set<std::string> k3dKeys = {"R1",  "R2",     "L",       "c",
                                       "eps", "mu",     "U",       "Phi",
                                       "n_rho", "n_theta", "n_y"};
const std::set<std::string> kFreeBoundaryKeys = {"forcing", "length", "grid"};

bool key_allowed(RunMode mode, const std::string& key) {
  if (kCommonKeys.count(key)) return true;
  if (mode == RunMode::ConvergenceStudy) {
    if (key == "target") return true;
    // the study accepts its target's keys
    return kLongKeys.count(key) || k3dKeys.count(key) ||
           kFreeBoundaryKeys.count(key);
  }
  if (is_long_mode(mode)) return kLongKeys.count(key) > 0;
  if (is_3d_mode(mode)) return k3dKeys.count(key) > 0;
  if (mode == RunMode::FreeBoundary) return kFreeBoundaryKeys.count(key) > 0;
  return false;
}

std::vector<std::string> required_keys(RunMode mode) {
  if (is_long_mode(mode)) return {"a", "eps"};
  if (is_3d_mode(mode)) return {"R1", "R2", "L", "c", "eps", "mu", "U", "Phi"};
  if (mode == RunMode::ConvergenceStudy) return {"target"};
  return {};
}

double parse_number(const std::string& key, const std::string& value, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    if (!std::isfinite(v)) throw std::invalid_argument("not finite");
    return v;
  } catch (const std::exception&) {
    std::ostringstream msg;
    msg << "line " << line << ": key '" << key << "' needs a number, got '"
        << value << "'";
    throw ConfigError(msg.str());
  }
}

int parse_int(const std::string& key, const std::string& value, int line) {
  const double v = parse_number(key, value, line);
  if (v != std::floor(v)) {
    std::ostringstream msg;
    msg << "line " << line << ": key '" << key << "' needs an integer, got '"
        << value << "'";
    throw ConfigError(msg.str());
  }
  return static_cast<int>(v);
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
  std::map<std::string, std::pair<std::string, int>> pairs;  // key -> value, line
  std::istringstream stream(text);
  std::string raw;
  int line = 0;
  while (std::getline(stream, raw)) {
    ++line;
    const std::size_t hash_pos = raw.find('#');
    if (hash_pos != std::string::npos) raw.erase(hash_pos);
    const std::string entry = trim(raw);
    if (entry.empty()) continue;
    const std::size_t eq = entry.find('=');
    if (eq == std::string::npos) {
      std::ostringstream msg;
      msg << origin << ": line " << line << ": expected 'key = value', got '"
          << entry << "'";
      throw ConfigError(msg.str());
    }
    const std::string key = trim(entry.substr(0, eq));
    const std::string value = trim(entry.substr(eq + 1));
    if (key.empty() || value.empty()) {
      std::ostringstream msg;
      msg << origin << ": line " << line << ": empty key or value";
      throw ConfigError(msg.str());
    }
    if (pairs.count(key)) {
      std::ostringstream msg;
      msg << origin << ": line " << line << ": duplicate key '" << key
          << "' (first at line " << pairs[key].second << ")";
      throw ConfigError(msg.str());
    }
    pairs[key] = {value, line};
  }

  auto it = pairs.find("mode");
  if (it == pairs.end())
    throw ConfigError(origin + ": missing required key 'mode'");
  const auto mode = parse_mode(it->second.first);
  if (!mode) {
    std::ostringstream msg;
    msg << origin << ": line " << it->second.second << ": unrecognized mode '"
        << it->second.first << "'";
    throw ConfigError(msg.str());
  }

  RunConfig config;
  config.mode = *mode;

  // unknown keys are errors
  for (const auto& [key, value] : pairs) {
    if (!key_allowed(config.mode, key)) {
      std::ostringstream msg;
      msg << origin << ": line " << value.second << ": unknown key '" << key
          << "' for mode " << to_string(config.mode);
      throw ConfigError(msg.str());
    }
  }

  // missing required keys, listed all at once
  std::vector<std::string> missing;
  for (const std::string& key : required_keys(config.mode))
    if (!pairs.count(key)) missing.push_back(key);
  if (!missing.empty()) {
    std::ostringstream msg;
    msg << origin << ": missing required key";
    if (missing.size() > 1) msg << 's';
    msg << " for mode " << to_string(config.mode) << ':';
    for (const std::string& key : missing) msg << ' ' << key;
    throw ConfigError(msg.str());
  }

  for (const auto& [key, entry] : pairs) {
    const std::string& value = entry.first;
    const int at = entry.second;
    if (key == "mode") continue;
    else if (key == "out") config.out_dir = value;
    else if (key == "tol") config.tol = parse_number(key, value, at);
    else if (key == "omega") config.omega = parse_number(key, value, at);
    else if (key == "maxit") config.maxit = parse_int(key, value, at);
    else if (key == "seed") config.seed = static_cast<std::uint64_t>(
        parse_number(key, value, at));
    else if (key == "levels") config.levels = parse_int(key, value, at);
    else if (key == "a") config.a = parse_number(key, value, at);
    else if (key == "eps") config.eps = parse_number(key, value, at);
    else if (key == "k1") config.k1 = parse_number(key, value, at);
    else if (key == "k3") config.k3 = parse_number(key, value, at);
    else if (key == "N") config.N = parse_int(key, value, at);
    else if (key == "M") config.M = parse_int(key, value, at);
    else if (key == "R1") config.geom.R1 = parse_number(key, value, at);
    else if (key == "R2") config.geom.R2 = parse_number(key, value, at);
    else if (key == "L") config.geom.L = parse_number(key, value, at);
    else if (key == "c") config.geom.c = parse_number(key, value, at);
    else if (key == "mu") config.geom.mu = parse_number(key, value, at);
    else if (key == "U") config.geom.U = parse_number(key, value, at);
    else if (key == "Phi") config.geom.Phi = parse_number(key, value, at);
    else if (key == "n_rho") config.n_rho = parse_int(key, value, at);
    else if (key == "n_theta") config.n_theta = parse_int(key, value, at);
    else if (key == "n_y") config.n_y = parse_int(key, value, at);
    else if (key == "forcing") config.forcing = value;
    else if (key == "length") config.length = parse_number(key, value, at);
    else if (key == "grid") config.fb_grid = parse_int(key, value, at);
    else if (key == "target") {
      const auto target = parse_mode(value);
      if (!target || *target == RunMode::ConvergenceStudy) {
        std::ostringstream msg;
        msg << origin << ": line " << at << ": invalid study target '" << value
            << "'";
        throw ConfigError(msg.str());
      }
      config.study_target = target;
    }
  }
  const RunMode effective = config.study_target.value_or(config.mode);
  if (is_3d_mode(effective)) config.geom.eps = config.eps;

  validate(config);
  return config;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str(), path);
}

void apply_overrides(RunConfig& config, const ConfigOverrides& overrides) {
  if (overrides.mode) {
    const auto mode = parse_mode(*overrides.mode);
    if (!mode) throw ConfigError("flag --mode: unrecognized mode '" +
                                 *overrides.mode + "'");
    config.mode = *mode;
  }
  if (overrides.out_dir) config.out_dir = *overrides.out_dir;
  if (overrides.tol) config.tol = *overrides.tol;
  if (overrides.seed) config.seed = *overrides.seed;
  validate(config);
}

void validate(const RunConfig& config) {
  auto reject = [](const std::string& what) { throw ConfigError(what); };

  if (!(config.tol > 0.0 && config.tol < 1.0))
    reject("tol must lie in (0, 1), got " + format_g17(config.tol));
  if (!(config.omega > 0.0 && config.omega < 2.0))
    reject("omega must lie in (0, 2), got " + format_g17(config.omega));
  if (config.maxit <= 0) reject("maxit must be positive");
  if (config.N < 1) reject("N must be >= 1");
  if (config.M < 16) reject("M must be >= 16");
  if (config.levels < 1) reject("levels must be >= 1");

  if (is_long_mode(config.mode) ||
      (config.mode == RunMode::ConvergenceStudy && config.study_target &&
       is_long_mode(*config.study_target))) {
    if (!(config.a > 0.0)) reject("a must be positive, got " + format_g17(config.a));
    if (!(config.eps >= 0.0 && config.eps < 1.0))
      reject("eps must satisfy 0 <= eps < 1, got " + format_g17(config.eps));
  }
  if (is_3d_mode(config.mode) ||
      (config.mode == RunMode::ConvergenceStudy && config.study_target &&
       is_3d_mode(*config.study_target))) {
    try {
      porolub::validate(config.geom);
    } catch (const std::invalid_argument& err) {
      reject(err.what());
    }
    CylindricalGrid grid{config.n_rho, config.n_theta, config.n_y};
    if (grid.n_rho < 3 || grid.n_theta < 8 || grid.n_y < 3)
      reject("grid too coarse: need n_rho >= 3, n_theta >= 8, n_y >= 3");
  }
  if (config.mode == RunMode::FreeBoundary ||
      (config.mode == RunMode::ConvergenceStudy && config.study_target &&
       *config.study_target == RunMode::FreeBoundary)) {
    if (config.forcing != "sin2x" && config.forcing != "cosx")
      reject("forcing must be sin2x or cosx, got '" + config.forcing + "'");
    if (!(config.length > 0.0)) reject("length must be positive");
    if (config.fb_grid < 8) reject("grid must be >= 8");
  }
  if (config.mode == RunMode::ConvergenceStudy && !config.study_target)
    reject("convergence-study needs a 'target' key naming a solver mode");
}

std::string RunConfig::canonical() const {
  std::ostringstream out;
  out << "mode=" << to_string(mode) << '\n';
  if (study_target) out << "target=" << to_string(*study_target) << '\n';
  const RunMode effective = study_target.value_or(mode);
  if (is_long_mode(effective)) {
    out << "M=" << M << '\n';
    out << "N=" << N << '\n';
    out << "a=" << format_g17(a) << '\n';
    out << "eps=" << format_g17(eps) << '\n';
    out << "k1=" << format_g17(k1) << '\n';
    out << "k3=" << format_g17(k3) << '\n';
  }
  if (is_3d_mode(effective)) {
    out << "L=" << format_g17(geom.L) << '\n';
    out << "Phi=" << format_g17(geom.Phi) << '\n';
    out << "R1=" << format_g17(geom.R1) << '\n';
    out << "R2=" << format_g17(geom.R2) << '\n';
    out << "U=" << format_g17(geom.U) << '\n';
    out << "c=" << format_g17(geom.c) << '\n';
    out << "eps=" << format_g17(eps) << '\n';
    out << "mu=" << format_g17(geom.mu) << '\n';
    out << "n_rho=" << n_rho << '\n';
    out << "n_theta=" << n_theta << '\n';
    out << "n_y=" << n_y << '\n';
  }
  if (effective == RunMode::FreeBoundary) {
    out << "forcing=" << forcing << '\n';
    out << "grid=" << fb_grid << '\n';
    out << "length=" << format_g17(length) << '\n';
  }
  if (mode == RunMode::ConvergenceStudy) out << "levels=" << levels << '\n';
  out << "maxit=" << maxit << '\n';
  out << "omega=" << format_g17(omega) << '\n';
  out << "seed=" << seed << '\n';
  out << "tol=" << format_g17(tol) << '\n';
  return out.str();
}

std::uint64_t RunConfig::hash() const { return fnv1a(canonical()); }

}  // namespace porolub
