#include "burgers/harness/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>

#include "burgers/errors.hpp"
#include "burgers/forcing.hpp"
#include "burgers/integrator.hpp"

namespace burgers::harness {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || trim(v.substr(used)).size() != 0 || !std::isfinite(x))
    throw ConfigurationError(key + ": expected a number, got '" + v + "'");
  return x;
}

std::uint64_t to_unsigned(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  if (t.empty() || !std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw ConfigurationError(key + ": expected a non-negative integer, got '" + v + "'");
  try {
    return std::stoull(t);
  } catch (const std::exception&) {
    throw ConfigurationError(key + ": integer out of range: '" + v + "'");
  }
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  if (out.empty() || std::any_of(out.begin(), out.end(), [](const auto& s) { return s.empty(); }))
    throw ConfigurationError("malformed list '" + v + "'");
  return out;
}

std::vector<double> to_doubles(const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (const auto& s : split_list(v)) out.push_back(to_double(key, s));
  return out;
}

struct Entry {
  const char* key;
  std::function<void(ExperimentConfig&, const std::string&)> set;
  std::function<nlohmann::json(const ExperimentConfig&)> get;
};

#define REAL(name, member)                                                              \
  Entry {                                                                               \
    name, [](ExperimentConfig& c, const std::string& v) { c.member = to_double(name, v); }, \
        [](const ExperimentConfig& c) { return nlohmann::json(c.member); }              \
  }
#define COUNT(name, member)                                                                \
  Entry {                                                                                  \
    name, [](ExperimentConfig& c, const std::string& v) { c.member = to_unsigned(name, v); }, \
        [](const ExperimentConfig& c) { return nlohmann::json(c.member); }                 \
  }
#define REALS(name, member)                                                              \
  Entry {                                                                                \
    name, [](ExperimentConfig& c, const std::string& v) { c.member = to_doubles(name, v); }, \
        [](const ExperimentConfig& c) { return nlohmann::json(c.member); }               \
  }
#define TEXT(name, member)                                                    \
  Entry {                                                                     \
    name, [](ExperimentConfig& c, const std::string& v) { c.member = trim(v); }, \
        [](const ExperimentConfig& c) { return nlohmann::json(c.member); }    \
  }

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = {
      Entry{"model",
            [](ExperimentConfig& c, const std::string& v) {
              try {
                c.model = scheme_from_string(trim(v));
              } catch (const Error& e) {
                throw ConfigurationError(std::string("model: ") + e.what());
              }
            },
            [](const ExperimentConfig& c) { return nlohmann::json(to_string(c.model)); }},
      REALS("nu_list", nu_list),
      TEXT("forcing", forcing),
      COUNT("seed", seed),
      TEXT("out", out),
      REAL("resolution_factor", resolution_factor),
      COUNT("max_grid_points", max_grid_points),
      REAL("dt_max", dt_max),
      REAL("cfl", cfl),
      REAL("sample_interval", sample_interval),
      REAL("bracket_T", bracket.T),
      REAL("bracket_sigma", bracket.sigma),
      REAL("bracket_sigma_min", bracket.sigma_min),
      COUNT("ensemble_size", bracket.ensemble_size),
      Entry{"sobolev_orders",
            [](ExperimentConfig& c, const std::string& v) {
              c.sobolev_orders.clear();
              for (double m : to_doubles("sobolev_orders", v)) {
                if (m != std::round(m))
                  throw ConfigurationError("sobolev_orders: orders must be integers");
                c.sobolev_orders.push_back(static_cast<int>(m));
              }
            },
            [](const ExperimentConfig& c) { return nlohmann::json(c.sobolev_orders); }},
      REAL("layer_m", layer_m),
      REAL("spectrum_k_lo", spectrum_k_lo),
      REAL("spectrum_k_hi_nu", spectrum_k_hi_nu),
      REAL("spectrum_tolerance", spectrum_tolerance),
      REAL("breakpoint_slope", breakpoint_slope),
      REALS("structure_p", structure_p),
      REAL("inertial_l_lo_nu", inertial_l_lo_nu),
      REAL("inertial_l_hi", inertial_l_hi),
      REAL("dissipation_l_hi_nu", dissipation_l_hi_nu),
      REALS("mixing_nu", mixing_nu),
      REAL("mixing_t_end", mixing_t_end),
      REAL("mixing_t_stride", mixing_t_stride),
      REAL("initial_amplitude", initial_amplitude),
      COUNT("inviscid_cells", inviscid_cells),
      REAL("inviscid_l_lo_cells", inviscid_l_lo_cells),
      REALS("gap_nu", gap_nu),
      REAL("gap_t", gap_t),
      REAL("gap_dt", gap_dt),
      TEXT("initial", initial),
      REAL("t_end", t_end),
      COUNT("grid_points", grid_points),
  };
  return table;
}

#undef REAL
#undef COUNT
#undef REALS
#undef TEXT

}  // namespace

std::size_t ExperimentConfig::grid_for(double nu) const {
  return grid_points > 0 ? grid_points : grid_points_for(nu, resolution_factor);
}

void ExperimentConfig::validate() const {
  auto check_nu = [&](const char* key, const std::vector<double>& list) {
    for (double nu : list) {
      if (!(nu > 0.0)) throw ConfigurationError(std::string(key) + ": viscosities must be positive");
      const std::size_t n = grid_for(nu);
      if (static_cast<double>(n) < resolution_factor / nu)
        throw ConfigurationError(std::string(key) + ": nu=" + std::to_string(nu) +
                                 " is under-resolved by N=" + std::to_string(n) +
                                 " (need N >= " + std::to_string(resolution_factor / nu) + ")");
      if (n > max_grid_points)
        throw ConfigurationError(std::string(key) + ": nu=" + std::to_string(nu) + " needs N=" +
                                 std::to_string(n) + " > max_grid_points=" +
                                 std::to_string(max_grid_points));
    }
  };
  if (nu_list.empty()) throw ConfigurationError("nu_list must not be empty");
  if (!(resolution_factor >= 8.0))
    throw ConfigurationError("resolution_factor must be >= 8 (N >= 8 / nu)");
  check_nu("nu_list", nu_list);
  check_nu("mixing_nu", mixing_nu);
  check_nu("gap_nu", gap_nu);
  ForcingSpec::parse(forcing).validate();
  bracket.validate();
  if (!(dt_max > 0.0)) throw ConfigurationError("dt_max must be positive");
  if (!(cfl > 0.0)) throw ConfigurationError("cfl must be positive");
  if (!(sample_interval > 0.0)) throw ConfigurationError("sample_interval must be positive");
  if (!(layer_m > 1.0)) throw ConfigurationError("layer_m must exceed 1");
  if (!(spectrum_k_lo >= 1.0) || !(spectrum_k_hi_nu > 0.0))
    throw ConfigurationError("spectrum window must satisfy k_lo >= 1 and k_hi_nu > 0");
  for (double p : structure_p)
    if (!(p > 0.0)) throw ConfigurationError("structure_p entries must be positive");
  if (!(inertial_l_lo_nu > 0.0) || !(inertial_l_hi > 0.0) || inertial_l_hi > 0.5)
    throw ConfigurationError("inertial window must lie in (0, 1/2]");
  if (!(dissipation_l_hi_nu > 0.0)) throw ConfigurationError("dissipation_l_hi_nu must be positive");
  if (!(mixing_t_end > 0.0) || !(mixing_t_stride > 0.0))
    throw ConfigurationError("mixing times must be positive");
  if (bracket.ensemble_size < 2) throw ConfigurationError("ensemble_size must be >= 2");
  if (!(initial_amplitude >= 0.0)) throw ConfigurationError("initial_amplitude must be >= 0");
  if (inviscid_cells < 16 || (inviscid_cells & (inviscid_cells - 1)) != 0)
    throw ConfigurationError("inviscid_cells must be a power of two >= 16");
  if (!(gap_t > 0.0) || !(gap_dt > 0.0)) throw ConfigurationError("gap_t and gap_dt must be positive");
  if (initial != "zero" && initial != "sine" && initial != "random")
    throw ConfigurationError("initial must be one of zero, sine, random");
  if (!(t_end > 0.0)) throw ConfigurationError("t_end must be positive");
  if (grid_points != 0 && (grid_points < 16 || (grid_points & (grid_points - 1)) != 0))
    throw ConfigurationError("grid_points must be 0 or a power of two >= 16");
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& e : entries()) j[e.key] = e.get(*this);
  return j;
}

void assign(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  const std::string k = trim(key);
  for (const auto& e : entries()) {
    if (k == e.key) {
      e.set(cfg, value);
      return;
    }
  }
  throw ConfigurationError("unknown configuration key '" + k + "'");
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& e : entries()) keys.emplace_back(e.key);
  return keys;
}

ExperimentConfig parse_config(std::istream& in, const std::string& origin) {
  ExperimentConfig cfg;
  std::string line;
  std::size_t number = 0;
  std::vector<std::string> seen;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigurationError(origin + ":" + std::to_string(number) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (std::find(seen.begin(), seen.end(), key) != seen.end())
      throw ConfigurationError(origin + ":" + std::to_string(number) + ": duplicate key '" + key + "'");
    seen.push_back(key);
    try {
      assign(cfg, key, line.substr(eq + 1));
    } catch (const ConfigurationError& e) {
      throw ConfigurationError(origin + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open config file " + path);
  return parse_config(in, path);
}

void write_config(std::ostream& out, const ExperimentConfig& cfg) {
  for (const auto& e : entries()) {
    const nlohmann::json v = e.get(cfg);
    out << e.key << " = ";
    if (v.is_array()) {
      for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v[i].dump();
    } else if (v.is_string()) {
      out << v.get<std::string>();
    } else {
      out << v.dump();
    }
    out << '\n';
  }
}

}  // namespace burgers::harness
