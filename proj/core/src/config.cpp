#include "msed/config.hpp"

#include <fstream>
#include <sstream>

namespace msed {

void DetectionConfig::validate() const {
  if (tt_minutes <= 0 || td_meters <= 0 || delta_t_minutes <= 0 || delta_d_meters <= 0)
    throw ConfigError("thresholds and resolutions must be positive");
  if (n_scale < 1) throw ConfigError("n_scale must be >= 1");
  if (min_term_support < 1) throw ConfigError("min_term_support must be >= 1");
  if (l_filter_probes_km.empty()) throw ConfigError("l_filter_probes must be non-empty");
  for (std::size_t i = 0; i < l_filter_probes_km.size(); ++i) {
    if (l_filter_probes_km[i] <= 0) throw ConfigError("l_filter_probes must be positive");
    if (i > 0 && l_filter_probes_km[i] <= l_filter_probes_km[i - 1])
      throw ConfigError("l_filter_probes must be strictly increasing");
  }
  if (min_term_len < 1 || max_term_len < min_term_len)
    throw ConfigError("invalid term length bounds");
  if (min_cluster_records < 0 || min_cluster_users < 0)
    throw ConfigError("cluster thresholds must be non-negative");
  if (!(max_single_user_fraction > 0.0 && max_single_user_fraction <= 1.0))
    throw ConfigError("max_single_user_fraction must be in (0, 1]");
}

namespace {

std::vector<double> parse_double_list(const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

std::vector<std::string> parse_string_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

void apply_config_line(DetectionConfig& cfg, const std::string& key, const std::string& value) {
  try {
    if (key == "tt_minutes")
      cfg.tt_minutes = std::stod(value);
    else if (key == "td_meters")
      cfg.td_meters = std::stod(value);
    else if (key == "delta_t_minutes")
      cfg.delta_t_minutes = std::stod(value);
    else if (key == "delta_d_meters")
      cfg.delta_d_meters = std::stod(value);
    else if (key == "n_scale")
      cfg.n_scale = std::stoi(value);
    else if (key == "min_term_support")
      cfg.min_term_support = std::stoi(value);
    else if (key == "l_filter_probes_km")
      cfg.l_filter_probes_km = parse_double_list(value);
    else if (key == "l_filter_threshold")
      cfg.l_filter_threshold = std::stod(value);
    else if (key == "l_filter_enabled")
      cfg.l_filter_enabled = (value == "1" || value == "true");
    else if (key == "min_term_len")
      cfg.min_term_len = std::stoi(value);
    else if (key == "max_term_len")
      cfg.max_term_len = std::stoi(value);
    else if (key == "min_cluster_records")
      cfg.min_cluster_records = std::stoi(value);
    else if (key == "min_cluster_users")
      cfg.min_cluster_users = std::stoi(value);
    else if (key == "max_single_user_fraction")
      cfg.max_single_user_fraction = std::stod(value);
    else if (key == "blacklist_terms")
      cfg.blacklist_terms = parse_string_list(value);
    else if (key == "coord_mode")
      cfg.coord_mode = (value == "planar") ? CoordMode::planar_km : CoordMode::geographic;
    else
      throw ConfigError("unknown config key: " + key);
  } catch (const std::invalid_argument&) {
    throw ConfigError("bad value for config key " + key + ": " + value);
  } catch (const std::out_of_range&) {
    throw ConfigError("bad value for config key " + key + ": " + value);
  }
}

DetectionConfig load_config_file(const std::string& path, DetectionConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    // trim
    const auto first = line.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r\n");
    line = line.substr(first, last - first + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key=value");
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
    while (!value.empty() && (value.front() == ' ' || value.front() == '\t')) value.erase(0, 1);
    apply_config_line(base, key, value);
  }
  return base;
}

}  // namespace msed
