#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "msed/geometry.hpp"

namespace msed {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Detection parameters shared by both pipelines. Defaults are the concrete
// constants used for the New York runs.
struct DetectionConfig {
  // LED locality thresholds
  double tt_minutes = 30.0;
  double td_meters = 100.0;

  // MED initial resolutions and scale count
  double delta_t_minutes = 30.0;
  double delta_d_meters = 100.0;
  int n_scale = 4;

  // term filter
  int min_term_support = 5;
  std::vector<double> l_filter_probes_km = {0.2, 0.4, 0.6, 0.8, 1.0};
  double l_filter_threshold = 0.5;
  bool l_filter_enabled = true;

  // tokenization
  int min_term_len = 3;
  int max_term_len = 30;

  // cluster post-processing
  int min_cluster_records = 3;
  int min_cluster_users = 3;
  double max_single_user_fraction = 0.5;
  std::vector<std::string> blacklist_terms;

  CoordMode coord_mode = CoordMode::geographic;

  double tt_seconds() const { return tt_minutes * 60.0; }
  double delta_t_seconds() const { return delta_t_minutes * 60.0; }

  void validate() const;
};

// Parses a flat key=value config file ('#' starts a comment). Unknown keys
// are rejected.
DetectionConfig load_config_file(const std::string& path, DetectionConfig base = {});
void apply_config_line(DetectionConfig& cfg, const std::string& key, const std::string& value);

}  // namespace msed
