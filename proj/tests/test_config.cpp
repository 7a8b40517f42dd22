#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "msed/config.hpp"

using namespace msed;

TEST_CASE("defaults pass validation") {
  DetectionConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.tt_minutes == 30.0);
  CHECK(cfg.td_meters == 100.0);
  CHECK(cfg.delta_t_minutes == 30.0);
  CHECK(cfg.delta_d_meters == 100.0);
  CHECK(cfg.n_scale == 4);
  CHECK(cfg.min_term_support == 5);
  CHECK(cfg.l_filter_probes_km == std::vector<double>{0.2, 0.4, 0.6, 0.8, 1.0});
  CHECK(cfg.l_filter_threshold == 0.5);
  CHECK(cfg.min_cluster_records == 3);
  CHECK(cfg.min_cluster_users == 3);
  CHECK(cfg.max_single_user_fraction == 0.5);
}

TEST_CASE("invalid values are rejected") {
  DetectionConfig cfg;
  SUBCASE("n_scale below one") {
    cfg.n_scale = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }
  SUBCASE("negative threshold") {
    cfg.td_meters = -1;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }
  SUBCASE("user fraction outside (0,1]") {
    cfg.max_single_user_fraction = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }
}

TEST_CASE("key=value overrides") {
  DetectionConfig cfg;
  apply_config_line(cfg, "tt_minutes", "45");
  apply_config_line(cfg, "n_scale", "3");
  apply_config_line(cfg, "l_filter_probes_km", "0.5,1,1.5,2");
  apply_config_line(cfg, "l_filter_enabled", "false");
  CHECK(cfg.tt_minutes == 45.0);
  CHECK(cfg.n_scale == 3);
  CHECK(cfg.l_filter_probes_km == std::vector<double>{0.5, 1.0, 1.5, 2.0});
  CHECK_FALSE(cfg.l_filter_enabled);
  CHECK_THROWS_AS(apply_config_line(cfg, "no_such_key", "1"), ConfigError);
}

TEST_CASE("config file round trip") {
  const char* path = "test_config_tmp.cfg";
  {
    std::ofstream f(path);
    f << "# comment\n"
      << "tt_minutes = 15\n"
      << "\n"
      << "min_cluster_records=5\n";
  }
  const DetectionConfig cfg = load_config_file(path);
  CHECK(cfg.tt_minutes == 15.0);
  CHECK(cfg.min_cluster_records == 5);
  CHECK(cfg.td_meters == 100.0);
  std::remove(path);
}
