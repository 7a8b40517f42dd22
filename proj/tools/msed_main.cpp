// msed: multiscale event detection over geotagged short-text records.
//
// Subcommands:
//   detect      run the LED or MED pipeline over a JSON-lines corpus
//   noise       per-term spatial L-function profiles and term filtering
//   synth-eval  synthetic benchmark scenarios comparing LED and MED
//
// Exit codes: 0 success, 2 usage error, 3 input parse error,
//             4 config validation error.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "msed/config.hpp"
#include "msed/detectors.hpp"
#include "msed/io.hpp"
#include "msed/noise_stats.hpp"
#include "msed/record.hpp"
#include "msed/synth.hpp"
#include "msed/text_index.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitConfig = 4;

struct Timer {
  std::map<std::string, double>& sink;
  std::string stage;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  ~Timer() {
    sink[stage] = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  }
};

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string join_args(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

// Shared flag state for detect/noise.
struct CommonOpts {
  std::string input;
  std::string out_dir = ".";
  std::string config_file;
  std::string stopword_file;
  std::vector<double> box;  // lat_min lat_max lon_min lon_max
  bool planar = false;
  std::uint64_t seed = 0;
  int threads = 1;

  // per-field DetectionConfig overrides, applied on top of the config file
  std::vector<std::pair<std::string, std::string>> overrides;
};

void add_override_option(CLI::App* cmd, CommonOpts& opts, const std::string& flag,
                         const std::string& key, const std::string& help) {
  cmd->add_option_function<std::string>(
      flag, [&opts, key](const std::string& v) { opts.overrides.emplace_back(key, v); }, help);
}

void add_common_options(CLI::App* cmd, CommonOpts& opts, bool with_input = true) {
  if (with_input)
    cmd->add_option("input", opts.input, "JSON-lines corpus")->required();
  cmd->add_option("-o,--out", opts.out_dir, "output directory");
  cmd->add_option("-c,--config", opts.config_file, "key=value config file");
  cmd->add_option("--stopwords", opts.stopword_file, "stop-word list (one per line)");
  cmd->add_option("--box", opts.box, "bounding box: lat_min lat_max lon_min lon_max")
      ->expected(4);
  cmd->add_flag("--planar", opts.planar, "treat lat/lon as planar kilometers");
  cmd->add_option("--seed", opts.seed, "random seed");
  cmd->add_option("--threads", opts.threads, "worker thread cap")
      ->check(CLI::PositiveNumber);

  add_override_option(cmd, opts, "--tt", "tt_minutes", "LED temporal threshold (minutes)");
  add_override_option(cmd, opts, "--td", "td_meters", "LED spatial threshold (meters)");
  add_override_option(cmd, opts, "--delta-t", "delta_t_minutes",
                      "MED initial temporal resolution (minutes)");
  add_override_option(cmd, opts, "--delta-d", "delta_d_meters",
                      "MED initial spatial resolution (meters)");
  add_override_option(cmd, opts, "--nscale", "n_scale", "number of scales");
  add_override_option(cmd, opts, "--min-term-support", "min_term_support",
                      "minimum records per term");
  add_override_option(cmd, opts, "--probes", "l_filter_probes_km",
                      "L-function probe distances, km (comma separated)");
  add_override_option(cmd, opts, "--threshold", "l_filter_threshold",
                      "minimum mean L value for a valid term");
  add_override_option(cmd, opts, "--l-filter", "l_filter_enabled",
                      "enable/disable the spatial term filter (true/false)");
  add_override_option(cmd, opts, "--min-term-len", "min_term_len", "minimum token length");
  add_override_option(cmd, opts, "--max-term-len", "max_term_len", "maximum token length");
  add_override_option(cmd, opts, "--min-cluster-records", "min_cluster_records",
                      "minimum records per retained cluster");
  add_override_option(cmd, opts, "--min-cluster-users", "min_cluster_users",
                      "minimum distinct users per retained cluster");
  add_override_option(cmd, opts, "--max-single-user-fraction", "max_single_user_fraction",
                      "maximum fraction of a cluster from one user");
  add_override_option(cmd, opts, "--blacklist", "blacklist_terms",
                      "drop clusters whose top terms hit this list (comma separated)");
}

msed::DetectionConfig make_config(const CommonOpts& opts) {
  msed::DetectionConfig cfg;
  if (!opts.config_file.empty()) cfg = msed::load_config_file(opts.config_file, cfg);
  for (const auto& [key, value] : opts.overrides) msed::apply_config_line(cfg, key, value);
  cfg.coord_mode = opts.planar ? msed::CoordMode::planar_km : msed::CoordMode::geographic;
  cfg.validate();
  return cfg;
}

std::unordered_set<std::string> make_stop_words(const CommonOpts& opts) {
  return opts.stopword_file.empty() ? msed::default_stop_words()
                                    : msed::load_stop_words(opts.stopword_file);
}

msed::BoundingBox make_box(const CommonOpts& opts, const std::vector<msed::Record>& records) {
  if (!opts.box.empty()) {
    msed::BoundingBox b{opts.box[0], opts.box[1], opts.box[2], opts.box[3]};
    b.validate();
    return b;
  }
  return msed::bounding_box_of(records);
}

msed::RunManifest make_manifest(const std::string& command, const msed::DetectionConfig& cfg,
                                const std::string& input_path, std::uint64_t seed) {
  msed::RunManifest m;
  m.command = command;
  m.config = msed::config_snapshot(cfg);
  m.input_digest = input_path.empty() ? "-" : hex64(msed::fnv1a64_file(input_path));
  m.seed = seed;
  m.version = kVersion;
  return m;
}

int cmd_detect(const CommonOpts& opts, const std::string& method, const std::string& command) {
  const msed::DetectionConfig cfg = make_config(opts);
  msed::RunManifest manifest = make_manifest(command, cfg, opts.input, opts.seed);
  std::filesystem::create_directories(opts.out_dir);
  const auto out = [&](const char* name) {
    return (std::filesystem::path(opts.out_dir) / name).string();
  };

  std::vector<msed::Record> records;
  {
    Timer t{manifest.timings_ms, "ingest"};
    records = msed::read_records_jsonl(opts.input);
  }

  msed::PipelineResult result;
  result.method = method;
  result.seed = opts.seed;
  if (records.empty()) {
    result.warning = "empty corpus: nothing to detect";
  } else {
    const msed::BoundingBox box = make_box(opts, records);
    const msed::TimeWindow window = msed::time_window_of(records);
    records = msed::validate_corpus(records, box, window);
    const msed::Projection proj(box, cfg.coord_mode);
    {
      Timer t{manifest.timings_ms, "tokenize"};
      msed::tokenize_records(records, make_stop_words(opts), cfg.min_term_len, cfg.max_term_len);
    }
    msed::TokenizedCorpus corpus;
    {
      Timer t{manifest.timings_ms, "index"};
      corpus = msed::TokenizedCorpus::build(records);
    }
    {
      Timer t{manifest.timings_ms, "detect"};
      result = method == "led"
                   ? msed::run_led(records, corpus, cfg, proj, opts.seed, opts.threads)
                   : msed::run_med(records, corpus, cfg, proj, window, opts.seed, opts.threads);
    }
  }

  {
    Timer t{manifest.timings_ms, "write"};
    msed::write_clusters_json(result, out("clusters.json"));
    msed::write_clusters_geojson(result, records, out("clusters.geojson"));
    msed::write_dropped_json(result, out("dropped.json"));
  }
  msed::write_manifest_json(manifest, out("manifest.json"));
  if (!result.warning.empty()) std::cerr << "warning: " << result.warning << '\n';
  std::cout << "retained " << result.clusters.size() << " clusters, dropped "
            << result.dropped.size() << '\n';
  return kExitOk;
}

int cmd_noise(const CommonOpts& opts, int envelope_sims, bool temporal, int chi2_bins,
              double chi2_alpha, const std::string& command) {
  const msed::DetectionConfig cfg = make_config(opts);
  msed::RunManifest manifest = make_manifest(command, cfg, opts.input, opts.seed);
  std::filesystem::create_directories(opts.out_dir);
  const auto out = [&](const char* name) {
    return (std::filesystem::path(opts.out_dir) / name).string();
  };

  std::vector<msed::Record> records = msed::read_records_jsonl(opts.input);
  if (records.empty()) {
    std::cerr << "warning: empty corpus\n";
    std::ofstream csv(out("l_profiles.csv"));
    csv << "term,n,probe,L,env_min,env_max\n";
    std::ofstream summary(out("noise_summary.json"));
    summary << "{\n  \"valid_terms\": []\n}\n";
    msed::write_manifest_json(manifest, out("manifest.json"));
    return kExitOk;
  }

  const msed::BoundingBox box = make_box(opts, records);
  const msed::TimeWindow window = msed::time_window_of(records);
  records = msed::validate_corpus(records, box, window);
  const msed::Projection proj(box, cfg.coord_mode);
  msed::tokenize_records(records, make_stop_words(opts), cfg.min_term_len, cfg.max_term_len);
  const msed::TokenizedCorpus corpus = msed::TokenizedCorpus::build(records);

  std::vector<msed::LFunctionProfile> profiles;
  {
    Timer t{manifest.timings_ms, "l_profiles"};
    profiles = msed::l_profiles(records, corpus, proj, cfg.min_term_support,
                                cfg.l_filter_probes_km);
  }

  const double width_km = proj.width_m() / 1000.0;
  const double height_km = proj.height_m() / 1000.0;
  std::map<int, msed::CsrEnvelope> envelopes;  // keyed by point count
  if (envelope_sims > 0) {
    Timer t{manifest.timings_ms, "envelopes"};
    for (const auto& p : profiles)
      if (!envelopes.count(p.n_points))
        envelopes[p.n_points] = msed::csr_envelope(p.n_points, width_km, height_km,
                                                   cfg.l_filter_probes_km, envelope_sims,
                                                   opts.seed);
  }

  {
    std::ofstream csv(out("l_profiles.csv"));
    csv << "term,n,probe,L,env_min,env_max\n";
    for (const auto& p : profiles) {
      const msed::CsrEnvelope* env =
          envelope_sims > 0 ? &envelopes.at(p.n_points) : nullptr;
      for (std::size_t k = 0; k < p.probes.size(); ++k) {
        csv << p.term << ',' << p.n_points << ',' << p.probes[k] << ',' << p.l_values[k] << ',';
        if (env) csv << env->lo[k] << ',' << env->hi[k];
        else csv << ',';
        csv << '\n';
      }
    }
  }

  {
    std::ofstream summary(out("noise_summary.json"));
    summary << "{\n  \"threshold\": " << cfg.l_filter_threshold << ",\n  \"terms\": [\n";
    for (std::size_t i = 0; i < profiles.size(); ++i) {
      const auto& p = profiles[i];
      summary << "    {\"term\": \"" << p.term << "\", \"n\": " << p.n_points
              << ", \"mean_l\": " << p.mean_l()
              << ", \"valid\": " << (p.mean_l() >= cfg.l_filter_threshold ? "true" : "false");
      if (temporal) {
        std::vector<std::int64_t> ts;
        const int tid = corpus.vocab().id_of(p.term);
        for (int r = 0; r < corpus.n_records(); ++r)
          for (const auto& [id, cnt] : corpus.term_counts(r))
            if (id == tid) ts.push_back(records[r].timestamp);
        if (ts.size() >= 10) {  // at least two bins of expected count 5
          const auto chi = msed::chi_squared_uniform(ts, window, chi2_bins, chi2_alpha);
          summary << ", \"chi2\": " << chi.statistic << ", \"chi2_dof\": " << chi.dof
                  << ", \"chi2_critical\": " << chi.critical
                  << ", \"chi2_reject\": " << (chi.reject ? "true" : "false");
        }
      }
      summary << "}" << (i + 1 < profiles.size() ? "," : "") << "\n";
    }
    summary << "  ],\n  \"valid_terms\": [";
    bool first = true;
    for (const auto& p : profiles)
      if (p.mean_l() >= cfg.l_filter_threshold) {
        summary << (first ? "" : ", ") << '"' << p.term << '"';
        first = false;
      }
    summary << "]\n}\n";
  }

  msed::write_manifest_json(manifest, out("manifest.json"));
  std::cout << "profiled " << profiles.size() << " terms\n";
  return kExitOk;
}

int cmd_synth_eval(int scenario, int trials, std::uint64_t seed,
                   const std::vector<double>& params, const msed::ScenarioOptions& options,
                   const std::string& out_dir, const std::string& command) {
  std::filesystem::create_directories(out_dir);
  const auto out = [&](const char* name) {
    return (std::filesystem::path(out_dir) / name).string();
  };
  msed::RunManifest manifest = make_manifest(command, msed::DetectionConfig{}, "", seed);

  std::vector<msed::ScenarioRow> rows;
  {
    Timer t{manifest.timings_ms, "scenario"};
    rows = msed::run_scenario(scenario, params, trials, seed, options);
  }

  {
    std::ofstream csv(out("trials.csv"));
    csv << "method,scenario,param,trial,nmi,f_measure\n";
    for (const auto& r : rows)
      csv << r.method << ',' << r.scenario << ',' << r.param << ',' << r.trial << ',' << r.nmi
          << ',' << r.f_measure << '\n';
  }
  {
    std::ofstream csv(out("aggregate.csv"));
    csv << "method,scenario,param,mean_nmi,mean_f\n";
    for (const auto& a : msed::aggregate_rows(rows))
      csv << a.method << ',' << a.scenario << ',' << a.param << ',' << a.mean_nmi << ','
          << a.mean_f << '\n';
  }
  msed::write_manifest_json(manifest, out("manifest.json"));
  std::cout << "wrote " << rows.size() << " trial rows\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multiscale event detection over geotagged short-text records"};
  app.require_subcommand(1);

  CommonOpts detect_opts;
  std::string method = "led";
  auto* detect = app.add_subcommand("detect", "run the LED or MED pipeline");
  detect->add_option("-m,--method", method, "detector")
      ->check(CLI::IsMember({"led", "med"}));
  add_common_options(detect, detect_opts);

  CommonOpts noise_opts;
  int envelope_sims = 0;
  bool temporal = false;
  int chi2_bins = 24;
  double chi2_alpha = 0.05;
  auto* noise = app.add_subcommand("noise", "per-term spatial statistics");
  noise->add_option("--envelope", envelope_sims, "CSR envelope simulation count")
      ->check(CLI::NonNegativeNumber);
  noise->add_flag("--temporal", temporal, "add per-term chi-squared uniformity report");
  noise->add_option("--chi2-bins", chi2_bins, "chi-squared bin count");
  noise->add_option("--chi2-alpha", chi2_alpha, "chi-squared significance level");
  add_common_options(noise, noise_opts);

  int scenario = 1;
  int trials = 10;
  std::uint64_t synth_seed = 0;
  std::string synth_out = ".";
  std::vector<double> params = {0.5, 1.0, 2.0, 4.0, 8.0};
  msed::ScenarioOptions scenario_options;
  auto* synth = app.add_subcommand("synth-eval", "synthetic benchmark scenarios");
  synth->add_option("--scenario", scenario, "scenario id")->check(CLI::Range(1, 4));
  synth->add_option("--trials", trials, "trials per parameter value")
      ->check(CLI::PositiveNumber);
  synth->add_option("--seed", synth_seed, "random seed");
  synth->add_option("-o,--out", synth_out, "output directory");
  synth->add_option("--params", params, "parameter grid (scale units)");
  synth->add_option("--nscale", scenario_options.n_scale, "number of scales for MED");
  synth->add_option("--threads", scenario_options.n_threads, "worker thread cap")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const std::string command = join_args(argc, argv);
  try {
    if (detect->parsed()) return cmd_detect(detect_opts, method, command);
    if (noise->parsed())
      return cmd_noise(noise_opts, envelope_sims, temporal, chi2_bins, chi2_alpha, command);
    return cmd_synth_eval(scenario, trials, synth_seed, params, scenario_options, synth_out,
                          command);
  } catch (const msed::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const msed::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
