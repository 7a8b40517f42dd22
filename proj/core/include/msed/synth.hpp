#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "msed/record.hpp"

namespace msed {

// Space-time extent of one synthetic event. Space units are km (planar
// coordinates), time units are hours.
struct EventBox {
  double x0 = 0, x1 = 0;
  double y0 = 0, y1 = 0;
  double t0 = 0, t1 = 0;
};

struct SyntheticSpec {
  double area_w = 10.0;  // km
  double area_h = 10.0;
  double window_len = 32.0;  // hours

  std::vector<EventBox> events;
  int tweets_per_event_min = 3;
  int tweets_per_event_max = 10;

  double noise_intensity = 0.0;  // expected noise records per unit area

  int n_signal_terms = 59;
  int signal_terms_per_tweet = 1;
  int terms_per_event_tweet_min = 5;
  int terms_per_event_tweet_max = 10;
  int terms_per_noise_tweet_min = 3;
  int terms_per_noise_tweet_max = 10;

  // substitute noise vocabulary: Zipf-weighted synthetic terms, optionally
  // replaced by a term\tweight file from a real corpus
  int n_noise_terms = 5000;
  double zipf_exponent = 1.0;
  std::string noise_term_file;

  std::uint64_t seed = 0;
};

// Label per generated record: events get ids 0..n_events-1, each noise
// record its own singleton id.
struct GroundTruth {
  std::vector<int> labels;
};

struct SyntheticCorpus {
  std::vector<Record> records;
  GroundTruth truth;
  int n_event_records = 0;
  int n_noise_records = 0;
};

// Time is emitted as seconds (1 h = 3600 s), space as planar-km lat/lon.
// Identical spec (incl. seed) -> identical corpus.
SyntheticCorpus generate(const SyntheticSpec& spec);

// Normalized mutual information with the arithmetic-mean-of-entropies
// normalizer. Throws on empty input.
double nmi(const std::vector<int>& pred, const std::vector<int>& truth);

// Pair-counting F measure: precision/recall over unordered record pairs.
double f_beta(const std::vector<int>& pred, const std::vector<int>& truth, double beta = 2.0);

struct ScenarioRow {
  std::string method;  // led | med
  int scenario = 0;
  double param = 0.0;
  int trial = 0;
  double nmi = 0.0;
  double f_measure = 0.0;
};

struct ScenarioOptions {
  double window_len = 32.0;
  double area = 10.0;
  int signal_terms_per_tweet = 1;
  int n_scale = 4;
  int n_threads = 1;
};

// Runs LED and MED over the parameter grid, one corpus per trial shared
// across all parameter values and both methods.
std::vector<ScenarioRow> run_scenario(int scenario, const std::vector<double>& param_grid,
                                      int n_trials, std::uint64_t seed,
                                      const ScenarioOptions& options = {});

struct ScenarioAggregate {
  std::string method;
  int scenario = 0;
  double param = 0.0;
  double mean_nmi = 0.0;
  double mean_f = 0.0;
};

std::vector<ScenarioAggregate> aggregate_rows(const std::vector<ScenarioRow>& rows);

}  // namespace msed
