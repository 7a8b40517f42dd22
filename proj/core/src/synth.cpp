#include "msed/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "msed/config.hpp"
#include "msed/detectors.hpp"
#include "msed/rng.hpp"
#include "msed/text_index.hpp"

namespace msed {

namespace {

struct NoiseVocab {
  std::vector<std::string> terms;
  std::vector<double> cumulative;
};

NoiseVocab make_noise_vocab(const SyntheticSpec& spec) {
  NoiseVocab v;
  if (!spec.noise_term_file.empty()) {
    std::ifstream in(spec.noise_term_file);
    if (!in) throw std::runtime_error("cannot open noise term file: " + spec.noise_term_file);
    std::string line;
    double total = 0.0;
    while (std::getline(in, line)) {
      std::stringstream ss(line);
      std::string term;
      double weight = 0.0;
      if (ss >> term >> weight && weight > 0.0) {
        v.terms.push_back(term);
        total += weight;
        v.cumulative.push_back(total);
      }
    }
    if (v.terms.empty()) throw std::runtime_error("noise term file has no usable entries");
    return v;
  }
  v.terms.reserve(spec.n_noise_terms);
  v.cumulative.reserve(spec.n_noise_terms);
  double total = 0.0;
  for (int r = 1; r <= spec.n_noise_terms; ++r) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "nz%05d", r);
    v.terms.emplace_back(buf);
    total += 1.0 / std::pow(static_cast<double>(r), spec.zipf_exponent);
    v.cumulative.push_back(total);
  }
  return v;
}

std::string signal_term(int idx) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "sig%03d", idx + 1);
  return buf;
}

}  // namespace

SyntheticCorpus generate(const SyntheticSpec& spec) {
  if (spec.tweets_per_event_min < 1 || spec.tweets_per_event_max < spec.tweets_per_event_min)
    throw std::invalid_argument("synthetic spec: bad tweets-per-event range");
  if (spec.noise_intensity < 0) throw std::invalid_argument("synthetic spec: negative intensity");

  Rng rng(spec.seed);
  const NoiseVocab noise = make_noise_vocab(spec);

  // assign signal terms per event, without replacement while the pool lasts
  std::vector<int> pool(spec.n_signal_terms);
  std::iota(pool.begin(), pool.end(), 0);
  std::shuffle(pool.begin(), pool.end(), rng.engine());
  std::size_t pool_pos = 0;
  auto draw_signal = [&]() {
    if (pool_pos < pool.size()) return pool[pool_pos++];
    return static_cast<int>(rng.uniform_int(0, spec.n_signal_terms - 1));
  };

  SyntheticCorpus out;
  int user_counter = 0;
  auto make_user = [&] { return "u" + std::to_string(++user_counter); };

  for (std::size_t e = 0; e < spec.events.size(); ++e) {
    const EventBox& box = spec.events[e];
    std::vector<std::string> event_terms;
    for (int s = 0; s < spec.signal_terms_per_tweet; ++s) event_terms.push_back(signal_term(draw_signal()));

    const int n_tweets =
        static_cast<int>(rng.uniform_int(spec.tweets_per_event_min, spec.tweets_per_event_max));
    for (int k = 0; k < n_tweets; ++k) {
      Record r;
      r.id = "e" + std::to_string(e) + "_" + std::to_string(k);
      r.user = make_user();
      r.lon = rng.uniform(box.x0, box.x1);
      r.lat = rng.uniform(box.y0, box.y1);
      r.timestamp = static_cast<std::int64_t>(std::llround(rng.uniform(box.t0, box.t1) * 3600.0));
      const int n_terms = static_cast<int>(
          rng.uniform_int(spec.terms_per_event_tweet_min, spec.terms_per_event_tweet_max));
      std::vector<std::string> terms = event_terms;
      while (static_cast<int>(terms.size()) < n_terms)
        terms.push_back(noise.terms[rng.discrete(noise.cumulative)]);
      std::string text;
      for (const auto& t : terms) {
        if (!text.empty()) text += ' ';
        text += t;
      }
      r.text = std::move(text);
      out.records.push_back(std::move(r));
      out.truth.labels.push_back(static_cast<int>(e));
      ++out.n_event_records;
    }
  }

  const int n_noise = rng.poisson(spec.noise_intensity * spec.area_w * spec.area_h);
  for (int k = 0; k < n_noise; ++k) {
    Record r;
    r.id = "n" + std::to_string(k);
    r.user = make_user();
    r.lon = rng.uniform(0.0, spec.area_w);
    r.lat = rng.uniform(0.0, spec.area_h);
    r.timestamp =
        static_cast<std::int64_t>(std::llround(rng.uniform(0.0, spec.window_len) * 3600.0));
    const int n_terms = static_cast<int>(
        rng.uniform_int(spec.terms_per_noise_tweet_min, spec.terms_per_noise_tweet_max));
    std::string text;
    for (int t = 0; t < n_terms; ++t) {
      if (!text.empty()) text += ' ';
      text += noise.terms[rng.discrete(noise.cumulative)];
    }
    r.text = std::move(text);
    out.records.push_back(std::move(r));
    out.truth.labels.push_back(static_cast<int>(spec.events.size()) + k);
    ++out.n_noise_records;
  }
  return out;
}

namespace {

// contingency table and marginals over two label vectors
struct Contingency {
  std::map<std::pair<int, int>, std::size_t> joint;
  std::map<int, std::size_t> a_marginal;
  std::map<int, std::size_t> b_marginal;
  std::size_t n = 0;
};

// Map labels to contiguous ids in order of first appearance so that the
// contingency iteration order (and hence floating-point summation order)
// depends only on the data, never on the label values themselves.
std::vector<int> canonical_labels(const std::vector<int>& labels) {
  std::vector<int> out(labels.size());
  std::map<int, int> remap;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto [it, inserted] = remap.try_emplace(labels[i], static_cast<int>(remap.size()));
    out[i] = it->second;
  }
  return out;
}

Contingency contingency(const std::vector<int>& a_raw, const std::vector<int>& b_raw) {
  if (a_raw.size() != b_raw.size()) throw std::invalid_argument("label vectors differ in length");
  if (a_raw.empty()) throw std::invalid_argument("empty label vectors");
  const auto a = canonical_labels(a_raw);
  const auto b = canonical_labels(b_raw);
  Contingency c;
  c.n = a.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++c.joint[{a[i], b[i]}];
    ++c.a_marginal[a[i]];
    ++c.b_marginal[b[i]];
  }
  return c;
}

double entropy(const std::map<int, std::size_t>& marginal, std::size_t n) {
  double h = 0.0;
  for (const auto& [label, count] : marginal) {
    const double p = static_cast<double>(count) / static_cast<double>(n);
    h -= p * std::log(p);
  }
  return h;
}

}  // namespace

double nmi(const std::vector<int>& pred, const std::vector<int>& truth) {
  const Contingency c = contingency(pred, truth);
  const double ha = entropy(c.a_marginal, c.n);
  const double hb = entropy(c.b_marginal, c.n);
  double mi = 0.0;
  for (const auto& [cell, count] : c.joint) {
    const double pij = static_cast<double>(count) / static_cast<double>(c.n);
    const double pi = static_cast<double>(c.a_marginal.at(cell.first)) / static_cast<double>(c.n);
    const double pj = static_cast<double>(c.b_marginal.at(cell.second)) / static_cast<double>(c.n);
    mi += pij * std::log(pij / (pi * pj));
  }
  const double denom = 0.5 * (ha + hb);
  if (denom <= 0.0) return 1.0;  // both partitions trivial, hence identical
  return std::clamp(mi / denom, 0.0, 1.0);
}

double f_beta(const std::vector<int>& pred, const std::vector<int>& truth, double beta) {
  const Contingency c = contingency(pred, truth);
  auto pairs2 = [](std::size_t k) {
    const double kd = static_cast<double>(k);
    return kd * (kd - 1.0) / 2.0;
  };
  double tp = 0.0, pred_pairs = 0.0, truth_pairs = 0.0;
  for (const auto& [cell, count] : c.joint) tp += pairs2(count);
  for (const auto& [label, count] : c.a_marginal) pred_pairs += pairs2(count);
  for (const auto& [label, count] : c.b_marginal) truth_pairs += pairs2(count);
  if (tp <= 0.0) return 0.0;
  const double precision = pred_pairs > 0.0 ? tp / pred_pairs : 0.0;
  const double recall = truth_pairs > 0.0 ? tp / truth_pairs : 0.0;
  const double b2 = beta * beta;
  const double denom = b2 * precision + recall;
  if (denom <= 0.0) return 0.0;
  return (1.0 + b2) * precision * recall / denom;
}

namespace {

EventBox place_event(Rng& rng, double area_w, double area_h, double window_len, double sx,
                     double sy, double st) {
  sx = std::min(sx, area_w);
  sy = std::min(sy, area_h);
  st = std::min(st, window_len);
  EventBox b;
  b.x0 = rng.uniform(0.0, area_w - sx);
  b.x1 = b.x0 + sx;
  b.y0 = rng.uniform(0.0, area_h - sy);
  b.y1 = b.y0 + sy;
  b.t0 = rng.uniform(0.0, window_len - st);
  b.t1 = b.t0 + st;
  return b;
}

SyntheticSpec scenario_spec(int scenario, const ScenarioOptions& opt, Rng& trial_rng) {
  SyntheticSpec spec;
  spec.area_w = spec.area_h = opt.area;
  spec.window_len = opt.window_len;
  spec.signal_terms_per_tweet = opt.signal_terms_per_tweet;
  spec.seed = trial_rng.next_u64();

  switch (scenario) {
    case 1:
    case 3:
      // 20 events concentrated in both dimensions: 2x2 space, 2 time
      for (int e = 0; e < 20; ++e)
        spec.events.push_back(
            place_event(trial_rng, spec.area_w, spec.area_h, spec.window_len, 2.0, 2.0, 2.0));
      break;
    case 2:
    case 4:
      // 10 time-concentrated/space-spread + 10 space-concentrated/time-spread
      for (int e = 0; e < 10; ++e) {
        const double s = trial_rng.uniform(8.0, 16.0);
        const double t = trial_rng.uniform(1.0, 2.0);
        spec.events.push_back(
            place_event(trial_rng, spec.area_w, spec.area_h, spec.window_len, s, s, t));
      }
      for (int e = 0; e < 10; ++e) {
        const double s = trial_rng.uniform(1.0, 2.0);
        const double t = trial_rng.uniform(8.0, 16.0);
        spec.events.push_back(
            place_event(trial_rng, spec.area_w, spec.area_h, spec.window_len, s, s, t));
      }
      break;
    default:
      throw std::invalid_argument("unknown scenario id: " + std::to_string(scenario));
  }
  spec.noise_intensity = (scenario >= 3) ? 10.0 : 0.0;
  return spec;
}

DetectionConfig scenario_config(int scenario, double param, const ScenarioOptions& opt,
                                const SyntheticSpec& spec) {
  DetectionConfig cfg;
  cfg.coord_mode = CoordMode::planar_km;
  cfg.tt_minutes = param * 60.0;
  cfg.td_meters = param * 1000.0;
  cfg.delta_t_minutes = param * 60.0;
  cfg.delta_d_meters = param * 1000.0;
  cfg.min_term_support = 3;
  if (scenario >= 3) {
    cfg.l_filter_enabled = true;
    cfg.l_filter_probes_km = {0.5, 1.0, 1.5, 2.0};
    cfg.l_filter_threshold = 1.0;
  } else {
    cfg.l_filter_enabled = false;
  }
  const int l_d = std::max(1, static_cast<int>(std::ceil(spec.area_w / param - 1e-12)));
  const int l_t = std::max(1, static_cast<int>(std::ceil(spec.window_len / param - 1e-12)));
  cfg.n_scale = std::clamp(nscale_upper_bound(l_d, l_t), 1, opt.n_scale);
  return cfg;
}

}  // namespace

std::vector<ScenarioRow> run_scenario(int scenario, const std::vector<double>& param_grid,
                                      int n_trials, std::uint64_t seed,
                                      const ScenarioOptions& options) {
  if (scenario < 1 || scenario > 4)
    throw std::invalid_argument("unknown scenario id: " + std::to_string(scenario));
  if (param_grid.empty()) throw std::invalid_argument("empty parameter grid");

  std::vector<ScenarioRow> rows;
  Rng master(seed);
  for (int trial = 0; trial < n_trials; ++trial) {
    Rng trial_rng = master.spawn(static_cast<std::uint64_t>(trial));
    const SyntheticSpec spec = scenario_spec(scenario, options, trial_rng);
    SyntheticCorpus corpus = generate(spec);

    const BoundingBox box{0.0, spec.area_h, 0.0, spec.area_w};
    const TimeWindow window{0, static_cast<std::int64_t>(spec.window_len * 3600.0)};
    tokenize_records(corpus.records, default_stop_words(), 3, 30);
    const TokenizedCorpus tokenized = TokenizedCorpus::build(corpus.records);
    const Projection proj(box, CoordMode::planar_km);

    for (double param : param_grid) {
      const DetectionConfig cfg = scenario_config(scenario, param, options, spec);
      const std::uint64_t run_seed = trial_rng.next_u64();
      const PipelineResult led = run_led(corpus.records, tokenized, cfg, proj, run_seed,
                                         options.n_threads);
      const PipelineResult med = run_med(corpus.records, tokenized, cfg, proj, window, run_seed,
                                         options.n_threads);
      rows.push_back({"led", scenario, param, trial, nmi(led.partition, corpus.truth.labels),
                      f_beta(led.partition, corpus.truth.labels, 2.0)});
      rows.push_back({"med", scenario, param, trial, nmi(med.partition, corpus.truth.labels),
                      f_beta(med.partition, corpus.truth.labels, 2.0)});
    }
  }
  return rows;
}

std::vector<ScenarioAggregate> aggregate_rows(const std::vector<ScenarioRow>& rows) {
  std::map<std::pair<std::string, double>, std::pair<ScenarioAggregate, int>> acc;
  for (const auto& r : rows) {
    auto& [agg, count] = acc[{r.method, r.param}];
    if (count == 0) {
      agg.method = r.method;
      agg.scenario = r.scenario;
      agg.param = r.param;
    }
    agg.mean_nmi += r.nmi;
    agg.mean_f += r.f_measure;
    ++count;
  }
  std::vector<ScenarioAggregate> out;
  for (auto& [key, value] : acc) {
    value.first.mean_nmi /= value.second;
    value.first.mean_f /= value.second;
    out.push_back(value.first);
  }
  return out;
}

}  // namespace msed
