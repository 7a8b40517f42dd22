#include "msed/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>
#include <tuple>
#include <unordered_map>

namespace msed {

namespace {

constexpr double kEdgeEps = 1e-12;

// Walks candidate pairs in parallel over i-ranges and keeps edges with
// weight > kEdgeEps. weight_factory(t) yields the weight function used by
// worker t (workers may keep private caches).
template <typename WeightFactory>
SimilarityGraph build_graph(const TokenizedCorpus& corpus, const std::vector<char>& valid_mask,
                            WeightFactory&& weight_factory, int n_threads) {
  const int n = corpus.n_records();
  std::vector<std::vector<int>> postings(corpus.vocab().size());
  for (int r = 0; r < n; ++r) {
    for (const auto& [id, cnt] : corpus.term_counts(r)) {
      if (valid_mask.empty() || valid_mask[id]) postings[id].push_back(r);
    }
  }

  n_threads = std::max(1, n_threads);
  std::vector<std::vector<std::tuple<int, int, double>>> edges(n_threads);
  auto worker = [&](int t) {
    auto weight = weight_factory(t);
    std::vector<int> stamp(n, -1);
    for (int i = t; i < n; i += n_threads) {
      for (const auto& [id, cnt] : corpus.term_counts(i)) {
        if (!valid_mask.empty() && !valid_mask[id]) continue;
        for (int j : postings[id]) {
          if (j <= i || stamp[j] == i) continue;
          stamp[j] = i;
          const double w = weight(i, j);
          if (w > kEdgeEps) edges[t].emplace_back(i, j, w);
        }
      }
    }
  };
  if (n_threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  SimilarityGraph g(n);
  for (const auto& bucket : edges)
    for (const auto& [i, j, w] : bucket) g.add_edge(i, j, w);
  return g;
}

}  // namespace

const char* drop_reason_name(DropReason r) {
  switch (r) {
    case DropReason::too_few_records: return "too_few_records";
    case DropReason::too_few_users: return "too_few_users";
    case DropReason::single_user_dominates: return "single_user_dominates";
    case DropReason::blacklisted: return "blacklisted";
  }
  return "unknown";
}

double led_similarity(const Record& a, const TfIdfVector& va, const Record& b,
                      const TfIdfVector& vb, const DetectionConfig& cfg, const Projection& proj) {
  const double dt_s = std::abs(static_cast<double>(a.timestamp - b.timestamp));
  if (dt_s > cfg.tt_seconds()) return 0.0;
  if (proj.distance_m(a.lat, a.lon, b.lat, b.lon) > cfg.td_meters) return 0.0;
  return tfidf_cosine(va, vb);
}

double med_similarity(int i, int j, const TokenizedCorpus& corpus, const MedContext& ctx) {
  const double text_sim = tfidf_cosine(corpus.tfidf(i), corpus.tfidf(j));
  if (text_sim <= 0.0) return 0.0;
  const auto& ta = corpus.term_counts(i);
  const auto& tb = corpus.term_counts(j);
  const int cell_i = ctx.record_cell[i];
  const int cell_j = ctx.record_cell[j];
  double s_st = 0.0;
  std::size_t p = 0, q = 0;
  while (p < ta.size() && q < tb.size()) {
    if (ta[p].first < tb[q].first)
      ++p;
    else if (ta[p].first > tb[q].first)
      ++q;
    else {
      const int term = ta[p].first;
      if (ctx.valid_mask.empty() || ctx.valid_mask[term]) {
        const double s =
            term_pair_similarity(term, cell_i, cell_j, *ctx.boundaries, *ctx.grid, *ctx.store);
        s_st = std::max(s_st, s);
        if (s_st >= 1.0) break;
      }
      ++p;
      ++q;
    }
  }
  return text_sim * s_st;
}

SimilarityGraph build_led_graph(const std::vector<Record>& records, const TokenizedCorpus& corpus,
                                const DetectionConfig& cfg, const Projection& proj, int n_threads) {
  return build_graph(
      corpus, {},
      [&](int) {
        return [&](int i, int j) {
          return led_similarity(records[i], corpus.tfidf(i), records[j], corpus.tfidf(j), cfg,
                                proj);
        };
      },
      n_threads);
}

SimilarityGraph build_med_graph(const std::vector<Record>& records, const TokenizedCorpus& corpus,
                                const DetectionConfig& cfg, const MedContext& ctx, int n_threads) {
  (void)records;
  (void)cfg;
  return build_graph(
      corpus, ctx.valid_mask,
      [&](int) { return [&](int i, int j) { return med_similarity(i, j, corpus, ctx); }; },
      n_threads);
}

namespace {

EventCluster summarize_cluster(const std::vector<int>& members, const std::vector<Record>& records,
                               const TokenizedCorpus& corpus) {
  EventCluster c;
  c.record_indices = members;
  std::sort(c.record_indices.begin(), c.record_indices.end());
  c.n_records = static_cast<int>(members.size());

  std::vector<std::int64_t> ts;
  ts.reserve(members.size());
  double lat_sum = 0.0, lon_sum = 0.0;
  std::unordered_map<std::string, int> users;
  std::unordered_map<int, int> term_freq;  // term id -> #records containing it
  for (int r : c.record_indices) {
    const Record& rec = records[r];
    c.record_ids.push_back(rec.id);
    ts.push_back(rec.timestamp);
    lat_sum += rec.lat;
    lon_sum += rec.lon;
    ++users[rec.user];
    for (const auto& [id, cnt] : corpus.term_counts(r)) ++term_freq[id];
  }
  std::sort(c.record_ids.begin(), c.record_ids.end());
  std::sort(ts.begin(), ts.end());
  c.median_timestamp = ts[(ts.size() - 1) / 2];
  const std::size_t k = static_cast<std::size_t>(
      std::ceil(0.8 * static_cast<double>(ts.size()) - 1e-12));
  std::int64_t best = ts.back() - ts.front();
  for (std::size_t i = 0; i + k <= ts.size(); ++i) best = std::min(best, ts[i + k - 1] - ts[i]);
  c.t80_interval_seconds = best;
  c.centroid_lat = lat_sum / static_cast<double>(members.size());
  c.centroid_lon = lon_sum / static_cast<double>(members.size());
  c.n_users = static_cast<int>(users.size());

  std::vector<std::pair<int, int>> ranked(term_freq.begin(), term_freq.end());
  std::sort(ranked.begin(), ranked.end(), [&](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return corpus.vocab().terms[a.first] < corpus.vocab().terms[b.first];
  });
  for (std::size_t i = 0; i < ranked.size() && i < 10; ++i)
    c.top_terms.push_back(corpus.vocab().terms[ranked[i].first]);
  return c;
}

}  // namespace

PipelineResult post_process(const Partition& partition, const std::vector<Record>& records,
                            const TokenizedCorpus& corpus, const DetectionConfig& cfg) {
  PipelineResult res;
  res.partition = partition.community;

  const int n_comm = partition.n_communities();
  std::vector<std::vector<int>> members(n_comm);
  for (std::size_t r = 0; r < partition.community.size(); ++r)
    members[partition.community[r]].push_back(static_cast<int>(r));

  for (const auto& m : members) {
    if (m.empty()) continue;
    EventCluster c = summarize_cluster(m, records, corpus);
    if (c.n_records < cfg.min_cluster_records) {
      res.dropped.push_back({std::move(c), DropReason::too_few_records});
      continue;
    }
    if (c.n_users < cfg.min_cluster_users) {
      res.dropped.push_back({std::move(c), DropReason::too_few_users});
      continue;
    }
    std::unordered_map<std::string, int> per_user;
    for (int r : c.record_indices) ++per_user[records[r].user];
    int max_user = 0;
    for (const auto& [u, k] : per_user) max_user = std::max(max_user, k);
    if (static_cast<double>(max_user) / c.n_records > cfg.max_single_user_fraction) {
      res.dropped.push_back({std::move(c), DropReason::single_user_dominates});
      continue;
    }
    const bool hit = std::any_of(c.top_terms.begin(), c.top_terms.end(), [&](const auto& t) {
      return std::find(cfg.blacklist_terms.begin(), cfg.blacklist_terms.end(), t) !=
             cfg.blacklist_terms.end();
    });
    if (hit) {
      res.dropped.push_back({std::move(c), DropReason::blacklisted});
      continue;
    }
    res.clusters.push_back(std::move(c));
  }

  std::sort(res.clusters.begin(), res.clusters.end(), [](const auto& a, const auto& b) {
    if (a.n_records != b.n_records) return a.n_records > b.n_records;
    return a.record_indices.front() < b.record_indices.front();
  });
  for (std::size_t i = 0; i < res.clusters.size(); ++i)
    res.clusters[i].id = static_cast<int>(i) + 1;
  for (std::size_t i = 0; i < res.dropped.size(); ++i)
    res.dropped[i].cluster.id = static_cast<int>(i) + 1;
  return res;
}

namespace {

PipelineResult cluster_and_post_process(const SimilarityGraph& g,
                                        const std::vector<Record>& records,
                                        const TokenizedCorpus& corpus, const DetectionConfig& cfg,
                                        std::uint64_t seed) {
  PipelineResult res;
  if (g.n_edges() == 0) {
    Partition singletons;
    singletons.community.resize(records.size());
    std::iota(singletons.community.begin(), singletons.community.end(), 0);
    res = post_process(singletons, records, corpus, cfg);
    res.warning = "similarity graph has no positive-weight edges";
  } else {
    const Partition p = louvain_single_pass(g, seed);
    res = post_process(p, records, corpus, cfg);
    res.graph_stats.modularity_q = p.modularity_q;
    res.graph_stats.n_communities = p.n_communities();
  }
  res.graph_stats.n_vertices = g.n();
  res.graph_stats.n_edges = g.n_edges();
  res.graph_stats.total_weight = g.total_weight();
  res.seed = seed;
  return res;
}

}  // namespace

PipelineResult run_led(const std::vector<Record>& records, const TokenizedCorpus& corpus,
                       const DetectionConfig& cfg, const Projection& proj, std::uint64_t seed,
                       int n_threads) {
  cfg.validate();
  const SimilarityGraph g = build_led_graph(records, corpus, cfg, proj, n_threads);
  PipelineResult res = cluster_and_post_process(g, records, corpus, cfg, seed);
  res.method = "led";
  return res;
}

PipelineResult run_med(const std::vector<Record>& records, const TokenizedCorpus& corpus,
                       const DetectionConfig& cfg, const Projection& proj, const TimeWindow& window,
                       std::uint64_t seed, int n_threads) {
  cfg.validate();
  window.validate();
  const Grid grid(proj, cfg.delta_d_meters);
  const int n_bins =
      std::max(1, static_cast<int>(std::ceil(window.length() / cfg.delta_t_seconds() - 1e-12)));
  const int l_d = std::max(grid.n_rows(), grid.n_cols());
  const int bound = nscale_upper_bound(l_d, n_bins);
  if (cfg.n_scale > std::max(1, bound))
    throw ConfigError("n_scale=" + std::to_string(cfg.n_scale) + " exceeds upper bound " +
                      std::to_string(bound) + " for grid " + std::to_string(l_d) + " cells x " +
                      std::to_string(n_bins) + " bins");

  // valid terms: support gate, then the spatial L-filter when enabled
  std::vector<char> mask(corpus.vocab().size(), 0);
  if (cfg.l_filter_enabled) {
    const auto valid = filter_terms(records, corpus, proj, cfg);
    for (int id : valid) mask[id] = 1;
  } else {
    for (int id = 0; id < corpus.vocab().size(); ++id)
      if (corpus.vocab().df[id] >= cfg.min_term_support) mask[id] = 1;
  }

  MedContext ctx;
  ctx.grid = &grid;
  ctx.valid_mask = std::move(mask);
  ctx.record_cell.resize(records.size());
  std::vector<int> occupied;
  for (std::size_t r = 0; r < records.size(); ++r) {
    ctx.record_cell[r] = grid.cell_of(records[r].lat, records[r].lon);
    occupied.push_back(ctx.record_cell[r]);
  }
  std::sort(occupied.begin(), occupied.end());
  occupied.erase(std::unique(occupied.begin(), occupied.end()), occupied.end());

  const ScaleBoundaries boundaries =
      ScaleBoundaries::from_occupied_cells(grid, occupied, cfg.n_scale);
  ctx.boundaries = &boundaries;

  const std::size_t min_padded = std::size_t{1} << cfg.n_scale;
  const SeriesStore store = SeriesStore::build(records, corpus, ctx.valid_mask, grid,
                                               cfg.delta_t_seconds(), window, min_padded);
  ctx.store = &store;

  const SimilarityGraph g = build_med_graph(records, corpus, cfg, ctx, n_threads);
  PipelineResult res = cluster_and_post_process(g, records, corpus, cfg, seed);
  res.method = "med";
  return res;
}

}  // namespace msed
