#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "msed/config.hpp"
#include "msed/graph.hpp"
#include "msed/noise_stats.hpp"
#include "msed/record.hpp"
#include "msed/spatial_grid.hpp"
#include "msed/text_index.hpp"
#include "msed/wavelet.hpp"

namespace msed {

struct EventCluster {
  int id = 0;
  std::vector<int> record_indices;          // into the validated corpus, sorted
  std::vector<std::string> record_ids;      // sorted
  std::int64_t median_timestamp = 0;
  std::int64_t t80_interval_seconds = 0;    // minimal interval covering 80% of records
  double centroid_lat = 0.0;
  double centroid_lon = 0.0;
  std::vector<std::string> top_terms;       // <= 10, by within-cluster record frequency
  int n_records = 0;
  int n_users = 0;
};

enum class DropReason { too_few_records, too_few_users, single_user_dominates, blacklisted };
const char* drop_reason_name(DropReason r);

struct DroppedCluster {
  EventCluster cluster;
  DropReason reason;
};

struct GraphStats {
  int n_vertices = 0;
  std::size_t n_edges = 0;
  double total_weight = 0.0;  // 2m
  double modularity_q = 0.0;
  int n_communities = 0;
};

struct PipelineResult {
  std::vector<EventCluster> clusters;         // retained, sorted by size descending
  std::vector<DroppedCluster> dropped;
  std::vector<int> partition;                 // full community assignment, pre-drop
  GraphStats graph_stats;
  std::uint64_t seed = 0;
  std::string method;
  std::string warning;  // non-empty when the run degenerated (e.g. no edges)
};

// s_tf-idf gated by |dt| <= T_t minutes and d <= T_d meters, bounds inclusive.
double led_similarity(const Record& a, const TfIdfVector& va, const Record& b,
                      const TfIdfVector& vb, const DetectionConfig& cfg, const Projection& proj);

// Shared state for MED pairwise similarity.
struct MedContext {
  const Grid* grid = nullptr;
  const ScaleBoundaries* boundaries = nullptr;
  const SeriesStore* store = nullptr;
  std::vector<char> valid_mask;  // by term id
  std::vector<int> record_cell;  // by record index
};

// s_tf-idf * max over shared valid terms of the wavelet-domain term
// similarity; 0 when no valid term is shared.
double med_similarity(int i, int j, const TokenizedCorpus& corpus, const MedContext& ctx);

SimilarityGraph build_led_graph(const std::vector<Record>& records, const TokenizedCorpus& corpus,
                                const DetectionConfig& cfg, const Projection& proj,
                                int n_threads = 1);
SimilarityGraph build_med_graph(const std::vector<Record>& records, const TokenizedCorpus& corpus,
                                const DetectionConfig& cfg, const MedContext& ctx,
                                int n_threads = 1);

// Drops clusters failing the record/user/blacklist gates and computes the
// summary fields of the retained ones.
PipelineResult post_process(const Partition& partition, const std::vector<Record>& records,
                            const TokenizedCorpus& corpus, const DetectionConfig& cfg);

// End-to-end pipelines over a validated, tokenized corpus.
PipelineResult run_led(const std::vector<Record>& records, const TokenizedCorpus& corpus,
                       const DetectionConfig& cfg, const Projection& proj, std::uint64_t seed,
                       int n_threads = 1);
PipelineResult run_med(const std::vector<Record>& records, const TokenizedCorpus& corpus,
                       const DetectionConfig& cfg, const Projection& proj, const TimeWindow& window,
                       std::uint64_t seed, int n_threads = 1);

}  // namespace msed
