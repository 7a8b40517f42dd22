#pragma once

#include <cstdint>
#include <ostream>
#include <utility>
#include <vector>

namespace msed {

// Sparse weighted undirected graph with no self-loops; all weights > 0.
class SimilarityGraph {
 public:
  explicit SimilarityGraph(int n) : adj_(n) {}

  void add_edge(int i, int j, double w);

  int n() const { return static_cast<int>(adj_.size()); }
  std::size_t n_edges() const { return n_edges_; }
  double total_weight() const { return total_weight_; }  // 2m
  const std::vector<std::pair<int, double>>& neighbors(int i) const { return adj_[i]; }
  double weighted_degree(int i) const;

 private:
  std::vector<std::vector<std::pair<int, double>>> adj_;
  std::size_t n_edges_ = 0;
  double total_weight_ = 0.0;
};

struct Partition {
  std::vector<int> community;  // vertex -> community id, contiguous 0..k-1
  double modularity_q = 0.0;

  int n_communities() const;
};

// Relabels community ids to a contiguous 0..k-1 range, preserving the order
// of first appearance.
std::vector<int> relabel_contiguous(const std::vector<int>& community);

// Q = (1/2m) sum_ij [W(i,j) - k_i k_j / 2m] delta(c_i, c_j). Throws when the
// graph has no edges.
double modularity(const SimilarityGraph& g, const std::vector<int>& community);

// Phase-1 Louvain: seeded-shuffled vertex sweeps with single-vertex moves to
// the neighboring community of maximal positive gain, repeated until a full
// sweep makes no move. No graph aggregation.
Partition louvain_single_pass(const SimilarityGraph& g, std::uint64_t seed);

// Edge list "i j weight", one per line, i < j.
void dump_edge_list(const SimilarityGraph& g, std::ostream& os);

}  // namespace msed
