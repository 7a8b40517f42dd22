#include "msed/graph.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace msed {

void SimilarityGraph::add_edge(int i, int j, double w) {
  if (i == j) throw std::invalid_argument("graph: self-loops are not allowed");
  if (w <= 0.0) throw std::invalid_argument("graph: edge weight must be positive");
  adj_[i].emplace_back(j, w);
  adj_[j].emplace_back(i, w);
  total_weight_ += 2.0 * w;
  ++n_edges_;
}

double SimilarityGraph::weighted_degree(int i) const {
  double k = 0.0;
  for (const auto& [j, w] : adj_[i]) k += w;
  return k;
}

int Partition::n_communities() const {
  return community.empty() ? 0 : *std::max_element(community.begin(), community.end()) + 1;
}

std::vector<int> relabel_contiguous(const std::vector<int>& community) {
  std::unordered_map<int, int> remap;
  std::vector<int> out(community.size());
  for (std::size_t i = 0; i < community.size(); ++i) {
    auto [it, inserted] = remap.try_emplace(community[i], static_cast<int>(remap.size()));
    out[i] = it->second;
  }
  return out;
}

double modularity(const SimilarityGraph& g, const std::vector<int>& community) {
  if (static_cast<int>(community.size()) != g.n())
    throw std::invalid_argument("modularity: partition does not cover all vertices");
  const double two_m = g.total_weight();
  if (two_m <= 0.0) throw std::invalid_argument("modularity: graph has no edges");

  const int n_comm = *std::max_element(community.begin(), community.end()) + 1;
  std::vector<double> internal(n_comm, 0.0);  // sum over ordered pairs within community
  std::vector<double> total(n_comm, 0.0);     // sum of weighted degrees
  for (int i = 0; i < g.n(); ++i) {
    const int ci = community[i];
    for (const auto& [j, w] : g.neighbors(i)) {
      if (community[j] == ci) internal[ci] += w;
    }
    total[ci] += g.weighted_degree(i);
  }
  double q = 0.0;
  for (int c = 0; c < n_comm; ++c) {
    q += internal[c] / two_m - (total[c] / two_m) * (total[c] / two_m);
  }
  return q;
}

Partition louvain_single_pass(const SimilarityGraph& g, std::uint64_t seed) {
  const double two_m = g.total_weight();
  if (g.n() == 0 || two_m <= 0.0)
    throw std::invalid_argument("louvain: graph must be non-empty with at least one edge");
  constexpr double kGainEps = 1e-12;

  const int n = g.n();
  std::vector<int> community(n);
  std::iota(community.begin(), community.end(), 0);
  std::vector<double> degree(n);
  std::vector<double> comm_total(n);  // sum of degrees per community
  for (int i = 0; i < n; ++i) {
    degree[i] = g.weighted_degree(i);
    comm_total[i] = degree[i];
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  // scratch: community -> weight of edges from the current vertex
  std::unordered_map<int, double> link_weight;
  bool moved = true;
  while (moved) {
    moved = false;
    for (int v : order) {
      const int old_c = community[v];
      link_weight.clear();
      for (const auto& [u, w] : g.neighbors(v)) link_weight[community[u]] += w;

      comm_total[old_c] -= degree[v];
      const double w_old = link_weight.count(old_c) ? link_weight[old_c] : 0.0;
      // gain of joining community c relative to staying isolated:
      //   k_{v,c}/m - tot_c * k_v / 2m^2  (constant factors dropped)
      auto gain = [&](int c, double w_vc) {
        return w_vc - comm_total[c] * degree[v] / two_m;
      };
      const double stay_gain = gain(old_c, w_old);
      int best_c = old_c;
      double best_gain = stay_gain;
      for (const auto& [c, w_vc] : link_weight) {
        if (c == old_c) continue;
        const double gv = gain(c, w_vc);
        if (gv > best_gain + kGainEps) {
          best_gain = gv;
          best_c = c;
        } else if (best_c != old_c && gv > best_gain - kGainEps && c < best_c) {
          best_c = c;  // equal-gain tie broken by lowest community id
        }
      }
      comm_total[best_c] += degree[v];
      if (best_c != old_c) {
        community[v] = best_c;
        moved = true;
      }
    }
  }

  Partition p;
  p.community = relabel_contiguous(community);
  p.modularity_q = modularity(g, p.community);
  return p;
}

void dump_edge_list(const SimilarityGraph& g, std::ostream& os) {
  for (int i = 0; i < g.n(); ++i) {
    for (const auto& [j, w] : g.neighbors(i)) {
      if (i < j) os << i << ' ' << j << ' ' << w << '\n';
    }
  }
}

}  // namespace msed
