#pragma once

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "msed/record.hpp"
#include "msed/spatial_grid.hpp"
#include "msed/text_index.hpp"

namespace msed {

std::size_t next_pow2(std::size_t n);

// Orthonormal Haar pyramid. Level k has padded_length / 2^k approximation
// and detail coefficients; L = log2(padded_length).
struct HaarDecomposition {
  std::vector<std::vector<double>> approx;  // [level-1] -> coefficients
  std::vector<std::vector<double>> detail;

  int levels() const { return static_cast<int>(approx.size()); }
};

// Input must be zero-padded to a power of two. Throws on empty input.
HaarDecomposition haar_dwt(const std::vector<double>& padded);

// Per-term occurrence counts over delta_t bins within one cell, zero-padded.
struct KeywordTimeSeries {
  int term = -1;
  int cell = -1;
  std::vector<double> counts;  // padded to padded_length
  HaarDecomposition dwt;
};

// Counts per bin for one term: cell -> series (cells with zero occurrences
// omitted). A record contributes at most once per term.
std::map<int, std::vector<double>> build_time_series(const std::vector<Record>& records,
                                                     const TokenizedCorpus& corpus, int term_id,
                                                     const Grid& grid, double delta_t_seconds,
                                                     const TimeWindow& window);

// DWT-ready series for every (valid term, occupied cell), built once and
// shared across all pair computations.
class SeriesStore {
 public:
  static SeriesStore build(const std::vector<Record>& records, const TokenizedCorpus& corpus,
                           const std::vector<char>& valid_mask, const Grid& grid,
                           double delta_t_seconds, const TimeWindow& window,
                           std::size_t min_padded_length);

  const KeywordTimeSeries* find(int term_id, int cell) const;
  std::size_t padded_length() const { return padded_length_; }
  int n_bins() const { return n_bins_; }
  std::size_t size() const { return series_.size(); }

 private:
  std::unordered_map<std::int64_t, KeywordTimeSeries> series_;  // key: term * n_cells + cell
  std::int64_t n_cells_ = 0;
  std::size_t padded_length_ = 0;
  int n_bins_ = 0;
};

// Pearson correlation of the level-`dwt_level` approximation coefficients,
// clamped below at 0. If either vector is constant, 1 when both are constant
// with the same zero/nonzero sign, else 0.
double scale_similarity(const KeywordTimeSeries& x, const KeywordTimeSeries& y, int dwt_level);

// 1.0 for the same cell; otherwise the scale similarity at the DWT level
// given by the spatial scale of the cell distance. Missing series -> 0.
double term_pair_similarity(int term_id, int cell_a, int cell_b, const ScaleBoundaries& boundaries,
                            const Grid& grid, const SeriesStore& store);

}  // namespace msed
