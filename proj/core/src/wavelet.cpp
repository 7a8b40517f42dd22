#include "msed/wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace msed {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

HaarDecomposition haar_dwt(const std::vector<double>& padded) {
  if (padded.empty()) throw std::invalid_argument("haar_dwt: empty input");
  if ((padded.size() & (padded.size() - 1)) != 0)
    throw std::invalid_argument("haar_dwt: length must be a power of two");
  HaarDecomposition d;
  std::vector<double> cur = padded;
  while (cur.size() > 1) {
    const std::size_t half = cur.size() / 2;
    std::vector<double> a(half), w(half);
    for (std::size_t i = 0; i < half; ++i) {
      a[i] = (cur[2 * i] + cur[2 * i + 1]) * kInvSqrt2;
      w[i] = (cur[2 * i] - cur[2 * i + 1]) * kInvSqrt2;
    }
    d.approx.push_back(a);
    d.detail.push_back(std::move(w));
    cur = std::move(a);
  }
  return d;
}

std::map<int, std::vector<double>> build_time_series(const std::vector<Record>& records,
                                                     const TokenizedCorpus& corpus, int term_id,
                                                     const Grid& grid, double delta_t_seconds,
                                                     const TimeWindow& window) {
  const int n_bins =
      std::max(1, static_cast<int>(std::ceil(window.length() / delta_t_seconds - 1e-12)));
  std::map<int, std::vector<double>> out;
  for (std::size_t r = 0; r < records.size(); ++r) {
    const auto& counts = corpus.term_counts(static_cast<int>(r));
    const bool has = std::binary_search(
        counts.begin(), counts.end(), std::pair<int, int>{term_id, 0},
        [](const auto& a, const auto& b) { return a.first < b.first; });
    if (!has) continue;
    int bin = static_cast<int>((records[r].timestamp - window.start) / delta_t_seconds);
    bin = std::clamp(bin, 0, n_bins - 1);
    const int cell = grid.cell_of(records[r].lat, records[r].lon);
    auto& series = out[cell];
    if (series.empty()) series.assign(n_bins, 0.0);
    series[bin] += 1.0;
  }
  return out;
}

SeriesStore SeriesStore::build(const std::vector<Record>& records, const TokenizedCorpus& corpus,
                               const std::vector<char>& valid_mask, const Grid& grid,
                               double delta_t_seconds, const TimeWindow& window,
                               std::size_t min_padded_length) {
  SeriesStore store;
  store.n_cells_ = grid.n_cells();
  store.n_bins_ =
      std::max(1, static_cast<int>(std::ceil(window.length() / delta_t_seconds - 1e-12)));
  store.padded_length_ =
      std::max(next_pow2(static_cast<std::size_t>(store.n_bins_)), next_pow2(min_padded_length));

  // accumulate counts keyed by (term, cell)
  for (std::size_t r = 0; r < records.size(); ++r) {
    int bin = static_cast<int>((records[r].timestamp - window.start) / delta_t_seconds);
    bin = std::clamp(bin, 0, store.n_bins_ - 1);
    const int cell = grid.cell_of(records[r].lat, records[r].lon);
    for (const auto& [term, cnt] : corpus.term_counts(static_cast<int>(r))) {
      if (!valid_mask.empty() && !valid_mask[term]) continue;
      const std::int64_t key = static_cast<std::int64_t>(term) * store.n_cells_ + cell;
      auto [it, inserted] = store.series_.try_emplace(key);
      KeywordTimeSeries& s = it->second;
      if (inserted) {
        s.term = term;
        s.cell = cell;
        s.counts.assign(store.padded_length_, 0.0);
      }
      s.counts[bin] += 1.0;  // once per record regardless of in-text repetition
    }
  }
  for (auto& [key, s] : store.series_) s.dwt = haar_dwt(s.counts);
  return store;
}

const KeywordTimeSeries* SeriesStore::find(int term_id, int cell) const {
  const auto it = series_.find(static_cast<std::int64_t>(term_id) * n_cells_ + cell);
  return it == series_.end() ? nullptr : &it->second;
}

double scale_similarity(const KeywordTimeSeries& x, const KeywordTimeSeries& y, int dwt_level) {
  if (x.counts.size() != y.counts.size())
    throw std::invalid_argument("scale_similarity: length mismatch");
  if (dwt_level < 1 || dwt_level > x.dwt.levels() || dwt_level > y.dwt.levels())
    throw std::invalid_argument("scale_similarity: DWT level out of range");
  const std::vector<double>& a = x.dwt.approx[dwt_level - 1];
  const std::vector<double>& b = y.dwt.approx[dwt_level - 1];

  const std::size_t n = a.size();
  double mean_a = 0.0, mean_b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_a += a[i];
    mean_b += b[i];
  }
  mean_a /= static_cast<double>(n);
  mean_b /= static_cast<double>(n);
  double va = 0.0, vb = 0.0, cov = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = a[i] - mean_a;
    const double db = b[i] - mean_b;
    va += da * da;
    vb += db * db;
    cov += da * db;
  }
  const double eps = 1e-18;
  if (va <= eps || vb <= eps) {
    const bool const_a = va <= eps, const_b = vb <= eps;
    if (const_a && const_b) return (mean_a != 0.0) == (mean_b != 0.0) ? 1.0 : 0.0;
    return 0.0;
  }
  const double r = cov / std::sqrt(va * vb);
  return std::clamp(r, 0.0, 1.0);
}

double term_pair_similarity(int term_id, int cell_a, int cell_b, const ScaleBoundaries& boundaries,
                            const Grid& grid, const SeriesStore& store) {
  if (cell_a == cell_b) return 1.0;
  const KeywordTimeSeries* x = store.find(term_id, cell_a);
  const KeywordTimeSeries* y = store.find(term_id, cell_b);
  if (x == nullptr || y == nullptr) return 0.0;  // no evidence
  const double d = grid.cell_distance_m(cell_a, cell_b);
  const int s_s = spatial_scale_of(boundaries, d);
  return scale_similarity(*x, *y, s_s);
}

}  // namespace msed
