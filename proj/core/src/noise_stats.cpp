#include "msed/noise_stats.hpp"

#include <gsl/gsl_cdf.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "msed/rng.hpp"

namespace msed {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::pair<double, double> ripley_kl(const std::vector<std::pair<double, double>>& points_km,
                                    double area_km2, double s_km) {
  const std::size_t n = points_km.size();
  if (n < 2) throw std::invalid_argument("ripley: need at least 2 points");
  if (area_km2 <= 0) throw std::invalid_argument("ripley: area must be positive");
  const double s2 = s_km * s_km;
  std::size_t count = 0;  // unordered pairs, doubled below
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = points_km[i].first - points_km[j].first;
      const double dy = points_km[i].second - points_km[j].second;
      if (dx * dx + dy * dy < s2) ++count;
    }
  }
  const double k_hat =
      area_km2 * 2.0 * static_cast<double>(count) / (static_cast<double>(n) * static_cast<double>(n));
  const double l_hat = std::sqrt(k_hat / kPi) - s_km;
  return {k_hat, l_hat};
}

double LFunctionProfile::mean_l() const {
  if (l_values.empty()) return 0.0;
  return std::accumulate(l_values.begin(), l_values.end(), 0.0) /
         static_cast<double>(l_values.size());
}

CsrEnvelope csr_envelope(int n, double width_km, double height_km,
                         const std::vector<double>& probes_km, int n_sims, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("csr_envelope: need n >= 2");
  if (n_sims < 1) throw std::invalid_argument("csr_envelope: need n_sims >= 1");
  const double area = width_km * height_km;
  CsrEnvelope env;
  env.lo.assign(probes_km.size(), std::numeric_limits<double>::infinity());
  env.hi.assign(probes_km.size(), -std::numeric_limits<double>::infinity());
  Rng master(seed);
  std::vector<std::pair<double, double>> pts(n);
  for (int sim = 0; sim < n_sims; ++sim) {
    Rng rng = master.spawn(static_cast<std::uint64_t>(sim));
    for (auto& p : pts) p = {rng.uniform(0.0, width_km), rng.uniform(0.0, height_km)};
    for (std::size_t k = 0; k < probes_km.size(); ++k) {
      const double l = ripley_l(pts, area, probes_km[k]);
      env.lo[k] = std::min(env.lo[k], l);
      env.hi[k] = std::max(env.hi[k], l);
    }
  }
  return env;
}

Chi2Result chi_squared_uniform(const std::vector<std::int64_t>& timestamps,
                               const TimeWindow& window, int n_bins, double alpha) {
  window.validate();
  if (n_bins < 2) throw std::invalid_argument("chi_squared_uniform: need at least 2 bins");
  const std::size_t n = timestamps.size();
  // merge bins until the expected count per bin reaches 5
  int bins = std::min<int>(n_bins, static_cast<int>(n / 5));
  if (bins < 2)
    throw std::invalid_argument("chi_squared_uniform: too few samples for the test");

  std::vector<std::size_t> observed(bins, 0);
  const double len = static_cast<double>(window.length());
  for (std::int64_t ts : timestamps) {
    if (!window.contains(ts))
      throw std::invalid_argument("chi_squared_uniform: timestamp outside window");
    int b = static_cast<int>(static_cast<double>(ts - window.start) / len * bins);
    b = std::clamp(b, 0, bins - 1);
    ++observed[b];
  }
  const double expected = static_cast<double>(n) / bins;
  double stat = 0.0;
  for (std::size_t o : observed) {
    const double d = static_cast<double>(o) - expected;
    stat += d * d / expected;
  }
  Chi2Result res;
  res.statistic = stat;
  res.dof = bins - 1;
  res.critical = gsl_cdf_chisq_Pinv(1.0 - alpha, static_cast<double>(res.dof));
  res.reject = stat > res.critical;
  return res;
}

std::vector<LFunctionProfile> l_profiles(const std::vector<Record>& records,
                                         const TokenizedCorpus& corpus, const Projection& proj,
                                         int min_term_support,
                                         const std::vector<double>& probes_km) {
  const Vocabulary& vocab = corpus.vocab();
  // term -> list of record indices
  std::vector<std::vector<int>> members(vocab.size());
  for (int r = 0; r < corpus.n_records(); ++r) {
    for (const auto& [id, cnt] : corpus.term_counts(r)) members[id].push_back(r);
  }
  const double area = proj.area_km2();
  std::vector<LFunctionProfile> out;
  for (int id = 0; id < vocab.size(); ++id) {
    if (static_cast<int>(members[id].size()) < std::max(2, min_term_support)) continue;
    std::vector<std::pair<double, double>> pts;
    pts.reserve(members[id].size());
    for (int r : members[id]) {
      auto [x, y] = proj.to_xy(records[r].lat, records[r].lon);
      pts.emplace_back(x * 1e-3, y * 1e-3);
    }
    LFunctionProfile p;
    p.term = vocab.terms[id];
    p.n_points = static_cast<int>(pts.size());
    p.probes = probes_km;
    p.l_values.reserve(probes_km.size());
    for (double s : probes_km) p.l_values.push_back(ripley_l(pts, area, s));
    out.push_back(std::move(p));
  }
  return out;
}

std::unordered_set<int> filter_terms(const std::vector<Record>& records,
                                     const TokenizedCorpus& corpus, const Projection& proj,
                                     const DetectionConfig& cfg) {
  const auto profiles =
      l_profiles(records, corpus, proj, cfg.min_term_support, cfg.l_filter_probes_km);
  std::unordered_set<int> valid;
  for (const auto& p : profiles) {
    if (p.mean_l() >= cfg.l_filter_threshold) valid.insert(corpus.vocab().id_of(p.term));
  }
  return valid;
}

}  // namespace msed
