#pragma once

#include <cstdint>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "msed/config.hpp"
#include "msed/record.hpp"
#include "msed/text_index.hpp"

namespace msed {

// K_hat = V(A) * |{ordered pairs i != j : d_ij < s}| / n^2
// L_hat = sqrt(K_hat / pi) - s
// Coordinates in km, area in km^2. No edge correction. Throws for n < 2.
std::pair<double, double> ripley_kl(const std::vector<std::pair<double, double>>& points_km,
                                    double area_km2, double s_km);

inline double ripley_l(const std::vector<std::pair<double, double>>& points_km, double area_km2,
                       double s_km) {
  return ripley_kl(points_km, area_km2, s_km).second;
}

struct LFunctionProfile {
  std::string term;
  int n_points = 0;
  std::vector<double> probes;    // km, strictly increasing
  std::vector<double> l_values;  // per probe
  double mean_l() const;
};

struct CsrEnvelope {
  std::vector<double> lo;  // per probe minimum over simulations
  std::vector<double> hi;
};

// Min/max L_hat over n_sims draws of n uniform points in a w x h km box.
CsrEnvelope csr_envelope(int n, double width_km, double height_km,
                         const std::vector<double>& probes_km, int n_sims, std::uint64_t seed);

struct Chi2Result {
  double statistic = 0.0;
  int dof = 0;
  double critical = 0.0;
  bool reject = false;
};

// Goodness-of-fit of timestamps against a uniform distribution over the
// window. Bins are merged down until every expected count is >= 5.
Chi2Result chi_squared_uniform(const std::vector<std::int64_t>& timestamps,
                               const TimeWindow& window, int n_bins, double alpha);

// L profiles for every term with support >= min_term_support. Points are
// record locations projected to km; V(A) is the box area.
std::vector<LFunctionProfile> l_profiles(const std::vector<Record>& records,
                                         const TokenizedCorpus& corpus, const Projection& proj,
                                         int min_term_support, const std::vector<double>& probes_km);

// Term ids whose mean L_hat over the probes is >= threshold; terms below the
// support minimum are invalid.
std::unordered_set<int> filter_terms(const std::vector<Record>& records,
                                     const TokenizedCorpus& corpus, const Projection& proj,
                                     const DetectionConfig& cfg);

}  // namespace msed
