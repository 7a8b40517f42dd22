#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>
#include <set>

#include "msed/synth.hpp"
#include "oracles.hpp"

using namespace msed;

namespace {

SyntheticSpec small_spec(std::uint64_t seed) {
  SyntheticSpec spec;
  spec.seed = seed;
  for (int e = 0; e < 5; ++e) {
    EventBox box;
    box.x0 = e * 1.5;
    box.x1 = box.x0 + 2.0;
    box.y0 = e * 1.5;
    box.y1 = box.y0 + 2.0;
    box.t0 = e * 5.0;
    box.t1 = box.t0 + 2.0;
    spec.events.push_back(box);
  }
  return spec;
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

}  // namespace

TEST_CASE("generator respects the spec") {
  auto spec = small_spec(11);
  spec.noise_intensity = 2.0;  // ~200 noise records in the 10x10 area
  const auto corpus = generate(spec);

  CHECK(corpus.records.size() == corpus.truth.labels.size());
  CHECK(corpus.n_event_records >= 5 * 3);
  CHECK(corpus.n_event_records <= 5 * 10);
  CHECK(corpus.n_noise_records > 100);
  CHECK(corpus.n_noise_records < 320);

  std::set<std::string> ids, users;
  for (std::size_t i = 0; i < corpus.records.size(); ++i) {
    const auto& r = corpus.records[i];
    CHECK(ids.insert(r.id).second);
    CHECK(users.insert(r.user).second);  // one user per record
    CHECK(r.lat >= 0.0);
    CHECK(r.lat <= spec.area_h);
    CHECK(r.lon >= 0.0);
    CHECK(r.lon <= spec.area_w);
    CHECK(r.timestamp >= 0);
    CHECK(r.timestamp <= static_cast<std::int64_t>(spec.window_len * 3600));
    const int label = corpus.truth.labels[i];
    if (label < static_cast<int>(spec.events.size())) {
      // event record inside its event box
      const auto& b = spec.events[label];
      CHECK(r.lon >= b.x0);
      CHECK(r.lon <= b.x1);
      CHECK(r.lat >= b.y0);
      CHECK(r.lat <= b.y1);
      CHECK(r.timestamp >= static_cast<std::int64_t>(b.t0 * 3600));
      CHECK(r.timestamp <= static_cast<std::int64_t>(b.t1 * 3600) + 1);
      const auto terms = split(r.text);
      CHECK(static_cast<int>(terms.size()) >= spec.terms_per_event_tweet_min);
      CHECK(static_cast<int>(terms.size()) <= spec.terms_per_event_tweet_max);
      // exactly one signal term per event tweet by default
      const auto n_sig = std::count_if(terms.begin(), terms.end(), [](const auto& t) {
        return t.rfind("sig", 0) == 0;
      });
      CHECK(n_sig == 1);
    } else {
      // noise: singleton label, noise terms only
      const auto terms = split(r.text);
      CHECK(static_cast<int>(terms.size()) >= spec.terms_per_noise_tweet_min);
      CHECK(static_cast<int>(terms.size()) <= spec.terms_per_noise_tweet_max);
      for (const auto& t : terms) CHECK(t.rfind("nz", 0) == 0);
    }
  }

  // noise labels are all distinct singletons
  std::set<int> noise_labels;
  for (std::size_t i = 0; i < corpus.records.size(); ++i)
    if (corpus.truth.labels[i] >= static_cast<int>(spec.events.size()))
      CHECK(noise_labels.insert(corpus.truth.labels[i]).second);

  SUBCASE("zero intensity generates zero noise") {
    auto quiet = small_spec(11);
    quiet.noise_intensity = 0.0;
    CHECK(generate(quiet).n_noise_records == 0);
  }
  SUBCASE("identical spec and seed reproduce the corpus") {
    const auto again = generate(spec);
    REQUIRE(again.records.size() == corpus.records.size());
    for (std::size_t i = 0; i < corpus.records.size(); ++i) {
      CHECK(again.records[i].id == corpus.records[i].id);
      CHECK(again.records[i].timestamp == corpus.records[i].timestamp);
      CHECK(again.records[i].lat == corpus.records[i].lat);
      CHECK(again.records[i].text == corpus.records[i].text);
    }
  }
  SUBCASE("different seed changes the corpus") {
    const auto other = generate(small_spec(12));
    bool differs = other.records.size() != corpus.records.size();
    if (!differs) differs = other.records[0].lat != corpus.records[0].lat;
    CHECK(differs);
  }
}

TEST_CASE("nmi reference values and axioms") {
  CHECK(nmi({0, 0, 1, 1}, {5, 5, 9, 9}) == doctest::Approx(1.0));
  CHECK(nmi({0, 0, 0, 0}, {0, 1, 2, 3}) == doctest::Approx(0.0));
  // one true cluster of four split in half, one intact
  const std::vector<int> truth = {0, 0, 0, 0, 1, 1, 1};
  const std::vector<int> pred = {0, 0, 1, 1, 2, 2, 2};
  CHECK(nmi(pred, truth) == doctest::Approx(0.7751949413088236).epsilon(1e-12));
  CHECK(nmi(pred, truth) == doctest::Approx(oracle::nmi_contingency(pred, truth)).epsilon(1e-12));
  CHECK_THROWS(nmi({}, {}));
}

TEST_CASE("f beta reference values") {
  CHECK(f_beta({0, 0, 1, 1}, {0, 0, 1, 1}, 2.0) == doctest::Approx(1.0));
  // P=0.5, R=1: truth one pair, pred merges all three records
  CHECK(f_beta({0, 0, 0}, {0, 0, 1}, 2.0) > 0.0);
  // all singletons against a multi-record cluster: recall 0
  CHECK(f_beta({0, 1, 2}, {0, 0, 0}, 2.0) == 0.0);
}

TEST_CASE("exact f2 for P=0.5, R=1") {
  // truth pairs: {0,1} and {2,3}; pred pairs: {0,1},{0,4},{1,4} and {2,3}
  // tp=2, fp=2, fn=0 -> P=0.5, R=1 -> F2 = 5/6
  const std::vector<int> pred = {0, 0, 1, 1, 0};
  const std::vector<int> truth = {0, 0, 1, 1, 2};
  CHECK(f_beta(pred, truth, 2.0) == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("metrics agree with oracles and are relabel invariant") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 12);
    std::vector<int> a(n), b(n), a_rel(n), b_rel(n);
    for (int i = 0; i < n; ++i) {
      a[i] = static_cast<int>(rng() % 4);
      b[i] = static_cast<int>(rng() % 4);
      a_rel[i] = 1000 - a[i] * 7;
      b_rel[i] = 42 + b[i] * 13;
    }
    CHECK(nmi(a, b) == doctest::Approx(oracle::nmi_contingency(a, b)).epsilon(1e-9));
    CHECK(nmi(a_rel, b_rel) == doctest::Approx(nmi(a, b)).epsilon(1e-12));
    for (double beta : {1.0, 2.0}) {
      CHECK(f_beta(a, b, beta) == doctest::Approx(oracle::f_beta_pairs(a, b, beta)).epsilon(1e-9));
      CHECK(f_beta(a_rel, b_rel, beta) == doctest::Approx(f_beta(a, b, beta)).epsilon(1e-12));
    }
  }
}

TEST_CASE("f1 equals the harmonic mean of pair precision and recall") {
  const std::vector<int> pred = {0, 0, 1, 1, 1, 2};
  const std::vector<int> truth = {0, 0, 0, 1, 1, 1};
  // direct: tp, fp, fn counted by hand over C(6,2)=15 pairs
  double tp = 0, fp = 0, fn = 0;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) {
      const bool sp = pred[i] == pred[j], st = truth[i] == truth[j];
      tp += sp && st;
      fp += sp && !st;
      fn += !sp && st;
    }
  const double p = tp / (tp + fp), r = tp / (tp + fn);
  CHECK(f_beta(pred, truth, 1.0) == doctest::Approx(2 * p * r / (p + r)).epsilon(1e-12));
}

TEST_CASE("scenario runner smoke: shapes and determinism") {
  const std::vector<double> grid = {1.0, 2.0};
  const auto rows = run_scenario(1, grid, 2, 99);
  CHECK(rows.size() == 2 * grid.size() * 2);  // methods x params x trials
  for (const auto& r : rows) {
    CHECK((r.method == "led" || r.method == "med"));
    CHECK(r.nmi >= 0.0);
    CHECK(r.nmi <= 1.0);
    CHECK(r.f_measure >= 0.0);
    CHECK(r.f_measure <= 1.0);
  }
  const auto again = run_scenario(1, grid, 2, 99);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].nmi == again[i].nmi);
    CHECK(rows[i].f_measure == again[i].f_measure);
  }
  CHECK_THROWS(run_scenario(7, grid, 1, 1));

  const auto agg = aggregate_rows(rows);
  CHECK(agg.size() == 2 * grid.size());
  for (const auto& a : agg) {
    double sum = 0;
    int cnt = 0;
    for (const auto& r : rows)
      if (r.method == a.method && r.param == a.param) {
        sum += r.nmi;
        ++cnt;
      }
    CHECK(a.mean_nmi == doctest::Approx(sum / cnt).epsilon(1e-12));
  }
}
