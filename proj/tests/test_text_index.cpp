#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "msed/text_index.hpp"
#include "oracles.hpp"

using namespace msed;

namespace {

std::vector<Record> records_from_tokens(const std::vector<std::vector<std::string>>& docs) {
  std::vector<Record> recs(docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    recs[i].id = "r" + std::to_string(i);
    recs[i].tokens = docs[i];
  }
  return recs;
}

}  // namespace

TEST_CASE("tokenize lowercases, splits punctuation, enforces length") {
  const auto& stops = default_stop_words();
  CHECK(tokenize("Protest at Zuccotti Park!", stops, 3, 30) ==
        std::vector<std::string>{"protest", "zuccotti", "park"});
  CHECK(tokenize("http http http", stops, 3, 30).empty());
  CHECK(tokenize("aa", stops, 3, 30).empty());
  CHECK(tokenize("", stops, 3, 30).empty());
  // duplicates kept, order preserved
  CHECK(tokenize("fire Fire FIRE", stops, 3, 30) ==
        std::vector<std::string>{"fire", "fire", "fire"});
  // over-long tokens dropped
  CHECK(tokenize(std::string(31, 'x'), stops, 3, 30).empty());
}

TEST_CASE("stop word list bundles http") {
  const auto& stops = default_stop_words();
  CHECK(stops.count("http") == 1);
  CHECK(stops.count("the") == 1);
  CHECK(stops.count("zuccotti") == 0);
}

TEST_CASE("tfidf_cosine against the dense-matrix oracle") {
  const std::vector<std::vector<std::string>> docs = {{"a", "b"}, {"a", "c"}, {"d"}};
  const auto corpus = TokenizedCorpus::build(records_from_tokens(docs));
  const double got = tfidf_cosine(corpus.tfidf(0), corpus.tfidf(1));
  CHECK(got == doctest::Approx(oracle::dense_tfidf_cosine(docs, 0, 1)).epsilon(1e-12));
  CHECK(got == doctest::Approx(0.11988321306398907).epsilon(1e-12));

  SUBCASE("identical token lists give 1") {
    const auto c2 = TokenizedCorpus::build(
        records_from_tokens({{"x", "y"}, {"x", "y"}, {"z"}}));
    CHECK(tfidf_cosine(c2.tfidf(0), c2.tfidf(1)) == doctest::Approx(1.0));
  }
  SUBCASE("disjoint vocabularies give 0") {
    CHECK(tfidf_cosine(corpus.tfidf(0), corpus.tfidf(2)) == 0.0);
  }
  SUBCASE("empty token list gives 0") {
    const auto c3 = TokenizedCorpus::build(records_from_tokens({{"x"}, {}}));
    CHECK(tfidf_cosine(c3.tfidf(0), c3.tfidf(1)) == 0.0);
  }
}

TEST_CASE("tfidf cosine symmetry and range on random corpora") {
  std::vector<std::vector<std::string>> docs;
  std::mt19937_64 rng(99);
  const std::vector<std::string> pool = {"aa1", "bb2", "cc3", "dd4", "ee5", "ff6"};
  for (int d = 0; d < 30; ++d) {
    std::vector<std::string> doc;
    const int len = 1 + static_cast<int>(rng() % 6);
    for (int k = 0; k < len; ++k) doc.push_back(pool[rng() % pool.size()]);
    docs.push_back(doc);
  }
  const auto corpus = TokenizedCorpus::build(records_from_tokens(docs));
  for (int i = 0; i < corpus.n_records(); ++i)
    for (int j = i + 1; j < corpus.n_records(); ++j) {
      const double s = tfidf_cosine(corpus.tfidf(i), corpus.tfidf(j));
      CHECK(s == tfidf_cosine(corpus.tfidf(j), corpus.tfidf(i)));
      CHECK(s >= 0.0);
      CHECK(s <= 1.0);
      CHECK(s == doctest::Approx(oracle::dense_tfidf_cosine(docs, i, j)).epsilon(1e-9));
    }
}

TEST_CASE("norm caches the Euclidean norm of the weights") {
  const auto corpus =
      TokenizedCorpus::build(records_from_tokens({{"a", "a", "b"}, {"b", "c"}, {"c"}}));
  for (int i = 0; i < corpus.n_records(); ++i) {
    const auto& v = corpus.tfidf(i);
    double ss = 0;
    for (const auto& [_, w] : v.weights) {
      CHECK(w >= 0.0);
      ss += w * w;
    }
    CHECK(v.norm == doctest::Approx(std::sqrt(ss)).epsilon(1e-9));
  }
}

TEST_CASE("candidate pairs from the inverted index") {
  const auto corpus = TokenizedCorpus::build(records_from_tokens({{"a"}, {"a"}, {"b"}}));
  auto mask = valid_mask_all(corpus);
  CHECK(candidate_pairs(corpus, mask) == std::vector<std::pair<int, int>>{{0, 1}});

  SUBCASE("masking a term removes its pairs") {
    mask[corpus.vocab().id_of("a")] = 0;
    CHECK(candidate_pairs(corpus, mask).empty());
  }
  SUBCASE("shared term yields all C(n,2) pairs once") {
    const auto c4 = TokenizedCorpus::build(
        records_from_tokens({{"x"}, {"x", "y"}, {"x"}, {"x", "z"}}));
    const auto pairs = candidate_pairs(c4, valid_mask_all(c4));
    CHECK(pairs.size() == 6);
    std::set<std::pair<int, int>> uniq(pairs.begin(), pairs.end());
    CHECK(uniq.size() == 6);
  }
}

TEST_CASE("candidate pairs are a superset of nonzero-similarity pairs") {
  const auto corpus = TokenizedCorpus::build(
      records_from_tokens({{"a", "b"}, {"b", "c"}, {"d"}, {"d", "a"}, {"e"}}));
  const auto pairs = candidate_pairs(corpus, valid_mask_all(corpus));
  std::set<std::pair<int, int>> yielded(pairs.begin(), pairs.end());
  for (int i = 0; i < corpus.n_records(); ++i)
    for (int j = i + 1; j < corpus.n_records(); ++j)
      if (!yielded.count({i, j}))
        CHECK(tfidf_cosine(corpus.tfidf(i), corpus.tfidf(j)) == 0.0);
}

TEST_CASE("idf is order invariant") {
  const std::vector<std::vector<std::string>> docs = {{"a", "b"}, {"a", "c"}, {"d"}, {"b"}};
  auto fwd = TokenizedCorpus::build(records_from_tokens(docs));
  auto rev_docs = docs;
  std::reverse(rev_docs.begin(), rev_docs.end());
  auto rev = TokenizedCorpus::build(records_from_tokens(rev_docs));
  const int n = static_cast<int>(docs.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      CHECK(tfidf_cosine(fwd.tfidf(i), fwd.tfidf(j)) ==
            doctest::Approx(tfidf_cosine(rev.tfidf(n - 1 - i), rev.tfidf(n - 1 - j)))
                .epsilon(1e-12));
}
