#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "msed/record.hpp"

namespace msed {

// Bundled English stop-word list, plus "http".
const std::unordered_set<std::string>& default_stop_words();
std::unordered_set<std::string> load_stop_words(const std::string& path);

// Lowercased alphanumeric tokens with stop words removed and length bounds
// enforced. Order preserved, duplicates kept. Non-ASCII letters are kept;
// punctuation splits tokens.
std::vector<std::string> tokenize(std::string_view text,
                                  const std::unordered_set<std::string>& stop_words, int min_len,
                                  int max_len);

void tokenize_records(std::vector<Record>& records,
                      const std::unordered_set<std::string>& stop_words, int min_len, int max_len);

struct Vocabulary {
  std::unordered_map<std::string, int> ids;  // term -> term id
  std::vector<std::string> terms;            // term id -> term
  std::vector<int> df;                       // term id -> document frequency
  int n_docs = 0;

  int id_of(const std::string& term) const {
    auto it = ids.find(term);
    return it == ids.end() ? -1 : it->second;
  }
  // idf = ln(N / df)
  double idf(int term_id) const;
  int size() const { return static_cast<int>(terms.size()); }
};

struct TfIdfVector {
  std::vector<std::pair<int, double>> weights;  // sorted by term id
  double norm = 0.0;
};

double tfidf_cosine(const TfIdfVector& a, const TfIdfVector& b);

// Vocabulary, per-record term counts and tf-idf vectors over a tokenized
// corpus. Immutable after build.
class TokenizedCorpus {
 public:
  static TokenizedCorpus build(const std::vector<Record>& records);

  const Vocabulary& vocab() const { return vocab_; }
  // (term id, count) sorted by term id; one entry per distinct term in the record
  const std::vector<std::pair<int, int>>& term_counts(int record_idx) const {
    return term_counts_[record_idx];
  }
  const TfIdfVector& tfidf(int record_idx) const { return tfidf_[record_idx]; }
  int n_records() const { return static_cast<int>(term_counts_.size()); }

 private:
  Vocabulary vocab_;
  std::vector<std::vector<std::pair<int, int>>> term_counts_;
  std::vector<TfIdfVector> tfidf_;
};

// Calls fn(i, j), i < j, exactly once for every unordered record pair sharing
// at least one term from valid_terms. An empty mask means all terms are valid.
void for_each_candidate_pair(const TokenizedCorpus& corpus, const std::vector<char>& valid_mask,
                             const std::function<void(int, int)>& fn);

std::vector<std::pair<int, int>> candidate_pairs(const TokenizedCorpus& corpus,
                                                 const std::vector<char>& valid_mask);

std::vector<char> valid_mask_all(const TokenizedCorpus& corpus);
std::vector<char> valid_mask_from_set(const TokenizedCorpus& corpus,
                                      const std::unordered_set<int>& valid_terms);

}  // namespace msed
