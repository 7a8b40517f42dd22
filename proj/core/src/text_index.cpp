#include "msed/text_index.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace msed {

namespace {

const char* kStopWords[] = {
    "a",       "about",   "above",  "after",   "again",   "against", "all",    "and",
    "any",     "are",     "aren't", "because", "been",    "before",  "being",  "below",
    "between", "both",    "but",    "by",      "can't",   "cannot",  "could",  "couldn't",
    "did",     "didn't",  "does",   "doesn't", "doing",   "don't",   "down",   "during",
    "each",    "few",     "for",    "from",    "further", "had",     "hadn't", "has",
    "hasn't",  "have",    "haven't","having",  "her",     "here",    "hers",   "herself",
    "him",     "himself", "his",    "how",     "i'd",     "i'll",    "i'm",    "i've",
    "into",    "isn't",   "it's",   "its",     "itself",  "let's",   "more",   "most",
    "mustn't", "myself",  "nor",    "not",     "off",     "once",    "only",   "other",
    "ought",   "our",     "ours",   "ourselves", "out",   "over",    "own",    "same",
    "shan't",  "she",     "she'd",  "she'll",  "she's",   "should",  "shouldn't", "some",
    "such",    "than",    "that",   "that's",  "the",     "their",   "theirs", "them",
    "themselves", "then", "there",  "there's", "these",   "they",    "they'd", "they'll",
    "they're", "they've", "this",   "those",   "through", "too",     "under",  "until",
    "very",    "was",     "wasn't", "we'd",    "we'll",   "we're",   "we've",  "were",
    "weren't", "what",    "what's", "when",    "when's",  "where",   "where's","which",
    "while",   "who",     "who's",  "whom",    "why",     "why's",   "with",   "won't",
    "would",   "wouldn't","you",    "you'd",   "you'll",  "you're",  "you've", "your",
    "yours",   "yourself","yourselves", "http"};

}  // namespace

const std::unordered_set<std::string>& default_stop_words() {
  static const std::unordered_set<std::string> words(std::begin(kStopWords), std::end(kStopWords));
  return words;
}

std::unordered_set<std::string> load_stop_words(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open stop-word file: " + path);
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n' || line.back() == ' '))
      line.pop_back();
    if (!line.empty()) words.insert(line);
  }
  return words;
}

std::vector<std::string> tokenize(std::string_view text,
                                  const std::unordered_set<std::string>& stop_words, int min_len,
                                  int max_len) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      const int len = static_cast<int>(cur.size());
      if (len >= min_len && len <= max_len && stop_words.find(cur) == stop_words.end())
        out.push_back(cur);
      cur.clear();
    }
  };
  for (unsigned char c : text) {
    if (std::isalnum(c)) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (c >= 0x80) {
      // keep multi-byte UTF-8 sequences as-is
      cur.push_back(static_cast<char>(c));
    } else {
      flush();
    }
  }
  flush();
  return out;
}

void tokenize_records(std::vector<Record>& records,
                      const std::unordered_set<std::string>& stop_words, int min_len, int max_len) {
  for (Record& r : records) r.tokens = tokenize(r.text, stop_words, min_len, max_len);
}

double Vocabulary::idf(int term_id) const {
  return std::log(static_cast<double>(n_docs) / static_cast<double>(df[term_id]));
}

double tfidf_cosine(const TfIdfVector& a, const TfIdfVector& b) {
  if (a.norm <= 0.0 || b.norm <= 0.0) return 0.0;
  double dot = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.weights.size() && j < b.weights.size()) {
    if (a.weights[i].first < b.weights[j].first)
      ++i;
    else if (a.weights[i].first > b.weights[j].first)
      ++j;
    else {
      dot += a.weights[i].second * b.weights[j].second;
      ++i;
      ++j;
    }
  }
  const double c = dot / (a.norm * b.norm);
  return std::clamp(c, 0.0, 1.0);
}

TokenizedCorpus TokenizedCorpus::build(const std::vector<Record>& records) {
  TokenizedCorpus corpus;
  corpus.vocab_.n_docs = static_cast<int>(records.size());
  corpus.term_counts_.resize(records.size());

  for (std::size_t r = 0; r < records.size(); ++r) {
    auto& counts = corpus.term_counts_[r];
    for (const std::string& tok : records[r].tokens) {
      auto [it, inserted] = corpus.vocab_.ids.try_emplace(tok, corpus.vocab_.size());
      if (inserted) {
        corpus.vocab_.terms.push_back(tok);
        corpus.vocab_.df.push_back(0);
      }
      const int id = it->second;
      auto pos = std::find_if(counts.begin(), counts.end(),
                              [id](const auto& p) { return p.first == id; });
      if (pos == counts.end())
        counts.emplace_back(id, 1);
      else
        ++pos->second;
    }
    std::sort(counts.begin(), counts.end());
    for (const auto& [id, n] : counts) ++corpus.vocab_.df[id];
  }

  corpus.tfidf_.resize(records.size());
  for (std::size_t r = 0; r < records.size(); ++r) {
    TfIdfVector& v = corpus.tfidf_[r];
    double sq = 0.0;
    for (const auto& [id, n] : corpus.term_counts_[r]) {
      const double w = static_cast<double>(n) * corpus.vocab_.idf(id);
      if (w > 0.0) {
        v.weights.emplace_back(id, w);
        sq += w * w;
      }
    }
    v.norm = std::sqrt(sq);
  }
  return corpus;
}

void for_each_candidate_pair(const TokenizedCorpus& corpus, const std::vector<char>& valid_mask,
                             const std::function<void(int, int)>& fn) {
  const int n = corpus.n_records();
  // inverted index over valid terms
  std::vector<std::vector<int>> postings(corpus.vocab().size());
  for (int r = 0; r < n; ++r) {
    for (const auto& [id, cnt] : corpus.term_counts(r)) {
      if (valid_mask.empty() || valid_mask[id]) postings[id].push_back(r);
    }
  }
  std::vector<int> stamp(n, -1);
  for (int i = 0; i < n; ++i) {
    for (const auto& [id, cnt] : corpus.term_counts(i)) {
      if (!valid_mask.empty() && !valid_mask[id]) continue;
      for (int j : postings[id]) {
        if (j <= i) continue;
        if (stamp[j] == i) continue;
        stamp[j] = i;
        fn(i, j);
      }
    }
  }
}

std::vector<std::pair<int, int>> candidate_pairs(const TokenizedCorpus& corpus,
                                                 const std::vector<char>& valid_mask) {
  std::vector<std::pair<int, int>> out;
  for_each_candidate_pair(corpus, valid_mask, [&](int i, int j) { out.emplace_back(i, j); });
  return out;
}

std::vector<char> valid_mask_all(const TokenizedCorpus& corpus) {
  return std::vector<char>(corpus.vocab().size(), 1);
}

std::vector<char> valid_mask_from_set(const TokenizedCorpus& corpus,
                                      const std::unordered_set<int>& valid_terms) {
  std::vector<char> mask(corpus.vocab().size(), 0);
  for (int id : valid_terms)
    if (id >= 0 && id < corpus.vocab().size()) mask[id] = 1;
  return mask;
}

}  // namespace msed
