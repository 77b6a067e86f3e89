// similarity.hpp
// Set/vector similarity primitives shared across feature extraction:
// Jaccard, n-gram overlap, tf-idf vectors, cosine. The idf here is the
// plain ratio |D|/df (deliberately no log); the retrieval module has its
// own BM25/DFR idf forms.

#pragma once

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace newscite::text {

using SparseVector = std::map<std::string, double>;

template <typename T>
double jaccard(const std::set<T>& a, const std::set<T>& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::size_t inter = 0;
  const std::set<T>& small = a.size() <= b.size() ? a : b;
  const std::set<T>& large = a.size() <= b.size() ? b : a;
  for (const auto& x : small) inter += large.count(x);
  return static_cast<double>(inter) / static_cast<double>(a.size() + b.size() - inter);
}

std::set<std::string> ngram_set(const std::vector<std::string>& tokens, int n);

// Jaccard over the n-gram sets of two token sequences.
double ngram_overlap(const std::vector<std::string>& a, const std::vector<std::string>& b, int n);

// Document-frequency statistics for tf-idf over a document collection.
struct CorpusStats {
  std::map<std::string, int> df;
  int num_docs = 0;

  void add_document(const std::vector<std::string>& tokens);
};

// tf(v, d) * |D| / df(v). Terms absent from the stats get idf |D| (df
// treated as 1) so unseen-but-present terms still score.
SparseVector tfidf_vector(const std::vector<std::string>& tokens, const CorpusStats& stats);

double dot(const SparseVector& u, const SparseVector& v);
double norm(const SparseVector& u);
double cosine(const SparseVector& u, const SparseVector& v);

void l2_normalize(SparseVector& v);

}  // namespace newscite::text
