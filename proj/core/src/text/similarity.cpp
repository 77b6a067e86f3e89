#include "newscite/text/similarity.hpp"

namespace newscite::text {

std::set<std::string> ngram_set(const std::vector<std::string>& tokens, int n) {
  std::set<std::string> out;
  if (n <= 0 || tokens.size() < static_cast<std::size_t>(n)) return out;
  for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= tokens.size(); ++i) {
    std::string g = tokens[i];
    for (int k = 1; k < n; ++k) {
      g += '\x1f';
      g += tokens[i + static_cast<std::size_t>(k)];
    }
    out.insert(std::move(g));
  }
  return out;
}

double ngram_overlap(const std::vector<std::string>& a, const std::vector<std::string>& b, int n) {
  return jaccard(ngram_set(a, n), ngram_set(b, n));
}

void CorpusStats::add_document(const std::vector<std::string>& tokens) {
  std::set<std::string> seen(tokens.begin(), tokens.end());
  for (const auto& t : seen) df[t] += 1;
  num_docs += 1;
}

SparseVector tfidf_vector(const std::vector<std::string>& tokens, const CorpusStats& stats) {
  SparseVector tf;
  for (const auto& t : tokens) tf[t] += 1.0;
  double n_docs = stats.num_docs > 0 ? static_cast<double>(stats.num_docs) : 1.0;
  for (auto& [term, v] : tf) {
    auto it = stats.df.find(term);
    double df = (it != stats.df.end() && it->second > 0) ? static_cast<double>(it->second) : 1.0;
    v *= n_docs / df;
  }
  return tf;
}

double dot(const SparseVector& u, const SparseVector& v) {
  const SparseVector& small = u.size() <= v.size() ? u : v;
  const SparseVector& large = u.size() <= v.size() ? v : u;
  double s = 0.0;
  for (const auto& [k, val] : small) {
    auto it = large.find(k);
    if (it != large.end()) s += val * it->second;
  }
  return s;
}

double norm(const SparseVector& u) { return std::sqrt(dot(u, u)); }

double cosine(const SparseVector& u, const SparseVector& v) {
  double nu = norm(u), nv = norm(v);
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return dot(u, v) / (nu * nv);
}

void l2_normalize(SparseVector& v) {
  double n = norm(v);
  if (n == 0.0) return;
  for (auto& [k, val] : v) val /= n;
}

}  // namespace newscite::text
