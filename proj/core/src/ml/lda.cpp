#include "newscite/ml/lda.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "newscite/common.hpp"

namespace newscite::ml {

std::vector<std::vector<std::string>> lda_topic_terms(const std::vector<std::vector<std::string>>& docs,
                                                      const LdaParams& params) {
  if (params.topics < 1) throw Error("lda: topics must be >= 1");
  bool any = false;
  for (const auto& d : docs) any = any || !d.empty();
  if (docs.empty() || !any) throw Error("lda: empty documents");

  // vocabulary in first-seen order
  std::map<std::string, int> vocab;
  std::vector<std::string> terms;
  std::vector<std::vector<int>> word_ids(docs.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (const auto& w : docs[d]) {
      auto it = vocab.find(w);
      int id;
      if (it == vocab.end()) {
        id = static_cast<int>(terms.size());
        vocab[w] = id;
        terms.push_back(w);
      } else {
        id = it->second;
      }
      word_ids[d].push_back(id);
    }
  }

  int K = params.topics;
  int V = static_cast<int>(terms.size());
  double alpha = 50.0 / K;
  double beta = 0.01;

  std::vector<std::vector<int>> doc_topic(docs.size(), std::vector<int>(static_cast<std::size_t>(K), 0));
  std::vector<std::vector<int>> topic_word(static_cast<std::size_t>(K),
                                           std::vector<int>(static_cast<std::size_t>(V), 0));
  std::vector<int> topic_total(static_cast<std::size_t>(K), 0);
  std::vector<std::vector<int>> z(docs.size());

  std::mt19937_64 rng(params.seed);
  std::uniform_int_distribution<int> pick_topic(0, K - 1);
  for (std::size_t d = 0; d < docs.size(); ++d) {
    z[d].resize(word_ids[d].size());
    for (std::size_t i = 0; i < word_ids[d].size(); ++i) {
      int t = pick_topic(rng);
      z[d][i] = t;
      doc_topic[d][static_cast<std::size_t>(t)] += 1;
      topic_word[static_cast<std::size_t>(t)][static_cast<std::size_t>(word_ids[d][i])] += 1;
      topic_total[static_cast<std::size_t>(t)] += 1;
    }
  }

  std::vector<double> prob(static_cast<std::size_t>(K));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int iter = 0; iter < params.iterations; ++iter) {
    for (std::size_t d = 0; d < docs.size(); ++d) {
      for (std::size_t i = 0; i < word_ids[d].size(); ++i) {
        int w = word_ids[d][i];
        int old = z[d][i];
        doc_topic[d][static_cast<std::size_t>(old)] -= 1;
        topic_word[static_cast<std::size_t>(old)][static_cast<std::size_t>(w)] -= 1;
        topic_total[static_cast<std::size_t>(old)] -= 1;

        double total = 0.0;
        for (int t = 0; t < K; ++t) {
          double p = (doc_topic[d][static_cast<std::size_t>(t)] + alpha) *
                     (topic_word[static_cast<std::size_t>(t)][static_cast<std::size_t>(w)] + beta) /
                     (topic_total[static_cast<std::size_t>(t)] + beta * V);
          prob[static_cast<std::size_t>(t)] = p;
          total += p;
        }
        double u = unit(rng) * total;
        int chosen = K - 1;
        double acc = 0.0;
        for (int t = 0; t < K; ++t) {
          acc += prob[static_cast<std::size_t>(t)];
          if (u <= acc) {
            chosen = t;
            break;
          }
        }
        z[d][i] = chosen;
        doc_topic[d][static_cast<std::size_t>(chosen)] += 1;
        topic_word[static_cast<std::size_t>(chosen)][static_cast<std::size_t>(w)] += 1;
        topic_total[static_cast<std::size_t>(chosen)] += 1;
      }
    }
  }

  // per topic: terms ranked by count desc, lexicographic on ties
  std::vector<std::vector<std::string>> topic_terms(static_cast<std::size_t>(K));
  for (int t = 0; t < K; ++t) {
    std::vector<int> ids(static_cast<std::size_t>(V));
    for (int v = 0; v < V; ++v) ids[static_cast<std::size_t>(v)] = v;
    std::sort(ids.begin(), ids.end(), [&](int a, int b) {
      int ca = topic_word[static_cast<std::size_t>(t)][static_cast<std::size_t>(a)];
      int cb = topic_word[static_cast<std::size_t>(t)][static_cast<std::size_t>(b)];
      if (ca != cb) return ca > cb;
      return terms[static_cast<std::size_t>(a)] < terms[static_cast<std::size_t>(b)];
    });
    for (int i = 0; i < params.top_m && i < V; ++i) {
      if (topic_word[static_cast<std::size_t>(t)][static_cast<std::size_t>(ids[static_cast<std::size_t>(i)])] == 0)
        break;
      topic_terms[static_cast<std::size_t>(t)].push_back(terms[static_cast<std::size_t>(ids[static_cast<std::size_t>(i)])]);
    }
  }

  std::vector<std::vector<std::string>> out(docs.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    int dominant = 0;
    for (int t = 1; t < K; ++t) {
      if (doc_topic[d][static_cast<std::size_t>(t)] > doc_topic[d][static_cast<std::size_t>(dominant)]) dominant = t;
    }
    out[d] = topic_terms[static_cast<std::size_t>(dominant)];
  }
  return out;
}

}  // namespace newscite::ml
