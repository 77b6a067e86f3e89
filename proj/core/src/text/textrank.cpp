#include "newscite/text/textrank.hpp"

#include <cmath>

#include "newscite/common.hpp"
#include "newscite/text/similarity.hpp"

namespace newscite::text {

TextRankResult textrank_central(const std::vector<std::set<std::string>>& sentences,
                                double damping, double tol, int max_iters) {
  std::size_t n = sentences.size();
  if (n == 0) throw Error("textrank_central: need at least one sentence");
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double sim = jaccard(sentences[i], sentences[j]);
      w[i][j] = sim;
      w[j][i] = sim;
    }
  }
  return textrank_weighted(w, damping, tol, max_iters);
}

TextRankResult textrank_weighted(const std::vector<std::vector<double>>& w, double damping,
                                 double tol, int max_iters) {
  std::size_t n = w.size();
  if (n == 0) throw Error("textrank_weighted: need at least one node");
  std::vector<double> out_weight(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) out_weight[i] += w[i][j];
    }
  }

  std::vector<double> score(n, 1.0), next(n, 0.0);
  for (int iter = 0; iter < max_iters; ++iter) {
    double max_delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i && w[j][i] > 0.0 && out_weight[j] > 0.0) acc += w[j][i] / out_weight[j] * score[j];
      }
      next[i] = (1.0 - damping) + damping * acc;
      max_delta = std::max(max_delta, std::fabs(next[i] - score[i]));
    }
    score.swap(next);
    if (max_delta < tol) break;
  }

  TextRankResult r;
  r.scores = score;
  r.central_index = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (score[i] > score[r.central_index]) r.central_index = i;
  }
  return r;
}

}  // namespace newscite::text
