// textrank.hpp
// Weighted-PageRank sentence centrality with Jaccard edge weights.

#pragma once

#include <set>
#include <string>
#include <vector>

namespace newscite::text {

struct TextRankResult {
  std::vector<double> scores;       // per input sentence
  std::size_t central_index = 0;    // argmax, earliest sentence on ties
};

// sentences: token sets (typically lowered content words). Iterates
// gamma_i = (1-d) + d * sum_j w_ij / sum_k w_jk * gamma_j
// until max score delta < tol or max_iters.
TextRankResult textrank_central(const std::vector<std::set<std::string>>& sentences,
                                double damping = 0.85, double tol = 1e-6, int max_iters = 100);

// Same iteration over an explicit symmetric weight matrix. The ranking is
// invariant under uniform scaling of all edge weights (weights only enter
// as ratios).
TextRankResult textrank_weighted(const std::vector<std::vector<double>>& weights,
                                 double damping = 0.85, double tol = 1e-6, int max_iters = 100);

}  // namespace newscite::text
