// lda.hpp
// Collapsed-Gibbs LDA with fixed symmetric priors (alpha = 50/K, beta =
// 0.01). Used only to extract per-document dominant-topic term sets.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace newscite::ml {

struct LdaParams {
  int topics = 10;
  int iterations = 100;
  std::uint64_t seed = 0;
  int top_m = 10;
};

// For each document, the top_m terms (by topic count, ties lexicographic)
// of its dominant topic. Throws on empty input.
std::vector<std::vector<std::string>> lda_topic_terms(const std::vector<std::vector<std::string>>& docs,
                                                      const LdaParams& params);

}  // namespace newscite::ml
