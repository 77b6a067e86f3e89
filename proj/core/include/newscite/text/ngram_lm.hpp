// ngram_lm.hpp
// Interpolated Kneser-Ney n-gram language model (n <= 3) with an explicit
// unknown-token mass, so P(. | context) is a proper distribution over
// vocabulary + unk for every context.

#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace newscite::text {

class NgramLm {
public:
  // docs: token sequences; throws on empty corpus or n outside {1,2,3}.
  static NgramLm train(const std::vector<std::vector<std::string>>& docs, int n,
                       double discount = 0.75);

  int order() const { return n_; }
  double discount() const { return discount_; }
  const std::set<std::string>& vocabulary() const { return vocab_; }

  // P(word | context); context is the preceding tokens (any length, the last
  // n-1 are used). Words outside the vocabulary take the unk mass.
  double prob(const std::string& word, const std::vector<std::string>& context) const;

  // Explicit unk probability for a context.
  double unk_prob(const std::vector<std::string>& context) const;

  // Mean log P over a token sequence (natural log), BOS-padded.
  double avg_log_prob(const std::vector<std::string>& tokens) const;

  // Self-describing persistence with a version tag; loading a newer version
  // is an explicit error.
  std::string to_json() const;
  static NgramLm from_json(const std::string& text);

private:
  struct ContextEntry {
    double total = 0;
    int distinct = 0;
    std::map<std::string, double> counts;
  };
  using Table = std::map<std::string, ContextEntry>;  // key: joined context

  double prob_order(int o, const std::vector<std::string>& ctx, const std::string& word,
                    bool is_unk) const;
  double unigram_prob(const std::string& word, bool is_unk) const;

  int n_ = 1;
  double discount_ = 0.75;
  std::set<std::string> vocab_;
  std::vector<Table> raw_;   // raw_[o] for order o (1-indexed)
  std::vector<Table> cont_;  // continuation counts for orders < n
};

// KL(a || b) over the union vocabulary plus unk, using each model's
// unigram-level distribution; unk mass is split uniformly over words the
// model has not seen. Always >= 0, and 0 for identical models.
double lm_kl(const NgramLm& a, const NgramLm& b);

}  // namespace newscite::text
