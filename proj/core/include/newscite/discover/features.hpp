// features.hpp
// Citation-discovery candidates and their entailment / centrality /
// authority features, with min/max/avg/weighted/exp-decay aggregation over
// candidate sentences.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "newscite/categorize/priors.hpp"
#include "newscite/corpus/model.hpp"
#include "newscite/corpus/taxonomy.hpp"
#include "newscite/index/inverted_index.hpp"
#include "newscite/ml/dataset.hpp"
#include "newscite/suggest/salience.hpp"
#include "newscite/text/discourse.hpp"
#include "newscite/text/ngram_lm.hpp"
#include "newscite/text/tokenize.hpp"

namespace newscite::discover {

struct CandidatePair {
  std::string statement_id;
  std::string doc_url;
  int doc_index = -1;
  double retrieval_score = 0;
  int retrieval_rank = 0;  // 1-based
  std::vector<ml::FeatureVector> sentence_rows;
  ml::FeatureVector aggregated;
  std::optional<bool> label;
};

struct AuthorityTables {
  // (type, domain) -> p(D | t); values per type sum to 1
  std::map<std::pair<std::string, std::string>, double> type_domain;
  // (section, domain) -> p(D | section)
  std::map<std::pair<std::string, std::string>, double> section_domain;

  std::string to_json() const;
  static AuthorityTables from_json(const std::string& text);
};

AuthorityTables compute_authority_tables(const corpus::WikiCorpus& corpus,
                                         const corpus::TypeTaxonomy& taxonomy);

struct FcContext {
  const corpus::NewsCorpus* news = nullptr;
  const index::InvertedIndex* index = nullptr;
  const text::CorpusStats* statement_stats = nullptr;  // df over the statement collection
  const text::RuleTagger* tagger = nullptr;
  const AuthorityTables* authority = nullptr;
  const corpus::TypeTaxonomy* taxonomy = nullptr;
  // type id -> topic terms / n-gram LM from news cited by that type
  const std::map<std::string, std::vector<std::string>>* type_topics = nullptr;
  const std::map<std::string, text::NgramLm>* type_lms = nullptr;
  index::RetrievalModel model = index::RetrievalModel::dfr;
  int depth = 100;
  suggest::RelFreqExponent phi_exponent = suggest::RelFreqExponent::paragraph_index;
};

// Top-k retrieval for a statement; scores and 1-based ranks populated.
std::vector<CandidatePair> candidates(const corpus::Statement& statement, const FcContext& ctx,
                                      int k = 100);

// One row per candidate sentence: J^1..J^3 n-gram overlap, NNP phrase
// overlap, trigram-POS-sequence Jaccard (the parse-free tree-kernel
// replacement), headline similarity.
std::vector<ml::FeatureVector> entailment_sentence_rows(const corpus::Statement& statement,
                                                        const corpus::NewsArticle& article,
                                                        const FcContext& ctx);

// Statement-level entailment features: unigram-LM likelihood of the
// statement under the article, type-LM KL, topic overlap, freq(e).
ml::FeatureVector entailment_statement_features(const corpus::Statement& statement,
                                                const corpus::WikiArticle& entity,
                                                const corpus::NewsArticle& article, const FcContext& ctx);

// Centrality: similarity of the statement to the TextRank-central sentence
// plus relative entity frequencies.
ml::FeatureVector centrality_features(const corpus::Statement& statement,
                                      const corpus::WikiArticle& entity,
                                      const corpus::NewsArticle& article, const FcContext& ctx);

ml::FeatureVector authority_features(const corpus::Statement& statement,
                                     const corpus::WikiArticle& entity, const std::string& domain,
                                     const FcContext& ctx);

// min, max, avg, sum(1/j * F), sum(F^(1/j)) per feature, j = 1-based sentence
// position. Features are assumed nonnegative (all are overlaps here).
ml::FeatureVector aggregate(const std::vector<ml::FeatureVector>& rows);

// Fills sentence rows and the aggregated vector of a candidate pair.
void compute_pair_features(CandidatePair& pair, const corpus::Statement& statement,
                           const corpus::WikiArticle& entity, const FcContext& ctx);

}  // namespace newscite::discover
